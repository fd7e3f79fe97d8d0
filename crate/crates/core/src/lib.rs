//! Exact split Albert algebras, automorphisms of type F4, and the
//! classification of their involutions over local and global fields.

pub mod error;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod algebra;
pub mod automorphism;
pub mod cli;
pub mod classify;
pub mod decomposition;
pub mod hermitian;
pub mod kac;
pub mod octonion;
pub mod tits;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Scalar};

//! The 52-dimensional derivation algebra and the centralizers of the two
//! kinds of involution.

use std::time::Instant;

use f4_albert::algebra::AlbertAlgebra;
use f4_albert::automorphism::{centralizer_dimensions, type1_involution, type2_involution, TorusElement};
use f4_albert::tits::TitsAlgebra;
use f4_albert::Field;

fn main() -> f4_albert::Result<()> {
    for spec in ["Q", "Fp:101", "Fp:3"] {
        let k: Field = spec.parse()?;
        let alg = TitsAlgebra::new(k);
        let start = Instant::now();
        match alg.derivations() {
            Ok(der) => println!("{k}: dim Der = {} ({:.2?})", der.dim(), start.elapsed()),
            Err(e) => {
                println!("{k}: {e}");
                continue;
            }
        }
        let t1 = type1_involution(&alg, &TorusElement::identity(&k))?;
        let t2 = type2_involution(&alg, &alg.primitive_idempotent().to_coords())?;
        let (a, b) = centralizer_dimensions(&alg, &t1.realized)?;
        let (c, d) = centralizer_dimensions(&alg, &t2.realized)?;
        println!("  type I:  fixed {a}, anti-fixed {b}");
        println!("  type II: fixed {c}, anti-fixed {d}");
    }
    Ok(())
}

//! Presentation-independent machinery on 27-dimensional coordinate vectors:
//! structure constants, left multiplications, Peirce spaces, derivations.

use std::collections::BTreeMap;
use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{sparse_nullspace, Matrix, SparseRow, Subspace};

/// Dimension of an Albert algebra.
pub const DIM: usize = 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    Hermitian,
    Tits,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Presentation::Hermitian => "hermitian",
            Presentation::Tits => "tits",
        })
    }
}

/// A 27-dimensional Jordan algebra with a fixed coordinate basis.
pub trait AlbertAlgebra: Send + Sync {
    fn field(&self) -> Field;
    fn presentation(&self) -> Presentation;
    /// Product of coordinate vectors, computed from the presentation's own formulas.
    fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar>;
    fn unit(&self) -> Vec<Scalar>;
    /// The trace bilinear form of the presentation.
    fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar;
    /// Structure constants, computed once.
    fn structure(&self) -> &StructureConstants;
    /// The derivation algebra, computed once.
    fn derivations(&self) -> Result<&DerivationSpace>;

    /// Cubic norm, for presentations that carry one natively.
    fn cubic_norm(&self, _x: &[Scalar]) -> Option<Scalar> {
        None
    }

    /// Quadratic adjoint `x ↦ x^#`, for presentations that carry one natively.
    fn adjoint(&self, _x: &[Scalar]) -> Option<Vec<Scalar>> {
        None
    }

    fn random_vector(&self, rng: &mut dyn RngCore) -> Vec<Scalar> {
        let k = self.field();
        (0..DIM).map(|_| k.random(rng)).collect()
    }

    fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(&self.field(), i)
    }
}

pub fn unit_vector(k: &Field, i: usize) -> Vec<Scalar> {
    let mut v = vec![k.zero(); DIM];
    v[i] = k.one();
    v
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(x: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    x.iter().map(|a| a * s).collect()
}

pub fn is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// Commutativity and the Jordan identity `(x²y)x = x²(yx)` at `(x, y)`,
/// evaluated with the presentation's own product.
pub fn jordan_checks<A: AlbertAlgebra + ?Sized>(alg: &A, x: &[Scalar], y: &[Scalar]) -> [(&'static str, bool); 2] {
    let x2 = alg.product(x, x);
    let yx = alg.product(y, x);
    [
        ("xy = yx", alg.product(x, y) == yx),
        ("(x^2 y) x = x^2 (y x)", alg.product(&alg.product(&x2, y), x) == alg.product(&x2, &yx)),
    ]
}

/// Sparse multiplication table: `b_i b_j = Σ_k c_ijk b_k`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    field: Field,
    entries: Vec<Vec<(usize, Scalar)>>,
}

impl StructureConstants {
    pub fn compute<A: AlbertAlgebra + ?Sized>(alg: &A) -> Self {
        let k = alg.field();
        let basis: Vec<Vec<Scalar>> = (0..DIM).map(|i| unit_vector(&k, i)).collect();
        let mut entries = vec![Vec::new(); DIM * DIM];
        for i in 0..DIM {
            for j in i..DIM {
                let p = alg.product(&basis[i], &basis[j]);
                let sparse: Vec<(usize, Scalar)> = p.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
                entries[j * DIM + i] = sparse.clone();
                entries[i * DIM + j] = sparse;
            }
        }
        StructureConstants { field: k, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.entries[i * DIM + j]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); DIM];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.get(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ xy`.
    pub fn left_multiplication(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(DIM, DIM, &self.field);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..DIM {
                for (k, c) in self.get(i, j) {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        m
    }
}

/// Whether the span of `basis` is closed under the product.
pub fn is_subalgebra<A: AlbertAlgebra + ?Sized>(alg: &A, basis: &[Vec<Scalar>]) -> bool {
    let span = Subspace::span(DIM, basis);
    let sc = alg.structure();
    (0..basis.len()).all(|a| (a..basis.len()).all(|b| span.contains(&sc.multiply(&basis[a], &basis[b]))))
}

/// The Peirce spaces of a primitive idempotent `w`.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub w: Vec<Scalar>,
    pub complement: Vec<Scalar>,
    /// `{a ⊥ e : wa = 0}`.
    pub e0: Vec<Vec<Scalar>>,
    /// `{a ⊥ e : wa = a/2}`.
    pub e1: Vec<Vec<Scalar>>,
}

impl PeirceDecomposition {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (1, 1, self.e0.len(), self.e1.len())
    }

    /// Basis `(w, e − w, E₀, E₁)` of the whole algebra, as columns.
    pub fn adapted_basis(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            [self.w.clone(), self.complement.clone()].into_iter().chain(self.e0.iter().cloned()).chain(self.e1.iter().cloned()).collect();
        Matrix::from_columns(&cols)
    }
}

/// Whether `w` is an idempotent with trace 1, i.e. a primitive idempotent.
pub fn is_primitive<A: AlbertAlgebra + ?Sized>(alg: &A, w: &[Scalar]) -> bool {
    let e = alg.unit();
    !is_zero(w) && w != e.as_slice() && alg.product(w, w) == w && alg.bilinear(w, &e).is_one()
}

pub fn peirce_decomposition<A: AlbertAlgebra + ?Sized>(alg: &A, w: &[Scalar]) -> Result<PeirceDecomposition> {
    if !is_primitive(alg, w) {
        return Err(Error::NotPrimitive);
    }
    let k = alg.field();
    let e = alg.unit();
    let lw = alg.structure().left_multiplication(w);
    let trace_row: Vec<Scalar> = (0..DIM).map(|i| alg.bilinear(&unit_vector(&k, i), &e)).collect();
    let eigenspace = |lambda: Scalar| {
        let shifted = lw.sub(&Matrix::identity(DIM, &k).scale(&lambda));
        let mut rows = shifted.to_rows();
        rows.push(trace_row.clone());
        Matrix::from_rows(rows).nullspace()
    };
    let e0 = eigenspace(k.zero());
    let e1 = eigenspace(k.half());
    Ok(PeirceDecomposition { w: w.to_vec(), complement: sub(&e, w), e0, e1 })
}

/// A basis of the derivation algebra, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    basis: Vec<Matrix>,
    span: Subspace,
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

impl DerivationSpace {
    /// Solves `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)` for all basis pairs.
    ///
    /// Unknowns are the entries `D[r][s]`, where column `s` is `D(b_s)`.
    pub fn compute(sc: &StructureConstants, k: &Field) -> Result<Self> {
        let p = k.characteristic();
        if p == 2 || p == 3 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        let var = |r: usize, s: usize| r * DIM + s;
        let mut equations: Vec<SparseRow> = Vec::new();
        for i in 0..DIM {
            for j in i..DIM {
                let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                let mut push = |r: usize, v: usize, c: Scalar| {
                    let slot = rows.entry(r).or_default().entry(v).or_insert_with(|| k.zero());
                    *slot += &c;
                };
                for (s, c) in sc.get(i, j) {
                    for r in 0..DIM {
                        push(r, var(r, *s), c.clone());
                    }
                }
                for s in 0..DIM {
                    for (r, c) in sc.get(s, j) {
                        push(*r, var(s, i), -c);
                    }
                    for (r, c) in sc.get(i, s) {
                        push(*r, var(s, j), -c);
                    }
                }
                for (_, row) in rows {
                    let eq: SparseRow = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if !eq.is_empty() {
                        equations.push(eq);
                    }
                }
            }
        }
        let kernel = sparse_nullspace(DIM * DIM, &equations, k);
        let span = Subspace::span(DIM * DIM, &kernel);
        let basis = span
            .basis()
            .iter()
            .map(|v| Matrix::from_rows(v.chunks(DIM).map(<[Scalar]>::to_vec).collect()))
            .collect();
        Ok(DerivationSpace { basis, span })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates of `m` in the echelon basis, if `m` is a derivation.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.span.coordinates(&flatten(m))
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates(m).is_some()
    }

    /// Matrix of `D ↦ φDφ⁻¹` on the derivation algebra.
    pub fn conjugation_action(&self, phi: &Matrix, phi_inv: &Matrix) -> Result<Matrix> {
        let cols = self
            .basis
            .iter()
            .map(|d| {
                self.coordinates(&phi.mul(d).mul(phi_inv))
                    .ok_or_else(|| Error::Presentation("conjugate of a derivation is not a derivation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols))
    }
}

//! The split octonions by Cayley–Dickson doubling.
//!
//! Basis order is `(e, i, j, k, ℓ, iℓ, jℓ, kℓ)`. The quaternion seed is the
//! split algebra with `i² = j² = e`, doubled once more with `ℓ² = e` using
//! `(a, b)(c, d) = (ac + d̄b, da + bc̄)`. The resulting norm is
//! `x₀² − x₁² − x₂² + x₃² − x₄² + x₅² + x₆² − x₇²`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{pfister_is_split, Pfister2};
use crate::linalg::Matrix;

pub const BASIS_NAMES: [&str; 8] = ["e", "i", "j", "k", "l", "il", "jl", "kl"];

/// Doubling parameters, innermost first: `i² = 1`, `j² = 1`, `ℓ² = 1`.
const DOUBLING: [i64; 3] = [1, 1, 1];

fn cd_conj(a: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = a.iter().map(|x| -x).collect();
    out[0] = a[0];
    out
}

fn cd_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let mu = DOUBLING[n.trailing_zeros() as usize - 1];
    let (a0, a1) = a.split_at(h);
    let (c0, c1) = b.split_at(h);
    let first: Vec<i64> = cd_mul(a0, c0).iter().zip(cd_mul(&cd_conj(c1), a1)).map(|(x, y)| x + mu * y).collect();
    let second: Vec<i64> = cd_mul(c1, a0).iter().zip(cd_mul(a1, &cd_conj(c0))).map(|(x, y)| x + y).collect();
    [first, second].concat()
}

/// `TABLE[a][b] = (c, s)` means `b_a · b_b = s · b_c`.
fn table() -> &'static [[(usize, i8); 8]; 8] {
    static TABLE: OnceLock<[[(usize, i8); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0usize, 0i8); 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let mut x = vec![0; 8];
                let mut y = vec![0; 8];
                x[a] = 1;
                y[b] = 1;
                let z = cd_mul(&x, &y);
                let (c, s) = z.iter().enumerate().find(|(_, v)| **v != 0).expect("basis products are nonzero");
                debug_assert_eq!(z.iter().filter(|v| **v != 0).count(), 1);
                t[a][b] = (c, *s as i8);
            }
        }
        t
    })
}

/// Norm coefficients on the basis.
pub const NORM_DIAGONAL: [i64; 8] = [1, -1, -1, 1, -1, 1, 1, -1];

/// An element of the split octonions over some field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Octonion {
    c: [Scalar; 8],
}

impl Octonion {
    pub fn new(c: [Scalar; 8]) -> Self {
        Octonion { c }
    }

    pub fn from_slice(c: &[Scalar]) -> Self {
        Octonion { c: std::array::from_fn(|i| c[i].clone()) }
    }

    pub fn zero(k: &Field) -> Self {
        Octonion { c: std::array::from_fn(|_| k.zero()) }
    }

    pub fn one(k: &Field) -> Self {
        Octonion::basis(k, 0)
    }

    pub fn basis(k: &Field, i: usize) -> Self {
        let mut x = Octonion::zero(k);
        x.c[i] = k.one();
        x
    }

    pub fn from_ints(k: &Field, c: [i64; 8]) -> Self {
        Octonion { c: c.map(|x| k.from_i64(x)) }
    }

    pub fn coords(&self) -> &[Scalar; 8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Octonion {
        Octonion { c: std::array::from_fn(|i| &self.c[i] * s) }
    }

    pub fn conj(&self) -> Octonion {
        Octonion { c: std::array::from_fn(|i| if i == 0 { self.c[0].clone() } else { -&self.c[i] }) }
    }

    /// The quadratic norm `q(x)`.
    pub fn norm(&self) -> Scalar {
        let mut acc = self.c[0].zero_like();
        for (x, &d) in self.c.iter().zip(&NORM_DIAGONAL) {
            if x.is_zero() {
                continue;
            }
            let s = x.square();
            if d > 0 {
                acc += &s;
            } else {
                acc -= &s;
            }
        }
        acc
    }

    /// Polar form `q(x, y) = q(x + y) − q(x) − q(y)`, so `q(x, x) = 2q(x)`.
    pub fn bilinear(&self, other: &Octonion) -> Scalar {
        let mut acc = self.c[0].zero_like();
        for ((x, y), &d) in self.c.iter().zip(&other.c).zip(&NORM_DIAGONAL) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let p = x * y;
            if d > 0 {
                acc += &p;
            } else {
                acc -= &p;
            }
        }
        &acc + &acc
    }

    /// `q(x, e) = 2x₀`.
    pub fn trace(&self) -> Scalar {
        &self.c[0] + &self.c[0]
    }

    pub fn mul(&self, other: &Octonion) -> Octonion {
        let t = table();
        let mut out: [Scalar; 8] = std::array::from_fn(|_| self.c[0].zero_like());
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (c, s) = t[a][b];
                let p = x * y;
                if s > 0 {
                    out[c] += &p;
                } else {
                    out[c] -= &p;
                }
            }
        }
        Octonion { c: out }
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        Octonion::mul(self, o)
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// One entry of the exported multiplication table.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub left: &'static str,
    pub right: &'static str,
    pub sign: i8,
    pub result: &'static str,
}

/// The split octonion algebra over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OctonionAlgebra {
    field: Field,
}

impl OctonionAlgebra {
    pub fn new(field: Field) -> Self {
        OctonionAlgebra { field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn zero(&self) -> Octonion {
        Octonion::zero(&self.field)
    }

    pub fn one(&self) -> Octonion {
        Octonion::one(&self.field)
    }

    pub fn basis(&self, i: usize) -> Octonion {
        Octonion::basis(&self.field, i)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Octonion {
        Octonion { c: std::array::from_fn(|_| self.field.random(rng)) }
    }

    fn owns(&self, x: &Octonion) -> bool {
        x.c.iter().all(|s| self.field.contains(s))
    }

    /// Product with a check that both operands belong to this algebra.
    pub fn try_mul(&self, x: &Octonion, y: &Octonion) -> Result<Octonion> {
        if !self.owns(x) || !self.owns(y) {
            return Err(Error::FieldMismatch);
        }
        Ok(x.mul(y))
    }

    /// The 64 basis products, for export and cross-checking.
    pub fn structure_table() -> Vec<TableEntry> {
        let t = table();
        let mut out = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (c, s) = t[a][b];
                out.push(TableEntry { left: BASIS_NAMES[a], right: BASIS_NAMES[b], sign: s, result: BASIS_NAMES[c] });
            }
        }
        out
    }

    /// A quaternion subalgebra `D = ⟨e, u, v, uv⟩` with `u² = ζe`, `v² = ηe`,
    /// together with an anisotropic `j ∈ D^⊥`.
    ///
    /// `u` is placed in the hyperbolic plane spanned by `i` and `k`, `v` in
    /// the one spanned by `j` and `iℓ`; these are orthogonal and every value
    /// of the norm is reached inside a hyperbolic plane.
    pub fn embed_quaternion(&self, zeta: &Scalar, eta: &Scalar) -> Result<QuaternionSubalgebra> {
        let k = self.field;
        if !k.contains(zeta) || !k.contains(eta) {
            return Err(Error::FieldMismatch);
        }
        let pfister = Pfister2::new(zeta.clone(), eta.clone()).map_err(|_| Error::NoEmbedding)?;
        let half = k.half();
        let one = k.one();
        let mut u = self.zero();
        u.c[1] = &(&one + zeta) * &half;
        u.c[3] = &(&one - zeta) * &half;
        let mut v = self.zero();
        v.c[2] = &(&one + eta) * &half;
        v.c[5] = &(&one - eta) * &half;
        let uv = u.mul(&v);
        let basis = [self.one(), u, v, uv];

        // D^⊥ as the kernel of the polar form against D
        let mut gram = Matrix::zeros(4, 8, &k);
        for (r, d) in basis.iter().enumerate() {
            for c in 0..8 {
                gram[(r, c)] = d.bilinear(&self.basis(c));
            }
        }
        let perp: Vec<Octonion> = gram.nullspace().iter().map(|v| Octonion::from_slice(v)).collect();
        if perp.len() != 4 {
            return Err(Error::NoEmbedding);
        }
        let j = perp
            .iter()
            .find(|p| !p.norm().is_zero())
            .cloned()
            .or_else(|| {
                (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).map(|(a, b)| &perp[a] + &perp[b]).find(|p| !p.norm().is_zero())
            })
            .ok_or(Error::NoEmbedding)?;
        QuaternionSubalgebra::new(basis, pfister, j)
    }

    pub fn is_split_quaternion(&self, d: &QuaternionSubalgebra) -> Result<bool> {
        pfister_is_split(d.pfister(), self.field)
    }
}

/// A quaternion subalgebra `D` of the split octonions with a chosen `j ∈ D^⊥`,
/// giving the doubling `C = D ⊕ Dj`.
#[derive(Clone, Debug)]
pub struct QuaternionSubalgebra {
    basis: [Octonion; 4],
    pfister: Pfister2,
    j: Octonion,
    complement: [Octonion; 4],
    /// Inverse of the 8×8 matrix with columns `(basis, basis·j)`.
    split_inverse: Matrix,
}

impl QuaternionSubalgebra {
    fn new(basis: [Octonion; 4], pfister: Pfister2, j: Octonion) -> Result<Self> {
        let complement: [Octonion; 4] = std::array::from_fn(|i| basis[i].mul(&j));
        let cols: Vec<Vec<Scalar>> = basis.iter().chain(complement.iter()).map(|o| o.c.to_vec()).collect();
        let split_inverse = Matrix::from_columns(&cols).inverse().ok_or(Error::NoEmbedding)?;
        Ok(QuaternionSubalgebra { basis, pfister, j, complement, split_inverse })
    }

    pub fn basis(&self) -> &[Octonion; 4] {
        &self.basis
    }

    pub fn pfister(&self) -> &Pfister2 {
        &self.pfister
    }

    pub fn j(&self) -> &Octonion {
        &self.j
    }

    /// The basis `d·j` of `D^⊥`.
    pub fn complement_basis(&self) -> &[Octonion; 4] {
        &self.complement
    }

    /// `q(j)`; note `j² = −q(j)e`.
    pub fn q_j(&self) -> Scalar {
        self.j.norm()
    }

    /// Writes `c = a + b·j` with `a, b ∈ D`.
    pub fn split(&self, c: &Octonion) -> (Octonion, Octonion) {
        let w = self.split_inverse.mul_vec(c.coords());
        let k = c.c[0].zero_like();
        let mut a = Octonion { c: std::array::from_fn(|_| k.clone()) };
        let mut b = a.clone();
        for i in 0..4 {
            a = &a + &self.basis[i].scale(&w[i]);
            b = &b + &self.basis[i].scale(&w[4 + i]);
        }
        (a, b)
    }

    /// Whether `x` lies in `D`.
    pub fn contains(&self, x: &Octonion) -> bool {
        self.split(x).1.is_zero()
    }

    /// Whether products of basis elements stay in the span.
    pub fn is_closed(&self) -> bool {
        self.basis.iter().all(|a| self.basis.iter().all(|b| self.contains(&a.mul(b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_matches_norm_and_unit() {
        let t = table();
        for a in 0..8 {
            assert_eq!(t[0][a], (a, 1));
            assert_eq!(t[a][0], (a, 1));
            // b_a² = −q(b_a) e for a ≠ 0
            if a > 0 {
                assert_eq!(t[a][a], (0, (-NORM_DIAGONAL[a]) as i8));
            }
        }
    }

    #[test]
    fn split_quaternion_seed() {
        let k = Field::rationals();
        let o = OctonionAlgebra::new(k);
        let (i, j, kk) = (o.basis(1), o.basis(2), o.basis(3));
        assert_eq!(i.mul(&i), o.one());
        assert_eq!(j.mul(&j), o.one());
        assert_eq!(i.mul(&j), kk);
        assert_eq!(j.mul(&i), -&kk);
        assert_eq!(kk.mul(&kk), -&o.one());
    }

    #[test]
    fn composition_and_conjugation() {
        let k = Field::finite(7).unwrap();
        let o = OctonionAlgebra::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = o.random(&mut rng);
            let y = o.random(&mut rng);
            assert_eq!(x.mul(&y).norm(), &x.norm() * &y.norm());
            assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
            assert_eq!(x.mul(&x.conj()), o.one().scale(&x.norm()));
            let tr = o.one().scale(&x.bilinear(&o.one()));
            assert_eq!(&x + &x.conj(), tr);
            // alternativity
            assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
            assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
        }
    }

    #[test]
    fn embedded_quaternions() {
        let q = Field::rationals();
        let o = OctonionAlgebra::new(q);
        for (z, e) in [(1, 1), (-1, -1), (2, 3), (-1, 7), (5, -3)] {
            let d = o.embed_quaternion(&q.from_i64(z), &q.from_i64(e)).unwrap();
            assert!(d.is_closed());
            let [_, u, v, _] = d.basis();
            assert_eq!(u.mul(u), o.one().scale(&q.from_i64(z)));
            assert_eq!(v.mul(v), o.one().scale(&q.from_i64(e)));
            assert_eq!(u.mul(v), -&v.mul(u));
            assert!(!d.q_j().is_zero());
            for a in d.basis() {
                assert!(d.basis().iter().all(|b| a.mul(d.j()).bilinear(b).is_zero()));
            }
        }
        let d = o.embed_quaternion(&q.from_i64(-1), &q.from_i64(-1)).unwrap();
        assert!(!o.is_split_quaternion(&d).unwrap());
        assert!(!crate::forms::pfister_is_split(d.pfister(), Field::reals()).unwrap());
    }

    #[test]
    fn split_recovers_components() {
        let k = Field::finite(11).unwrap();
        let o = OctonionAlgebra::new(k);
        let d = o.embed_quaternion(&k.from_i64(3), &k.from_i64(5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let c = o.random(&mut rng);
            let (a, b) = d.split(&c);
            assert!(d.contains(&a) && d.contains(&b));
            assert_eq!(&a + &b.mul(d.j()), c);
        }
    }
}

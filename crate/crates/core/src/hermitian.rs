//! The Hermitian presentation `H₃(C, γ)` over the split octonions.
//!
//! An element `h(f₁,f₂,f₃; c₁,c₂,c₃)` stands for the matrix
//!
//! ```text
//! [ f₁           c₃          γ₁⁻¹γ₃ c̄₂ ]
//! [ γ₂⁻¹γ₁ c̄₃   f₂          c₁         ]
//! [ c₂           γ₃⁻¹γ₂ c̄₁  f₃         ]
//! ```
//!
//! which satisfies `γ⁻¹ x̄ᵀ γ = x`. Coordinates are ordered
//! `(f₁, f₂, f₃, c₁[0..8], c₂[0..8], c₃[0..8])`.

use std::sync::OnceLock;

use rand::{Rng, RngCore};

use crate::algebra::{self, AlbertAlgebra, DerivationSpace, PeirceDecomposition, Presentation, StructureConstants, DIM};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::GammaTriple;
use crate::octonion::{Octonion, OctonionAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianElement {
    pub f: [Scalar; 3],
    pub c: [Octonion; 3],
}

/// An octonion matrix as three rows.
pub type OctMatrix = [[Octonion; 3]; 3];

impl HermitianElement {
    pub fn new(f: [Scalar; 3], c: [Octonion; 3]) -> Self {
        HermitianElement { f, c }
    }

    pub fn zero(k: &Field) -> Self {
        HermitianElement { f: std::array::from_fn(|_| k.zero()), c: std::array::from_fn(|_| Octonion::zero(k)) }
    }

    pub fn diagonal(k: &Field, f: [i64; 3]) -> Self {
        HermitianElement { f: f.map(|x| k.from_i64(x)), c: std::array::from_fn(|_| Octonion::zero(k)) }
    }

    pub fn from_coords(v: &[Scalar]) -> Self {
        assert_eq!(v.len(), DIM);
        HermitianElement {
            f: std::array::from_fn(|i| v[i].clone()),
            c: std::array::from_fn(|a| Octonion::from_slice(&v[3 + 8 * a..11 + 8 * a])),
        }
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        self.f.iter().cloned().chain(self.c.iter().flat_map(|o| o.coords().iter().cloned())).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        HermitianElement { f: std::array::from_fn(|i| &self.f[i] + &o.f[i]), c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HermitianElement { f: std::array::from_fn(|i| &self.f[i] - &o.f[i]), c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        HermitianElement { f: std::array::from_fn(|i| &self.f[i] * s), c: std::array::from_fn(|i| self.c[i].scale(s)) }
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(Scalar::is_zero) && self.c.iter().all(Octonion::is_zero)
    }
}

/// `H₃(C, γ)` over a field.
#[derive(Debug)]
pub struct HermitianAlgebra {
    octonions: OctonionAlgebra,
    gamma: GammaTriple,
    /// `γ₁⁻¹γ₃`, `γ₂⁻¹γ₁`, `γ₃⁻¹γ₂`: the twists on the mirrored entries of c₂, c₃, c₁.
    twist: [Scalar; 3],
    structure: OnceLock<StructureConstants>,
    derivations: OnceLock<Result<DerivationSpace>>,
}

impl Clone for HermitianAlgebra {
    fn clone(&self) -> Self {
        HermitianAlgebra::new(self.field(), self.gamma.clone()).expect("already validated")
    }
}

impl HermitianAlgebra {
    pub fn new(field: Field, gamma: GammaTriple) -> Result<Self> {
        if gamma.entries().iter().any(|g| !field.contains(g)) {
            return Err(Error::FieldMismatch);
        }
        let g = gamma.entries();
        let inv = |x: &Scalar| x.inv().expect("gamma entries are nonzero");
        // twist[a] multiplies the conjugate of c_{a+1} in its mirrored slot
        let twist = [&inv(&g[2]) * &g[1], &inv(&g[0]) * &g[2], &inv(&g[1]) * &g[0]];
        Ok(HermitianAlgebra {
            octonions: OctonionAlgebra::new(field),
            gamma,
            twist,
            structure: OnceLock::new(),
            derivations: OnceLock::new(),
        })
    }

    /// `H₃(C, id)`.
    pub fn split(field: Field) -> Self {
        HermitianAlgebra::new(field, GammaTriple::identity(field)).expect("identity twist")
    }

    pub fn gamma(&self) -> &GammaTriple {
        &self.gamma
    }

    pub fn octonions(&self) -> &OctonionAlgebra {
        &self.octonions
    }

    pub fn identity(&self) -> HermitianElement {
        HermitianElement::diagonal(&self.field(), [1, 1, 1])
    }

    pub fn zero(&self) -> HermitianElement {
        HermitianElement::zero(&self.field())
    }

    /// `h(0,0,0; …)` with a single octonion basis vector in slot `a`.
    pub fn off_diagonal(&self, a: usize, o: Octonion) -> HermitianElement {
        let mut x = self.zero();
        x.c[a] = o;
        x
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> HermitianElement {
        let k = self.field();
        HermitianElement { f: std::array::from_fn(|_| k.random(rng)), c: std::array::from_fn(|_| self.octonions.random(rng)) }
    }

    fn owns(&self, x: &HermitianElement) -> bool {
        let k = self.field();
        x.f.iter().all(|s| k.contains(s)) && x.c.iter().all(|o| o.coords().iter().all(|s| k.contains(s)))
    }

    /// The full γ-Hermitian octonion matrix.
    pub fn to_matrix(&self, x: &HermitianElement) -> OctMatrix {
        let k = self.field();
        let s = |v: &Scalar| Octonion::one(&k).scale(v);
        [
            [s(&x.f[0]), x.c[2].clone(), x.c[1].conj().scale(&self.twist[1])],
            [x.c[2].conj().scale(&self.twist[2]), s(&x.f[1]), x.c[0].clone()],
            [x.c[1].clone(), x.c[0].conj().scale(&self.twist[0]), s(&x.f[2])],
        ]
    }

    /// Reads the compressed coordinates off a γ-Hermitian matrix.
    pub fn from_matrix(&self, m: &OctMatrix) -> HermitianElement {
        HermitianElement {
            f: std::array::from_fn(|a| m[a][a].coords()[0].clone()),
            c: [m[1][2].clone(), m[2][0].clone(), m[0][1].clone()],
        }
    }

    /// Whether a full octonion matrix satisfies `γ⁻¹ x̄ᵀ γ = x`.
    pub fn is_gamma_hermitian(&self, m: &OctMatrix) -> bool {
        let g = self.gamma.entries();
        (0..3).all(|a| {
            (0..3).all(|b| {
                let mirrored = m[b][a].conj().scale(&(&g[b] / &g[a]));
                mirrored == m[a][b]
            })
        })
    }

    /// `xy = ½(x·y + y·x)` with octonion matrix products.
    pub fn jordan_mul(&self, x: &HermitianElement, y: &HermitianElement) -> HermitianElement {
        let mx = self.to_matrix(x);
        let my = self.to_matrix(y);
        let half = self.field().half();
        let entry = |a: usize, c: usize| {
            let mut acc = Octonion::zero(&self.field());
            for b in 0..3 {
                acc = &acc + &mx[a][b].mul(&my[b][c]);
                acc = &acc + &my[a][b].mul(&mx[b][c]);
            }
            acc.scale(&half)
        };
        let diag: [Octonion; 3] = std::array::from_fn(|a| entry(a, a));
        debug_assert!(diag.iter().all(|d| d.coords()[1..].iter().all(Scalar::is_zero)));
        HermitianElement { f: std::array::from_fn(|a| diag[a].coords()[0].clone()), c: [entry(1, 2), entry(2, 0), entry(0, 1)] }
    }

    pub fn try_jordan_mul(&self, x: &HermitianElement, y: &HermitianElement) -> Result<HermitianElement> {
        if !self.owns(x) || !self.owns(y) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.jordan_mul(x, y))
    }

    /// Weights of `q(c₁), q(c₂), q(c₃)` in `Q`.
    pub fn norm_weights(&self) -> &[Scalar; 3] {
        &self.twist
    }

    /// `Q(x) = ½(f₁² + f₂² + f₃²) + γ₃⁻¹γ₂ q(c₁) + γ₁⁻¹γ₃ q(c₂) + γ₂⁻¹γ₁ q(c₃)`.
    pub fn quadratic_norm(&self, x: &HermitianElement) -> Scalar {
        let k = self.field();
        let mut acc = k.zero();
        for f in &x.f {
            acc += &f.square();
        }
        acc *= &k.half();
        for a in 0..3 {
            acc += &(&self.twist[a] * &x.c[a].norm());
        }
        acc
    }

    /// `⟨x, y⟩ = Q(x + y) − Q(x) − Q(y)`.
    pub fn bilinear_form(&self, x: &HermitianElement, y: &HermitianElement) -> Scalar {
        let mut acc = self.field().zero();
        for (a, b) in x.f.iter().zip(&y.f) {
            acc += &(a * b);
        }
        for a in 0..3 {
            acc += &(&self.twist[a] * &x.c[a].bilinear(&y.c[a]));
        }
        acc
    }

    pub fn is_idempotent(&self, w: &HermitianElement) -> bool {
        self.jordan_mul(w, w) == *w
    }

    /// `w² = w`, `w ∉ {0, e}` and `Q(w) = ½`.
    pub fn is_primitive_idempotent(&self, w: &HermitianElement) -> bool {
        !w.is_zero() && *w != self.identity() && self.is_idempotent(w) && self.quadratic_norm(w) == self.field().half()
    }

    pub fn peirce_decompose(&self, w: &HermitianElement) -> Result<PeirceDecomposition> {
        if !self.is_primitive_idempotent(w) {
            return Err(Error::NotPrimitive);
        }
        algebra::peirce_decomposition(self, &w.to_coords())
    }

    /// A rank-one idempotent `v v̄ᵀγ / (v̄ᵀγv)` with `v` drawn from the
    /// associative quaternion span of `e, i, j, k`.
    pub fn random_primitive_idempotent<R: Rng + ?Sized>(&self, rng: &mut R) -> HermitianElement {
        let k = self.field();
        let g = self.gamma.entries();
        loop {
            let v: [Octonion; 3] = std::array::from_fn(|_| {
                let mut c: [Scalar; 8] = std::array::from_fn(|_| k.zero());
                for s in c.iter_mut().take(4) {
                    *s = k.random(rng);
                }
                Octonion::new(c)
            });
            let mut s = k.zero();
            for a in 0..3 {
                s += &(&g[a] * &v[a].norm());
            }
            let Some(s_inv) = s.inv() else { continue };
            let entry = |a: usize, b: usize| v[a].mul(&v[b].conj()).scale(&(&g[b] * &s_inv));
            let w = HermitianElement {
                f: std::array::from_fn(|a| entry(a, a).coords()[0].clone()),
                c: [entry(1, 2), entry(2, 0), entry(0, 1)],
            };
            debug_assert!(self.is_primitive_idempotent(&w));
            return w;
        }
    }

    /// The identities satisfied by every idempotent `w ∉ {0, e}`, by name.
    pub fn idempotent_lemma_checks(&self, w: &HermitianElement) -> Vec<(&'static str, bool)> {
        let k = self.field();
        let e = self.identity();
        let ew = e.sub(w);
        let qw = self.quadratic_norm(w);
        let half = k.half();
        vec![
            ("w^2 = w", self.is_idempotent(w)),
            ("Q(w) in {1/2, 1}", qw == half || qw.is_one()),
            ("<w,e> = 2Q(w)", self.bilinear_form(w, &e) == &qw + &qw),
            ("(e-w)^2 = e-w", self.is_idempotent(&ew)),
            ("w(e-w) = 0", self.jordan_mul(w, &ew).is_zero()),
            ("<w,e-w> = 0", self.bilinear_form(w, &ew).is_zero()),
            ("Q(e-w) = 3/2 - Q(w)", self.quadratic_norm(&ew) == &(&k.from_i64(3) * &half) - &qw),
            ("primitive iff Q(w) = 1/2", self.is_primitive_idempotent(w) == (qw == half)),
        ]
    }
}

impl AlbertAlgebra for HermitianAlgebra {
    fn field(&self) -> Field {
        self.octonions.field()
    }

    fn presentation(&self) -> Presentation {
        Presentation::Hermitian
    }

    fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.jordan_mul(&HermitianElement::from_coords(x), &HermitianElement::from_coords(y)).to_coords()
    }

    fn unit(&self) -> Vec<Scalar> {
        self.identity().to_coords()
    }

    fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.bilinear_form(&HermitianElement::from_coords(x), &HermitianElement::from_coords(y))
    }

    fn structure(&self) -> &StructureConstants {
        self.structure.get_or_init(|| StructureConstants::compute(self))
    }

    fn derivations(&self) -> Result<&DerivationSpace> {
        self.derivations
            .get_or_init(|| DerivationSpace::compute(self.structure(), &self.field()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn random_vector(&self, rng: &mut dyn RngCore) -> Vec<Scalar> {
        self.random_element(rng).to_coords()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn twisted(k: Field) -> HermitianAlgebra {
        HermitianAlgebra::new(k, GammaTriple::from_ints(k, [2, -1, 3]).unwrap()).unwrap()
    }

    #[test]
    fn unit_and_norm_examples() {
        let k = Field::rationals();
        let h = HermitianAlgebra::split(k);
        let e = h.identity();
        let w = HermitianElement::diagonal(&k, [1, 0, 0]);
        assert_eq!(h.quadratic_norm(&e), k.from_frac(3, 2).unwrap());
        assert_eq!(h.quadratic_norm(&w), k.half());
        assert_eq!(h.quadratic_norm(&e.sub(&w)), k.one());
        assert_eq!(h.jordan_mul(&w, &w), w);
        assert!(h.is_primitive_idempotent(&w));
        assert!(!h.is_primitive_idempotent(&e));
        assert!(!h.is_primitive_idempotent(&HermitianElement::diagonal(&k, [1, 1, 0])));
    }

    #[test]
    fn matrices_are_gamma_hermitian() {
        let k = Field::finite(7).unwrap();
        let h = twisted(k);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let x = h.random_element(&mut rng);
            let m = h.to_matrix(&x);
            assert!(h.is_gamma_hermitian(&m));
            assert_eq!(h.from_matrix(&m), x);
        }
    }

    #[test]
    fn jordan_identity_and_unit() {
        let k = Field::finite(7).unwrap();
        let h = twisted(k);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let x = h.random_element(&mut rng);
            let y = h.random_element(&mut rng);
            assert_eq!(h.jordan_mul(&h.identity(), &x), x);
            assert_eq!(h.jordan_mul(&x, &y), h.jordan_mul(&y, &x));
            let x2 = h.jordan_mul(&x, &x);
            assert_eq!(h.jordan_mul(&x2, &h.jordan_mul(&y, &x)), h.jordan_mul(&h.jordan_mul(&x2, &y), &x));
        }
    }

    #[test]
    fn norm_is_half_trace_of_square() {
        let k = Field::finite(11).unwrap();
        let h = twisted(k);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = h.random_element(&mut rng);
            let x2 = h.jordan_mul(&x, &x);
            let tr = x2.f.iter().fold(k.zero(), |a, f| a + f);
            assert_eq!(h.quadratic_norm(&x), &tr * &k.half());
        }
    }

    #[test]
    fn bilinear_form_is_nondegenerate() {
        let k = Field::rationals();
        let h = twisted(k);
        let basis: Vec<Vec<Scalar>> = (0..DIM).map(|i| algebra::unit_vector(&k, i)).collect();
        let gram = Matrix::from_rows(basis.iter().map(|x| basis.iter().map(|y| h.bilinear(x, y)).collect()).collect());
        assert!(!gram.det().is_zero());
    }

    #[test]
    fn peirce_dimensions() {
        for k in [Field::finite(5).unwrap(), Field::rationals()] {
            let h = twisted(k);
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let w = h.random_primitive_idempotent(&mut rng);
            assert!(h.is_primitive_idempotent(&w));
            assert_eq!(h.peirce_decompose(&w).unwrap().dims(), (1, 1, 9, 16));
        }
        let k = Field::rationals();
        let h = HermitianAlgebra::split(k);
        assert_eq!(h.peirce_decompose(&h.identity()).unwrap_err(), Error::NotPrimitive);
    }

    #[test]
    fn lemma_on_diagonal_idempotents() {
        let k = Field::finite(5).unwrap();
        let h = HermitianAlgebra::split(k);
        for bits in 1..7 {
            let w = HermitianElement::diagonal(&k, [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1]);
            for (name, ok) in h.idempotent_lemma_checks(&w) {
                assert!(ok, "{name} fails for {w:?}");
            }
        }
    }
}

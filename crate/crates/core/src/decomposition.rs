//! The splitting `H₃(C, γ) = H₃(D, γ) ⊕ Skew₃(D, γ)·j` along a quaternion
//! subalgebra `D` with `C = D ⊕ Dj`.
//!
//! Writing octonion entries as `a + bj` with `a, b ∈ D`, a γ-Hermitian matrix
//! becomes `X + Y·j` where `ι(X) = X` for `ι(X) = γ⁻¹X̄ᵀγ`, and `Y` satisfies
//! `γ⁻¹Yᵀγ = −Y` (no bar: conjugation flips the sign of `bj` already). The
//! Jordan product then reads
//!
//! ```text
//! (X + Y·j)(U + V·j) = XU + Y*V + (X•V + U•Y)·j
//! X•V = ½(V·X̄ + (Vᵀ·Xᵀ)ᵀ)
//! Y*V = (q(j)/2) γ⁻¹(ι(V)·Y + ι(Y)·V)ᵀγ
//! ```
//!
//! where matrix products multiply entries in `D` and `XU` is the Jordan
//! product in `H₃(D, γ)`.

use rand::Rng;

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::hermitian::{HermitianAlgebra, HermitianElement, OctMatrix};
use crate::octonion::{Octonion, QuaternionSubalgebra};

/// A 3×3 matrix with entries in `D`, stored as octonions.
pub type QuatMatrix = OctMatrix;

fn zero_matrix(k: &Field) -> QuatMatrix {
    std::array::from_fn(|_| std::array::from_fn(|_| Octonion::zero(k)))
}

fn mat_mul(a: &QuatMatrix, b: &QuatMatrix, k: &Field) -> QuatMatrix {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| (0..3).fold(Octonion::zero(k), |acc, m| &acc + &a[r][m].mul(&b[m][c])))
    })
}

fn mat_add(a: &QuatMatrix, b: &QuatMatrix) -> QuatMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r][c] + &b[r][c]))
}

fn mat_scale(a: &QuatMatrix, s: &Scalar) -> QuatMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| a[r][c].scale(s)))
}

fn transpose(a: &QuatMatrix) -> QuatMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| a[c][r].clone()))
}

fn bar(a: &QuatMatrix) -> QuatMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| a[r][c].conj()))
}

pub fn is_zero(a: &QuatMatrix) -> bool {
    a.iter().flatten().all(Octonion::is_zero)
}

/// `H₃(C, γ)` together with a doubling `C = D ⊕ Dj`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    ambient: HermitianAlgebra,
    quat: QuaternionSubalgebra,
}

impl Decomposition {
    pub fn new(ambient: HermitianAlgebra, quat: QuaternionSubalgebra) -> Self {
        Decomposition { ambient, quat }
    }

    /// Embeds the quaternion algebra `(ζ, η)` and splits along it.
    pub fn with_pfister(ambient: HermitianAlgebra, zeta: &Scalar, eta: &Scalar) -> Result<Self> {
        let quat = ambient.octonions().embed_quaternion(zeta, eta)?;
        Ok(Decomposition { ambient, quat })
    }

    pub fn ambient(&self) -> &HermitianAlgebra {
        &self.ambient
    }

    pub fn quaternions(&self) -> &QuaternionSubalgebra {
        &self.quat
    }

    fn field(&self) -> Field {
        self.ambient.octonions().field()
    }

    fn gamma_ratio(&self, a: usize, b: usize) -> Scalar {
        let g = self.ambient.gamma().entries();
        &g[b] / &g[a]
    }

    /// `ι(X) = γ⁻¹X̄ᵀγ`.
    pub fn iota(&self, x: &QuatMatrix) -> QuatMatrix {
        std::array::from_fn(|a| std::array::from_fn(|b| x[b][a].conj().scale(&self.gamma_ratio(a, b))))
    }

    fn entries_in_d(&self, x: &QuatMatrix) -> bool {
        x.iter().flatten().all(|o| self.quat.contains(o))
    }

    pub fn is_hermitian(&self, x: &QuatMatrix) -> bool {
        self.entries_in_d(x) && self.iota(x) == *x
    }

    /// `γ⁻¹Yᵀγ = −Y`.
    pub fn is_skew(&self, y: &QuatMatrix) -> bool {
        self.entries_in_d(y)
            && (0..3).all(|a| (0..3).all(|b| y[b][a].scale(&self.gamma_ratio(a, b)) == -&y[a][b]))
    }

    fn random_d<R: Rng + ?Sized>(&self, rng: &mut R) -> Octonion {
        let k = self.field();
        self.quat.basis().iter().fold(Octonion::zero(&k), |acc, b| &acc + &b.scale(&k.random(rng)))
    }

    pub fn random_hermitian<R: Rng + ?Sized>(&self, rng: &mut R) -> QuatMatrix {
        let k = self.field();
        let mut x = zero_matrix(&k);
        for a in 0..3 {
            x[a][a] = Octonion::one(&k).scale(&k.random(rng));
            for b in a + 1..3 {
                x[a][b] = self.random_d(rng);
                x[b][a] = x[a][b].conj().scale(&self.gamma_ratio(b, a));
            }
        }
        x
    }

    pub fn random_skew<R: Rng + ?Sized>(&self, rng: &mut R) -> QuatMatrix {
        let k = self.field();
        let mut y = zero_matrix(&k);
        for a in 0..3 {
            for b in a + 1..3 {
                y[a][b] = self.random_d(rng);
                y[b][a] = -&y[a][b].scale(&self.gamma_ratio(b, a));
            }
        }
        y
    }

    /// `½(XU + UX)` in `H₃(D, γ)`.
    pub fn hermitian_product(&self, x: &QuatMatrix, u: &QuatMatrix) -> QuatMatrix {
        let k = self.field();
        mat_scale(&mat_add(&mat_mul(x, u, &k), &mat_mul(u, x, &k)), &k.half())
    }

    /// `X•V = ½(V·X̄ + (Vᵀ·Xᵀ)ᵀ)`.
    pub fn bullet(&self, x: &QuatMatrix, v: &QuatMatrix) -> QuatMatrix {
        let k = self.field();
        let left = mat_mul(v, &bar(x), &k);
        let right = transpose(&mat_mul(&transpose(v), &transpose(x), &k));
        mat_scale(&mat_add(&left, &right), &k.half())
    }

    /// `Y*V = (q(j)/2) γ⁻¹(ι(V)·Y + ι(Y)·V)ᵀγ`.
    pub fn star(&self, y: &QuatMatrix, v: &QuatMatrix) -> QuatMatrix {
        let k = self.field();
        let inner = mat_add(&mat_mul(&self.iota(v), y, &k), &mat_mul(&self.iota(y), v, &k));
        let t = transpose(&inner);
        let twisted: QuatMatrix = std::array::from_fn(|a| std::array::from_fn(|b| t[a][b].scale(&self.gamma_ratio(a, b))));
        mat_scale(&twisted, &(&self.quat.q_j() * &k.half()))
    }

    /// The ambient element `X + Y·j`.
    pub fn combine(&self, x: &QuatMatrix, y: &QuatMatrix) -> HermitianElement {
        let j = self.quat.j();
        let m: OctMatrix = std::array::from_fn(|a| std::array::from_fn(|b| &x[a][b] + &y[a][b].mul(j)));
        self.ambient.from_matrix(&m)
    }

    /// Splits an ambient element into `(X, Y)` with `x = X + Y·j`.
    pub fn decompose(&self, x: &HermitianElement) -> (QuatMatrix, QuatMatrix) {
        let m = self.ambient.to_matrix(x);
        let k = self.field();
        let mut h = zero_matrix(&k);
        let mut s = zero_matrix(&k);
        for a in 0..3 {
            for b in 0..3 {
                let (d, e) = self.quat.split(&m[a][b]);
                h[a][b] = d;
                s[a][b] = e;
            }
        }
        (h, s)
    }

    /// Compares `(X + Y·j)(U + V·j)` in the ambient algebra with
    /// `XU + Y*V + (X•V + U•Y)·j`.
    pub fn product_identity_holds(&self, x: &QuatMatrix, y: &QuatMatrix, u: &QuatMatrix, v: &QuatMatrix) -> bool {
        let lhs = self.ambient.jordan_mul(&self.combine(x, y), &self.combine(u, v));
        let herm = mat_add(&self.hermitian_product(x, u), &self.star(y, v));
        let skew = mat_add(&self.bullet(x, v), &self.bullet(u, y));
        lhs == self.combine(&herm, &skew)
    }
}

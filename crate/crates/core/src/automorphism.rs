//! Automorphisms of the Albert algebra as exact 27×27 matrices: the
//! `SL₃ × SL₃` action on the Tits presentation, the torus, the involutions
//! `θ∘f_t` and `r_w`, fixed subalgebras and centralizers in `Der(A)`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{self, AlbertAlgebra, Presentation, DIM};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hermitian::{HermitianAlgebra, HermitianElement};
use crate::linalg::{Matrix, Subspace};
use crate::tits::{Mat3, TitsAlgebra, TitsElement};

/// A linear endomorphism of the 27 coordinates; column `s` is the image of `b_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    matrix: Matrix,
    presentation: Presentation,
}

impl AlgebraMap {
    pub fn new(matrix: Matrix, presentation: Presentation) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (DIM, DIM), "algebra maps are 27×27");
        AlgebraMap { matrix, presentation }
    }

    pub fn identity(k: &Field, presentation: Presentation) -> Self {
        AlgebraMap::new(Matrix::identity(DIM, k), presentation)
    }

    /// The matrix of a linear map given on coordinate vectors.
    pub fn from_fn(k: &Field, presentation: Presentation, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Self {
        let cols: Vec<Vec<Scalar>> = (0..DIM).map(|s| f(&algebra::unit_vector(k, s))).collect();
        AlgebraMap::new(Matrix::from_columns(&cols), presentation)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> AlgebraMap {
        assert_eq!(self.presentation, other.presentation, "maps act on different presentations");
        AlgebraMap::new(self.matrix.mul(&other.matrix), self.presentation)
    }

    pub fn inverse(&self) -> Option<AlgebraMap> {
        self.matrix.inverse().map(|m| AlgebraMap::new(m, self.presentation))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).is_identity()
    }
}

impl Serialize for AlgebraMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.to_rows().serialize(s)
    }
}

/// `(a₀, a₁, a₂) ↦ (u a₀ u⁻¹, u a₁ v⁻¹, v a₂ u⁻¹)`.
///
/// This preserves the norm exactly when `det u = det v`; scalar pairs act
/// trivially, so it is an automorphism for all of `SL₃ × SL₃`.
pub fn f_uv(alg: &TitsAlgebra, u: &Mat3, v: &Mat3) -> Result<AlgebraMap> {
    let k = alg.field();
    let ui = u.inverse().ok_or(Error::Singular)?;
    let vi = v.inverse().ok_or(Error::Singular)?;
    Ok(AlgebraMap::from_fn(&k, Presentation::Tits, |x| {
        let [a0, a1, a2] = TitsElement::from_coords(x).0;
        TitsElement::new(&(u * &a0) * &ui, &(u * &a1) * &vi, &(v * &a2) * &ui).to_coords()
    }))
}

/// `(a₀, a₁, a₂) ↦ (a₀ᵀ, a₂ᵀ, a₁ᵀ)`. Requires `ν² = 1`.
pub fn theta(alg: &TitsAlgebra) -> Result<AlgebraMap> {
    if !alg.nu().square().is_one() {
        return Err(Error::Presentation("the transpose involution needs nu^2 = 1".into()));
    }
    let k = alg.field();
    Ok(AlgebraMap::from_fn(&k, Presentation::Tits, |x| {
        let [a0, a1, a2] = TitsElement::from_coords(x).0;
        TitsElement::new(a0.transpose(), a2.transpose(), a1.transpose()).to_coords()
    }))
}

/// `t(u₁, u₂, v₁, v₂)`, the pair `u = diag(u₁, u₁⁻¹u₂, u₂⁻¹)`, `v = diag(v₁, v₁⁻¹v₂, v₂⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    params: [Scalar; 4],
}

impl TorusElement {
    pub fn new(u1: Scalar, u2: Scalar, v1: Scalar, v2: Scalar) -> Result<Self> {
        let params = [u1, u2, v1, v2];
        if params.iter().any(Scalar::is_zero) {
            return Err(Error::ZeroInput("torus parameter"));
        }
        Ok(TorusElement { params })
    }

    pub fn from_ints(k: &Field, p: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = p.map(|x| k.from_i64(x));
        TorusElement::new(a, b, c, d)
    }

    /// Parses `"u1,u2,v1,v2"`.
    pub fn parse(k: &Field, s: &str) -> Result<Self> {
        let v = crate::field::parse_scalar_list(k, s)?;
        let [a, b, c, d]: [Scalar; 4] = v.try_into().map_err(|_| Error::Parse(format!("expected four torus parameters in {s:?}")))?;
        TorusElement::new(a, b, c, d)
    }

    pub fn identity(k: &Field) -> Self {
        TorusElement::from_ints(k, [1, 1, 1, 1]).expect("nonzero")
    }

    pub fn params(&self) -> &[Scalar; 4] {
        &self.params
    }

    pub fn u1(&self) -> &Scalar {
        &self.params[0]
    }

    pub fn u2(&self) -> &Scalar {
        &self.params[1]
    }

    pub fn v1(&self) -> &Scalar {
        &self.params[2]
    }

    pub fn v2(&self) -> &Scalar {
        &self.params[3]
    }

    fn diag(a: &Scalar, b: &Scalar) -> Mat3 {
        let ai = a.inv().expect("nonzero");
        let bi = b.inv().expect("nonzero");
        Mat3::diag([a.clone(), &ai * b, bi])
    }

    pub fn u(&self) -> Mat3 {
        TorusElement::diag(self.u1(), self.u2())
    }

    pub fn v(&self) -> Mat3 {
        TorusElement::diag(self.v1(), self.v2())
    }

    pub fn inverse(&self) -> Self {
        TorusElement { params: self.params.clone().map(|x| x.inv().expect("nonzero")) }
    }

    pub fn to_map(&self, alg: &TitsAlgebra) -> AlgebraMap {
        f_uv(alg, &self.u(), &self.v()).expect("torus elements are invertible")
    }

    pub fn random<R: rand::Rng + ?Sized>(k: &Field, rng: &mut R) -> Self {
        TorusElement { params: std::array::from_fn(|_| k.random_nonzero(rng)) }
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.params;
        write!(f, "t({a},{b},{c},{d})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Singular,
    Basepoint,
    Norm,
    Adjoint,
    Product,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Singular => "map is not invertible",
            WitnessKind::Basepoint => "unit is not fixed",
            WitnessKind::Norm => "norm is not preserved",
            WitnessKind::Adjoint => "adjoint is not preserved",
            WitnessKind::Product => "product is not preserved",
        })
    }
}

/// Outcome of [`check_automorphism`]; a failure carries the first violating input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutCheck {
    Pass,
    Fail { kind: WitnessKind, witness: Vec<Scalar>, second: Option<Vec<Scalar>> },
}

impl AutCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AutCheck::Pass)
    }
}

fn fail(kind: WitnessKind, witness: Vec<Scalar>, second: Option<Vec<Scalar>>) -> AutCheck {
    AutCheck::Fail { kind, witness, second }
}

/// Decides whether `φ` is an automorphism.
///
/// When the presentation carries a cubic norm and adjoint (Tits), checks the
/// basepoint, then `N∘φ = N` on every `b_i`, `b_i ± b_j`, `b_i + b_j + b_k`
/// (which pins down every coefficient of a cubic form using only division by
/// 2), then `φ(x^#) = φ(x)^#` on every `b_i`, `b_i + b_j`. Otherwise checks the
/// unit and the product on all basis pairs.
pub fn check_automorphism<A: AlbertAlgebra + ?Sized>(alg: &A, phi: &AlgebraMap) -> Result<AutCheck> {
    if alg.presentation() != phi.presentation() {
        return Err(Error::Presentation(format!("map acts on the {} presentation, algebra is {}", phi.presentation(), alg.presentation())));
    }
    let k = alg.field();
    let e = alg.unit();
    if phi.matrix().det().is_zero() {
        return Ok(fail(WitnessKind::Singular, e, None));
    }
    if phi.apply(&e) != e {
        return Ok(fail(WitnessKind::Basepoint, e, None));
    }
    let basis: Vec<Vec<Scalar>> = (0..DIM).map(|i| algebra::unit_vector(&k, i)).collect();
    let images: Vec<Vec<Scalar>> = (0..DIM).map(|i| phi.matrix().column(i)).collect();

    if let (Some(_), Some(_)) = (alg.cubic_norm(&e), alg.adjoint(&e)) {
        let norm = |x: &[Scalar]| alg.cubic_norm(x).expect("cubic presentation");
        let mut points: Vec<Vec<usize>> = (0..DIM).map(|i| vec![i]).collect();
        for i in 0..DIM {
            for j in i + 1..DIM {
                points.push(vec![i, j]);
            }
        }
        let pair_count = points.len();
        for i in 0..DIM {
            for j in i + 1..DIM {
                for l in j + 1..DIM {
                    points.push(vec![i, j, l]);
                }
            }
        }
        let combine = |idx: &[usize], src: &[Vec<Scalar>], minus_last: bool| {
            let mut acc = src[idx[0]].clone();
            for (n, &i) in idx.iter().enumerate().skip(1) {
                acc = if minus_last && n == idx.len() - 1 { algebra::sub(&acc, &src[i]) } else { algebra::add(&acc, &src[i]) };
            }
            acc
        };
        for idx in &points {
            let signs: &[bool] = if idx.len() == 2 { &[false, true] } else { &[false] };
            for &minus in signs {
                let x = combine(idx, &basis, minus);
                let fx = combine(idx, &images, minus);
                if norm(&x) != norm(&fx) {
                    return Ok(fail(WitnessKind::Norm, x, None));
                }
            }
        }
        for idx in &points[..pair_count] {
            let x = combine(idx, &basis, false);
            let fx = combine(idx, &images, false);
            let sharp_x = alg.adjoint(&x).expect("cubic presentation");
            if phi.apply(&sharp_x) != alg.adjoint(&fx).expect("cubic presentation") {
                return Ok(fail(WitnessKind::Adjoint, x, None));
            }
        }
        return Ok(AutCheck::Pass);
    }

    let sc = alg.structure();
    for i in 0..DIM {
        for j in i..DIM {
            let lhs: Vec<Scalar> = phi.apply(&sc.multiply(&basis[i], &basis[j]));
            if lhs != sc.multiply(&images[i], &images[j]) {
                return Ok(fail(WitnessKind::Product, basis[i].clone(), Some(basis[j].clone())));
            }
        }
    }
    Ok(AutCheck::Pass)
}

/// What an involution is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    /// `θ∘f_t` on the Tits presentation.
    TypeI(TorusElement),
    /// `r_w`, acting as `+1` on `kw ⊕ k(e−w) ⊕ E₀` and `−1` on `E₁`.
    TypeII(Vec<Scalar>),
}

#[derive(Clone, Debug)]
pub struct InvolutionDescriptor {
    pub kind: InvolutionKind,
    pub realized: AlgebraMap,
}

impl InvolutionDescriptor {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            InvolutionKind::TypeI(_) => "TypeI",
            InvolutionKind::TypeII(_) => "TypeII",
        }
    }

    /// `{"kind", "params", "fixed_dim"}`.
    pub fn to_json(&self, fixed_dim: usize) -> serde_json::Value {
        let params = match &self.kind {
            InvolutionKind::TypeI(t) => serde_json::json!({ "torus": t.params().iter().map(ToString::to_string).collect::<Vec<_>>() }),
            InvolutionKind::TypeII(w) => serde_json::json!({
                "idempotent": w.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "presentation": self.realized.presentation(),
            }),
        };
        serde_json::json!({ "kind": self.kind_name(), "params": params, "fixed_dim": fixed_dim })
    }
}

/// `θ∘f_t`.
pub fn type1_involution(alg: &TitsAlgebra, t: &TorusElement) -> Result<InvolutionDescriptor> {
    let realized = theta(alg)?.compose(&t.to_map(alg));
    Ok(InvolutionDescriptor { kind: InvolutionKind::TypeI(t.clone()), realized })
}

/// `r_w` for a primitive idempotent `w` of any presentation.
pub fn type2_involution<A: AlbertAlgebra + ?Sized>(alg: &A, w: &[Scalar]) -> Result<InvolutionDescriptor> {
    let peirce = algebra::peirce_decomposition(alg, w)?;
    let k = alg.field();
    let b = peirce.adapted_basis();
    let b_inv = b.inverse().ok_or_else(|| Error::Presentation("Peirce spaces do not span".into()))?;
    let mut d = Matrix::identity(DIM, &k);
    for i in DIM - peirce.e1.len()..DIM {
        d[(i, i)] = -k.one();
    }
    let realized = AlgebraMap::new(b.mul(&d).mul(&b_inv), alg.presentation());
    Ok(InvolutionDescriptor { kind: InvolutionKind::TypeII(w.to_vec()), realized })
}

/// `r_w` on `H₃(C, γ)`.
pub fn type2_hermitian(alg: &HermitianAlgebra, w: &HermitianElement) -> Result<InvolutionDescriptor> {
    if !alg.is_primitive_idempotent(w) {
        return Err(Error::NotPrimitive);
    }
    type2_involution(alg, &w.to_coords())
}

/// A fixed subalgebra, with its basis in reduced echelon form.
#[derive(Clone, Debug)]
pub struct FixedSubspace {
    pub basis: Vec<Vec<Scalar>>,
}

impl FixedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn kernel_of_shift(phi: &AlgebraMap, k: &Field) -> Vec<Vec<Scalar>> {
    let shifted = phi.matrix().sub(&Matrix::identity(DIM, k));
    Subspace::span(DIM, &shifted.nullspace()).basis().to_vec()
}

/// `ker(φ − 1)` for an involution `φ`, checked to be a Jordan subalgebra.
pub fn fixed_subspace<A: AlbertAlgebra + ?Sized>(alg: &A, phi: &AlgebraMap) -> Result<FixedSubspace> {
    let k = alg.field();
    if !phi.is_involution() {
        return Err(Error::NotInvolutive);
    }
    let basis = kernel_of_shift(phi, &k);
    if !algebra::is_subalgebra(alg, &basis) {
        return Err(Error::Presentation("fixed points are not closed under the product".into()));
    }
    Ok(FixedSubspace { basis })
}

/// `dim ker(φ − 1)` without the closure check.
pub fn fixed_dimension(phi: &AlgebraMap, k: &Field) -> Result<usize> {
    if !phi.is_involution() {
        return Err(Error::NotInvolutive);
    }
    Ok(DIM - phi.matrix().sub(&Matrix::identity(DIM, k)).rank())
}

/// Dimensions of the `+1` and `−1` eigenspaces of `D ↦ φDφ⁻¹` on `Der(A)`.
/// The first is the dimension of the fixed-point group of `φ`.
pub fn centralizer_dimensions<A: AlbertAlgebra + ?Sized>(alg: &A, phi: &AlgebraMap) -> Result<(usize, usize)> {
    let der = alg.derivations()?;
    let k = alg.field();
    let inv = phi.inverse().ok_or(Error::Singular)?;
    let action = der.conjugation_action(phi.matrix(), inv.matrix())?;
    let n = der.dim();
    let id = Matrix::identity(n, &k);
    let plus = n - action.sub(&id).rank();
    let minus = n - action.add(&id).rank();
    Ok((plus, minus))
}

pub fn centralizer_dimension<A: AlbertAlgebra + ?Sized>(alg: &A, inv: &InvolutionDescriptor) -> Result<usize> {
    Ok(centralizer_dimensions(alg, &inv.realized)?.0)
}

//! The first Tits construction `J(Mat₃(k), ν) = M₀ ⊕ M₁ ⊕ M₂`.
//!
//! Norm, adjoint and trace are the standard ones for the first construction:
//!
//! ```text
//! N(m)  = n(m₀) + ν n(m₁) + ν⁻¹ n(m₂) − tr(m₀m₁m₂)
//! m^#   = (m₀^# − m₁m₂,  ν⁻¹m₂^# − m₀m₁,  ν m₁^# − m₂m₀)
//! T(x,y) = tr(x₀y₀) + tr(x₁y₂) + tr(x₂y₁)
//! ```
//!
//! Coordinates are `m₀, m₁, m₂`, each row-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use rand::Rng;

use crate::algebra::{AlbertAlgebra, DerivationSpace, Presentation, StructureConstants, DIM};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A 3×3 matrix over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Scalar; 3]; 3]);

impl Mat3 {
    pub fn zero(k: &Field) -> Self {
        Mat3(std::array::from_fn(|_| std::array::from_fn(|_| k.zero())))
    }

    pub fn identity(k: &Field) -> Self {
        Mat3::diag([k.one(), k.one(), k.one()])
    }

    pub fn diag(d: [Scalar; 3]) -> Self {
        let z = d[0].zero_like();
        let [a, b, c] = d;
        Mat3([[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]])
    }

    /// The matrix unit `E_rc`.
    pub fn unit(k: &Field, r: usize, c: usize) -> Self {
        let mut m = Mat3::zero(k);
        m.0[r][c] = k.one();
        m
    }

    pub fn from_ints(k: &Field, rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(|x| k.from_i64(x))))
    }

    pub fn from_slice(v: &[Scalar]) -> Self {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| v[3 * r + c].clone())))
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        self.0.iter().flat_map(|r| r.iter().cloned()).collect()
    }

    pub fn random<R: Rng + ?Sized>(k: &Field, rng: &mut R) -> Self {
        Mat3(std::array::from_fn(|_| std::array::from_fn(|_| k.random(rng))))
    }

    pub fn transpose(&self) -> Self {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| self.0[c][r].clone())))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] * s)))
    }

    pub fn trace(&self) -> Scalar {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    /// Sum of principal 2×2 minors.
    pub fn sr(&self) -> Scalar {
        self.sharp().trace()
    }

    /// Determinant `n(m)`.
    pub fn det(&self) -> Scalar {
        let m = &self.0;
        let mut acc = m[0][0].zero_like();
        for c in 0..3 {
            let minor = &(&m[1][(c + 1) % 3] * &m[2][(c + 2) % 3]) - &(&m[1][(c + 2) % 3] * &m[2][(c + 1) % 3]);
            acc += &(&m[0][c] * &minor);
        }
        acc
    }

    /// Classical adjugate `m^# = m² − tr(m)m + sr(m)1`.
    pub fn sharp(&self) -> Self {
        let m = &self.0;
        // adj[r][c] is the cofactor of entry (c, r)
        Mat3(std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let (r1, r2) = ((c + 1) % 3, (c + 2) % 3);
                let (c1, c2) = ((r + 1) % 3, (r + 2) % 3);
                &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
            })
        }))
    }

    /// `m # m′ = (m + m′)^# − m^# − m′^#`.
    pub fn sharp_product(&self, other: &Mat3) -> Self {
        &(&(self + other).sharp() - &self.sharp()) - &other.sharp()
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        Some(self.sharp().scale(&d))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Scalar::is_zero)
    }
}

impl Add for &Mat3 {
    type Output = Mat3;
    fn add(self, o: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] + &o.0[r][c])))
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, o: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] - &o.0[r][c])))
    }
}

impl Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| -&self.0[r][c])))
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, o: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let mut acc = self.0[r][0].zero_like();
                for k in 0..3 {
                    if !self.0[r][k].is_zero() && !o.0[k][c].is_zero() {
                        acc += &(&self.0[r][k] * &o.0[k][c]);
                    }
                }
                acc
            })
        }))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.0.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// Parses `"a,b,c;d,e,f;g,h,i"`.
pub fn parse_mat3(k: &Field, s: &str) -> Result<Mat3> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 3 {
        return Err(Error::Parse(format!("expected three rows in {s:?}")));
    }
    let mut out = Mat3::zero(k);
    for (r, row) in rows.iter().enumerate() {
        let entries = crate::field::parse_scalar_list(k, row)?;
        if entries.len() != 3 {
            return Err(Error::Parse(format!("expected three entries in row {row:?}")));
        }
        for (c, x) in entries.into_iter().enumerate() {
            out.0[r][c] = x;
        }
    }
    Ok(out)
}

/// An element `(m₀, m₁, m₂)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TitsElement(pub [Mat3; 3]);

impl TitsElement {
    pub fn new(m0: Mat3, m1: Mat3, m2: Mat3) -> Self {
        TitsElement([m0, m1, m2])
    }

    pub fn zero(k: &Field) -> Self {
        TitsElement(std::array::from_fn(|_| Mat3::zero(k)))
    }

    pub fn from_coords(v: &[Scalar]) -> Self {
        assert_eq!(v.len(), DIM);
        TitsElement(std::array::from_fn(|i| Mat3::from_slice(&v[9 * i..9 * i + 9])))
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        self.0.iter().flat_map(Mat3::to_vec).collect()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        TitsElement(std::array::from_fn(|i| self.0[i].scale(s)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Mat3::is_zero)
    }
}

impl Add for &TitsElement {
    type Output = TitsElement;
    fn add(self, o: &TitsElement) -> TitsElement {
        TitsElement(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &TitsElement {
    type Output = TitsElement;
    fn sub(self, o: &TitsElement) -> TitsElement {
        TitsElement(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl fmt::Debug for TitsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.0[0], self.0[1], self.0[2])
    }
}

/// `J(Mat₃(k), ν)`.
#[derive(Debug)]
pub struct TitsAlgebra {
    field: Field,
    nu: Scalar,
    nu_inv: Scalar,
    structure: OnceLock<StructureConstants>,
    derivations: OnceLock<Result<DerivationSpace>>,
}

impl Clone for TitsAlgebra {
    fn clone(&self) -> Self {
        TitsAlgebra::with_nu(self.field, self.nu.clone()).expect("already validated")
    }
}

impl TitsAlgebra {
    /// `J(Mat₃(k), 1)`, the split Albert algebra.
    pub fn new(field: Field) -> Self {
        TitsAlgebra::with_nu(field, field.one()).expect("ν = 1 is a unit")
    }

    pub fn with_nu(field: Field, nu: Scalar) -> Result<Self> {
        if !field.contains(&nu) {
            return Err(Error::FieldMismatch);
        }
        let nu_inv = nu.inv().ok_or(Error::ZeroInput("nu"))?;
        Ok(TitsAlgebra { field, nu, nu_inv, structure: OnceLock::new(), derivations: OnceLock::new() })
    }

    pub fn nu(&self) -> &Scalar {
        &self.nu
    }

    pub fn one(&self) -> TitsElement {
        let k = &self.field;
        TitsElement([Mat3::identity(k), Mat3::zero(k), Mat3::zero(k)])
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> TitsElement {
        TitsElement(std::array::from_fn(|_| Mat3::random(&self.field, rng)))
    }

    pub fn norm(&self, x: &TitsElement) -> Scalar {
        let [m0, m1, m2] = &x.0;
        let triple = &(m0 * m1) * m2;
        &(&(&m0.det() + &(&self.nu * &m1.det())) + &(&self.nu_inv * &m2.det())) - &triple.trace()
    }

    pub fn sharp(&self, x: &TitsElement) -> TitsElement {
        let [m0, m1, m2] = &x.0;
        TitsElement([&m0.sharp() - &(m1 * m2), &m2.sharp().scale(&self.nu_inv) - &(m0 * m1), &m1.sharp().scale(&self.nu) - &(m2 * m0)])
    }

    /// `x # y = (x + y)^# − x^# − y^#`.
    pub fn sharp_product(&self, x: &TitsElement, y: &TitsElement) -> TitsElement {
        &(&self.sharp(&(x + y)) - &self.sharp(x)) - &self.sharp(y)
    }

    pub fn trace(&self, x: &TitsElement) -> Scalar {
        x.0[0].trace()
    }

    pub fn trace_bilinear(&self, x: &TitsElement, y: &TitsElement) -> Scalar {
        let t = |a: &Mat3, b: &Mat3| (a * b).trace();
        &(&t(&x.0[0], &y.0[0]) + &t(&x.0[1], &y.0[2])) + &t(&x.0[2], &y.0[1])
    }

    /// `Sr(x) = Tr(x^#)`.
    pub fn sr(&self, x: &TitsElement) -> Scalar {
        self.trace(&self.sharp(x))
    }

    /// `Sr(x, y) = Tr(x # y)`.
    pub fn sr_bilinear(&self, x: &TitsElement, y: &TitsElement) -> Scalar {
        self.trace(&self.sharp_product(x, y))
    }

    /// The directional derivative `N(x; y)`, the linear-in-`y` part of `N(x + y)`.
    pub fn norm_linearized(&self, x: &TitsElement, y: &TitsElement) -> Scalar {
        let k = &self.field;
        let d = &self.norm(&(x + y)) - &self.norm(&(x - y));
        &(&d * &k.half()) - &self.norm(y)
    }

    /// `xy = ½(x # y + Tr(x)y + Tr(y)x − Sr(x,y)1)`.
    pub fn mul(&self, x: &TitsElement, y: &TitsElement) -> TitsElement {
        let s = &self.sharp_product(x, y);
        let a = &(s + &y.scale(&self.trace(x))) + &x.scale(&self.trace(y));
        let b = &a - &self.one().scale(&self.sr_bilinear(x, y));
        b.scale(&self.field.half())
    }

    /// `U_x y = T(x, y)x − x^# # y`.
    pub fn u_operator(&self, x: &TitsElement, y: &TitsElement) -> TitsElement {
        &x.scale(&self.trace_bilinear(x, y)) - &self.sharp_product(&self.sharp(x), y)
    }

    /// `(E₁₁, 0, 0)`, whose existence makes the algebra reduced and hence split.
    pub fn primitive_idempotent(&self) -> TitsElement {
        let k = &self.field;
        TitsElement([Mat3::unit(k, 0, 0), Mat3::zero(k), Mat3::zero(k)])
    }

    /// `x³ − Tr(x)x² + Sr(x)x − N(x)1`, which vanishes identically.
    pub fn cubic_residual(&self, x: &TitsElement) -> TitsElement {
        let x2 = self.mul(x, x);
        let x3 = self.mul(&x2, x);
        let a = &x3 - &x2.scale(&self.trace(x));
        let b = &a + &x.scale(&self.sr(x));
        &b - &self.one().scale(&self.norm(x))
    }

    /// The three sharped cubic form axioms at `(x, y)`.
    pub fn sharped_axioms(&self, x: &TitsElement, y: &TitsElement) -> Vec<(&'static str, bool)> {
        let one = self.one();
        vec![
            ("Tr(x#, y) = N(x; y)", self.trace_bilinear(&self.sharp(x), y) == self.norm_linearized(x, y)),
            ("x## = N(x) x", self.sharp(&self.sharp(x)) == x.scale(&self.norm(x))),
            ("1 # x = Tr(x) 1 - x", self.sharp_product(&one, x) == &one.scale(&self.trace(x)) - x),
        ]
    }
}

/// Identities of the associative cubic structure `(det, adj, 1)` on `Mat₃(k)`.
///
/// Identities bilinear in a second argument are checked against all nine
/// matrix units, which suffices by linearity.
pub fn associative_cubic_checks(k: &Field, m: &Mat3) -> Vec<(&'static str, bool)> {
    let k = *k;
    let one = Mat3::identity(&k);
    let units: Vec<Mat3> = (0..9).map(|i| Mat3::unit(&k, i / 3, i % 3)).collect();
    let tr = m.trace();
    let sr = m.sr();
    let n = m.det();
    let m2 = m * m;
    let m3 = &m2 * m;
    let sr_bi = |a: &Mat3, b: &Mat3| &(&(a + b).sr() - &a.sr()) - &b.sr();
    let n_bi = |a: &Mat3, b: &Mat3| {
        let d = &(a + b).det() - &(a - b).det();
        &(&d * &k.half()) - &b.det()
    };
    let cubic = &(&(&m3 - &m2.scale(&tr)) + &m.scale(&sr)) - &one.scale(&n);
    vec![
        ("m^3 - tr(m)m^2 + sr(m)m - n(m)1 = 0", cubic.is_zero()),
        ("m m# = m# m = n(m)1", m * &m.sharp() == one.scale(&n) && &m.sharp() * m == one.scale(&n)),
        ("n(m, m') = tr(m#, m')", units.iter().all(|u| n_bi(m, u) == (&m.sharp() * u).trace())),
        ("tr(m)tr(m') - sr(m, m') = tr(m m')", units.iter().all(|u| &(&tr * &u.trace()) - &sr_bi(m, u) == (m * u).trace())),
        ("tr(1) = sr(1) = 3", one.trace() == k.from_i64(3) && one.sr() == k.from_i64(3)),
        ("1# = 1", one.sharp() == one),
        ("sr(m, 1) = 2 tr(m)", sr_bi(m, &one) == &tr + &tr),
        ("1 # m = tr(m)1 - m", one.sharp_product(m) == &one.scale(&tr) - m),
        ("sr(m) = tr(m#)", sr == m.sharp().trace()),
        ("2 sr(m) = tr(m)^2 - tr(m^2)", &sr + &sr == &tr.square() - &m2.trace()),
        ("(m m')# = m'# m#", units.iter().chain(std::iter::once(m)).all(|u| (m * u).sharp() == &u.sharp() * &m.sharp())),
        ("m## = n(m) m", m.sharp().sharp() == m.scale(&n)),
    ]
}

impl AlbertAlgebra for TitsAlgebra {
    fn field(&self) -> Field {
        self.field
    }

    fn presentation(&self) -> Presentation {
        Presentation::Tits
    }

    fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mul(&TitsElement::from_coords(x), &TitsElement::from_coords(y)).to_coords()
    }

    fn unit(&self) -> Vec<Scalar> {
        self.one().to_coords()
    }

    fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.trace_bilinear(&TitsElement::from_coords(x), &TitsElement::from_coords(y))
    }

    fn structure(&self) -> &StructureConstants {
        self.structure.get_or_init(|| StructureConstants::compute(self))
    }

    fn derivations(&self) -> Result<&DerivationSpace> {
        self.derivations
            .get_or_init(|| DerivationSpace::compute(self.structure(), &self.field))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn cubic_norm(&self, x: &[Scalar]) -> Option<Scalar> {
        Some(self.norm(&TitsElement::from_coords(x)))
    }

    fn adjoint(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        Some(self.sharp(&TitsElement::from_coords(x)).to_coords())
    }
}

//! Square classes, Legendre and Hilbert symbols, 2-Pfister forms and the
//! equivalence of diagonal twists `γ = (γ₁, γ₂, γ₃)`.
//!
//! ℝ and ℚ_p are represented by their rational points, so every decision here
//! reduces to sign, valuation and residue computations on reduced fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Scalar};

/// Legendre symbol of an integer modulo an odd prime.
pub fn legendre_int(a: &BigInt, p: u64) -> i8 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
    legendre_u64(r, p)
}

fn legendre_u64(r: u64, p: u64) -> i8 {
    let r = r % p;
    if r == 0 {
        return 0;
    }
    // Euler's criterion
    let mut acc = 1u128;
    let mut b = r as u128;
    let m = p as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol `(a/p)` for `p` an odd prime.
///
/// Rational inputs must have denominator prime to `p`; residue inputs must be
/// residues modulo `p`.
pub fn legendre_symbol(a: &Scalar, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::Characteristic2);
    }
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some((v, q)) = a.as_residue() {
        if q != p {
            return Err(Error::FieldMismatch);
        }
        return Ok(legendre_u64(v, p));
    }
    let q = a.as_rational().expect("rational scalar");
    let pb = BigInt::from(p);
    if q.denom().is_multiple_of(&pb) {
        return Err(Error::InvalidScalar(format!("{a} has denominator divisible by {p}")));
    }
    Ok(legendre_int(&(q.numer() * q.denom()), p))
}

/// Least positive integer that is not a square modulo `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&z| legendre_u64(z, p) == -1).expect("odd primes have non-residues")
}

/// `(v, u)` with `n = p^v · u` and `p ∤ u`; `n` must be nonzero.
pub fn valuation_int(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    while !u.is_zero() && u.is_multiple_of(&pb) {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

/// p-adic valuation and unit part of a nonzero rational.
pub fn valuation(q: &BigRational, p: u64) -> (i64, BigRational) {
    let (vn, un) = valuation_int(q.numer(), p);
    let (vd, ud) = valuation_int(q.denom(), p);
    (vn - vd, BigRational::new(un, ud))
}

/// Prime divisors of |n| in increasing order, by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if n.is_multiple_of(&db) {
            out.push(d);
            while n.is_multiple_of(&db) {
                n /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor beyond u64"));
    }
    out
}

/// Squarefree integer in the rational square class of `q` (sign kept).
pub fn squarefree_part(q: &BigRational) -> BigInt {
    let n = q.numer() * q.denom();
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for p in prime_factors(&n) {
        let (v, _) = valuation_int(&n, p);
        if v % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    out
}

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn unit_mod8(u: &BigRational) -> u64 {
    // u = n/d with n, d odd, and d⁻¹ ≡ d (mod 8)
    let n = u.numer().mod_floor(&BigInt::from(8)).to_u64().unwrap();
    let d = u.denom().mod_floor(&BigInt::from(8)).to_u64().unwrap();
    n * d % 8
}

/// Local Hilbert symbol of two nonzero rationals at a place of ℚ.
pub fn hilbert_at(a: &BigRational, b: &BigRational, place: Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = valuation(a, 2);
            let (beta, v) = valuation(b, 2);
            let (u, v) = (unit_mod8(&u), unit_mod8(&v));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(v) + (alpha.rem_euclid(2) as u64) * omega(v) + (beta.rem_euclid(2) as u64) * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = valuation(a, p);
            let (beta, v) = valuation(b, p);
            let leg = |x: &BigRational| legendre_int(&(x.numer() * x.denom()), p);
            let mut s: i8 = 1;
            if alpha.rem_euclid(2) == 1 && beta.rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta.rem_euclid(2) == 1 {
                s *= leg(&u);
            }
            if alpha.rem_euclid(2) == 1 {
                s *= leg(&v);
            }
            s
        }
    }
}

/// Class of a nonzero scalar in `k* / (k*)²`, with a canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    representative: Scalar,
    field: Field,
}

impl SquareClass {
    pub fn representative(&self) -> &Scalar {
        &self.representative
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_one()
    }

    /// All classes, for fields with a finite class group.
    pub fn group(k: Field) -> Option<Vec<SquareClass>> {
        let reps: Vec<i64> = match k.kind() {
            FieldKind::AlgClosedModel { .. } => vec![1],
            FieldKind::FiniteField { p } => vec![1, least_nonresidue(p) as i64],
            FieldKind::Reals => vec![1, -1],
            FieldKind::PAdics { p: 2 } => vec![1, -1, 5, -5, 2, -2, 10, -10],
            FieldKind::PAdics { p } => {
                let z = least_nonresidue(p) as i64;
                let p = p as i64;
                vec![1, z, p, p * z]
            }
            FieldKind::Rationals => return None,
        };
        Some(reps.into_iter().map(|r| SquareClass { representative: k.from_i64(r), field: k }).collect())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

fn rational_of(a: &Scalar, k: Field) -> Result<&BigRational> {
    a.as_rational().ok_or(Error::FieldMismatch).and_then(|q| if k.contains(a) { Ok(q) } else { Err(Error::FieldMismatch) })
}

/// Canonical square class of a nonzero scalar.
pub fn square_class(a: &Scalar, k: Field) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::ZeroInput("square_class argument"));
    }
    if !k.contains(a) {
        return Err(Error::FieldMismatch);
    }
    let rep: Scalar = match k.kind() {
        FieldKind::AlgClosedModel { .. } => k.one(),
        FieldKind::FiniteField { p } => {
            if legendre_symbol(a, p)? == 1 {
                k.one()
            } else {
                k.from_i64(least_nonresidue(p) as i64)
            }
        }
        FieldKind::Reals => k.from_i64(a.signum().expect("rational") as i64),
        FieldKind::Rationals => k.from_bigint(&squarefree_part(rational_of(a, k)?)),
        FieldKind::PAdics { p: 2 } => {
            let (v, u) = valuation(rational_of(a, k)?, 2);
            let unit = match unit_mod8(&u) {
                1 => 1,
                3 => -5,
                5 => 5,
                7 => -1,
                _ => unreachable!("odd residue"),
            };
            k.from_i64(if v.rem_euclid(2) == 1 { 2 * unit } else { unit })
        }
        FieldKind::PAdics { p } => {
            let (v, u) = valuation(rational_of(a, k)?, p);
            let mut r = if v.rem_euclid(2) == 1 { p as i64 } else { 1 };
            if legendre_int(&(u.numer() * u.denom()), p) == -1 {
                r *= least_nonresidue(p) as i64;
            }
            k.from_i64(r)
        }
    };
    Ok(SquareClass { representative: rep, field: k })
}

/// Hilbert symbol over ℝ or ℚ_p.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, k: Field) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("Hilbert symbol argument"));
    }
    let place = match k.kind() {
        FieldKind::Reals => Place::Infinity,
        FieldKind::PAdics { p } => Place::Prime(p),
        _ => return Err(Error::UnsupportedField { op: "hilbert_symbol", field: k.to_string() }),
    };
    Ok(hilbert_at(rational_of(a, k)?, rational_of(b, k)?, place))
}

/// Whether two diagonal quadratic forms are isometric over `k`.
///
/// Zero entries are split off as the radical. The nondegenerate parts are
/// compared by the complete invariants of each field: dimension only over the
/// algebraically closed model, discriminant over `F_p`, signature over ℝ,
/// discriminant and Hasse invariant over ℚ_p, and all of these at every
/// relevant place over ℚ.
pub fn diagonal_forms_isometric(a: &[Scalar], b: &[Scalar], k: Field) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let a: Vec<&Scalar> = a.iter().filter(|x| !x.is_zero()).collect();
    let b: Vec<&Scalar> = b.iter().filter(|x| !x.is_zero()).collect();
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in a.iter().chain(&b) {
        if !k.contains(x) {
            return Err(Error::FieldMismatch);
        }
    }
    let disc = |v: &[&Scalar]| v.iter().fold(k.one(), |acc, x| acc * *x);
    let negatives = |v: &[&Scalar]| v.iter().filter(|x| x.signum() == Some(-1)).count();
    let hasse = |v: &[&Scalar], place: Place| -> Result<i8> {
        let mut s = 1;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                s *= hilbert_at(rational_of(v[i], k)?, rational_of(v[j], k)?, place);
            }
        }
        Ok(s)
    };
    let same_disc = a.is_empty() || square_class(&disc(&a), k)? == square_class(&disc(&b), k)?;
    Ok(match k.kind() {
        FieldKind::AlgClosedModel { .. } => true,
        FieldKind::FiniteField { .. } => same_disc,
        FieldKind::Reals => negatives(&a) == negatives(&b),
        FieldKind::PAdics { p } => same_disc && hasse(&a, Place::Prime(p))? == hasse(&b, Place::Prime(p))?,
        FieldKind::Rationals => {
            if negatives(&a) != negatives(&b) || !same_disc {
                return Ok(false);
            }
            let mut primes = vec![2u64];
            for x in a.iter().chain(&b) {
                let q = rational_of(x, k)?;
                primes.extend(prime_factors(q.numer()));
                primes.extend(prime_factors(q.denom()));
            }
            primes.sort_unstable();
            primes.dedup();
            for p in primes {
                if hasse(&a, Place::Prime(p))? != hasse(&b, Place::Prime(p))? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// The 2-Pfister form `x₀² − ζx₁² − ηx₂² + ζηx₃²`, the norm form of the
/// quaternion algebra `(ζ, η)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pfister2 {
    zeta: Scalar,
    eta: Scalar,
}

impl Pfister2 {
    pub fn new(zeta: Scalar, eta: Scalar) -> Result<Self> {
        if zeta.is_zero() || eta.is_zero() {
            return Err(Error::ZeroInput("Pfister slot"));
        }
        Ok(Pfister2 { zeta, eta })
    }

    pub fn zeta(&self) -> &Scalar {
        &self.zeta
    }

    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    /// Diagonal coefficients `(1, −ζ, −η, ζη)`.
    pub fn coefficients(&self) -> [Scalar; 4] {
        [self.zeta.one_like(), -&self.zeta, -&self.eta, &self.zeta * &self.eta]
    }

    pub fn evaluate(&self, x: &[Scalar; 4]) -> Scalar {
        self.coefficients().iter().zip(x).fold(self.zeta.zero_like(), |acc, (c, xi)| acc + c * &xi.square())
    }

    /// Places of ℚ at which the quaternion algebra is a division algebra.
    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        let q = Field::rationals();
        let z = rational_of(&self.zeta, q)?;
        let e = rational_of(&self.eta, q)?;
        let mut places = vec![Place::Infinity];
        let mut primes = vec![2u64];
        for n in [z.numer(), z.denom(), e.numer(), e.denom()] {
            primes.extend(prime_factors(n));
        }
        primes.sort_unstable();
        primes.dedup();
        places.extend(primes.into_iter().map(Place::Prime));
        Ok(places.into_iter().filter(|&pl| hilbert_at(z, e, pl) == -1).collect())
    }
}

impl fmt::Display for Pfister2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<<{}, {}>>", self.zeta, self.eta)
    }
}

/// Whether the Pfister form is isotropic, i.e. the quaternion algebra splits.
pub fn pfister_is_split(f: &Pfister2, k: Field) -> Result<bool> {
    if !k.contains(&f.zeta) || !k.contains(&f.eta) {
        return Err(Error::FieldMismatch);
    }
    Ok(match k.kind() {
        FieldKind::AlgClosedModel { .. } | FieldKind::FiniteField { .. } => true,
        FieldKind::Reals | FieldKind::PAdics { .. } => hilbert_symbol(&f.zeta, &f.eta, k)? == 1,
        FieldKind::Rationals => f.ramified_places()?.is_empty(),
    })
}

/// Isometry of 2-Pfister forms over `k`.
pub fn pfister_equivalent(f: &Pfister2, g: &Pfister2, k: Field) -> Result<bool> {
    Ok(match k.kind() {
        FieldKind::Rationals => f.ramified_places()? == g.ramified_places()?,
        _ => pfister_is_split(f, k)? == pfister_is_split(g, k)?,
    })
}

/// A diagonal twist `(γ₁, γ₂, γ₃)` of nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaTriple([Scalar; 3]);

impl GammaTriple {
    pub fn new(g: [Scalar; 3]) -> Result<Self> {
        if g.iter().any(Scalar::is_zero) {
            return Err(Error::ZeroInput("gamma entry"));
        }
        Ok(GammaTriple(g))
    }

    pub fn identity(k: Field) -> Self {
        GammaTriple([k.one(), k.one(), k.one()])
    }

    pub fn from_ints(k: Field, g: [i64; 3]) -> Result<Self> {
        GammaTriple::new(g.map(|x| k.from_i64(x)))
    }

    pub fn entries(&self) -> &[Scalar; 3] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for GammaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The image of a quaternion norm form in `k*`, as a subgroup containing the squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormGroup {
    /// Every nonzero scalar is a norm.
    Everything,
    /// The positive scalars (definite quaternion algebras over ℝ or ℚ).
    Positive,
    /// An explicit set of square classes; the trivial class is implied.
    Classes(Vec<SquareClass>),
}

impl NormGroup {
    /// Only the squares: the index-2 case `{+1}` over ℝ.
    pub fn squares() -> Self {
        NormGroup::Classes(Vec::new())
    }

    pub fn contains(&self, x: &Scalar, k: Field) -> Result<bool> {
        Ok(match self {
            NormGroup::Everything => true,
            NormGroup::Positive => match x.signum() {
                Some(s) => s > 0,
                None => return Err(Error::UnsupportedField { op: "positive norm group", field: k.to_string() }),
            },
            NormGroup::Classes(cs) => {
                let c = square_class(x, k)?;
                c.is_trivial() || cs.contains(&c)
            }
        })
    }

    /// Norm group of the quaternion algebra with the given Pfister form.
    pub fn of_quaternion(f: &Pfister2, k: Field) -> Result<Self> {
        if pfister_is_split(f, k)? {
            return Ok(NormGroup::Everything);
        }
        Ok(match k.kind() {
            // reduced norms of a division algebra over ℚ_p are surjective
            FieldKind::PAdics { .. } => NormGroup::Everything,
            FieldKind::Reals => NormGroup::squares(),
            // Hasse–Schilling: positive norms exactly when ramified at infinity
            FieldKind::Rationals => {
                if f.ramified_places()?.contains(&Place::Infinity) {
                    NormGroup::Positive
                } else {
                    NormGroup::Everything
                }
            }
            FieldKind::AlgClosedModel { .. } | FieldKind::FiniteField { .. } => NormGroup::Everything,
        })
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Whether `γ′` is reachable from `γ` by a common scalar multiple, entrywise
/// multiplication by norms (squares included), and permutation of entries.
pub fn gamma_equivalent(g: &GammaTriple, h: &GammaTriple, norms: &NormGroup, k: Field) -> Result<bool> {
    for x in g.0.iter().chain(h.0.iter()) {
        if !k.contains(x) {
            return Err(Error::FieldMismatch);
        }
    }
    // If δ works then so does any δ·n with n a norm; δ ≡ h_j / g_0 for some j.
    for target in &h.0 {
        let delta = target / &g.0[0];
        for perm in PERMUTATIONS {
            let mut ok = true;
            for i in 0..3 {
                let ratio = &(&delta * &g.0[i]) / &h.0[perm[i]];
                if !norms.contains(&ratio, k)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

//! Exact base fields and their scalars.
//!
//! Every supported field is realized by one of two exact arithmetics: residues
//! modulo an odd prime (finite fields and the algebraically closed model) or
//! reduced rational fractions (ℚ, and ℝ and ℚ_p through their rational points).
//! The fields that share an arithmetic differ only in their square-class and
//! symbol services, which live in [`crate::forms`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Prime used by the `C` field spec when none is given.
pub const DEFAULT_ALG_CLOSED_PRIME: u64 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// Stand-in for an algebraically closed field: residues mod `p` in which
    /// every nonzero element is declared a square.
    AlgClosedModel { p: u64 },
    FiniteField { p: u64 },
    Rationals,
    Reals,
    PAdics { p: u64 },
}

/// A validated field description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn odd_prime(p: u64) -> Result<u64> {
    if p == 2 {
        return Err(Error::Characteristic2);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // products of two residues must fit in a u64
    if p >= 1 << 32 {
        return Err(Error::InvalidFieldSpec(format!("prime {p} too large")));
    }
    Ok(p)
}

impl Field {
    pub fn finite(p: u64) -> Result<Self> {
        Ok(Field { kind: FieldKind::FiniteField { p: odd_prime(p)? } })
    }

    pub fn alg_closed(p: u64) -> Result<Self> {
        Ok(Field { kind: FieldKind::AlgClosedModel { p: odd_prime(p)? } })
    }

    pub fn alg_closed_default() -> Self {
        Field { kind: FieldKind::AlgClosedModel { p: DEFAULT_ALG_CLOSED_PRIME } }
    }

    pub fn rationals() -> Self {
        Field { kind: FieldKind::Rationals }
    }

    pub fn reals() -> Self {
        Field { kind: FieldKind::Reals }
    }

    /// ℚ_p; unlike the finite fields, `p = 2` is allowed since ℚ_2 has characteristic 0.
    pub fn padics(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { kind: FieldKind::PAdics { p } })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Modulus of the residue arithmetic, if the field uses one.
    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            FieldKind::AlgClosedModel { p } | FieldKind::FiniteField { p } => Some(p),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::residue(n.rem_euclid(p as i64) as u64, p),
            None => Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.modulus() {
            Some(p) => {
                let r = ((n % p) + p) % p;
                Scalar::residue(r.to_u64().expect("reduced residue fits"), p)
            }
            None => Scalar(Repr::Rat(BigRational::from_integer(n.clone()))),
        }
    }

    pub fn from_frac(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::InvalidScalar(format!("{num}/{den}")));
        }
        Ok(self.from_i64(num) / d)
    }

    /// Parses `n` or `n/d`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        let d = self.from_bigint(&d);
        if d.is_zero() {
            return Err(bad());
        }
        Ok(self.from_bigint(&n) / d)
    }

    /// Whether `x` uses this field's arithmetic.
    pub fn contains(&self, x: &Scalar) -> bool {
        match (&x.0, self.modulus()) {
            (Repr::Mod { p, .. }, Some(q)) => *p == q,
            (Repr::Rat(_), None) => true,
            _ => false,
        }
    }

    /// The scalar ½; every supported field has characteristic ≠ 2.
    pub fn half(&self) -> Scalar {
        self.from_i64(2).inv().expect("characteristic is not 2")
    }

    /// Uniform residue for finite fields; a small-height fraction otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::residue(rng.gen_range(0..p), p),
            None => {
                let n = rng.gen_range(-6i64..=6);
                let d = rng.gen_range(1i64..=4);
                self.from_frac(n, d).expect("nonzero denominator")
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::AlgClosedModel { p } if p == DEFAULT_ALG_CLOSED_PRIME => write!(f, "C"),
            FieldKind::AlgClosedModel { p } => write!(f, "C:{p}"),
            FieldKind::FiniteField { p } => write!(f, "Fp:{p}"),
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Reals => write!(f, "R"),
            FieldKind::PAdics { p } => write!(f, "Qp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidFieldSpec(s.to_string());
        let prime = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match s {
            "C" => Ok(Field::alg_closed_default()),
            "Q" => Ok(Field::rationals()),
            "R" => Ok(Field::reals()),
            _ => match s.split_once(':') {
                Some(("C", p)) => Field::alg_closed(prime(p)?),
                Some(("Fp", p)) => Field::finite(prime(p)?),
                Some(("Qp", p)) => Field::padics(prime(p)?),
                _ => Err(bad()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Mod { v: u64, p: u64 },
    Rat(BigRational),
}

/// An exact field element.
///
/// Residues carry their modulus, so arithmetic needs no external context.
/// Combining scalars from different arithmetics is a programming error and
/// panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Scalar {
    fn residue(v: u64, p: u64) -> Self {
        Scalar(Repr::Mod { v, p })
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar(Repr::Rat(q))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { v, .. } => *v == 0,
            Repr::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { v, .. } => *v == 1,
            Repr::Rat(q) => q.is_one(),
        }
    }

    pub fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    pub fn one_like(&self) -> Self {
        self.int_like(1)
    }

    pub fn int_like(&self, n: i64) -> Self {
        match &self.0 {
            Repr::Mod { p, .. } => Scalar::residue(n.rem_euclid(*p as i64) as u64, *p),
            Repr::Rat(_) => Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Mod { v, p } => Scalar::residue(mod_pow(*v, p - 2, *p), *p),
            Repr::Rat(q) => Scalar(Repr::Rat(q.recip())),
        })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    /// The rational value, for the rational-backed fields.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Mod { .. } => None,
        }
    }

    /// `(value, modulus)` for residue-backed fields.
    pub fn as_residue(&self) -> Option<(u64, u64)> {
        match self.0 {
            Repr::Mod { v, p } => Some((v, p)),
            Repr::Rat(_) => None,
        }
    }

    /// Sign of a rational scalar; `None` for residues.
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { v, .. } => write!(f, "{v}"),
            Repr::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scalars serialize as their `n` / `n/d` string.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn mismatch() -> ! {
    panic!("scalar arithmetic across different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar::residue((a + b) % p, *p),
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar::residue((a + p - b) % p, *p),
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a - b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Scalar::residue(a * b % p, *p),
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Mod { v, p } => Scalar::residue((p - v) % p, *p),
            Repr::Rat(a) => Scalar(Repr::Rat(-a)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Parses a comma-separated list of scalars.
pub fn parse_scalar_list(field: &Field, s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(|t| field.parse_scalar(t)).collect()
}

//! Isomorphism classes of involutions of the split Albert algebra's
//! automorphism group, field by field.
//!
//! A type I involution `θ∘f_t` fixes a copy of `H₃(D, γ)` for a quaternion
//! algebra `D`. Its class is decided by whether `D` splits and, when it does
//! not, by the class of `γ` modulo the norms of `D`. Type II involutions form
//! a single class over every field.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlbertAlgebra, DIM};
use crate::automorphism::{fixed_dimension, theta, TorusElement};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, Scalar};
use crate::forms::{
    diagonal_forms_isometric, gamma_equivalent, least_nonresidue, pfister_is_split, GammaTriple, NormGroup, Pfister2, Place,
};
use crate::linalg::{diagonalize_symmetric, Matrix, Subspace};
use crate::tits::TitsAlgebra;

/// The quaternion algebra and twist read off a torus element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionInvariant {
    pub pfister: Pfister2,
    pub gamma: GammaTriple,
}

impl InvolutionInvariant {
    /// `ζ = −v₁`, `η = −v₁⁻¹v₂`, `γ = (u₂, u₁⁻¹u₂⁻¹, u₁)`.
    pub fn read_off(t: &TorusElement) -> Self {
        let v1_inv = t.v1().inv().expect("torus entries are units");
        let zeta = -t.v1();
        let eta = -(&v1_inv * t.v2());
        let u12_inv = (t.u1() * t.u2()).inv().expect("torus entries are units");
        InvolutionInvariant {
            pfister: Pfister2::new(zeta, eta).expect("units"),
            gamma: GammaTriple::new([t.u2().clone(), u12_inv, t.u1().clone()]).expect("units"),
        }
    }

    /// Diagonal of the form `½(f₁² + f₂² + f₃²) + Σ_a r_a q_D(c_a)` on `H₃(D, γ)`,
    /// with `r = (γ₃⁻¹γ₂, γ₁⁻¹γ₃, γ₂⁻¹γ₁)`.
    pub fn expected_trace_form(&self, k: &Field) -> Vec<Scalar> {
        let g = self.gamma.entries();
        let r = [&g[1] / &g[2], &g[2] / &g[0], &g[0] / &g[1]];
        let mut out = vec![k.half(); 3];
        for ra in &r {
            out.extend(self.pfister.coefficients().iter().map(|c| c * ra));
        }
        out
    }
}

/// Diagonalizes `½T(x, x)` restricted to the fixed points of `θ∘f_t`.
pub fn restricted_trace_form(t: &TorusElement, k: Field) -> Result<Vec<Scalar>> {
    let alg = TitsAlgebra::new(k);
    let phi = theta(&alg)?.compose(&t.to_map(&alg));
    if !phi.is_involution() {
        return Err(Error::NotInvolutive);
    }
    let shifted = phi.matrix().sub(&Matrix::identity(DIM, &k));
    let fixed = Subspace::span(DIM, &shifted.nullspace());
    let basis = fixed.basis();
    let half = k.half();
    let gram = Matrix::from_rows(basis.iter().map(|x| basis.iter().map(|y| &alg.bilinear(x, y) * &half).collect()).collect());
    Ok(diagonalize_symmetric(&gram))
}

/// [`InvolutionInvariant::read_off`], confirmed by comparing the restricted
/// trace form with the form the invariant predicts.
pub fn invariant_of(t: &TorusElement, k: Field) -> Result<InvolutionInvariant> {
    if t.params().iter().any(|x| !k.contains(x)) {
        return Err(Error::FieldMismatch);
    }
    let inv = InvolutionInvariant::read_off(t);
    let actual = restricted_trace_form(t, k)?;
    let expected = inv.expected_trace_form(&k);
    if !diagonal_forms_isometric(&actual, &expected, k)? {
        return Err(Error::InvariantMismatch(format!("{t} over {k}")));
    }
    Ok(inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionType {
    TypeI,
    TypeII,
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::TypeI => "TypeI",
            InvolutionType::TypeII => "TypeII",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    TypeII,
    TypeISplit,
    /// `ramified` is present over ℚ only.
    TypeIDivision { gamma: GammaTriple, ramified: Option<Vec<Place>> },
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::TypeII => write!(f, "TypeII"),
            ClassLabel::TypeISplit => write!(f, "TypeI(split)"),
            ClassLabel::TypeIDivision { gamma, ramified } => {
                let g = gamma.entries();
                write!(f, "TypeI(division")?;
                if let Some(places) = ramified {
                    let p: Vec<String> = places.iter().map(ToString::to_string).collect();
                    write!(f, ",ramified={{{}}}", p.join(","))?;
                }
                write!(f, ",gamma=({},{},{}))", g[0], g[1], g[2])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionClass {
    pub field: Field,
    pub label: ClassLabel,
}

impl InvolutionClass {
    pub fn kind(&self) -> InvolutionType {
        match self.label {
            ClassLabel::TypeII => InvolutionType::TypeII,
            _ => InvolutionType::TypeI,
        }
    }
}

impl fmt::Display for InvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// The class of `γ` among `(1,1,1)` and `(−1,1,1)`, which represent every
/// class when the norm group has index at most 2.
fn canonical_gamma(gamma: &GammaTriple, norms: &NormGroup, k: Field) -> Result<GammaTriple> {
    for cand in [[1, 1, 1], [-1, 1, 1]] {
        let c = GammaTriple::from_ints(k, cand)?;
        if gamma_equivalent(gamma, &c, norms, k)? {
            return Ok(c);
        }
    }
    Ok(gamma.clone())
}

/// Class of the type I involution `θ∘f_t`.
pub fn classify(t: &TorusElement, k: Field) -> Result<InvolutionClass> {
    if t.params().iter().any(|x| !k.contains(x)) {
        return Err(Error::FieldMismatch);
    }
    let inv = InvolutionInvariant::read_off(t);
    let label = if pfister_is_split(&inv.pfister, k)? {
        ClassLabel::TypeISplit
    } else {
        let norms = NormGroup::of_quaternion(&inv.pfister, k)?;
        let gamma = canonical_gamma(&inv.gamma, &norms, k)?;
        let ramified = match k.kind() {
            FieldKind::Rationals => Some(inv.pfister.ramified_places()?),
            _ => None,
        };
        ClassLabel::TypeIDivision { gamma, ramified }
    };
    Ok(InvolutionClass { field: k, label })
}

/// The single class of type II involutions.
pub fn classify_type2(k: Field) -> InvolutionClass {
    InvolutionClass { field: k, label: ClassLabel::TypeII }
}

/// One torus element per type I class.
pub fn representatives(k: Field) -> Result<Vec<TorusElement>> {
    let rows: Vec<[i64; 4]> = match k.kind() {
        FieldKind::AlgClosedModel { .. } | FieldKind::FiniteField { .. } => vec![[1, 1, 1, 1]],
        FieldKind::Reals => vec![[1, 1, -1, 1], [1, 1, 1, 1], [-1, 1, 1, 1]],
        FieldKind::PAdics { p: 2 } => vec![[1, 1, -1, 1], [1, 1, 1, 1]],
        FieldKind::PAdics { p } => {
            let (p, z) = (p as i64, least_nonresidue(p) as i64);
            vec![[1, 1, -1, 1], [1, 1, -p, -z]]
        }
        FieldKind::Rationals => return Err(Error::InfiniteClassCount(k.to_string())),
    };
    rows.into_iter().map(|r| TorusElement::from_ints(&k, r)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassCount {
    Finite(usize),
    Infinite,
}

impl Serialize for ClassCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClassCount::Finite(n) => s.serialize_u64(*n as u64),
            ClassCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for ClassCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassCount::Finite(n) => write!(f, "{n}"),
            ClassCount::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn class_count(k: Field, kind: InvolutionType) -> ClassCount {
    match kind {
        InvolutionType::TypeII => ClassCount::Finite(1),
        InvolutionType::TypeI => match k.kind() {
            FieldKind::AlgClosedModel { .. } | FieldKind::FiniteField { .. } => ClassCount::Finite(1),
            FieldKind::Reals => ClassCount::Finite(3),
            FieldKind::PAdics { .. } => ClassCount::Finite(2),
            FieldKind::Rationals => ClassCount::Infinite,
        },
    }
}

/// Largest prime for which the exhaustive census is allowed; the torus has `(p − 1)⁴` points.
pub const EXHAUSTIVE_LIMIT: u64 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub torus: [String; 4],
    pub class: String,
    pub fixed_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub field: String,
    pub mode: String,
    pub total: usize,
    pub histogram: BTreeMap<String, usize>,
    pub fixed_dims: BTreeMap<usize, usize>,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn type1_classes(&self) -> usize {
        self.histogram.keys().filter(|k| k.starts_with("TypeI(")).count()
    }
}

/// Classifies every (or a sample of) torus element over a finite field.
///
/// `jobs` sizes the worker pool; the output does not depend on it.
pub fn census(k: Field, mode: CensusMode, jobs: usize) -> Result<CensusReport> {
    let p = match k.kind() {
        FieldKind::FiniteField { p } => p,
        _ => return Err(Error::UnsupportedField { op: "census", field: k.to_string() }),
    };
    let tori: Vec<TorusElement> = match mode {
        CensusMode::Exhaustive => {
            if p > EXHAUSTIVE_LIMIT {
                return Err(Error::UnsupportedField { op: "exhaustive census (p <= 13)", field: k.to_string() });
            }
            let units: Vec<i64> = (1..p as i64).collect();
            let mut out = Vec::with_capacity(units.len().pow(4));
            for &a in &units {
                for &b in &units {
                    for &c in &units {
                        for &d in &units {
                            out.push(TorusElement::from_ints(&k, [a, b, c, d])?);
                        }
                    }
                }
            }
            out
        }
        CensusMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| TorusElement::random(&k, &mut rng)).collect()
        }
    };
    let alg = TitsAlgebra::new(k);
    let th = theta(&alg)?;
    let work = || {
        tori.par_iter()
            .map(|t| {
                let class = classify(t, k)?;
                let dim = fixed_dimension(&th.compose(&t.to_map(&alg)), &k)?;
                Ok(CensusRow { torus: t.params().clone().map(|x| x.to_string()), class: class.to_string(), fixed_dim: dim })
            })
            .collect::<Result<Vec<_>>>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("worker pool: {e}")))?;
    let rows = pool.install(work)?;
    let mut histogram = BTreeMap::new();
    let mut fixed_dims = BTreeMap::new();
    for r in &rows {
        *histogram.entry(r.class.clone()).or_insert(0) += 1;
        *fixed_dims.entry(r.fixed_dim).or_insert(0) += 1;
    }
    let mode = match mode {
        CensusMode::Exhaustive => "exhaustive".to_string(),
        CensusMode::Sampled { samples, seed } => format!("sampled:{samples}:seed={seed}"),
    };
    Ok(CensusReport { field: k.to_string(), mode, total: rows.len(), histogram, fixed_dims, rows })
}

/// Type I classes over ℚ with `D = (−1, p)` for primes `p ≡ 3 (mod 4)`;
/// distinct primes give distinct ramification `{2, p}` and so distinct classes.
pub fn rational_distinct_family(primes: &[u64]) -> Result<Vec<(TorusElement, InvolutionClass)>> {
    let q = Field::rationals();
    let mut seen = Vec::new();
    for &p in primes {
        if !crate::field::is_prime(p) || p % 4 != 3 {
            return Err(Error::InvalidPrimes(format!("{p} is not a prime congruent to 3 mod 4")));
        }
        if seen.contains(&p) {
            return Err(Error::InvalidPrimes(format!("{p} appears twice")));
        }
        seen.push(p);
    }
    primes
        .iter()
        .map(|&p| {
            // ζ = −v₁ = −1 and η = −v₁⁻¹v₂ = p
            let t = TorusElement::from_ints(&q, [1, 1, 1, -(p as i64)])?;
            let class = classify(&t, q)?;
            Ok((t, class))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pfister_equivalent;
    use rand::Rng;

    #[test]
    fn real_representatives() {
        let r = Field::reals();
        let labels: Vec<String> = representatives(r).unwrap().iter().map(|t| classify(t, r).unwrap().to_string()).collect();
        assert_eq!(labels, ["TypeI(split)", "TypeI(division,gamma=(1,1,1))", "TypeI(division,gamma=(-1,1,1))"]);
    }

    #[test]
    fn padic_representatives_are_distinct() {
        for p in [2, 3, 5, 7] {
            let k = Field::padics(p).unwrap();
            let reps = representatives(k).unwrap();
            assert_eq!(reps.len(), 2);
            let a = classify(&reps[0], k).unwrap();
            let b = classify(&reps[1], k).unwrap();
            assert_eq!(a.label, ClassLabel::TypeISplit);
            assert_ne!(a, b);
        }
        let q3 = Field::padics(3).unwrap();
        assert_eq!(representatives(q3).unwrap()[1], TorusElement::from_ints(&q3, [1, 1, -3, -2]).unwrap());
    }

    #[test]
    fn invariants_match_the_trace_form() {
        for k in [Field::reals(), Field::padics(2).unwrap(), Field::padics(3).unwrap(), Field::padics(5).unwrap(), Field::finite(7).unwrap()] {
            for t in representatives(k).unwrap() {
                invariant_of(&t, k).unwrap();
            }
        }
        let q = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let t = TorusElement::random(&q, &mut rng);
            invariant_of(&t, q).unwrap();
        }
    }

    #[test]
    fn read_off_examples() {
        let q = Field::rationals();
        let inv = InvolutionInvariant::read_off(&TorusElement::identity(&q));
        assert_eq!(inv.pfister, Pfister2::new(q.from_i64(-1), q.from_i64(-1)).unwrap());
        assert_eq!(inv.gamma, GammaTriple::identity(q));
        let inv = InvolutionInvariant::read_off(&TorusElement::from_ints(&q, [1, 1, -1, 1]).unwrap());
        assert!(pfister_is_split(&inv.pfister, q).unwrap());
    }

    #[test]
    fn finite_fields_have_one_class() {
        let k = Field::finite(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(classify(&TorusElement::random(&k, &mut rng), k).unwrap().label, ClassLabel::TypeISplit);
        }
        let report = census(Field::finite(3).unwrap(), CensusMode::Exhaustive, 2).unwrap();
        assert_eq!(report.total, 16);
        assert_eq!(report.type1_classes(), 1);
        assert_eq!(report.fixed_dims.keys().copied().collect::<Vec<_>>(), [15]);
    }

    #[test]
    fn census_is_independent_of_jobs() {
        let k = Field::finite(11).unwrap();
        let mode = CensusMode::Sampled { samples: 40, seed: 5 };
        let a = serde_json::to_string(&census(k, mode, 1).unwrap()).unwrap();
        let b = serde_json::to_string(&census(k, mode, 4).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn square_rescaling_keeps_the_class() {
        for k in [Field::reals(), Field::padics(3).unwrap(), Field::rationals()] {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..10 {
                let t = TorusElement::random(&k, &mut rng);
                let m = k.random_nonzero(&mut rng).square();
                let n = k.from_i64(rng.gen_range(1..5)).square();
                let [u1, u2, v1, v2] = t.params().clone();
                let s = TorusElement::new(&u1 * &m, &u2 * &n, v1, v2).unwrap();
                assert_eq!(classify(&t, k).unwrap(), classify(&s, k).unwrap());
            }
        }
    }

    #[test]
    fn rational_family() {
        let fam = rational_distinct_family(&[3, 7, 11, 19]).unwrap();
        let q = Field::rationals();
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                assert_ne!(fam[i].1, fam[j].1);
                let a = InvolutionInvariant::read_off(&fam[i].0).pfister;
                let b = InvolutionInvariant::read_off(&fam[j].0).pfister;
                assert!(!pfister_equivalent(&a, &b, q).unwrap());
            }
        }
        assert!(rational_distinct_family(&[]).unwrap().is_empty());
        assert!(matches!(rational_distinct_family(&[5]), Err(Error::InvalidPrimes(_))));
        assert!(matches!(rational_distinct_family(&[3, 3]), Err(Error::InvalidPrimes(_))));
    }

    #[test]
    fn counts() {
        assert_eq!(class_count(Field::reals(), InvolutionType::TypeI), ClassCount::Finite(3));
        assert_eq!(class_count(Field::padics(5).unwrap(), InvolutionType::TypeI), ClassCount::Finite(2));
        assert_eq!(class_count(Field::finite(7).unwrap(), InvolutionType::TypeII), ClassCount::Finite(1));
        assert_eq!(class_count(Field::rationals(), InvolutionType::TypeI), ClassCount::Infinite);
        assert!(matches!(representatives(Field::rationals()), Err(Error::InfiniteClassCount(_))));
    }
}

//! Acceptance suite: one pass/fail line per criterion, exact arithmetic
//! throughout (zero tolerance), wall-clock limits where stated.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use f4_albert::algebra::{self, AlbertAlgebra, DIM};
use f4_albert::automorphism::{
    centralizer_dimensions, check_automorphism, f_uv, fixed_dimension, fixed_subspace, theta, type1_involution, type2_hermitian,
    type2_involution, AutCheck, TorusElement,
};
use f4_albert::classify::{self, census, classify, rational_distinct_family, representatives, CensusMode};
use f4_albert::decomposition::Decomposition;
use f4_albert::forms::{hilbert_symbol, pfister_is_split, GammaTriple, Pfister2};
use f4_albert::hermitian::{HermitianAlgebra, HermitianElement};
use f4_albert::kac::{centralizer_subdiagram, cross_check_with_classifier, enumerate};
use f4_albert::tits::{associative_cubic_checks, Mat3, TitsAlgebra, TitsElement};
use f4_albert::{Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp(p: u64) -> Field {
    Field::finite(p).unwrap()
}

fn random_invertible<R: Rng>(k: &Field, rng: &mut R) -> Mat3 {
    loop {
        let m = Mat3::random(k, rng);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Rescales the first row of `m` so that `det m = d`.
fn with_det(m: &Mat3, d: &Scalar) -> Mat3 {
    let r = d / &m.det();
    let mut out = m.clone();
    for c in 0..3 {
        out.0[0][c] = &out.0[0][c] * &r;
    }
    out
}

fn c1_automorphisms() -> Outcome {
    let k = fp(101);
    let alg = TitsAlgebra::new(k);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 0..100 {
        let u = with_det(&random_invertible(&k, &mut rng), &k.one());
        let v = with_det(&random_invertible(&k, &mut rng), &k.one());
        let verdict = check_automorphism(&alg, &f_uv(&alg, &u, &v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(verdict.passed(), || format!("SL3 pair {n} rejected: {verdict:?}"))?;
    }
    for n in 0..20 {
        let u = random_invertible(&k, &mut rng);
        let v = loop {
            let v = random_invertible(&k, &mut rng);
            if v.det() != u.det() {
                break v;
            }
        };
        ensure(!u.det().is_one() || !v.det().is_one(), || "negative sample lies in SL3".into())?;
        match check_automorphism(&alg, &f_uv(&alg, &u, &v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? {
            AutCheck::Fail { witness, .. } if witness.len() == DIM => {}
            other => return Err(format!("negative pair {n} not rejected with a witness: {other:?}")),
        }
    }
    Ok("100 SL3(F101) pairs accepted, 20 pairs with det u != det v rejected with witnesses".into())
}

fn c2_jordan() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in [fp(5), fp(7), Field::rationals()] {
        let h = HermitianAlgebra::split(k);
        let t = TitsAlgebra::new(k);
        for alg in [&h as &dyn AlbertAlgebra, &t] {
            for n in 0..200 {
                let x = alg.random_vector(&mut rng);
                let y = alg.random_vector(&mut rng);
                for (name, ok) in algebra::jordan_checks(alg, &x, &y) {
                    ensure(ok, || format!("{name} fails for pair {n} in {} over {k}", alg.presentation()))?;
                }
            }
        }
    }
    let t = TitsAlgebra::new(Field::rationals());
    for n in 0..200 {
        let x = t.random_element(&mut rng);
        ensure(t.cubic_residual(&x).is_zero(), || format!("degree-3 identity fails on sample {n}"))?;
    }
    Ok("commutativity and Jordan identity on 200 pairs x 2 presentations x {F5, F7, Q}; degree-3 identity on 200 elements over Q".into())
}

fn c3_cubic_axioms() -> Outcome {
    let check = |label: &str, results: Vec<(&'static str, bool)>| -> Result<(), String> {
        match results.into_iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(format!("{name} fails at {label}")),
            None => Ok(()),
        }
    };
    let k = fp(3);
    let t = TitsAlgebra::new(k);
    let basis: Vec<Vec<Scalar>> = (0..DIM).map(|i| algebra::unit_vector(&k, i)).collect();
    let mut spanning = basis.clone();
    for i in 0..DIM {
        for j in i + 1..DIM {
            spanning.push(algebra::add(&basis[i], &basis[j]));
        }
    }
    for (a, x) in spanning.iter().enumerate() {
        let x = TitsElement::from_coords(x);
        for y in &basis {
            check(&format!("spanning element {a} over F3"), t.sharped_axioms(&x, &TitsElement::from_coords(y)))?;
        }
    }
    let mut mats: Vec<Mat3> = (0..9).map(|i| Mat3::unit(&k, i / 3, i % 3)).collect();
    for i in 0..9 {
        for j in i + 1..9 {
            mats.push(&mats[i] + &mats[j]);
        }
    }
    for (a, m) in mats.iter().enumerate() {
        check(&format!("matrix {a} over F3"), associative_cubic_checks(&k, m))?;
    }
    let q = Field::rationals();
    let t = TitsAlgebra::new(q);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 0..100 {
        let x = t.random_element(&mut rng);
        let y = t.random_element(&mut rng);
        check(&format!("sample {n} over Q"), t.sharped_axioms(&x, &y))?;
        check(&format!("matrix sample {n} over Q"), associative_cubic_checks(&q, &Mat3::random(&q, &mut rng)))?;
    }
    Ok(format!("{} x {} spanning pairs and {} matrices over F3; 100 samples over Q", spanning.len(), DIM, mats.len()))
}

fn c4_idempotents() -> Outcome {
    let mut scanned = 0;
    for k in [fp(5), Field::rationals()] {
        let h = HermitianAlgebra::split(k);
        let half = k.half();
        let mut test = |w: &HermitianElement, expect_primitive: Option<bool>| -> Result<(), String> {
            for (name, ok) in h.idempotent_lemma_checks(w) {
                ensure(ok, || format!("{name} fails for {w:?} over {k}"))?;
            }
            let qw = h.quadratic_norm(w);
            ensure(qw == half || qw.is_one(), || format!("Q(w) = {qw}"))?;
            if let Some(p) = expect_primitive {
                ensure(h.is_primitive_idempotent(w) == p && (qw == half) == p, || format!("primitivity wrong for {w:?}"))?;
            }
            scanned += 1;
            Ok(())
        };
        for mask in 1..7u8 {
            let f = [0, 1, 2].map(|i| i64::from(mask >> i & 1));
            test(&HermitianElement::diagonal(&k, f), Some(f.iter().sum::<i64>() == 1))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let w = h.random_primitive_idempotent(&mut rng);
            test(&w, Some(true))?;
            test(&h.identity().sub(&w), Some(false))?;
        }
    }
    Ok(format!("{scanned} idempotents (6 diagonal and 50 conjugated primitive plus complements, over F5 and Q)"))
}

fn c5_peirce() -> Outcome {
    let mut type2_dim = None;
    for k in [fp(5), Field::rationals()] {
        let h = HermitianAlgebra::split(k);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen: Vec<HermitianElement> = Vec::new();
        while seen.len() < 10 {
            let w = h.random_primitive_idempotent(&mut rng);
            if seen.contains(&w) {
                continue;
            }
            let dims = h.peirce_decompose(&w).map_err(|e| e.to_string())?.dims();
            ensure(dims == (1, 1, 9, 16), || format!("Peirce dims {dims:?} over {k}"))?;
            if type2_dim.is_none() {
                let inv = type2_hermitian(&h, &w).map_err(|e| e.to_string())?;
                type2_dim = Some(fixed_subspace(&h, &inv.realized).map_err(|e| e.to_string())?.dim());
            }
            seen.push(w);
        }
    }
    ensure(type2_dim == Some(1 + 1 + 9), || format!("type II fixed dim {type2_dim:?}"))?;
    Ok("(1,1,9,16) for 10 distinct primitive idempotents over F5 and Q; 1+1+9 = 11 = dim Fix(r_w)".into())
}

fn c6_fixed_dims() -> Outcome {
    let fields = [
        Field::alg_closed_default(),
        fp(7),
        Field::reals(),
        Field::padics(2).unwrap(),
        Field::padics(3).unwrap(),
        Field::padics(5).unwrap(),
        Field::padics(7).unwrap(),
    ];
    let mut count = 0;
    for k in fields {
        let alg = TitsAlgebra::new(k);
        for t in representatives(k).map_err(|e| e.to_string())? {
            let inv = type1_involution(&alg, &t).map_err(|e| e.to_string())?;
            let d = fixed_subspace(&alg, &inv.realized).map_err(|e| e.to_string())?.dim();
            ensure(d == 15, || format!("dim Fix = {d} for {t} over {k}"))?;
            count += 1;
        }
    }
    let k = fp(7);
    let alg = TitsAlgebra::new(k);
    let th = theta(&alg).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let t = TorusElement::random(&k, &mut rng);
        let d = fixed_dimension(&th.compose(&t.to_map(&alg)), &k).map_err(|e| e.to_string())?;
        ensure(d == 15, || format!("dim Fix = {d} for {t} over F7"))?;
    }
    for kk in [k, Field::rationals()] {
        let a = TitsAlgebra::new(kk);
        let sigma = type2_involution(&a, &a.primitive_idempotent().to_coords()).map_err(|e| e.to_string())?;
        let d = fixed_subspace(&a, &sigma.realized).map_err(|e| e.to_string())?.dim();
        ensure(d == 11, || format!("dim Fix(sigma) = {d} over {kk}"))?;
    }
    Ok(format!("15 for {count} representatives and 100 random tori over F7; 11 for the type II involution"))
}

fn c7_theta_split() -> Outcome {
    let fields = [fp(5), fp(7), Field::alg_closed_default(), Field::rationals(), Field::reals(), Field::padics(3).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in fields {
        let alg = TitsAlgebra::new(k);
        let th = theta(&alg).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let t = TorusElement::random(&k, &mut rng);
            let g = th.compose(&t.to_map(&alg));
            ensure(g.compose(&g).is_identity(), || format!("(theta f_t)^2 != id for {t} over {k}"))?;
        }
    }
    Ok("(theta f_t)^2 = id for 100 tori over each of F5, F7, C, Q, R, Q3".into())
}

fn c8_derivations() -> Outcome {
    let mut out = Vec::new();
    for k in [Field::rationals(), fp(101)] {
        let alg = TitsAlgebra::new(k);
        let dim = alg.derivations().map_err(|e| e.to_string())?.dim();
        ensure(dim == 52, || format!("dim Der = {dim} over {k}"))?;
        let t1 = type1_involution(&alg, &TorusElement::identity(&k)).map_err(|e| e.to_string())?;
        let t2 = type2_involution(&alg, &alg.primitive_idempotent().to_coords()).map_err(|e| e.to_string())?;
        let c1 = centralizer_dimensions(&alg, &t1.realized).map_err(|e| e.to_string())?;
        let c2 = centralizer_dimensions(&alg, &t2.realized).map_err(|e| e.to_string())?;
        ensure(c1 == (24, 28) && c2 == (36, 16), || format!("centralizers {c1:?} {c2:?} over {k}"))?;
        out.push(format!("{k}: 52, TypeI {c1:?}, TypeII {c2:?}"));
    }
    Ok(out.join("; "))
}

fn c9_counts() -> Outcome {
    for p in [3, 5] {
        let report = census(fp(p), CensusMode::Exhaustive, 4).map_err(|e| e.to_string())?;
        ensure(report.type1_classes() == 1, || format!("F{p} census has classes {:?}", report.histogram))?;
        ensure(report.total == ((p - 1) as usize).pow(4), || format!("F{p} census size {}", report.total))?;
    }
    let distinct = |k: Field, ts: &[TorusElement]| -> Result<(), String> {
        let classes: Vec<_> = ts.iter().map(|t| classify(t, k)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                ensure(classes[i] != classes[j], || format!("{} and {} collide over {k}", ts[i], ts[j]))?;
            }
        }
        Ok(())
    };
    let r = Field::reals();
    let reps = representatives(r).map_err(|e| e.to_string())?;
    ensure(reps.len() == 3, || "three real representatives".into())?;
    distinct(r, &reps)?;
    for p in [2, 3, 5, 7] {
        let k = Field::padics(p).unwrap();
        let reps = representatives(k).map_err(|e| e.to_string())?;
        ensure(reps.len() == 2, || format!("two representatives over Q{p}"))?;
        distinct(k, &reps)?;
    }
    let fam = rational_distinct_family(&[3, 7, 11, 19]).map_err(|e| e.to_string())?;
    ensure(fam.len() == 4, || "four rational classes".into())?;
    let ts: Vec<TorusElement> = fam.iter().map(|(t, _)| t.clone()).collect();
    distinct(Field::rationals(), &ts)?;
    for (t, _) in &fam {
        classify::invariant_of(t, Field::rationals()).map_err(|e| e.to_string())?;
    }
    Ok("1 class over F3 and F5; 3 real, 2 per Qp (p = 2, 3, 5, 7), 4 rational classes pairwise distinct".into())
}

fn c10_decomposition() -> Outcome {
    let k = fp(5);
    let h = HermitianAlgebra::new(k, GammaTriple::from_ints(k, [1, 2, 3]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let d = Decomposition::with_pfister(h, &k.from_i64(2), &k.from_i64(3)).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 0..100 {
        let (x, y, u, v) = (d.random_hermitian(&mut rng), d.random_skew(&mut rng), d.random_hermitian(&mut rng), d.random_skew(&mut rng));
        ensure(d.product_identity_holds(&x, &y, &u, &v), || format!("product rule fails on sample {n}"))?;
        ensure(d.is_skew(&d.bullet(&x, &v)), || format!("X.V not skew on sample {n}"))?;
        ensure(d.is_hermitian(&d.star(&y, &v)), || format!("Y*V not Hermitian on sample {n}"))?;
    }
    Ok("100 samples over F5 with gamma = (1,2,3), D = (2,3)".into())
}

fn c11_kac() -> Outcome {
    let sols: Vec<[u64; 5]> = enumerate(2).iter().map(|s| s.rho).collect();
    ensure(sols == [[0, 1, 0, 0, 0], [0, 0, 0, 0, 1]], || format!("enumerate(2) = {sols:?}"))?;
    let types: Vec<String> =
        enumerate(2).iter().map(|s| centralizer_subdiagram(s).map(|t| t.to_string())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(types == ["A1xC3", "B4"], || format!("types {types:?}"))?;
    let report = cross_check_with_classifier(Field::alg_closed_default()).map_err(|e| e.to_string())?;
    let dims: Vec<(usize, usize)> = report.rows.iter().map(|r| (r.kac_dimension, r.centralizer_dimension)).collect();
    ensure(report.bijective && dims == [(24, 24), (36, 36)], || format!("cross-check {report:?}"))?;
    Ok("enumerate(2) = (0,1,0,0,0), (0,0,0,0,1); A1xC3 <-> TypeI (24), B4 <-> TypeII (36)".into())
}

/// Isotropy of `x₀² − ζx₁² − ηx₂² + ζηx₃²` over `F_p` by brute force.
fn isotropic_mod_p(z: u64, e: u64, p: u64) -> bool {
    let c = [1, (p - z) % p, (p - e) % p, z * e % p];
    let mut x = [0u64; 4];
    loop {
        let mut i = 0;
        while i < 4 {
            x[i] += 1;
            if x[i] < p {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == 4 {
            return false;
        }
        if (0..4).map(|j| c[j] * x[j] % p * x[j] % p).sum::<u64>() % p == 0 {
            return true;
        }
    }
}

fn c12_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in [Field::padics(3).unwrap(), Field::padics(5).unwrap(), Field::padics(2).unwrap(), Field::reals()] {
        let rat = |rng: &mut ChaCha8Rng| loop {
            let n: i64 = rng.gen_range(-200..=200);
            if n != 0 {
                return k.from_frac(n, rng.gen_range(1..=60)).unwrap();
            }
        };
        for n in 0..500 {
            let (a, b, c) = (rat(&mut rng), rat(&mut rng), rat(&mut rng));
            let h = |x: &Scalar, y: &Scalar| hilbert_symbol(x, y, k).unwrap();
            ensure(h(&a, &(&b * &c)) == h(&a, &b) * h(&a, &c), || format!("bimultiplicativity fails on pair {n} over {k}"))?;
            ensure(h(&a, &-&a) == 1, || format!("(a,-a) != 1 for {a} over {k}"))?;
        }
    }
    let mut pairs = 0;
    for p in [3u64, 5, 7, 11, 13] {
        let k = fp(p);
        for z in 1..p {
            for e in 1..p {
                let f = Pfister2::new(k.from_i64(z as i64), k.from_i64(e as i64)).unwrap();
                let split = pfister_is_split(&f, k).map_err(|e| e.to_string())?;
                ensure(split == isotropic_mod_p(z, e, p), || format!("pfister_is_split disagrees at ({z},{e}) mod {p}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("500 triples over each of Q3, Q5, Q2, R; {pairs} Pfister pairs over F3..F13 match brute-force isotropy"))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: "C1", name: "automorphism criterion", limit: secs(10), run: c1_automorphisms },
        Criterion { id: "C2", name: "Jordan structure", limit: secs(10), run: c2_jordan },
        Criterion { id: "C3", name: "sharped cubic and associative identities", limit: None, run: c3_cubic_axioms },
        Criterion { id: "C4", name: "idempotent lemma", limit: None, run: c4_idempotents },
        Criterion { id: "C5", name: "Peirce dimensions", limit: None, run: c5_peirce },
        Criterion { id: "C6", name: "fixed dimensions", limit: None, run: c6_fixed_dims },
        Criterion { id: "C7", name: "torus theta-splitness", limit: None, run: c7_theta_split },
        Criterion { id: "C8", name: "derivation algebra", limit: secs(60), run: c8_derivations },
        Criterion { id: "C9", name: "classification counts", limit: None, run: c9_counts },
        Criterion { id: "C10", name: "quaternionic decomposition", limit: None, run: c10_decomposition },
        Criterion { id: "C11", name: "Kac coordinates", limit: None, run: c11_kac },
        Criterion { id: "C12", name: "quadratic-form layer", limit: None, run: c12_forms },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let timing = match c.limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        let (ok, detail) = match outcome {
            Ok(d) if c.limit.is_none_or(|l| elapsed <= l) => (true, d),
            Ok(d) => (false, format!("{d}; exceeded time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!("{} {:<4} {} [exact, {timing}]: {detail}", if ok { "PASS" } else { "FAIL" }, c.id, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

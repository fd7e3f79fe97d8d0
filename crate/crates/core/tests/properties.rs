use f4_albert::algebra::{self, AlbertAlgebra};
use f4_albert::automorphism::{check_automorphism, f_uv, theta, TorusElement};
use f4_albert::classify::classify;
use f4_albert::decomposition::Decomposition;
use f4_albert::forms::{hilbert_symbol, GammaTriple};
use f4_albert::hermitian::HermitianAlgebra;
use f4_albert::kac::{enumerate, MARKS};
use f4_albert::linalg::Matrix;
use f4_albert::octonion::OctonionAlgebra;
use f4_albert::tits::{Mat3, TitsAlgebra};
use f4_albert::{Field, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 101, 65521])
}

fn exact_field() -> impl Strategy<Value = Field> {
    prop_oneof![prime().prop_map(|p| Field::finite(p).unwrap()), Just(Field::rationals())]
}

fn local_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::reals(), Field::padics(2).unwrap(), Field::padics(3).unwrap(), Field::padics(5).unwrap()])
}

fn nonzero_rational() -> impl Strategy<Value = (i64, i64)> {
    ((-60i64..60).prop_filter("nonzero", |n| *n != 0), 1i64..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_inverse_and_distributivity(k in exact_field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (k.random_nonzero(&mut rng), k.random(&mut rng), k.random(&mut rng));
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&b - &c) + &c, b);
    }

    #[test]
    fn octonion_norm_is_multiplicative(k in exact_field(), seed in any::<u64>()) {
        let o = OctonionAlgebra::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (o.random(&mut rng), o.random(&mut rng));
        prop_assert_eq!(x.mul(&y).norm(), &x.norm() * &y.norm());
        prop_assert_eq!(x.mul(&x).mul(&y), x.mul(&x.mul(&y)));
        prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
    }

    #[test]
    fn hilbert_symbol_is_bimultiplicative(k in local_field(), a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let s = |(n, d): (i64, i64)| k.from_frac(n, d).unwrap();
        let (a, b, c) = (s(a), s(b), s(c));
        let h = |x: &Scalar, y: &Scalar| hilbert_symbol(x, y, k).unwrap();
        prop_assert_eq!(h(&a, &(&b * &c)), h(&a, &b) * h(&a, &c));
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&a, &-&a), 1);
    }

    #[test]
    fn both_presentations_are_jordan(p in prime(), seed in any::<u64>()) {
        let k = Field::finite(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = HermitianAlgebra::split(k);
        let t = TitsAlgebra::new(k);
        for alg in [&h as &dyn AlbertAlgebra, &t] {
            let (x, y) = (alg.random_vector(&mut rng), alg.random_vector(&mut rng));
            for (name, ok) in algebra::jordan_checks(alg, &x, &y) {
                prop_assert!(ok, "{} fails in {}", name, alg.presentation());
            }
        }
        let x = t.random_element(&mut rng);
        prop_assert!(t.cubic_residual(&x).is_zero());
    }

    #[test]
    fn decomposition_product_rule(seed in any::<u64>(), g in (1i64..5, 1i64..5, 1i64..5)) {
        let k = Field::finite(7).unwrap();
        let h = HermitianAlgebra::new(k, GammaTriple::from_ints(k, [g.0, g.1, g.2]).unwrap()).unwrap();
        let d = Decomposition::with_pfister(h, &k.from_i64(3), &k.from_i64(5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (d.random_hermitian(&mut rng), d.random_skew(&mut rng));
        let (u, v) = (d.random_hermitian(&mut rng), d.random_skew(&mut rng));
        prop_assert!(d.product_identity_holds(&x, &y, &u, &v));
    }

    #[test]
    fn theta_inverts_the_torus(k in prop_oneof![exact_field(), local_field()], seed in any::<u64>()) {
        let alg = TitsAlgebra::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TorusElement::random(&k, &mut rng);
        let phi = theta(&alg).unwrap().compose(&t.to_map(&alg));
        prop_assert!(phi.compose(&phi).is_identity());
    }

    #[test]
    fn square_rescaling_preserves_class(k in local_field(), seed in any::<u64>(), m in 1i64..9, n in 1i64..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TorusElement::random(&k, &mut rng);
        let [u1, u2, v1, v2] = t.params().clone();
        let s = TorusElement::new(&u1 * &k.from_i64(m * m), &u2 * &k.from_i64(n * n), v1, v2).unwrap();
        prop_assert_eq!(classify(&t, k).unwrap(), classify(&s, k).unwrap());
    }

    #[test]
    fn kac_solutions_solve_the_equation(order in 1u64..12) {
        let sols = enumerate(order);
        for s in &sols {
            prop_assert_eq!(s.rho.iter().zip(MARKS).map(|(r, m)| r * m).sum::<u64>(), order);
        }
        let mut rhos: Vec<_> = sols.iter().map(|s| s.rho).collect();
        rhos.dedup();
        prop_assert_eq!(rhos.len(), sols.len());
    }

    #[test]
    fn rank_nullity(k in exact_field(), seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| k.random(&mut rng)).collect()).collect());
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in kernel {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn equal_determinants_give_automorphisms(seed in any::<u64>()) {
        let k = Field::finite(101).unwrap();
        let alg = TitsAlgebra::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = loop {
            let u = Mat3::random(&k, &mut rng);
            let v = Mat3::random(&k, &mut rng);
            if !u.det().is_zero() && !v.det().is_zero() {
                break (u, v);
            }
        };
        // rescale the first row of v so that det v = det u
        let r = &u.det() / &v.det();
        let mut w = v.clone();
        for c in 0..3 {
            w.0[0][c] = &w.0[0][c] * &r;
        }
        prop_assert!(check_automorphism(&alg, &f_uv(&alg, &u, &w).unwrap()).unwrap().passed());
        if !r.is_one() {
            prop_assert!(!check_automorphism(&alg, &f_uv(&alg, &u, &v).unwrap()).unwrap().passed());
        }
    }
}

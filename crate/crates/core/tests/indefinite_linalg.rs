use isoparam::indefinite_linalg::*;
use isoparam::numeric::{numerical_rank, seeded_rng};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

/// `exp(G K)` with `K` antisymmetric preserves `G`.
fn random_isometry<R: Rng>(g: &DMatrix<f64>, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let n = g.nrows();
    let x = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal) * scale);
    (g * (&x - x.transpose())).exp()
}

/// Self-adjoint operators of each type in canonical form, timelike direction first.
fn canonical_operator(jtype: JordanType, n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    let lambda: f64 = rng.gen_range(-2.0..2.0);
    for i in 0..n {
        a[(i, i)] = if i < 2 { lambda } else { rng.gen_range(-3.0..3.0) };
    }
    match jtype {
        JordanType::I => a[(0, 0)] = rng.gen_range(-3.0..3.0),
        // Semi-null pair (u, v) with ⟨u, v⟩ = 1: A u = λu + εv.
        JordanType::II => a[(1, 0)] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        JordanType::III => {
            a[(2, 2)] = lambda;
            a[(1, 0)] = 1.0;
            a[(2, 0)] = 1.0;
            a[(1, 2)] = 1.0;
        }
        JordanType::IV => {
            let b: f64 = rng.gen_range(0.3..2.0);
            a[(0, 1)] = b;
            a[(1, 0)] = -b;
        }
    }
    a
}

fn semi_null_gram(jtype: JordanType, n: usize) -> DMatrix<f64> {
    canonical_gram(jtype, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_forms_survive_isometries(t in 0usize..4, n in 3usize..7, seed in any::<u64>()) {
        let jtype = [JordanType::I, JordanType::II, JordanType::III, JordanType::IV][t];
        let mut rng = seeded_rng(seed);
        let g = semi_null_gram(jtype, n);
        let a = canonical_operator(jtype, n, &mut rng);
        let form = LorentzForm::new(g.clone()).unwrap();
        let base = classify_jordan(&SelfAdjointOperator::new(form.clone(), a.clone(), 1e-10).unwrap(), RANK_TOL).unwrap();
        prop_assert_eq!(base.jtype, jtype);
        let t_mat = random_isometry(&g, 0.3, &mut rng);
        prop_assert!((t_mat.transpose() * &g * &t_mat - &g).amax() < 1e-10);
        let moved = t_mat.clone().try_inverse().unwrap() * &a * &t_mat;
        let cls = classify_jordan(&SelfAdjointOperator::new(form, moved.clone(), 1e-8).unwrap(), RANK_TOL).unwrap();
        prop_assert_eq!(cls.jtype, jtype);
        prop_assert_eq!(cls.real_eigs.len(), base.real_eigs.len());
        for (x, y) in cls.real_eigs.iter().zip(&base.real_eigs) {
            prop_assert!((x.value - y.value).abs() < 1e-8 * (1.0 + y.value.abs()));
            prop_assert_eq!((x.alg_mult, x.geo_mult), (y.alg_mult, y.geo_mult));
        }
        if let (Some(p), Some(q)) = (cls.complex_pair, base.complex_pair) {
            prop_assert!((p.0 - q.0).abs() < 1e-8 && (p.1 - q.1).abs() < 1e-8);
        }
        let p = &cls.adapted_basis;
        prop_assert!((p.transpose() * &g * p - cls.canonical_gram()).amax() < 1e-9);
        prop_assert!((&moved * p - p * &cls.canonical_matrix).amax() < 1e-8 * (1.0 + moved.norm()));
    }

    #[test]
    fn random_operators_match_rank_oracle(seed in any::<u64>()) {
        // G A symmetric makes A self-adjoint; generic draws give Types I and IV.
        let mut rng = seeded_rng(seed);
        let g = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]));
        let s = DMatrix::<f64>::from_fn(4, 4, |_, _| rng.sample(StandardNormal));
        let a = &g * (&s + s.transpose());
        let cls = classify_jordan(&SelfAdjointOperator::new(LorentzForm::new(g).unwrap(), a.clone(), 1e-10).unwrap(), RANK_TOL).unwrap();
        let alg: usize = cls.real_eigs.iter().map(|e| e.alg_mult).sum::<usize>() + if cls.complex_pair.is_some() { 2 } else { 0 };
        prop_assert_eq!(alg, 4);
        for e in &cls.real_eigs {
            prop_assert!(e.alg_mult >= e.geo_mult);
            let shifted = &a - DMatrix::identity(4, 4) * e.value;
            prop_assert_eq!(4 - numerical_rank(&shifted, 1e-7 * (1.0 + a.norm())), e.geo_mult);
        }
        prop_assert!(matches!(cls.jtype, JordanType::I | JordanType::IV));
    }
}

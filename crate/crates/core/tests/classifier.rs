use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use isoparam::classifier::*;
use isoparam::kahler_angle::*;
use isoparam::numeric::seeded_rng;
use nalgebra::DVector;
use proptest::prelude::*;

fn e(m: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(2 * m);
    v[2 * i] = 1.0;
    v
}

fn ie(m: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(2 * m);
    v[2 * i + 1] = 1.0;
    v
}

fn subspace(w: RealSubspace, n: usize, r: f64) -> ClassifyInput {
    ClassifyInput::Subspace { w, n, r }
}

#[test]
fn hyperplane_is_lohnherr() {
    for n in 2..6 {
        let w = complement(&RealSubspace::from_spanning(n - 1, &[e(n - 1, 0)]).unwrap());
        for r in [0.0, 0.5] {
            let report = classify(&subspace(w.clone(), n, r), -4.0).unwrap();
            assert_eq!(report.case, Case::LohnherrFamily);
            assert!(report.homogeneous && report.constant_principal_curvatures);
        }
    }
}

#[test]
fn constant_angle_plane_is_berndt_brueck() {
    let m = 3;
    let w_perp = RealSubspace::from_spanning(m, &[e(m, 0), ie(m, 0) * 0.5 + ie(m, 1) * FRAC_PI_3.sin()]).unwrap();
    let report = classify(&subspace(complement(&w_perp), 4, 1.0), -4.0).unwrap();
    assert_eq!(report.case, Case::BerndtBrueckTube);
    assert!(report.homogeneous);
    assert!((report.phi.unwrap() - FRAC_PI_3).abs() < 1e-9);
    assert_eq!(report.k, Some(2));
}

#[test]
fn real_line_in_c2_is_inhomogeneous() {
    let w = RealSubspace::from_spanning(2, &[e(2, 0)]).unwrap();
    let report = classify(&subspace(w, 3, 1.0), -4.0).unwrap();
    assert_eq!(report.case, Case::WwTube);
    assert!(!report.homogeneous && !report.constant_principal_curvatures);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["case"], "vi");
    assert_eq!(json["k"], 3);
    assert_eq!(json["invariant"][0], serde_json::json!([0.0, 2]));
    assert_eq!(json["invariant"][1][1], 1);
}

#[test]
fn complex_normal_space_is_a_chk_tube() {
    let w_perp = RealSubspace::from_spanning(2, &[e(2, 0), ie(2, 0)]).unwrap();
    let report = classify(&subspace(complement(&w_perp), 3, 0.7), -1.0).unwrap();
    assert_eq!(report.case, Case::TubeChk);
}

#[test]
fn errors() {
    let line = RealSubspace::from_spanning(2, &[e(2, 0)]).unwrap();
    assert!(matches!(
        classify(&subspace(line.clone(), 3, 0.0), -4.0),
        Err(ClassifierError::InvalidRadius(_))
    ));
    assert!(matches!(
        classify(&subspace(line, 4, 1.0), -4.0),
        Err(ClassifierError::AmbientMismatch { .. })
    ));
    let whole = random_subspace(2, 4, 0).unwrap();
    assert!(matches!(
        classify(&subspace(whole, 3, 1.0), -4.0),
        Err(ClassifierError::InvalidCodimension { k: 0, .. })
    ));
    let odd = ClassifyInput::Family {
        family: NamedFamily::BerndtBrueck { k: 3, phi: 1.0 },
        n: 4,
        r: 1.0,
    };
    assert!(matches!(
        classify(&odd, -4.0),
        Err(ClassifierError::ParityViolation { k: 3, .. })
    ));
    let ok = ClassifyInput::Family {
        family: NamedFamily::BerndtBrueck { k: 3, phi: FRAC_PI_2 },
        n: 4,
        r: 1.0,
    };
    assert_eq!(classify(&ok, -4.0).unwrap().case, Case::BerndtBrueckTube);
    assert!(matches!(classify(&ok, 1.0), Err(ClassifierError::InvalidCurvature(_))));
}

#[test]
fn named_families() {
    let cases = [
        (NamedFamily::TubeChk { k: 1 }, Case::TubeChk),
        (NamedFamily::TubeRhn, Case::TubeRhn),
        (NamedFamily::Horosphere, Case::Horosphere),
        (NamedFamily::Lohnherr, Case::LohnherrFamily),
    ];
    for (family, case) in cases {
        let report = classify(&ClassifyInput::Family { family, n: 3, r: 1.0 }, -4.0).unwrap();
        assert_eq!(report.case, case);
        assert!(report.homogeneous);
    }
}

#[test]
fn ch3_has_a_single_profile() {
    let strata = enumerate_profiles(3, 3).unwrap();
    assert_eq!(strata.len(), 1);
    let expected = strata[0].profile(&[]);
    assert_eq!(expected.ascending(), vec![(0.0, 2), (FRAC_PI_2, 1)]);
    for seed in 0..500 {
        let w_perp = random_subspace(2, 3, seed).unwrap();
        assert!(kahler_profile(&w_perp).approx_eq(&expected, 1e-8), "seed {seed}");
        let report = classify(&subspace(complement(&w_perp), 3, 1.0), -4.0).unwrap();
        assert_eq!(report.case, Case::WwTube);
    }
}

#[test]
fn planes_in_c2_form_one_angle_family() {
    let strata = enumerate_profiles(3, 2).unwrap();
    let free: Vec<_> = strata.iter().filter(|s| s.free_parameters() == 1).collect();
    assert_eq!(free.len(), 1);
    // The endpoints of the free family are the remaining strata.
    let closure = [free[0].profile(&[0.0]), free[0].profile(&[FRAC_PI_2])];
    for s in strata.iter().filter(|s| s.free_parameters() == 0) {
        assert!(closure.iter().any(|p| p.approx_eq(&s.profile(&[]), 1e-12)));
    }
}

#[test]
fn strata_are_realized_by_witnesses() {
    for n in 2..6 {
        for k in 0..=2 * n - 3 {
            for stratum in enumerate_profiles(n, k).unwrap() {
                let angles: Vec<f64> = (0..stratum.free_parameters()).map(|i| 0.3 + 0.25 * i as f64).collect();
                let profile = stratum.profile(&angles);
                assert!(profile.satisfies_parity());
                assert_eq!(profile.dim(), k);
                let w = stratum.witness(n - 1, &angles);
                assert!(kahler_profile(&w).approx_eq(&profile, 1e-9), "{stratum:?}");
            }
        }
    }
}

#[test]
fn random_subspaces_land_in_some_stratum() {
    for n in 2..6 {
        for k in 0..=2 * n - 3 {
            let strata = enumerate_profiles(n, k).unwrap();
            let profile = kahler_profile(&random_subspace(n - 1, k, (n * 31 + k) as u64).unwrap());
            let free: Vec<usize> = profile
                .entries()
                .iter()
                .filter(|e| e.0 > ANGLE_TOL && e.0 < FRAC_PI_2 - ANGLE_TOL)
                .map(|e| e.1)
                .collect();
            let complex = profile
                .entries()
                .iter()
                .filter(|e| e.0 <= ANGLE_TOL)
                .map(|e| e.1)
                .sum::<usize>();
            let real = profile
                .entries()
                .iter()
                .filter(|e| e.0 >= FRAC_PI_2 - ANGLE_TOL)
                .map(|e| e.1)
                .sum::<usize>();
            let mut sorted = free.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let target = ProfileStratum {
                complex_dim: complex,
                free_blocks: sorted,
                totally_real_dim: real,
            };
            assert!(strata.contains(&target), "n={n} k={k}: {target:?}");
        }
    }
}

#[test]
fn phi_filter_agrees_with_sign_on_grid() {
    let c = -4.0;
    for i in 0..100 {
        for j in 0..100 {
            let x = -3.0 + 6.0 * (i as f64 + 0.5) / 100.0;
            let p = 0.05 + 3.0 * (j as f64 + 0.37) / 100.0;
            let f = inside_cartan_phi(x, p, c).unwrap();
            assert_eq!(f.value > 0.0, f.positive_iff, "x={x} p={p} value={}", f.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn type_one_pairs_have_zero_cartan_residual(lambda in 0.01..0.99f64, c in -5.0..-0.2f64, m1 in 1usize..6, m2 in 1usize..6) {
        let s = (-c).sqrt();
        let l = lambda * s / 2.0;
        let spectrum = [(l, m1), (-c / (4.0 * l), m2)];
        prop_assert!(cartan_residual(&spectrum, 0, c).unwrap().abs() < 1e-9);
        prop_assert!(cartan_residual(&spectrum, 1, c).unwrap().abs() < 1e-9);
    }

    #[test]
    fn classification_depends_only_on_congruence_class(n in 2usize..6, k_seed in 0usize..100, seed in any::<u64>()) {
        let k = 1 + k_seed % (2 * n - 3);
        let w = complement(&random_subspace(n - 1, k, seed).unwrap());
        let u = random_unitary(n - 1, &mut seeded_rng(seed.wrapping_add(1)));
        let a = classify(&subspace(w.clone(), n, 1.0), -4.0).unwrap();
        let b = classify(&subspace(w.transformed(&u), n, 1.0), -4.0).unwrap();
        prop_assert_eq!(a.case, b.case);
        prop_assert_eq!(a.homogeneous, b.homogeneous);
        prop_assert_eq!(a.k, b.k);
    }
}

use approx::assert_abs_diff_eq;
use isoparam::kahler_angle::{complement, random_subspace};
use isoparam::solvable_model::{build_w, AnModel, AnPoint, AnVector};
use nalgebra::DVector;
use proptest::prelude::*;

fn vector(n: usize) -> impl Strategy<Value = AnVector> {
    (
        -1.5..1.5f64,
        prop::collection::vec(-1.5..1.5f64, 2 * (n - 1)),
        -1.5..1.5f64,
    )
        .prop_map(|(a, u, x)| AnVector { a, u, x })
}

fn model_and_vectors(count: usize) -> impl Strategy<Value = (AnModel, Vec<AnVector>)> {
    (2usize..5, prop::sample::select(vec![-1.0, -4.0, -0.3])).prop_flat_map(move |(n, c)| {
        (
            Just(AnModel::new(n, c).unwrap()),
            prop::collection::vec(vector(n), count),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn connection_is_torsion_free((m, v) in model_and_vectors(2)) {
        let lhs = &m.levi_civita(&v[0], &v[1]).unwrap() - &m.levi_civita(&v[1], &v[0]).unwrap();
        let rhs = m.bracket(&v[0], &v[1]).unwrap();
        prop_assert!((&lhs - &rhs).norm() < 1e-12);
    }

    #[test]
    fn connection_is_metric((m, v) in model_and_vectors(3)) {
        let a = m.levi_civita(&v[0], &v[1]).unwrap().dot(&v[2]);
        let b = v[1].dot(&m.levi_civita(&v[0], &v[2]).unwrap());
        prop_assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn complex_structure_is_parallel((m, v) in model_and_vectors(2)) {
        let lhs = m.levi_civita(&v[0], &v[1].j()).unwrap();
        let rhs = m.levi_civita(&v[0], &v[1]).unwrap().j();
        prop_assert!((&lhs - &rhs).norm() < 1e-12);
    }

    #[test]
    fn curvature_matches_closed_form((m, v) in model_and_vectors(3)) {
        let numeric = m.curvature_from_connection(&v[0], &v[1], &v[2]).unwrap();
        let closed = m.curvature_tensor(&v[0], &v[1], &v[2]).unwrap();
        prop_assert!((&numeric - &closed).norm() < 1e-11 * (1.0 + closed.norm()));
    }

    #[test]
    fn product_is_associative((m, v) in model_and_vectors(3)) {
        let (g, h, k) = (AnPoint(v[0].clone()), AnPoint(v[1].clone()), AnPoint(v[2].clone()));
        let left = m.group_product(&m.group_product(&g, &h).unwrap(), &k).unwrap();
        let right = m.group_product(&g, &m.group_product(&h, &k).unwrap()).unwrap();
        prop_assert!((&left.0 - &right.0).norm() < 1e-10 * (1.0 + left.0.norm()));
    }

    #[test]
    fn one_parameter_subgroups_are_lines((m, v) in model_and_vectors(1), t in -1.0..1.0f64, s in -1.0..1.0f64) {
        let g = m.group_product(&AnPoint(&v[0] * t), &AnPoint(&v[0] * s)).unwrap();
        prop_assert!((&g.0 - &(&v[0] * (t + s))).norm() < 1e-12);
        let e = m.group_product(&AnPoint(v[0].clone()), &AnPoint(v[0].clone()).inverse()).unwrap();
        prop_assert!(e.0.norm() < 1e-12);
    }

    #[test]
    fn product_agrees_with_bch_to_third_order((m, v) in model_and_vectors(2)) {
        let h = 1e-2;
        let (x, y) = (&v[0] * h, &v[1] * h);
        let xy = m.bracket(&x, &y).unwrap();
        let xxy = m.bracket(&x, &xy).unwrap();
        let yyx = m.bracket(&y, &(-&xy)).unwrap();
        let bch = &(&(&x + &y) + &(&xy * 0.5)) + &(&(&xxy + &yyx) * (1.0 / 12.0));
        let g = m.group_product(&AnPoint(x), &AnPoint(y)).unwrap();
        // The next BCH term is O(h^4).
        prop_assert!((&g.0 - &bch).norm() < 50.0 * h.powi(4));
    }
}

#[test]
fn horocycle_acceleration_from_the_group_law() {
    for c in [-1.0, -4.0] {
        let m = AnModel::new(3, c).unwrap();
        let p = AnPoint(AnVector {
            a: 0.3,
            u: vec![0.2, -0.1, 0.5, 0.0],
            x: -0.4,
        });
        let u = m.root(&DVector::from_vec(vec![0.6, 0.0, 0.0, 0.8]));
        let h = 1e-5;
        // Velocity in the left-invariant frame from Log(τ(t)⁻¹ τ(t + h)) / h.
        let velocity = |t: f64| {
            let a = m.horocycle_point(&p, &u, t - h).unwrap();
            let b = m.horocycle_point(&p, &u, t + h).unwrap();
            &m.group_product(&a.inverse(), &b).unwrap().0 * (0.5 / h)
        };
        let (v_minus, v0, v_plus) = (velocity(-1e-3), velocity(0.0), velocity(1e-3));
        let derivative = &(&v_plus - &v_minus) * (0.5 / 1e-3);
        let acceleration = &derivative + &m.levi_civita(&v0, &v0).unwrap();
        let expected = &m.b() * (m.s() / 2.0);
        assert!((&acceleration - &expected).norm() < 1e-6, "c = {c}: {acceleration:?}");
    }
}

#[test]
fn subalgebra_words_stay_in_s_w() {
    let m = AnModel::new(4, -4.0).unwrap();
    let w = random_subspace(3, 3, 5).unwrap();
    let sub = build_w(&m, &w).unwrap();
    let tangent = sub.tangent_basis();
    let mut g = AnPoint::identity(4);
    for i in 0..200 {
        let factor = &tangent[i % tangent.len()] * (0.3 * ((i as f64) * 0.7).sin());
        g = m.group_product(&g, &AnPoint(factor)).unwrap();
    }
    assert!(sub.contains_point(&g, 1e-9));
    let normal = &sub.normal_basis()[0];
    assert!(!sub.contains_point(&m.group_product(&g, &AnPoint(normal * 0.1)).unwrap(), 1e-9));
}

#[test]
fn second_fundamental_form_is_the_normal_part_of_the_connection() {
    let m = AnModel::new(4, -2.5).unwrap();
    for seed in 0..20 {
        let k = 1 + (seed as usize % 5);
        let w = complement(&random_subspace(3, k, seed).unwrap());
        let sub = build_w(&m, &w).unwrap();
        let tangent = sub.tangent_basis();
        assert_eq!(tangent.len(), 2 * 4 - k);
        for x in &tangent {
            for y in &tangent {
                let ii = sub.second_fundamental_form(x, y).unwrap();
                let nabla = m.levi_civita(x, y).unwrap();
                let normal = sub.w_perp().project(&nabla.u_vec());
                assert!((ii.u_vec() - normal).norm() < 1e-12);
            }
        }
        for xi in sub.normal_basis() {
            let s = sub.shape_operator(&xi).unwrap();
            assert_eq!(s.trace(), 0.0);
            assert_abs_diff_eq!((&s - s.transpose()).amax(), 0.0);
        }
    }
}

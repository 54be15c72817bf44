//! The solvable group `AN` as a model of complex hyperbolic space.
//!
//! Checks the group law against its own associativity, the curvature tensor
//! against the Levi-Civita connection, and walks a horocycle inside a
//! minimal orbit `W_w`.
//!
//! ```bash
//! cargo run -p isoparam --example group_model
//! ```

use isoparam::kahler_angle::RealSubspace;
use isoparam::solvable_model::{build_w, AnModel, AnPoint};
use nalgebra::DVector;

fn main() {
    let model = AnModel::new(3, -4.0).expect("negative curvature");
    println!(
        "CH^{} with holomorphic curvature {}, s = {}",
        model.n(),
        model.c(),
        model.s()
    );

    let g = AnPoint(
        model
            .vector(0.3, DVector::from_vec(vec![0.1, -0.4, 0.2, 0.5]), 0.7)
            .unwrap(),
    );
    let h = AnPoint(
        model
            .vector(-1.1, DVector::from_vec(vec![0.6, 0.0, -0.3, 0.2]), -0.2)
            .unwrap(),
    );
    let k = AnPoint(
        model
            .vector(0.4, DVector::from_vec(vec![-0.2, 0.3, 0.1, 0.0]), 1.5)
            .unwrap(),
    );
    let left = model.group_product(&model.group_product(&g, &h).unwrap(), &k).unwrap();
    let right = model.group_product(&g, &model.group_product(&h, &k).unwrap()).unwrap();
    println!(
        "associativity defect: {:.2e}",
        (left.log().flatten() - right.log().flatten()).amax()
    );
    let unit = model.group_product(&g, &g.inverse()).unwrap();
    println!("g · g⁻¹ distance from identity: {:.2e}", unit.log().flatten().amax());

    let (b, z, e0) = (model.b(), model.z(), model.root_vector(0));
    let direct = model.curvature_tensor(&e0, &b, &z).unwrap();
    let via_connection = model.curvature_from_connection(&e0, &b, &z).unwrap();
    println!(
        "R(U, B)Z from the tensor and from ∇ differ by {:.2e}",
        (direct.flatten() - via_connection.flatten()).amax()
    );

    // The real line spanned by the first coordinate of C^2.
    let w = RealSubspace::from_spanning(2, &[DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0])]).unwrap();
    let sub = build_w(&model, &w).unwrap();
    println!("W_w has codimension {}", sub.codim());
    let base = AnPoint::identity(model.n());
    let direction = model.root(&w.basis().column(0).into_owned());
    for t in [0.0, 0.5, 1.0, 2.0] {
        let p = model.horocycle_point(&base, &direction, t).unwrap();
        println!("  t = {t:.1}: membership residual {:.2e}", sub.membership_residual(&p));
    }
}

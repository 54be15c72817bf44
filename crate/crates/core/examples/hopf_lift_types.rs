//! Lifting shape operators to anti-de Sitter space: each Hopf family lands in
//! a different Lorentzian normal form, and projecting back recovers it.
//!
//! ```bash
//! cargo run -p isoparam --example hopf_lift_types
//! ```

use isoparam::hopf_lift::{lift_shape_operator, project_spectrum, LiftedShapeData, Projection};
use isoparam::indefinite_linalg::{classify_jordan, RANK_TOL};
use isoparam::tube_geometry::{standard_spectrum, HopfFamily};

fn main() {
    let (n, r, c) = (3, 0.9, -4.0);
    for (label, family) in [
        ("tube around CH^1", HopfFamily::TubeChk { k: 1 }),
        ("horosphere", HopfFamily::Horosphere),
        ("tube around RH^3", HopfFamily::TubeRhn),
    ] {
        let spectrum = standard_spectrum(family, n, r, c).unwrap();
        let data = LiftedShapeData::hopf(spectrum.clone(), c).unwrap();
        let lifted = lift_shape_operator(&data).unwrap();
        let cls = classify_jordan(&lifted, RANK_TOL).unwrap();
        print!("{label:<18} lifts to type {:<3}", cls.jtype.to_string());
        if let Some((a, b)) = cls.complex_pair {
            print!(" complex pair {a:.4} ± {b:.4}i");
        }
        match project_spectrum(&cls, c).unwrap() {
            Projection::Spectrum(back) => println!("  round trip exact: {}", back.approx_eq(&spectrum, 1e-9)),
            Projection::TubeAroundW { radius, .. } => println!("  tube around W of radius {radius:.6}"),
        }
    }
}

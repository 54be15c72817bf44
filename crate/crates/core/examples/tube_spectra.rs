//! Principal curvatures of tubes: closed forms for the Hopf families, and a
//! numeric Jacobi-field computation on a tube around a minimal orbit `W_w`.
//!
//! ```bash
//! cargo run -p isoparam --example tube_spectra
//! ```

use isoparam::kahler_angle::{complement, random_subspace};
use isoparam::solvable_model::{build_w, AnModel};
use isoparam::tube_geometry::{
    numeric_principal_curvatures, standard_spectrum, tube_char_poly, tube_spectrum_at, HopfFamily, TubeSpec,
};

fn print_spectrum(label: &str, spectrum: &isoparam::tube_geometry::TubeSpectrum) {
    let parts: Vec<String> = spectrum
        .entries
        .iter()
        .map(|e| format!("{:.6}×{}", e.value, e.alg_mult))
        .collect();
    println!("{label:<24} {}", parts.join("  "));
}

fn main() {
    let (n, r, c) = (3, 1.0, -4.0);
    for (label, family) in [
        ("geodesic sphere", HopfFamily::TubeChk { k: 0 }),
        ("tube around CH^1", HopfFamily::TubeChk { k: 1 }),
        ("tube around RH^3", HopfFamily::TubeRhn),
        ("horosphere", HopfFamily::Horosphere),
    ] {
        print_spectrum(label, &standard_spectrum(family, n, r, c).unwrap());
    }

    // A tube around W_w with w^⊥ a random 3-plane of C^3: the spectrum varies
    // with the Kähler angle of the unit normal.
    let model = AnModel::new(4, c).unwrap();
    let w = complement(&random_subspace(3, 3, 5).unwrap());
    let spec = TubeSpec::new(build_w(&model, &w).unwrap(), 0.8).unwrap();
    for xi in spec.sub.normal_basis() {
        let phi = spec.normal_angle(&xi).unwrap();
        let formula = tube_spectrum_at(&spec, &xi).unwrap();
        let numeric = numeric_principal_curvatures(&spec, &xi).unwrap();
        let max_err = formula
            .expanded()
            .iter()
            .zip(&numeric)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("normal with Kähler angle {phi:.4}: formula vs Jacobi fields max |Δ| = {max_err:.2e}");
        let poly = tube_char_poly(model.n(), spec.sub.codim(), spec.r, phi, c).unwrap();
        println!(
            "  char poly degree {}, mean curvature {:.10} at every normal",
            poly.degree(),
            poly.root_sum()
        );
    }
}

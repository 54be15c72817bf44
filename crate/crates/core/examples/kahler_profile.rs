//! Kähler angles of real subspaces of `C^m` and why they classify up to `U(m)`.
//!
//! ```bash
//! cargo run -p isoparam --example kahler_profile
//! ```

use isoparam::kahler_angle::{complement, congruent, kahler_profile, random_subspace, random_unitary};
use isoparam::numeric::seeded_rng;

fn main() {
    let (m, k) = (3, 3);
    let w = random_subspace(m, k, 7).expect("k ≤ 2m");
    let profile = kahler_profile(&w);
    println!("random {k}-plane in C^{m}");
    for (angle, mult) in profile.ascending() {
        println!("  angle {angle:.6} rad, multiplicity {mult}");
    }

    // The profile is invariant under the unitary group, and determines the orbit.
    let u = random_unitary(m, &mut seeded_rng(11));
    let moved = w.transformed(&u);
    println!(
        "profile after a random unitary matches: {}",
        kahler_profile(&moved).approx_eq(&profile, 1e-10)
    );
    println!("congruent to its image: {}", congruent(&w, &moved));

    let other = random_subspace(m, k, 8).expect("k ≤ 2m");
    println!("congruent to another random {k}-plane: {}", congruent(&w, &other));

    // Free angles of w reappear in its orthogonal complement.
    println!("complement profile:");
    for (angle, mult) in kahler_profile(&complement(&w)).ascending() {
        println!("  angle {angle:.6} rad, multiplicity {mult}");
    }
}

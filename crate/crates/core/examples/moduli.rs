//! Strata of Kähler profiles for `w^⊥ ⊂ C^{n−1}` of a given dimension, each
//! with a witness subspace realizing it.
//!
//! ```bash
//! cargo run -p isoparam --example moduli -- 5 4
//! ```

use isoparam::classifier::enumerate_profiles;
use isoparam::kahler_angle::kahler_profile;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(4);
    let k = args.next().unwrap_or(3);
    let strata = enumerate_profiles(n, k).expect("0 ≤ k ≤ 2n − 3");
    println!(
        "{} strata of {k}-dimensional normal spaces in C^{}",
        strata.len(),
        n - 1
    );
    for stratum in strata {
        let angles: Vec<f64> = (0..stratum.free_parameters()).map(|i| 0.4 + 0.3 * i as f64).collect();
        let witness = stratum.witness(n - 1, &angles);
        let realized = kahler_profile(&witness).approx_eq(&stratum.profile(&angles), 1e-9);
        println!(
            "  complex {} | free blocks {:?} | totally real {} | parameters {} | witness ok {realized}",
            stratum.complex_dim,
            stratum.free_blocks,
            stratum.totally_real_dim,
            stratum.free_parameters(),
        );
    }
}

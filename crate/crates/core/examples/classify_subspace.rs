//! Classify the tube around `W_w` for a subspace read from JSON, then the
//! named families for comparison.
//!
//! ```bash
//! cargo run -p isoparam --example classify_subspace -- crates/core/examples/data/real_line_c2.json
//! ```

use isoparam::classifier::{classify, ClassifyInput, NamedFamily};
use isoparam::kahler_angle::{RealSubspace, SubspaceRecord};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/real_line_c2.json").to_string());
    let record: SubspaceRecord =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("readable file")).expect("subspace JSON");
    let w = RealSubspace::from_record(&record).expect("valid subspace");
    let n = w.ambient_cdim() + 1;
    let report = classify(&ClassifyInput::Subspace { w, n, r: 1.0 }, -4.0).expect("classifiable");
    println!("{path}:");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    for family in [
        NamedFamily::TubeChk { k: 1 },
        NamedFamily::TubeRhn,
        NamedFamily::Horosphere,
        NamedFamily::Lohnherr,
        NamedFamily::BerndtBrueck { k: 2, phi: 0.6 },
    ] {
        let report = classify(&ClassifyInput::Family { family, n: 4, r: 1.0 }, -4.0).unwrap();
        println!(
            "{:<14} case ({}) homogeneous {}",
            family.tag(),
            report.case.numeral(),
            report.homogeneous
        );
    }
}

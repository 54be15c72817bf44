// Guards like `!(r > 0.0)` reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classifier;
pub mod cli;
pub mod hopf_lift;
pub mod indefinite_linalg;
pub mod kahler_angle;
pub mod numeric;
pub mod solvable_model;
pub mod tube_geometry;
pub mod verify;

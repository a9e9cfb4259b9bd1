//! Algebraic kernels: single-qubit SU(2) and the two-qubit TFXY group.

pub mod su2;
pub mod tfxy;

pub use su2::{euler_extract, su2_turnover, wrap_angle, Axis, EulerTriple, Su2};
pub use tfxy::{tfxy_turnover, tfxy_turnover_up, TfxyAngles, TfxyPayload, TwoQubitTerm};

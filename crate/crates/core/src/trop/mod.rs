//! Exact min-plus matrix arithmetic and lossy phone call matrices.

mod calls;
mod kleene;
mod structure;
mod matrix;
mod scalar;

pub(crate) use calls::check_pair;
pub use calls::{apply_lossy_call, phone_call_matrix, Call, CallSequence};
pub use kleene::{is_metric, kleene_star};
pub use structure::{build_w, core_witness, is_connected, is_irredundant, metric_as_calls, symmetric_core};
pub use matrix::{MatrixJson, TropMatrix};
pub use scalar::TropScalar;

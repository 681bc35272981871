//! Exact polyhedral cones over the integers: double description, canonical
//! forms, faces and fan verification.

mod cone;
mod dd;
mod fan;
mod linalg;

pub(crate) use dd::DdState;
pub use cone::{Face, PolyCone};
pub use fan::{connected_components, fan_check, FanCheck, FanWitness};
pub use linalg::{canonical_line, clear_denominators, dot, primitive, rank, IntVec, LinearSubspace};

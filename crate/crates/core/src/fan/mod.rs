//! Polyhedral fan structure on products of lossy phone call matrices for few
//! gossipers, built from the piecewise-linear maps `a ↦ C_{I_1}(a_1) ⊙ ⋯ ⊙ C_{I_k}(a_k)`.

mod census;
mod chamber;
mod pq;
mod scheme;

pub use census::{
    closure_sample_check, enumerate_spans, gossip_fan, metric_cone, orbit_classify, ClosureReport, GossipFan,
    OrbitReport, SpanCensus, SpanClass,
};
pub use chamber::{chambers, coordinate_permutation, image_cone, matrix_coordinates, Chamber, MatrixCone, MAX_CHAMBER_CALLS};
pub use pq::{pq_example_check, PqReport, PqWitness};
pub use scheme::{entry_path_forms, minimal_forms, LinForm, ProductScheme, MAX_SCHEME_LENGTH};

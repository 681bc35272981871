//! The ordinary gossip monoid: products of the lossless calls `C_kl(0)`.

mod enumerate;
mod irredundant;
mod pessimal;
mod state;

pub use enumerate::{
    element_length, enumerate_monoid, generators, memory_estimate, EnumerationOptions, EnumerationReport,
    KNOWN_SIZES,
};
pub use irredundant::{is_irredundant_calls, max_irredundant_length, IrredundantSearch, SearchOptions};
pub use pessimal::{construct_pessimal, longest_random_pessimal, verify_pessimal};
pub use state::{GossipState, MAX_GOSSIPERS};

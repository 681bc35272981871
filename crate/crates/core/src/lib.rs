//! The lossy gossip monoid: products of min-plus distance matrices, the
//! ordinary gossip monoid, the polyhedral fan supporting small cases, and
//! membership tests for tropicalised matrix groups.

pub mod detour;
pub mod error;
pub mod fan;
pub mod gossip;
pub mod groups;
pub mod poly;
pub mod trop;

pub use error::{Error, ParseError, Result};

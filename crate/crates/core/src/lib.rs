//! Exact computations with partitioned simplicial fans.
//!
//! A fan together with an admissible partition of its cones determines a cubical
//! category. This crate builds that category, its classifying-space CW structure,
//! picture-group presentations over fan posets, and the specialization to
//! simplicial hyperplane arrangements (flats, shards, poset of regions).

pub mod error;
pub mod linalg;
pub mod polyhedral;
pub mod fan;
pub mod partition;
pub mod category;
pub mod poset;
pub mod group;
pub mod picture;
pub mod cw;
pub mod arrangement;
pub mod io;
pub mod render;
pub mod builtins;

pub use error::{Error, Result};
pub use fan::{CanonicalCone, Cone, Fan};
pub use partition::{IdentTable, Partition};

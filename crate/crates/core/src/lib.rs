//! Online regenerator placement in optical networks.
//!
//! Algorithms for placing regenerators on lightpaths that arrive one at a
//! time, exact offline oracles to measure them against, and adaptive
//! adversaries that build worst-case request sequences.

pub mod adversary;
pub mod baseline;
pub mod error;
pub mod generate;
pub mod grid;
pub mod harness;
pub mod instance;
pub mod model;
pub mod online;
pub mod oracle;
pub mod pmax;
pub mod ratio;
pub mod reduction;
pub mod set_cover;

pub use error::{Error, Result};
pub use instance::Instance;
pub use model::{Lightpath, NodeCap, NodeId, PathId, RegeneratorAssignment, Topology};
pub use ratio::RatioValue;

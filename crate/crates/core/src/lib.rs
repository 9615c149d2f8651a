//! Ear-decomposition based approximation for the minimum 2-vertex-connected
//! spanning subgraph problem, with certificate checking, lower bounds,
//! exact small-instance oracles and instance generators.

pub mod bounds;
pub mod ear;
pub mod error;
pub mod graph;
pub mod heuristic;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod phi;
pub mod redundancy;
pub mod restructure;
pub mod solve;
pub mod verify;

pub use ear::{Ear, EarDecomposition, EarKind};
pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use phi::Backend;

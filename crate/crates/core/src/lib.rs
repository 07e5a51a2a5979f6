//! Parallel graph connectivity: composable sampling and finish phases over
//! a shared concurrent union-find / label array, plus spanning forest,
//! batch-incremental streaming and approximate minimum spanning forest.

pub mod amsf;
pub mod driver;
pub mod dsu;
pub mod error;
pub mod graph;
pub mod minbased;
pub mod recommend;
mod rng;
pub mod sampling;
pub mod streaming;

pub use error::{Error, Result};

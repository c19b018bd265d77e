//! Finite stratified simplicial sets, lax Gray cubes, homotopy coherent
//! paths, nerves of Strat-enriched categories and anodyne certificates.

pub mod anodyne;
pub mod enriched;
pub mod error;
pub mod hc_path;
pub mod nerve;
pub mod operator;
pub mod shapes;
pub mod strat;
pub mod suite;

pub use error::{Error, Result};

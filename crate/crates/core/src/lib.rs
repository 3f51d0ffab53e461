pub mod cli;
pub mod decimate;
pub mod density;
pub mod error;
pub mod oracle;
pub mod phasecomb;
pub mod report;
pub mod sampler;
pub mod specfun;
pub mod stats;
pub mod suite;

pub use error::{Error, Result};

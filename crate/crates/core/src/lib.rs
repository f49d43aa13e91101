//! Hyperspace convergences on finite spaces.

pub mod convergence;
pub mod error;
pub mod funcspace;
pub mod harness;
pub mod hyperconv;
pub mod hyperfamily;
mod lookup;
pub mod space;
pub mod transfer;

pub use error::{Error, Result};

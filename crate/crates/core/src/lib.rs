//! Exact analysis of the coupled-logistic duopoly map.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod identities;
pub mod model;
pub mod snapback;
pub mod solve2d;
pub mod stability;

pub use error::{Error, Result};

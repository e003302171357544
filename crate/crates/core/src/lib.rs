//! Invariants of the logarithmic bundle of a reduced plane curve, computed
//! with exact rational linear algebra.

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod jacobian;
pub mod poly;
pub mod splitting;

pub use error::{Error, Result};

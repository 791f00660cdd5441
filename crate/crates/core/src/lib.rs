//! Exact computations with connected graded bialgebras over Q.

pub mod bialg;
pub mod error;
pub mod exactq;
pub mod format;
pub mod freealg;
pub mod graded;
pub mod lie;
pub mod models;
pub mod par;

pub use error::{Error, Result};

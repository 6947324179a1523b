//! Exact workbench for the pd-crank of bipartitions with designated summands.
//!
//! Every statistic is computed by at least two independent routes: exhaustive
//! enumeration of combinatorial objects, and truncated q-series arithmetic
//! over arbitrary-precision integers. The [`verify`] registry binds each
//! theorem, congruence and identity to an executable check.

pub mod combinatorics;
pub mod cranks;
pub mod error;
pub mod moments;
pub mod omega;
pub mod products;
pub mod qseries;
pub mod records;
pub mod verify;

pub use error::{Error, Result};
pub use qseries::TruncSeries;

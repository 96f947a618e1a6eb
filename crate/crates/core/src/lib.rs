//! Exact computation of q-Whittaker polynomials and the graded characters of
//! Weyl modules for current algebras of type `sl_r`.

pub mod error;
pub mod exactalg;
pub mod macdonald;
pub mod partitions;
pub mod report;
pub mod symfunc;
pub mod weylchar;

pub use error::{Error, Result};

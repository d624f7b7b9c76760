//! Exact algebra kernel for the two-variable Jacobi polynomials on the
//! triangle and the rank-two Jacobi algebra they carry.

pub mod error;
pub mod exact;
pub mod jacobi1;
pub mod jacobi2;
pub mod relations;
pub mod report;
pub mod shiftalg;
pub mod weyl;

pub use error::{Error, Result};

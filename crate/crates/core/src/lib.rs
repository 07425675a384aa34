//! Zeros of L-functions from an Abel-summation evaluation of the
//! Dirichlet series on and near the critical line.

pub mod abel;
pub mod arith;
pub mod coefficients;
pub mod error;
pub mod explicit;
pub mod gamma;
pub mod lfunction;
pub mod mp;
pub mod zeros;

pub use error::{Error, Result};
pub use mp::{Cx, PrecisionContext};
pub use lfunction::{builtin_spec, CatalogEntry, LFunctionSpec, Parity};

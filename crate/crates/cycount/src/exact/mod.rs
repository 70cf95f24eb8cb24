//! Exact scalar rings and dense linear algebra over prime fields.

pub mod fq;
pub mod laurent;
pub mod matrix;
pub mod quad;

pub use fq::{Field, FqScalar};
pub use laurent::{laurent_eval_z, z_value, LaurentPoly};
pub use matrix::{ff_reduce, FqMatrix, Reduction};
pub use quad::QuadExt;

//! Exact counting in augmentation categories of Legendrian tangles and intrinsic Hall
//! algebras of odd Calabi-Yau categories over finite fields.

pub mod aug;
pub mod complex;
pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod hall;
pub mod tangle;

pub use error::{CyError, Result};

//! Legendrian tangle words: parsing, rulings and the ruling functor.

pub mod dsl;
pub mod random;
pub mod sweep;
pub mod transfer;
pub mod word;

pub use dsl::parse_tangle;
pub use sweep::{enumerate_tangle_rulings, sweep_transfer, TangleRuling};
pub use transfer::{letter_transfer, ruling_polynomial, ruling_transfer, Entry, TransferMatrix};
pub use word::{BasicTangle, Letter, TangleWord};

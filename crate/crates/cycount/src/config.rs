//! Runtime limits, overridable from the environment.

/// Default cap on the dimension of spaces enumerated element by element.
pub const DEFAULT_MAX_DIM: usize = 10;

/// Enumeration cap, read from `CYCOUNT_MAX_DIM` when set to a positive integer.
pub fn max_dim() -> usize {
    std::env::var("CYCOUNT_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

//! Ext profiles, truncated Euler pairings, the γ-weight and single-object cardinality terms.

use std::collections::BTreeMap;

use super::flagged::FlaggedComplex;
use super::cochains::Cochains;
use super::hom::HomComplex;
use super::points::{parity_sign, reduce_deg};
use crate::error::{CyError, Result};
use crate::exact::QuadExt;

/// `dim Ext^i(x, y)` for each degree `i` (in `Z/2m`, or `Z` when `m = 0`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtProfile {
    pub m: u32,
    pub dims: BTreeMap<i64, usize>,
}

impl ExtProfile {
    pub fn new(m: u32, dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (i, d) in dims {
            if d > 0 {
                *out.entry(reduce_deg(m, i)).or_insert(0) += d;
            }
        }
        ExtProfile { m, dims: out }
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims.get(&reduce_deg(self.m, i)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// `Σ_{i=lo..=hi} (-1)^i dim Ext^i`, with indices read modulo `2m`.
    pub fn euler_truncated(&self, lo: i64, hi: i64) -> i64 {
        (lo..=hi).map(|i| parity_sign(i) * self.dim(i) as i64).sum()
    }

    /// Euler pairing over one full period `Z/2m`; only meaningful for `m > 0`.
    pub fn euler_periodic(&self) -> i64 {
        self.dims.iter().map(|(&i, &d)| parity_sign(i) * d as i64).sum()
    }
}

/// Cohomology of the Hom complex of flag-preserving maps, degree by degree.
pub fn ext_profile(x: &FlaggedComplex, y: &FlaggedComplex) -> Result<ExtProfile> {
    let hom = HomComplex::new(x, y)?;
    let mut degs: Vec<i64> = hom.degrees();
    if x.m == 0 {
        // cohomology can sit one step past the support of the chain groups
        let extra: Vec<i64> = degs.iter().flat_map(|&d| [d - 1, d + 1]).collect();
        degs.extend(extra);
        degs.sort();
        degs.dedup();
    }
    Ok(ExtProfile::new(x.m, degs.into_iter().map(|k| (k, hom.cohomology_dim(k)))))
}

/// The γ-weight of an object under an even-CY functor, from functor data only:
/// `⟨x,x⟩_{0..n-1} + dim Ext^0 - rk(Ext^0(x,x) -> Ext^0(f x, f x))` for `n ≥ 0`, and
/// `-⟨x,x⟩_{n..-1} + ...` for `n < 0`.
pub fn gamma(profile: &ExtProfile, target_h0_rank: usize, n: i64) -> Result<i64> {
    if n % 2 != 0 {
        return Err(CyError::Unsupported(format!("γ needs an even CY dimension, got {n}")));
    }
    let rk = profile.dim(0) as i64 - target_h0_rank as i64;
    if rk < 0 {
        return Err(CyError::Internal("rank into the target exceeds dim Ext^0".into()));
    }
    let trunc = if n >= 0 { profile.euler_truncated(0, n - 1) } else { -profile.euler_truncated(n, -1) };
    Ok(trunc + rk)
}

/// `q^{-⟨x,x⟩_{<0}} / |Aut(x)|` for a Z-graded profile with finitely many negative terms.
pub fn hcard_locally_finite(profile: &ExtProfile, aut: u64, q: u64) -> Result<QuadExt> {
    if profile.m != 0 {
        return Err(CyError::Unsupported("periodic Ext profile has infinite negative support".into()));
    }
    if aut == 0 {
        return Err(CyError::DivisionByZero);
    }
    let neg: i64 = profile.dims.range(..0).map(|(&i, &d)| parity_sign(i) * d as i64).sum();
    let num = QuadExt::from_int(q, q as i64).pow(-neg)?;
    num.div(&QuadExt::from_int(q, aut as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hcard_examples() {
        let p = ExtProfile::new(0, [(0, 1)]);
        assert_eq!(hcard_locally_finite(&p, 2, 3).unwrap(), QuadExt::from_int(3, 1).div(&QuadExt::from_int(3, 2)).unwrap());
        let p = ExtProfile::new(0, [(-1, 1)]);
        assert_eq!(hcard_locally_finite(&p, 1, 5).unwrap(), QuadExt::from_int(5, 5));
        assert_eq!(hcard_locally_finite(&ExtProfile::default(), 1, 2).unwrap(), QuadExt::one(2));
        assert!(hcard_locally_finite(&ExtProfile::new(1, [(0, 1)]), 1, 2).is_err());
    }

    #[test]
    fn gamma_rejects_odd() {
        assert!(gamma(&ExtProfile::default(), 0, 1).is_err());
    }
}

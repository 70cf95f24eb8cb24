//! Intrinsic Hall algebras of odd Calabi-Yau categories given by finite models.

pub mod algebra;
pub mod checks;
pub mod element;
pub mod jordan;
pub mod nakayama;
pub mod nilpotent;
pub mod projective;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::error::Result;

pub use algebra::{basis_convert, hall_product, HallAlgebra};
pub use checks::{
    check_associativity, check_extension_bounds, check_extension_identities, extension_identity_gaps,
    heart_embedding_check, twist_reading_check, CheckReport, IdentityGap,
};
pub use element::{Basis, HallElement};
pub use jordan::Partition;
pub use nakayama::{build_stable_nakayama, NakayamaClass, StableNakayama};
pub use nilpotent::{build_root_nilpotent, classical_hall_numbers, NilClass, Quadruple, RootNilpotent};
pub use projective::{cone_oracle_projective_model, cone_oracle_sweep, ext_dim_projective_model};

/// Cone and rank data of one extension `δ ∈ Ext^1(z, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRecord<C> {
    pub cone: C,
    /// `r_i(δ)` for `i = 0 .. 2m-1`; the ranks are periodic in `i` with period `2m`.
    pub ranks: Vec<usize>,
}

/// A finite presentation of an odd Calabi-Yau triangulated category over `F_q`.
///
/// `Ext^i` is periodic in `i` with period `2m` (`m = grading_modulus`). Extension handles
/// carry their own endpoints.
pub trait CategoryModel: Sync {
    type Class: Clone + Ord + Hash + Debug + Display + Send + Sync;
    type Ext1: Clone + Debug;

    fn name(&self) -> String;
    fn q(&self) -> u64;
    /// Calabi-Yau dimension of the default reading.
    fn cy_dim(&self) -> i64;
    fn grading_modulus(&self) -> u32;
    fn zero(&self) -> Self::Class;
    fn indecomposables(&self) -> Vec<Self::Class>;
    fn direct_sum(&self, x: &Self::Class, y: &Self::Class) -> Self::Class;
    fn ext_dim(&self, i: i64, x: &Self::Class, y: &Self::Class) -> Result<usize>;
    fn ext1_elements(&self, z: &Self::Class, x: &Self::Class) -> Result<Vec<Self::Ext1>>;
    fn cone(&self, delta: &Self::Ext1) -> Result<Self::Class>;
    /// Rank of `(a, b) ↦ δa + (-1)^{i-1} bδ` from `Ext^{i-1}(z,z) ⊕ Ext^{i-1}(x,x)` to `Ext^i(z,x)`.
    fn r_rank(&self, i: i64, delta: &Self::Ext1) -> Result<usize>;
    fn aut_order(&self, x: &Self::Class) -> Result<u64>;

    /// `⟨z,x⟩_{lo..hi} = Σ (-1)^i dim Ext^i(z,x)`; for `hi < lo` this is `-⟨z,x⟩_{hi+1..lo-1}`,
    /// so that `⟨⟩_{a..b} + ⟨⟩_{b+1..c} = ⟨⟩_{a..c}` always holds.
    fn euler_truncated(&self, z: &Self::Class, x: &Self::Class, lo: i64, hi: i64) -> Result<i64> {
        let (a, b, sign) = if hi >= lo { (lo, hi, 1) } else { (hi + 1, lo - 1, -1) };
        let mut acc = 0i64;
        for i in a..=b {
            let d = self.ext_dim(i, z, x)? as i64;
            acc += if i.rem_euclid(2) == 0 { d } else { -d };
        }
        Ok(sign * acc)
    }

    /// All extensions with their cones and ranks. Models override this when a batched
    /// computation is cheaper than per-element calls.
    fn extension_records(&self, z: &Self::Class, x: &Self::Class) -> Result<Vec<ExtRecord<Self::Class>>> {
        let period = 2 * self.grading_modulus().max(1) as i64;
        self.ext1_elements(z, x)?
            .iter()
            .map(|d| {
                let ranks = (0..period).map(|i| self.r_rank(i, d)).collect::<Result<Vec<_>>>()?;
                Ok(ExtRecord { cone: self.cone(d)?, ranks })
            })
            .collect()
    }
}

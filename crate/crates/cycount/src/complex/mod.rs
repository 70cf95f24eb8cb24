//! Graded acyclic flagged complexes over F_q and their homological invariants.

pub mod barannikov;
pub mod cochains;
pub mod ext;
pub mod flagged;
pub mod hom;
pub mod limit;
pub mod points;

pub use barannikov::{barannikov_census, barannikov_form, classify_to_ruling, BarannikovCensus};
pub use cochains::{Cochains, Cohomology};
pub use ext::{ext_profile, gamma, hcard_locally_finite, ExtProfile};
pub use flagged::{Flag, FlaggedComplex};
pub use hom::{aut_order, ext01, find_isomorphism, is_isomorphic, restriction_rank, EndAlgebra, HomComplex};
pub use limit::{filtered_quasi_iso, limit_aut_order, limit_ext01, limit_isomorphic, HomLimit};
pub use points::{enumerate_set_rulings, reduce_deg, GradedPointSet, Ruling};

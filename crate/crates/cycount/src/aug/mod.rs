//! Counting objects of augmentation categories over F_q.

pub mod basic;
pub mod battery;
pub mod functor;
pub mod global;

pub use battery::{basic_tangles, BatteryBounds};
pub use basic::{enumerate_basic_objects, enumerate_identity_objects, BasicObject, ObjectKind};
pub use functor::{link_invariant, predicted_z_transfer, verify_main_theorem, z_transfer, TheoremReport};
pub use global::{global_object_oracle, Census, CensusEntry, ClassData, ORACLE_MAX_Q, ORACLE_MAX_STRANDS};

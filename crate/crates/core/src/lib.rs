//! Exact classification of 2x2 matrix representations of free monoids and
//! free groups into molds, with conjugacy certificates, moduli coordinates and
//! an exhaustive census over small prime fields.

pub mod cache;
pub mod canon;
pub mod census;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod mat2;
pub mod mold;
pub mod parallel;
pub mod rep;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use invariants::InvariantVector;
pub use mat2::Mat2;
pub use mold::MoldLabel;
pub use rep::{Mode, RepTuple, Word};

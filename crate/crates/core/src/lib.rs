//! Exact finite subgroups of SU(2)³ and their free actions on S³ × S³.
//!
//! The crate builds the ADE subgroups of SU(2) with exact quaternion
//! arithmetic, assembles subgroups of products through the Goursat
//! correspondence, decides freeness with the real-part criterion, and checks
//! closed-form classification predicates against that oracle.

pub mod ade;
pub mod classify;
pub mod congruence;
pub mod error;
pub mod exact;
pub mod freeness;
pub mod goursat;
pub mod quaternion;

pub use error::{GroupError, ParseError};

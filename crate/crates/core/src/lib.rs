//! Fixed-point constraints on nonevasive graph complexes over ten vertices.
//!
//! The crate rebuilds the vertex-transitive graphs on ten vertices, turns
//! permutation group chains into Euler characteristic equations in the
//! class indicators, and enumerates every indicator assignment that
//! satisfies them.

pub mod form;
pub mod graphcat;
pub mod indsolve;
pub mod lemmas;
pub mod oliver;
pub mod orbitcx;
pub mod perm;

pub use form::{LinearForm, Relation, VarId};

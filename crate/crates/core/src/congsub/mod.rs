//! Finite matrix groups over residue rings: closure, reduction maps,
//! congruence-kernel checks, orbits.

pub mod group;
pub mod hom;
pub mod lemma;
pub mod o41;
pub mod orbit;
pub mod pu;

pub use group::{group_closure, FiniteMatrixGroup, RMat, CLOSURE_LIMIT};
pub use hom::{check_relators_exact, reduction_hom, Homomorphism};
pub use lemma::{congruence_quotient_check, QuotientReport, Scheme};
pub use orbit::{orbit, Orbit, Subspace};
pub use pu::{pu_identity_congruent_count, PuCount};

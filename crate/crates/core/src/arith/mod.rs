//! Exact arithmetic: number rings, prime ideals, residue rings, and
//! polynomial identity testing.

pub mod polyid;
pub mod prime;
pub mod residue;
pub mod ring;
pub mod symbolic;

pub use polyid::{poly_identity_test, Affine, IdentityReport, MatExpr};
pub use prime::{factor_rational_prime, PrimeIdeal};
pub use residue::{FiniteRing, Residue, ResidueRing};
pub use ring::{cyc5, make_ring, FieldElement, RingElement, RingKind};

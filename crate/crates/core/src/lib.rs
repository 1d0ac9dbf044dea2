//! Congruence subgroups of arithmetic lattices: exact number-ring arithmetic,
//! finitely presented groups, finite matrix groups over residue rings,
//! Bruhat-Tits trees and certified RFRS towers.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::should_implement_trait)]

pub mod arith;
pub mod bttree;
pub mod congsub;
pub mod data;
pub mod error;
pub mod fpgroup;
pub mod homology;
pub mod identities;
pub mod instances;
pub mod linalg;
pub mod par;
pub mod tower;

pub use error::{Error, Result};

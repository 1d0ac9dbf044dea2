//! Integer and number-ring matrix algebra.

pub mod abelian;
pub mod forms;
pub mod intmat;
pub mod json;
pub mod matrix;

pub use abelian::{abelian_invariants, abelian_invariants_sparse, AbelianInvariants, SparseRelations};
pub use forms::{coordinate_change_check, preserves_form, FormKind};
pub use intmat::{hnf, snf, IntMatrix, SmithForm};
pub use matrix::{Conjugate, FMat, FieldScalar, Mat, Scalar};

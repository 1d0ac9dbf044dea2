//! Form-preservation predicates and the change-of-coordinates check for the
//! hermitian form over Q(zeta5).

use serde::Serialize;

use super::matrix::{Conjugate, FMat, Mat, Scalar};
use crate::arith::ring::{cyc5, FieldElement, RingKind};
use crate::arith::symbolic::SymElement;
use crate::error::{Error, Result};
use crate::instances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Bilinear,
    Hermitian,
}

/// `M^* F M == F`, where `M^*` is the transpose (bilinear) or conjugate transpose (hermitian).
pub fn preserves<T: Scalar + Conjugate>(m: &Mat<T>, f: &Mat<T>, kind: FormKind) -> bool {
    if !m.is_square() || !f.is_square() || m.rows != f.rows {
        return false;
    }
    let mt = match kind {
        FormKind::Bilinear => m.transpose(),
        FormKind::Hermitian => m.adjoint(),
    };
    &mt.mul(f).mul(m) == f
}

pub fn preserves_form(m: &FMat, f: &FMat, kind: FormKind) -> Result<bool> {
    if m.kind() != f.kind() {
        return Err(Error::RingMismatch(format!("{} vs {}", m.kind().name(), f.kind().name())));
    }
    if m.rows != f.rows || !m.is_square() || !f.is_square() {
        return Err(Error::Input(format!("shape {}x{} vs {}x{}", m.rows, m.cols, f.rows, f.cols)));
    }
    Ok(preserves(m, f, kind))
}

/// Norm from Q(alpha) to Q of an element of the real subfield, x * sigma_2(x).
pub fn real_norm(x: &FieldElement) -> Option<FieldElement> {
    if x.kind() != RingKind::Cyclotomic5 || x.conj() != *x {
        return None;
    }
    let s = FieldElement::new(cyc5::galois(&x.num, 2), x.den.clone());
    Some(x * &s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateChangeReport {
    /// `c^* h c == -h0` with e = -d / phi
    pub transforms_h: bool,
    /// same with the other sign, e = d / phi (expected false)
    pub other_sign: bool,
    /// with d and e algebraically independent square roots (expected false)
    pub independent_roots: bool,
    /// `(d / phi)^2 == 4 + 2 alpha`
    pub roots_compatible: bool,
    pub norm_1_plus_alpha: String,
    pub norm_4_plus_2alpha: String,
    pub norms_ok: bool,
}

impl CoordinateChangeReport {
    pub fn holds(&self) -> bool {
        self.transforms_h && self.roots_compatible && self.norms_ok
    }
}

fn transformed(c: &Mat<SymElement>) -> (Mat<SymElement>, Mat<SymElement>) {
    let lift = |m: &FMat| m.map(|x| SymElement::from_field(x.clone()));
    let h = lift(&instances::hermitian_h());
    let minus_h0 = lift(&instances::hermitian_h0()).neg();
    (c.adjoint().mul(&h).mul(c), minus_h0)
}

/// Does `c^* h c = -h0` hold once the root `e` is specialized to `k d`?
/// `None` checks with `d`, `e` independent.
pub fn change_transforms(c: &Mat<SymElement>, k: Option<&FieldElement>) -> bool {
    let (lhs, rhs) = transformed(c);
    match k {
        None => lhs == rhs,
        Some(k) => lhs.map(|x| x.eps_as_delta_multiple(k)) == rhs,
    }
}

pub fn coordinate_change_check() -> CoordinateChangeReport {
    let n1 = real_norm(&SymElement::delta_square()).expect("real");
    let n2 = real_norm(&SymElement::eps_square()).expect("real");
    let minus4 = FieldElement::from_int(RingKind::Cyclotomic5, -4);
    let k = instances::phi().inv().expect("phi != 0");
    let c = instances::change_c();
    CoordinateChangeReport {
        transforms_h: change_transforms(&c, Some(&-&k)),
        other_sign: change_transforms(&c, Some(&k)),
        independent_roots: change_transforms(&c, None),
        roots_compatible: &(&k * &k) * &SymElement::delta_square() == SymElement::eps_square(),
        norms_ok: n1 == minus4 && n2 == minus4,
        norm_1_plus_alpha: n1.to_string(),
        norm_4_plus_2alpha: n2.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_example() {
        let a = instances::alpha();
        assert_eq!(a.transpose().mul(&instances::q0()).mul(&a), instances::q_form());
        let id = FMat::identity(RingKind::Rational, 5);
        assert!(preserves_form(&id, &instances::q0(), FormKind::Bilinear).unwrap());
    }

    #[test]
    fn mismatch_is_error() {
        let a = FMat::identity(RingKind::Rational, 3);
        assert!(preserves_form(&a, &instances::hermitian_h0(), FormKind::Hermitian).is_err());
    }

    #[test]
    fn change_of_coordinates() {
        let r = coordinate_change_check();
        assert!(r.holds(), "{r:?}");
        assert!(!r.other_sign && !r.independent_roots);
        let one = SymElement::from_field(FieldElement::one(RingKind::Cyclotomic5));
        let id = Mat::identity_like(3, &one);
        let k = -&instances::phi().inv().unwrap();
        assert!(!change_transforms(&id, Some(&k)));
    }
}

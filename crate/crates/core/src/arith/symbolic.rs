//! The quotient ring E[d, e] / (d^2 - (1 + alpha), e^2 - (4 + 2 alpha)) with
//! E = Q(zeta5). Conjugation acts on E-coefficients and fixes d and e.

use super::ring::{cyc5, FieldElement, RingKind};
use crate::linalg::matrix::{Conjugate, Scalar};

/// Coefficients on the basis (1, d, e, de).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    pub c: [FieldElement; 4],
}

fn e0() -> FieldElement {
    FieldElement::zero(RingKind::Cyclotomic5)
}

impl SymElement {
    pub fn from_field(x: FieldElement) -> Self {
        SymElement { c: [x, e0(), e0(), e0()] }
    }

    pub fn delta() -> Self {
        SymElement { c: [e0(), FieldElement::one(RingKind::Cyclotomic5), e0(), e0()] }
    }

    pub fn eps() -> Self {
        SymElement { c: [e0(), e0(), FieldElement::one(RingKind::Cyclotomic5), e0()] }
    }

    /// d^2 = 1 + alpha
    pub fn delta_square() -> FieldElement {
        &FieldElement::one(RingKind::Cyclotomic5) + &cyc5::alpha().to_field()
    }

    /// e^2 = 4 + 2 alpha
    pub fn eps_square() -> FieldElement {
        &FieldElement::from_int(RingKind::Cyclotomic5, 4) + &cyc5::alpha().scale(&2.into()).to_field()
    }

    /// d^{-1} = d / (1 + alpha)
    pub fn delta_inv() -> Self {
        let k = Self::delta_square().inv().unwrap();
        Self::delta().scale(&k)
    }

    /// Specialize e = k d (valid when k^2 (1 + alpha) = 4 + 2 alpha), leaving an element of E[d].
    pub fn eps_as_delta_multiple(&self, k: &FieldElement) -> Self {
        let d2 = Self::delta_square();
        let one = &self.c[0] + &(&(&self.c[3] * k) * &d2);
        let d = &self.c[1] + &(&self.c[2] * k);
        SymElement { c: [one, d, e0(), e0()] }
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        SymElement { c: [&self.c[0] * k, &self.c[1] * k, &self.c[2] * k, &self.c[3] * k] }
    }
}

impl Scalar for SymElement {
    fn zero_like(&self) -> Self {
        SymElement::from_field(e0())
    }
    fn one_like(&self) -> Self {
        SymElement::from_field(FieldElement::one(RingKind::Cyclotomic5))
    }
    fn from_i64_like(&self, n: i64) -> Self {
        SymElement::from_field(FieldElement::from_int(RingKind::Cyclotomic5, n))
    }
    fn add(&self, o: &Self) -> Self {
        SymElement { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
    fn sub(&self, o: &Self) -> Self {
        SymElement { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
    fn neg(&self) -> Self {
        SymElement { c: std::array::from_fn(|i| -&self.c[i]) }
    }
    fn mul(&self, o: &Self) -> Self {
        // basis index bits: 1 = d, 2 = e
        let d2 = SymElement::delta_square();
        let e2 = SymElement::eps_square();
        let mut out: [FieldElement; 4] = std::array::from_fn(|_| e0());
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if o.c[j].is_zero() {
                    continue;
                }
                let mut coef = &self.c[i] * &o.c[j];
                if i & j & 1 == 1 {
                    coef = &coef * &d2;
                }
                if i & j & 2 == 2 {
                    coef = &coef * &e2;
                }
                let k = i ^ j;
                out[k] = &out[k] + &coef;
            }
        }
        SymElement { c: out }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl Conjugate for SymElement {
    fn conj(&self) -> Self {
        SymElement { c: std::array::from_fn(|i| self.c[i].conj()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        let d = SymElement::delta();
        assert_eq!(d.mul(&d), SymElement::from_field(SymElement::delta_square()));
        let e = SymElement::eps();
        assert_eq!(e.mul(&e), SymElement::from_field(SymElement::eps_square()));
        assert!(d.mul(&SymElement::delta_inv()).is_one());
        assert_eq!(d.conj(), d);
    }

    #[test]
    fn associativity_sample() {
        let a = SymElement::delta().add(&SymElement::from_field(cyc5::zeta().to_field()));
        let b = SymElement::eps().mul(&SymElement::delta()).add(&SymElement::from_field(cyc5::pi().to_field()));
        let c = SymElement::eps().add(&a);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which number ring an element lives in.
///
/// `ImagQuadratic(d)` is the ring of integers of Q(sqrt(-d)) with basis (1, w),
/// where w = (1 + sqrt(-d))/2 for d = 3 mod 4 and w = sqrt(-d) otherwise.
/// `Cyclotomic5` is Z[z] with basis (1, z, z^2, z^3), z a primitive 5th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Rational,
    ImagQuadratic(u32),
    Cyclotomic5,
}

pub const SUPPORTED_D: [u32; 5] = [1, 2, 3, 7, 11];

impl RingKind {
    pub fn degree(self) -> usize {
        match self {
            RingKind::Rational => 1,
            RingKind::ImagQuadratic(_) => 2,
            RingKind::Cyclotomic5 => 4,
        }
    }

    /// Minimal polynomial of the basis generator, coefficients from low to high degree.
    pub fn min_poly(self) -> Vec<i64> {
        match self {
            RingKind::Rational => vec![-1, 1],
            RingKind::ImagQuadratic(d) => {
                let (t, n) = quad_tn(d);
                vec![n, -t, 1]
            }
            RingKind::Cyclotomic5 => vec![1, 1, 1, 1, 1],
        }
    }

    /// Parse "rational", "Q", "d=7", "qi:7", "Q(sqrt-7)", "cyclotomic-5", "Z[zeta5]".
    pub fn parse(s: &str) -> Result<RingKind> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let kind = match t.as_str() {
            "rational" | "q" | "z" => RingKind::Rational,
            "cyclotomic-5" | "cyclotomic5" | "z[zeta5]" | "q(zeta5)" | "e" => RingKind::Cyclotomic5,
            _ => {
                let digits = t
                    .strip_prefix("d=")
                    .or_else(|| t.strip_prefix("qi:"))
                    .or_else(|| t.strip_prefix("imag-quadratic:"))
                    .or_else(|| t.strip_prefix("q(sqrt-").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::Input(format!("unknown ring `{s}`")))?;
                let d: u32 = digits.parse().map_err(|_| Error::Input(format!("unknown ring `{s}`")))?;
                RingKind::ImagQuadratic(d)
            }
        };
        make_ring(kind)
    }

    pub fn name(self) -> String {
        match self {
            RingKind::Rational => "rational".into(),
            RingKind::ImagQuadratic(d) => format!("d={d}"),
            RingKind::Cyclotomic5 => "cyclotomic-5".into(),
        }
    }

    pub(crate) fn mul_coords(self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        match self {
            RingKind::Rational => vec![&a[0] * &b[0]],
            RingKind::ImagQuadratic(d) => {
                // w^2 = t w - n
                let (t, n) = quad_tn(d);
                let hi = &a[1] * &b[1];
                let c0 = &a[0] * &b[0] - &hi * n;
                let c1 = &a[0] * &b[1] + &a[1] * &b[0] + hi * t;
                vec![c0, c1]
            }
            RingKind::Cyclotomic5 => {
                let mut p = vec![BigInt::zero(); 5];
                for i in 0..4 {
                    if a[i].is_zero() {
                        continue;
                    }
                    for j in 0..4 {
                        p[(i + j) % 5] += &a[i] * &b[j];
                    }
                }
                fold_cyclotomic(p)
            }
        }
    }

    /// Complex conjugation.
    pub(crate) fn conj_coords(self, a: &[BigInt]) -> Vec<BigInt> {
        match self {
            RingKind::Rational => a.to_vec(),
            RingKind::ImagQuadratic(d) => {
                let (t, _) = quad_tn(d);
                vec![&a[0] + &a[1] * t, -&a[1]]
            }
            RingKind::Cyclotomic5 => galois5(a, 4),
        }
    }

    /// All nontrivial Galois conjugates; their product with the element is its norm.
    pub(crate) fn other_conjugates(self, a: &[BigInt]) -> Vec<Vec<BigInt>> {
        match self {
            RingKind::Rational => vec![],
            RingKind::ImagQuadratic(_) => vec![self.conj_coords(a)],
            RingKind::Cyclotomic5 => (2..5).map(|k| galois5(a, k)).collect(),
        }
    }
}

pub fn make_ring(kind: RingKind) -> Result<RingKind> {
    if let RingKind::ImagQuadratic(d) = kind {
        if !SUPPORTED_D.contains(&d) {
            return Err(Error::UnsupportedRing(format!("d={d}")));
        }
    }
    Ok(kind)
}

fn quad_tn(d: u32) -> (i64, i64) {
    if d % 4 == 3 {
        (1, (1 + d as i64) / 4)
    } else {
        (0, d as i64)
    }
}

/// Reduce a polynomial in z of degree < 5 (with z^5 = 1) to the basis 1..z^3.
fn fold_cyclotomic(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let top = std::mem::take(&mut p[4]);
    p.truncate(4);
    for c in p.iter_mut() {
        *c -= &top;
    }
    p
}

fn galois5(a: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); 5];
    for (i, c) in a.iter().enumerate() {
        p[(i * k) % 5] += c;
    }
    fold_cyclotomic(p)
}

/// An algebraic integer: integer coordinates over the integral basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub kind: RingKind,
    pub coords: Vec<BigInt>,
}

impl RingElement {
    pub fn new(kind: RingKind, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), kind.degree(), "coordinate length does not match ring degree");
        RingElement { kind, coords }
    }

    pub fn from_i64s(kind: RingKind, c: &[i64]) -> Self {
        let mut coords: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        coords.resize(kind.degree(), BigInt::zero());
        RingElement::new(kind, coords)
    }

    pub fn zero(kind: RingKind) -> Self {
        RingElement { kind, coords: vec![BigInt::zero(); kind.degree()] }
    }

    pub fn one(kind: RingKind) -> Self {
        Self::from_int(kind, BigInt::one())
    }

    pub fn from_int(kind: RingKind, n: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(kind);
        e.coords[0] = n.into();
        e
    }

    /// The basis generator (w, z, or 1 for the rationals).
    pub fn generator(kind: RingKind) -> Self {
        let mut e = Self::zero(kind);
        let k = if kind.degree() > 1 { 1 } else { 0 };
        e.coords[k] = BigInt::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn conj(&self) -> Self {
        RingElement { kind: self.kind, coords: self.kind.conj_coords(&self.coords) }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.kind);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn conjugate_product(&self) -> RingElement {
        let mut acc = Self::one(self.kind);
        for c in self.kind.other_conjugates(&self.coords) {
            acc = &acc * &RingElement { kind: self.kind, coords: c };
        }
        acc
    }

    /// Absolute norm down to Q.
    pub fn norm(&self) -> BigInt {
        let n = self * &self.conjugate_product();
        debug_assert!(n.coords[1..].iter().all(|c| c.is_zero()));
        n.coords[0].clone()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RingElement { kind: self.kind, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient in the ring, if it exists.
    pub fn div_exact(&self, other: &RingElement) -> Option<RingElement> {
        let q = FieldElement::from(self.clone()).div(&FieldElement::from(other.clone()))?;
        q.into_integral()
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::from(self.clone())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            RingKind::Rational => "",
            RingKind::ImagQuadratic(d) if d % 4 == 3 => "w",
            RingKind::ImagQuadratic(_) => "s",
            RingKind::Cyclotomic5 => "z",
        };
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{i}"),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigInt::one() {
                format!("-{mono}")
            } else {
                format!("{c}{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+").replace("+-", "-"))
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        debug_assert_eq!(self.kind, rhs.kind);
        RingElement { kind: self.kind, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        debug_assert_eq!(self.kind, rhs.kind);
        RingElement { kind: self.kind, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        debug_assert_eq!(self.kind, rhs.kind);
        RingElement { kind: self.kind, coords: self.kind.mul_coords(&self.coords, &rhs.coords) }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { kind: self.kind, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// An element of the fraction field, stored as `num / den` with `den > 0` and
/// `gcd(content(num), den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub num: RingElement,
    pub den: BigInt,
}

impl From<RingElement> for FieldElement {
    fn from(num: RingElement) -> Self {
        FieldElement { num, den: BigInt::one() }
    }
}

impl FieldElement {
    pub fn new(num: RingElement, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut x = FieldElement { num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = -&self.num;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            for c in self.num.coords.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn kind(&self) -> RingKind {
        self.num.kind
    }

    pub fn zero(kind: RingKind) -> Self {
        RingElement::zero(kind).into()
    }

    pub fn one(kind: RingKind) -> Self {
        RingElement::one(kind).into()
    }

    pub fn from_int(kind: RingKind, n: impl Into<BigInt>) -> Self {
        RingElement::from_int(kind, n).into()
    }

    pub fn from_ratio(kind: RingKind, n: i64, d: i64) -> Self {
        FieldElement::new(RingElement::from_int(kind, n), BigInt::from(d))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_integral(self) -> Option<RingElement> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            None
        }
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.num.coords[1..].iter().all(|c| c.is_zero()) {
            Some((self.num.coords[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        FieldElement { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn norm(&self) -> (BigInt, BigInt) {
        let n = self.num.norm();
        let d = num_traits::pow(self.den.clone(), self.kind().degree());
        let g = n.gcd(&d);
        (n / &g, d / g)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let cp = self.num.conjugate_product();
        let n = self.num.norm();
        Some(FieldElement::new(cp.scale(&self.den), n))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let n = self.num.pow(e as u32);
        FieldElement::new(n, num_traits::pow(self.den.clone(), e as usize))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        FieldElement::new(self.num.scale(k), self.den.clone())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.coords[1..].iter().all(|c| c.is_zero()) {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if self.den == rhs.den {
            return FieldElement::new(&self.num + &rhs.num, self.den.clone());
        }
        FieldElement::new(&self.num.scale(&rhs.den) + &rhs.num.scale(&self.den), &self.den * &rhs.den)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: -&self.num, den: self.den.clone() }
    }
}

/// Handy constructors for the cyclotomic ring.
pub mod cyc5 {
    use super::*;

    pub fn zeta() -> RingElement {
        RingElement::generator(RingKind::Cyclotomic5)
    }

    /// z^k for any integer k.
    pub fn zeta_pow(k: i64) -> RingElement {
        let k = k.rem_euclid(5) as usize;
        let mut p = vec![BigInt::zero(); 5];
        p[k] = BigInt::one();
        RingElement::new(RingKind::Cyclotomic5, fold_cyclotomic(p))
    }

    /// sqrt(5) inside Q(z): 2z + 2z^4 + 1.
    pub fn alpha() -> RingElement {
        let two = RingElement::from_int(RingKind::Cyclotomic5, 2);
        &(&(&two * &zeta()) + &(&two * &zeta_pow(4))) + &RingElement::one(RingKind::Cyclotomic5)
    }

    /// The uniformizer z - 1 at the prime above 5.
    pub fn pi() -> RingElement {
        &zeta() - &RingElement::one(RingKind::Cyclotomic5)
    }

    /// Polynomial in z with integer coefficients.
    pub fn poly(c: &[i64]) -> RingElement {
        let mut acc = RingElement::zero(RingKind::Cyclotomic5);
        for (i, &x) in c.iter().enumerate() {
            acc = &acc + &zeta_pow(i as i64).scale(&BigInt::from(x));
        }
        acc
    }

    /// Apply the automorphism z -> z^k.
    pub fn galois(x: &RingElement, k: usize) -> RingElement {
        RingElement::new(RingKind::Cyclotomic5, galois5(&x.coords, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_squares_to_five() {
        let a = cyc5::alpha();
        assert_eq!(&a * &a, RingElement::from_int(RingKind::Cyclotomic5, 5));
        assert_eq!(a.conj(), a);
        assert_eq!(cyc5::galois(&a, 2), -&a);
    }

    #[test]
    fn cyclotomic_relation() {
        let z = cyc5::zeta();
        assert_eq!(z.pow(4), RingElement::from_i64s(RingKind::Cyclotomic5, &[-1, -1, -1, -1]));
        assert!(z.pow(5).is_one());
        assert_eq!(z.conj(), cyc5::zeta_pow(4));
    }

    #[test]
    fn omega_min_poly() {
        for d in SUPPORTED_D {
            let k = RingKind::ImagQuadratic(d);
            let w = RingElement::generator(k);
            let mp = k.min_poly();
            let mut acc = RingElement::zero(k);
            for (i, c) in mp.iter().enumerate() {
                acc = &acc + &w.pow(i as u32).scale(&BigInt::from(*c));
            }
            assert!(acc.is_zero(), "d={d}");
        }
    }

    #[test]
    fn norms() {
        let k = RingKind::ImagQuadratic(1);
        assert_eq!(RingElement::from_i64s(k, &[1, 1]).norm(), BigInt::from(2));
        assert_eq!(cyc5::pi().norm(), BigInt::from(5));
        let x = FieldElement::from(RingElement::from_i64s(k, &[3, 4]));
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn unsupported_d() {
        assert!(make_ring(RingKind::ImagQuadratic(5)).is_err());
        assert!(RingKind::parse("d=19").is_err());
        assert_eq!(RingKind::parse("Q(sqrt-7)").unwrap(), RingKind::ImagQuadratic(7));
    }
}

//! Residue rings O/𝔭^k, with canonical coordinate representatives and an
//! optional table-backed form for small rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::{int_valuation, reduce_mod_lattice, PrimeIdeal};
use super::ring::{FieldElement, RingElement};
use crate::error::{Error, Result};
use crate::linalg::intmat::IntMatrix;

pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Canonical coordinate vector: `0 <= v[i] < moduli[i]`.
pub type Residue = Vec<i64>;

#[derive(Clone, Debug)]
pub struct ResidueRing {
    pub prime: PrimeIdeal,
    pub k: u32,
    pub lattice: IntMatrix,
    pub moduli: Vec<i64>,
    pub characteristic: u64,
    /// Complex conjugation descends (the conjugate ideal is the same ideal).
    pub conj_stable: bool,
}

impl ResidueRing {
    pub fn new(prime: &PrimeIdeal, k: u32) -> Self {
        let lattice = prime.power_lattice(k);
        let moduli: Vec<i64> = (0..lattice.rows).map(|i| lattice.get(i, i).to_i64().expect("modulus too large")).collect();
        let characteristic = prime.p.pow(k.div_ceil(prime.e));
        let conj_stable = prime.gens.iter().all(|g| prime.contains(&g.conj()));
        ResidueRing { prime: prime.clone(), k, lattice, moduli, characteristic, conj_stable }
    }

    pub fn cardinality(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn zero(&self) -> Residue {
        vec![0; self.moduli.len()]
    }

    pub fn one(&self) -> Residue {
        self.reduce(&RingElement::one(self.prime.kind))
    }

    pub fn reduce(&self, x: &RingElement) -> Residue {
        reduce_mod_lattice(&self.lattice, &x.coords).iter().map(|c| c.to_i64().unwrap()).collect()
    }

    pub fn lift(&self, r: &Residue) -> RingElement {
        RingElement::new(self.prime.kind, r.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn reduce_big(&self, v: Vec<BigInt>) -> Residue {
        reduce_mod_lattice(&self.lattice, &v).iter().map(|c| c.to_i64().unwrap()).collect()
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce_big(a.iter().zip(b).map(|(x, y)| BigInt::from(x + y)).collect())
    }

    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce_big(a.iter().zip(b).map(|(x, y)| BigInt::from(x - y)).collect())
    }

    pub fn neg(&self, a: &Residue) -> Residue {
        self.reduce_big(a.iter().map(|x| BigInt::from(-x)).collect())
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(&(&self.lift(a) * &self.lift(b)))
    }

    pub fn conj(&self, a: &Residue) -> Residue {
        self.reduce(&self.lift(a).conj())
    }

    pub fn from_int(&self, n: i64) -> Residue {
        self.reduce(&RingElement::from_int(self.prime.kind, n))
    }

    /// Reduce a 𝔭-integral field element. Denominators prime to p are inverted
    /// modulo the characteristic; a p-power part of the denominator is traded for
    /// a power of the principal generator g: x = (y / g^v) / (p^s / g^v).
    pub fn reduce_field(&self, x: &FieldElement) -> Result<Residue> {
        let v = self.prime.valuation_field(x);
        if matches!(v, Some(v) if v < 0) {
            return Err(Error::Input(format!("{x} is not integral at the prime")));
        }
        if x.is_zero() {
            return Ok(self.zero());
        }
        let s = int_valuation(&x.den, self.prime.p);
        let ps = num_traits::pow(BigInt::from(self.prime.p), s as usize);
        let rest = &x.den / &ps;
        let ch = BigInt::from(self.characteristic);
        let inv = mod_inverse(&rest.mod_floor(&ch), &ch).ok_or_else(|| Error::Input("denominator not invertible".into()))?;
        if s == 0 {
            return Ok(self.reduce(&x.num.scale(&inv)));
        }
        let g = self.prime.generator.as_ref().ok_or_else(|| Error::Input("p in the denominator needs a principal prime".into()))?;
        let gv = g.pow(self.prime.e * s);
        let y = x.num.div_exact(&gv).ok_or_else(|| Error::Input("numerator not divisible".into()))?;
        let w = RingElement::from_int(self.prime.kind, ps).div_exact(&gv).expect("generator power divides p^s");
        let winv = self.inv(&self.reduce(&w)).expect("unit at the prime");
        Ok(self.mul(&self.reduce(&y.scale(&inv)), &winv))
    }

    /// Inverse of a unit: brute force modulo 𝔭, then Newton lifting.
    pub fn inv(&self, a: &Residue) -> Option<Residue> {
        let field = ResidueRing::new(&self.prime, 1);
        let a1 = self.to_coarser(&field, a);
        let y1 = (0..field.cardinality()).map(|i| field.from_index(i)).find(|y| field.mul(&a1, y) == field.one())?;
        let mut y = self.reduce(&field.lift(&y1));
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.k {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Some(y)
    }

    pub fn index_of(&self, r: &Residue) -> u64 {
        let mut idx = 0u64;
        for (c, m) in r.iter().zip(&self.moduli).rev() {
            idx = idx * (*m as u64) + *c as u64;
        }
        idx
    }

    pub fn from_index(&self, mut idx: u64) -> Residue {
        let mut r = Vec::with_capacity(self.moduli.len());
        for &m in &self.moduli {
            r.push((idx % m as u64) as i64);
            idx /= m as u64;
        }
        r
    }

    pub fn enumerate(&self) -> Result<Vec<Residue>> {
        let n = self.cardinality();
        if n > ENUMERATION_LIMIT {
            return Err(Error::budget("residue ring enumeration", ENUMERATION_LIMIT));
        }
        Ok((0..n).map(|i| self.from_index(i)).collect())
    }

    /// Largest j <= k with r in 𝔭^j (k for zero).
    pub fn valuation(&self, r: &Residue) -> u32 {
        let x = self.lift(r);
        if x.is_zero() {
            return self.k;
        }
        self.prime.valuation(&x).unwrap().min(self.k)
    }

    /// The natural map O/𝔭^k -> O/𝔭^j.
    pub fn to_coarser(&self, coarser: &ResidueRing, r: &Residue) -> Residue {
        assert!(coarser.k <= self.k);
        coarser.reduce(&self.lift(r))
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Table-backed finite ring for sizes up to `TABLE_LIMIT`; elements are indices.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    pub size: usize,
    pub base: ResidueRing,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    conj: Vec<u16>,
    val: Vec<u8>,
    pub one: u16,
}

pub const TABLE_LIMIT: usize = 1024;
const NONE: u16 = u16::MAX;

impl FiniteRing {
    pub fn new(base: ResidueRing) -> Result<Self> {
        let size = base.cardinality() as usize;
        if size > TABLE_LIMIT {
            return Err(Error::budget("finite ring table", TABLE_LIMIT as u64));
        }
        let els: Vec<Residue> = (0..size as u64).map(|i| base.from_index(i)).collect();
        let lifts: Vec<RingElement> = els.iter().map(|r| base.lift(r)).collect();
        let idx = |r: &Residue| base.index_of(r) as u16;
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for a in 0..size {
            for b in a..size {
                let s = idx(&base.add(&els[a], &els[b]));
                let m = idx(&base.reduce(&(&lifts[a] * &lifts[b])));
                add[a * size + b] = s;
                add[b * size + a] = s;
                mul[a * size + b] = m;
                mul[b * size + a] = m;
            }
        }
        let one = idx(&base.one());
        let neg: Vec<u16> = (0..size).map(|a| idx(&base.neg(&els[a]))).collect();
        let mut inv = vec![NONE; size];
        for a in 0..size {
            if inv[a] != NONE {
                continue;
            }
            if let Some(b) = (0..size).find(|&b| mul[a * size + b] == one) {
                inv[a] = b as u16;
                inv[b] = a as u16;
            }
        }
        let conj: Vec<u16> =
            if base.conj_stable { (0..size).map(|a| idx(&base.conj(&els[a]))).collect() } else { (0..size as u16).collect() };
        let val: Vec<u8> = (0..size).map(|a| base.valuation(&els[a]) as u8).collect();
        Ok(FiniteRing { size, base, add, mul, neg, inv, conj, val, one })
    }

    pub fn from_prime(prime: &PrimeIdeal, k: u32) -> Result<Self> {
        FiniteRing::new(ResidueRing::new(prime, k))
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: u16) -> Option<u16> {
        let i = self.inv[a as usize];
        (i != NONE).then_some(i)
    }
    pub fn is_unit(&self, a: u16) -> bool {
        self.inv[a as usize] != NONE
    }
    #[inline]
    pub fn conj(&self, a: u16) -> u16 {
        self.conj[a as usize]
    }
    pub fn valuation(&self, a: u16) -> u32 {
        self.val[a as usize] as u32
    }
    pub fn zero(&self) -> u16 {
        0
    }
    pub fn k(&self) -> u32 {
        self.base.k
    }

    pub fn from_element(&self, x: &RingElement) -> u16 {
        self.base.index_of(&self.base.reduce(x)) as u16
    }

    pub fn from_field(&self, x: &FieldElement) -> Result<u16> {
        Ok(self.base.index_of(&self.base.reduce_field(x)?) as u16)
    }

    pub fn from_int(&self, n: i64) -> u16 {
        self.base.index_of(&self.base.from_int(n)) as u16
    }

    pub fn element(&self, a: u16) -> Residue {
        self.base.from_index(a as u64)
    }

    pub fn lift(&self, a: u16) -> RingElement {
        self.base.lift(&self.element(a))
    }

    /// n x n matrix product of row-major index matrices.
    pub fn mat_mul(&self, a: &[u16], b: &[u16], n: usize) -> Vec<u16> {
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = b[k * n + j];
                    if y != 0 {
                        let o = &mut out[i * n + j];
                        *o = self.add(*o, self.mul(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn mat_identity(&self, n: usize) -> Vec<u16> {
        let mut m = vec![0u16; n * n];
        for i in 0..n {
            m[i * n + i] = self.one;
        }
        m
    }

    pub fn mat_det(&self, a: &[u16], n: usize) -> u16 {
        match n {
            1 => a[0],
            2 => self.sub(self.mul(a[0], a[3]), self.mul(a[1], a[2])),
            _ => {
                let mut acc = 0u16;
                for c in 0..n {
                    let x = a[c];
                    if x == 0 {
                        continue;
                    }
                    let minor: Vec<u16> =
                        (1..n).flat_map(|r| (0..n).filter(move |&cc| cc != c).map(move |cc| a[r * n + cc])).collect();
                    let t = self.mul(x, self.mat_det(&minor, n - 1));
                    acc = if c % 2 == 0 { self.add(acc, t) } else { self.sub(acc, t) };
                }
                acc
            }
        }
    }

    /// Inverse via the adjugate; `None` if the determinant is not a unit.
    pub fn mat_inverse(&self, a: &[u16], n: usize) -> Option<Vec<u16>> {
        let d = self.inv(self.mat_det(a, n))?;
        if n == 1 {
            return Some(vec![d]);
        }
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<u16> = (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| a[r * n + c]))
                    .collect();
                let mut c = self.mat_det(&minor, n - 1);
                if (i + j) % 2 == 1 {
                    c = self.neg(c);
                }
                out[i * n + j] = self.mul(c, d);
            }
        }
        Some(out)
    }

    pub fn mat_conj_transpose(&self, a: &[u16], n: usize) -> Vec<u16> {
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.conj(a[i * n + j]);
            }
        }
        out
    }

    pub fn mat_transpose(&self, a: &[u16], n: usize) -> Vec<u16> {
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = a[i * n + j];
            }
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.size as u16
    }

    /// Elements of 𝔭^j (as a subset of this ring).
    pub fn ideal_power_elements(&self, j: u32) -> Vec<u16> {
        self.elements().filter(|&a| self.valuation(a) >= j).collect()
    }
}

pub fn is_zero_big(x: &BigInt) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime::factor_rational_prime;
    use crate::arith::ring::{cyc5, RingKind};

    #[test]
    fn cyclotomic_mod_p5_squared() {
        let p5 = &factor_rational_prime(RingKind::Cyclotomic5, 5).unwrap()[0];
        let r = ResidueRing::new(p5, 2);
        assert_eq!(r.cardinality(), 25);
        let eps = r.reduce(&cyc5::zeta());
        let t = r.sub(&eps, &r.one());
        assert_eq!(r.mul(&t, &t), r.zero());
        assert_eq!(r.enumerate().unwrap().len(), 25);
        let f5 = ResidueRing::new(p5, 1);
        assert_eq!(f5.cardinality(), 5);
        // conjugation acts on t = z - 1 as t -> -t
        assert_eq!(r.conj(&t), r.neg(&t));
    }

    #[test]
    fn gaussian_residue_field() {
        let q = &factor_rational_prime(RingKind::ImagQuadratic(1), 2).unwrap()[0];
        let f2 = FiniteRing::from_prime(q, 1).unwrap();
        assert_eq!(f2.size, 2);
        let r4 = FiniteRing::from_prime(q, 4).unwrap();
        assert_eq!(r4.size, 16);
        let units = r4.elements().filter(|&a| r4.is_unit(a)).count();
        assert_eq!(units, 8);
    }

    #[test]
    fn reduce_field_with_p_denominator() {
        let p5 = &factor_rational_prime(RingKind::Cyclotomic5, 5).unwrap()[0];
        let r = ResidueRing::new(p5, 3);
        // pi^4 / 5 is a unit; times 5/pi^4 gives one
        let pi4 = FieldElement::from(cyc5::pi().pow(4));
        let u = pi4.div(&FieldElement::from_int(RingKind::Cyclotomic5, 5)).unwrap();
        let ru = r.reduce_field(&u).unwrap();
        let rinv = r.reduce_field(&u.inv().unwrap()).unwrap();
        assert_eq!(r.mul(&ru, &rinv), r.one());
        assert!(r.reduce_field(&FieldElement::from(cyc5::pi()).inv().unwrap()).is_err());
    }
}

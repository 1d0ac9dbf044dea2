//! Prime ideals above small rational primes, via factoring the minimal
//! polynomial modulo p (all rings here are monogenic, so Dedekind-Kummer applies).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{FieldElement, RingElement, RingKind};
use crate::error::{Error, Result};
use crate::linalg::intmat::{hnf_basis, IntMatrix};
use crate::linalg::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub kind: RingKind,
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// Two-element generating set (p, g(theta)).
    pub gens: Vec<RingElement>,
    /// A single generator, when one was found (all rings here are PIDs).
    pub generator: Option<RingElement>,
    /// Row HNF of the ideal as a Z-lattice in coordinates.
    pub lattice: IntMatrix,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn residue_field_size(&self) -> u64 {
        self.norm()
    }

    /// Is `x` in the ideal power `self^k`?
    pub fn contains_power(&self, x: &RingElement, k: u32) -> bool {
        if k == 0 {
            return true;
        }
        if let Some(g) = &self.generator {
            return power_divides(x, g, k);
        }
        lattice_contains(&self.power_lattice(k), &x.coords)
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        lattice_contains(&self.lattice, &x.coords)
    }

    /// Row HNF of the Z-lattice of `self^k`.
    pub fn power_lattice(&self, k: u32) -> IntMatrix {
        let n = self.kind.degree();
        if k == 0 {
            return crate::linalg::intmat::identity(n);
        }
        if let Some(g) = &self.generator {
            let gk = g.pow(k);
            let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (&gk * &basis_elem(self.kind, i)).coords).collect();
            return hnf_basis(&Mat::from_rows(rows));
        }
        let mut cur = self.lattice.clone();
        for _ in 1..k {
            let mut rows = Vec::new();
            for a in cur.to_rows() {
                let a = RingElement::new(self.kind, a);
                for b in self.lattice.to_rows() {
                    rows.push((&a * &RingElement::new(self.kind, b)).coords);
                }
            }
            cur = hnf_basis(&Mat::from_rows(rows));
        }
        cur
    }

    /// 𝔭-adic valuation; `None` stands for +infinity (x = 0).
    pub fn valuation(&self, x: &RingElement) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        if let Some(g) = &self.generator {
            let mut v = 0;
            let mut y = x.clone();
            while let Some(q) = y.div_exact(g) {
                y = q;
                v += 1;
            }
            return Some(v);
        }
        let mut v = 0;
        while lattice_contains(&self.power_lattice(v + 1), &x.coords) {
            v += 1;
        }
        Some(v)
    }

    /// Valuation of a field element, possibly negative.
    pub fn valuation_field(&self, x: &FieldElement) -> Option<i64> {
        let v = self.valuation(&x.num)? as i64;
        let vp = int_valuation(&x.den, self.p) as i64;
        Some(v - self.e as i64 * vp)
    }

    pub fn describe(&self) -> String {
        let g = match &self.generator {
            Some(g) => format!("({g})"),
            None => format!("({}, {})", self.gens[0], self.gens[1]),
        };
        format!("{g} over {} with e={}, f={}, norm {}", self.p, self.e, self.f, self.norm())
    }
}

fn power_divides(x: &RingElement, g: &RingElement, k: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut y = x.clone();
    for _ in 0..k {
        match y.div_exact(g) {
            Some(q) => y = q,
            None => return false,
        }
    }
    true
}

pub fn int_valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

fn basis_elem(kind: RingKind, i: usize) -> RingElement {
    let mut e = RingElement::zero(kind);
    e.coords[i] = BigInt::one();
    e
}

/// Membership in a lattice given by a square upper-triangular row HNF.
pub fn lattice_contains(h: &IntMatrix, v: &[BigInt]) -> bool {
    reduce_mod_lattice(h, v).iter().all(|x| x.is_zero())
}

/// Canonical representative of `v` modulo the row lattice of the square
/// upper-triangular HNF `h`: coordinates end up in `[0, h_ii)`.
pub fn reduce_mod_lattice(h: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for i in 0..h.rows {
        let p = h.get(i, i);
        let q = v[i].div_floor(p);
        if q.is_zero() {
            continue;
        }
        for j in i..h.cols {
            v[j] -= &q * h.get(i, j);
        }
    }
    v
}

// Polynomials over F_p, coefficients low to high, always trimmed.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_divmod(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead_inv = modinv(b[db], p);
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * lead_inv % p;
        q[i] = c;
        for j in 0..=db {
            r[i + j] = (r[i + j] + p - c * b[j] % p) % p;
        }
    }
    (trim(q), trim(r))
}

fn modinv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// All monic polynomials of the given degree over F_p.
fn monic_polys(deg: usize, p: u64) -> impl Iterator<Item = Poly> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        c
    })
}

/// Factor a monic polynomial of degree <= 4 over F_p into monic irreducibles with multiplicity.
fn factor_mod_p(f: &Poly, p: u64) -> Vec<(Poly, u32)> {
    let mut rest = f.clone();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for deg in 1..f.len() {
        if rest.len() <= 1 {
            break;
        }
        if 2 * deg > rest.len() - 1 {
            // what remains has no factor of degree <= half its degree: irreducible
            out.push((rest.clone(), 1));
            rest = vec![1];
            break;
        }
        for g in monic_polys(deg, p) {
            let mut e = 0;
            loop {
                let (q, r) = poly_divmod(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
    }
    if rest.len() > 1 {
        out.push((rest, 1));
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime ideals of the ring above the rational prime `p`.
pub fn factor_rational_prime(kind: RingKind, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) || p > 100 {
        return Err(Error::Input(format!("{p} is not a prime <= 100")));
    }
    let n = kind.degree();
    if kind == RingKind::Rational {
        let g = RingElement::from_int(kind, p);
        let lattice = crate::linalg::intmat::int_matrix(&[&[p as i64]]);
        return Ok(vec![PrimeIdeal { kind, p, e: 1, f: 1, gens: vec![g.clone(), g.clone()], generator: Some(g), lattice }]);
    }
    let mp: Poly = kind.min_poly().iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let theta = RingElement::generator(kind);
    let mut ideals = Vec::new();
    for (g, e) in factor_mod_p(&mp, p) {
        let f = (g.len() - 1) as u32;
        let mut gtheta = RingElement::zero(kind);
        for (i, &c) in g.iter().enumerate() {
            gtheta = &gtheta + &theta.pow(i as u32).scale(&BigInt::from(c));
        }
        let pe = RingElement::from_int(kind, p);
        let mut rows = Vec::new();
        for i in 0..n {
            rows.push((&pe * &basis_elem(kind, i)).coords);
            rows.push((&gtheta * &basis_elem(kind, i)).coords);
        }
        let lattice = hnf_basis(&Mat::from_rows(rows));
        let mut ideal = PrimeIdeal { kind, p, e, f, gens: vec![pe, gtheta], generator: None, lattice };
        ideal.generator = find_generator(&ideal);
        ideals.push(ideal);
    }
    Ok(ideals)
}

fn find_generator(ideal: &PrimeIdeal) -> Option<RingElement> {
    let target = BigInt::from(ideal.norm());
    let ok = |x: &RingElement| x.norm().abs() == target && ideal.contains(x);
    // prefer the polynomial generator itself, shifted by small multiples of p
    let g = &ideal.gens[1];
    for k in [0i64, -1, 1, -2, 2] {
        let cand = g + &RingElement::from_int(ideal.kind, k * ideal.p as i64);
        if ok(&cand) {
            return Some(cand);
        }
    }
    if ideal.e as usize * ideal.f as usize == ideal.kind.degree() && ideal.e == 1 {
        // inert: p itself
        let pe = RingElement::from_int(ideal.kind, ideal.p as i64);
        if ok(&pe) {
            return Some(pe);
        }
    }
    let n = ideal.kind.degree();
    let bound: i64 = if n == 2 { 12 } else { 3 };
    let mut coords = vec![-bound; n];
    loop {
        let x = RingElement::from_i64s(ideal.kind, &coords);
        if !x.is_zero() && ok(&x) {
            return Some(x);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            coords[i] += 1;
            if coords[i] <= bound {
                break;
            }
            coords[i] = -bound;
            i += 1;
        }
    }
}

/// Convenience: the prime ideal above p with a given norm, first in factor order.
pub fn prime_of_norm(kind: RingKind, p: u64, norm: u64) -> Result<PrimeIdeal> {
    factor_rational_prime(kind, p)?
        .into_iter()
        .find(|q| q.norm() == norm)
        .ok_or_else(|| Error::NotFound(format!("no prime of norm {norm} above {p} in {}", kind.name())))
}

/// Prime ideals of norm <= max, one per conjugate pair, sorted by norm.
pub fn primes_up_to_norm(kind: RingKind, max_norm: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for p in 2..=max_norm.min(100) {
        if !is_prime(p) {
            continue;
        }
        let ideals = factor_rational_prime(kind, p)?;
        let mut seen_norms: Vec<u64> = Vec::new();
        for q in ideals {
            if q.norm() <= max_norm && !seen_norms.contains(&q.norm()) {
                seen_norms.push(q.norm());
                out.push(q);
            }
        }
    }
    out.sort_by_key(|q| q.norm());
    Ok(out)
}

pub fn to_i64_coords(x: &RingElement) -> Vec<i64> {
    x.coords.iter().map(|c| c.to_i64().expect("coordinate exceeds i64")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::cyc5;

    #[test]
    fn cyclotomic_five_is_totally_ramified() {
        let ps = factor_rational_prime(RingKind::Cyclotomic5, 5).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].e, ps[0].f), (4, 1));
        assert_eq!(ps[0].generator.as_ref().unwrap(), &cyc5::pi());
        let five = RingElement::from_int(RingKind::Cyclotomic5, 5);
        assert_eq!(ps[0].valuation(&five), Some(4));
        assert_eq!(ps[0].valuation(&RingElement::zero(RingKind::Cyclotomic5)), None);
    }

    #[test]
    fn gaussian_two() {
        let k = RingKind::ImagQuadratic(1);
        let ps = factor_rational_prime(k, 2).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].e, ps[0].f), (2, 1));
        assert_eq!(ps[0].generator.as_ref().unwrap(), &RingElement::from_i64s(k, &[1, 1]));
        assert_eq!(ps[0].valuation(&RingElement::from_int(k, 2)), Some(2));
    }

    #[test]
    fn splitting_types() {
        let split = factor_rational_prime(RingKind::ImagQuadratic(7), 2).unwrap();
        assert_eq!(split.len(), 2);
        assert!(split.iter().all(|q| q.e == 1 && q.f == 1));
        let inert = factor_rational_prime(RingKind::ImagQuadratic(11), 2).unwrap();
        assert_eq!(inert.len(), 1);
        assert_eq!(inert[0].f, 2);
        let z11 = factor_rational_prime(RingKind::Cyclotomic5, 11).unwrap();
        assert_eq!(z11.len(), 4);
    }

    #[test]
    fn norms_multiply_to_p_degree() {
        for kind in [RingKind::ImagQuadratic(1), RingKind::ImagQuadratic(3), RingKind::Cyclotomic5] {
            for p in [2u64, 3, 5, 7, 11, 13] {
                let ps = factor_rational_prime(kind, p).unwrap();
                let total: u32 = ps.iter().map(|q| q.e * q.f).sum();
                assert_eq!(total as usize, kind.degree(), "{kind:?} p={p}");
                for q in &ps {
                    for g in &q.gens {
                        assert!(q.contains(g));
                    }
                }
            }
        }
    }
}

/// Parse an element written in the basis symbol: "1+i", "2-3w", "z-1", "7".
/// `i` and `s` both denote the generator over Q(sqrt-d) with d = 1, 2 mod 4.
pub fn parse_element(kind: RingKind, s: &str) -> Result<RingElement> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Input(format!("cannot parse ring element `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let mut coords = vec![BigInt::zero(); kind.degree()];
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        rest = tail;
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let (num, sym) = term.split_at(digits);
        let sym = sym.strip_prefix('*').unwrap_or(sym);
        let coef: BigInt = if num.is_empty() { BigInt::one() } else { num.parse().map_err(|_| bad())? };
        let (base, exp) = match sym.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
            None if sym.is_empty() => ("", 0),
            None => (sym, 1),
        };
        let ok = match (kind, base) {
            (_, "") => exp == 0,
            (RingKind::ImagQuadratic(d), "w") => d % 4 == 3,
            (RingKind::ImagQuadratic(d), "i") => d == 1,
            (RingKind::ImagQuadratic(d), "s") => d % 4 != 3,
            (RingKind::Cyclotomic5, "z") => true,
            _ => false,
        };
        if !ok || num.is_empty() && sym.is_empty() {
            return Err(bad());
        }
        let mono = if exp == 0 { RingElement::one(kind) } else { RingElement::generator(kind).pow(exp as u32) };
        let term = &mono * &RingElement::from_int(kind, coef * sign);
        for (c, x) in coords.iter_mut().zip(&term.coords) {
            *c += x;
        }
    }
    Ok(RingElement::new(kind, coords))
}

/// The prime ideal named by a generator ("1+i") or a rational prime ("5": the first ideal above it).
pub fn parse_prime(kind: RingKind, s: &str) -> Result<PrimeIdeal> {
    if let Ok(p) = s.trim().parse::<u64>() {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        return Ok(factor_rational_prime(kind, p)?.remove(0));
    }
    let x = parse_element(kind, s)?;
    let n = x.norm().abs().to_u64().ok_or_else(|| Error::Input(format!("norm of {s} too large")))?;
    let p = (2..=n).find(|&q| n % q == 0).ok_or_else(|| Error::Input(format!("{s} is a unit or zero")))?;
    factor_rational_prime(kind, p)?
        .into_iter()
        .find(|q| q.norm() == n && q.contains(&x))
        .ok_or_else(|| Error::Input(format!("{s} does not generate a prime ideal")))
}

#[cfg(test)]
mod parse_tests {
    use super::*;

    #[test]
    fn named_primes() {
        let g = RingKind::ImagQuadratic(1);
        assert_eq!(parse_prime(g, "1+i").unwrap().norm(), 2);
        assert_eq!(parse_prime(g, "2+i").unwrap().norm(), 5);
        assert_eq!(parse_prime(g, "3").unwrap().norm(), 9);
        assert!(parse_prime(g, "2").is_ok());
        assert!(parse_prime(g, "1+3i").is_err());
        assert!(parse_prime(g, "w").is_err());
        let w = parse_element(RingKind::ImagQuadratic(7), "w").unwrap();
        assert!(parse_prime(RingKind::ImagQuadratic(7), "w").unwrap().contains(&w));
        assert_eq!(parse_prime(RingKind::Cyclotomic5, "z-1").unwrap().norm(), 5);
        assert_eq!(parse_element(RingKind::Cyclotomic5, "z^2+2z-3").unwrap().coords, vec![(-3).into(), 2.into(), 1.into(), 0.into()]);
    }
}

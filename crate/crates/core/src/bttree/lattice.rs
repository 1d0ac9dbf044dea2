//! Lattice classes over the completion at a principal prime, represented by
//! global matrices. A vertex is the homothety class of the O_p-span of the
//! columns of its basis matrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::arith::prime::{factor_rational_prime, prime_of_norm, PrimeIdeal};
use crate::arith::residue::ResidueRing;
use crate::arith::ring::{FieldElement, RingKind};
use crate::error::{Error, Result};
use crate::linalg::matrix::{FMat, Mat};

pub struct LocalContext {
    pub prime: PrimeIdeal,
    /// Uniformizer: the principal generator of the prime.
    pub pi: FieldElement,
    residue: Mutex<HashMap<u32, ResidueRing>>,
}

impl fmt::Debug for LocalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalContext({})", self.prime.describe())
    }
}

impl Clone for LocalContext {
    fn clone(&self) -> Self {
        LocalContext::new(self.prime.clone()).expect("already validated")
    }
}

impl LocalContext {
    pub fn new(prime: PrimeIdeal) -> Result<Self> {
        let g = prime.generator.clone().ok_or_else(|| Error::Input(format!("prime {} is not principal", prime.describe())))?;
        Ok(LocalContext { pi: g.to_field(), prime, residue: Mutex::new(HashMap::new()) })
    }

    pub fn rational(p: u64) -> Result<Self> {
        Self::new(factor_rational_prime(RingKind::Rational, p)?.remove(0))
    }

    pub fn of_norm(kind: RingKind, p: u64, norm: u64) -> Result<Self> {
        Self::new(prime_of_norm(kind, p, norm)?)
    }

    pub fn kind(&self) -> RingKind {
        self.prime.kind
    }

    pub fn val(&self, x: &FieldElement) -> Option<i64> {
        self.prime.valuation_field(x)
    }

    pub fn pi_pow(&self, k: i64) -> FieldElement {
        if k >= 0 {
            self.pi.pow(k as i32)
        } else {
            self.pi.inv().expect("nonzero").pow((-k) as i32)
        }
    }

    /// Canonical representative of the integral element x modulo pi^e.
    pub fn rep(&self, x: &FieldElement, e: u32) -> Result<FieldElement> {
        if e == 0 || x.is_zero() {
            return Ok(FieldElement::zero(self.kind()));
        }
        let mut cache = self.residue.lock().expect("residue cache");
        let ring = cache.entry(e).or_insert_with(|| ResidueRing::new(&self.prime, e));
        let r = ring.reduce_field(x)?;
        Ok(ring.lift(&r).to_field())
    }

    fn min_val(&self, m: &FMat) -> Option<i64> {
        m.data.iter().filter_map(|x| self.val(x)).min()
    }
}

/// Canonical basis of a lattice class: lower triangular with diagonal pi^{v_i},
/// scaled so the lattice lies in O^n but not in pi O^n, entries below the
/// diagonal reduced to canonical representatives modulo the pivot of their row.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    #[serde(serialize_with = "ser_mat")]
    pub basis: FMat,
}

fn ser_mat<S: serde::Serializer>(m: &FMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Vertex {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.basis.rows, &self.basis.data).cmp(&(o.basis.rows, &o.basis.data))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for c in 0..self.basis.cols {
            if c > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for r in 0..self.basis.rows {
                if r > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.basis.get(r, c))?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl Vertex {
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Diagonal exponents of the canonical basis.
    pub fn diagonal_exponents(&self, ctx: &LocalContext) -> Vec<i64> {
        (0..self.dim()).map(|i| ctx.val(self.basis.get(i, i)).expect("nonsingular")).collect()
    }

    /// Short stable label, used for DOT vertex names.
    pub fn key(&self) -> String {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        format!("v{:016x}", h.finish())
    }
}

/// Canonical form of the lattice spanned by the columns of `m` (n x k, k >= n, full rank).
pub fn canonicalize(ctx: &LocalContext, m: &FMat) -> Result<Vertex> {
    let n = m.rows;
    if m.cols < n {
        return Err(Error::Singular);
    }
    let vmin = ctx.min_val(m).ok_or(Error::Singular)?;
    let mut a = m.scale(&ctx.pi_pow(-vmin));
    let mut pivots = Vec::with_capacity(n);
    for r in 0..n {
        let best = (r..a.cols).filter_map(|c| ctx.val(a.get(r, c)).map(|v| (v, c))).min();
        let (v, c) = best.ok_or(Error::Singular)?;
        swap_cols(&mut a, r, c);
        // pivot -> pi^v exactly
        let unit = ctx.pi_pow(v).div(a.get(r, r)).expect("nonzero pivot");
        scale_col(&mut a, r, &unit);
        let piv = a.get(r, r).clone();
        for c in r + 1..a.cols {
            if a.get(r, c).is_zero() {
                continue;
            }
            let q = a.get(r, c).div(&piv).expect("nonzero pivot");
            axpy_col(&mut a, c, r, &q);
        }
        pivots.push(v);
    }
    let mut out = Mat::filled(n, n, FieldElement::zero(ctx.kind()));
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for c in 0..n {
        for r in c + 1..n {
            let v = pivots[r] as u32;
            let x = out.get(r, c).clone();
            let target = ctx.rep(&x, v)?;
            if target != x {
                let q = (&x - &target).div(&ctx.pi_pow(v as i64)).expect("nonzero");
                axpy_col(&mut out, c, r, &q);
            }
        }
    }
    Ok(Vertex { basis: out })
}

fn swap_cols(a: &mut FMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

fn scale_col(a: &mut FMat, c: usize, k: &FieldElement) {
    for r in 0..a.rows {
        let x = a.get(r, c) * k;
        a.set(r, c, x);
    }
}

/// column[dst] -= q * column[src]
fn axpy_col(a: &mut FMat, dst: usize, src: usize, q: &FieldElement) {
    for r in 0..a.rows {
        let s = a.get(r, src);
        if s.is_zero() {
            continue;
        }
        let x = a.get(r, dst) - &(q * s);
        a.set(r, dst, x);
    }
}

/// Elementary divisor exponents of a nonsingular matrix over the local ring, ascending.
pub fn elementary_exponents(ctx: &LocalContext, m: &FMat) -> Result<Vec<i64>> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::Input("square matrix expected".into()));
    }
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = ctx.val(a.get(i, j)) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, i, j) = best.ok_or(Error::Singular)?;
        swap_cols(&mut a, k, j);
        for c in 0..n {
            a.data.swap(k * n + c, i * n + c);
        }
        let piv = a.get(k, k).clone();
        for r in k + 1..n {
            if a.get(r, k).is_zero() {
                continue;
            }
            let q = a.get(r, k).div(&piv).expect("pivot");
            for c in k..n {
                let x = a.get(r, c) - &(&q * a.get(k, c));
                a.set(r, c, x);
            }
        }
        for c in k + 1..n {
            a.set(k, c, FieldElement::zero(ctx.kind()));
        }
        out.push(v);
    }
    out.sort();
    Ok(out)
}

/// Relative position of two classes: elementary exponents of the transition, shifted to start at 0.
pub fn relative_exponents(ctx: &LocalContext, v: &Vertex, w: &Vertex) -> Result<Vec<i64>> {
    if v.dim() != w.dim() {
        return Err(Error::Input(format!("dimension mismatch: {} vs {}", v.dim(), w.dim())));
    }
    let t = v.basis.inverse().ok_or(Error::Singular)?.mul(&w.basis);
    let e = elementary_exponents(ctx, &t)?;
    let m = e[0];
    Ok(e.into_iter().map(|x| x - m).collect())
}

/// Adjacency in the building of PGL_n: p L_v < L_w < L_v for suitable representatives.
pub fn gl_adjacent(ctx: &LocalContext, v: &Vertex, w: &Vertex) -> Result<bool> {
    let e = relative_exponents(ctx, v, w)?;
    Ok(e.iter().all(|&x| x <= 1) && e.contains(&1))
}

/// Graph distance in a rank-one building (n = 2): the spread of the exponents.
pub fn tree_distance(ctx: &LocalContext, v: &Vertex, w: &Vertex) -> Result<i64> {
    let e = relative_exponents(ctx, v, w)?;
    Ok(e[e.len() - 1])
}

pub fn act(ctx: &LocalContext, g: &FMat, v: &Vertex) -> Result<Vertex> {
    canonicalize(ctx, &g.mul(&v.basis))
}

/// Residue field representatives (as global integers) in a fixed order.
pub fn residue_representatives(ctx: &LocalContext) -> Result<Vec<FieldElement>> {
    let ring = ResidueRing::new(&ctx.prime, 1);
    Ok(ring.enumerate()?.iter().map(|r| ring.lift(r).to_field()).collect())
}

/// The p+1 neighbours of a vertex of the PGL_2 tree: sublattices pi L + O x for the
/// lines of L / pi L.
pub fn pgl2_neighbors(ctx: &LocalContext, v: &Vertex) -> Result<Vec<Vertex>> {
    if v.dim() != 2 {
        return Err(Error::Input("pgl2 neighbours need n = 2".into()));
    }
    let k = ctx.kind();
    let z = FieldElement::zero(k);
    let one = FieldElement::one(k);
    let mut local = vec![Mat::from_rows(vec![vec![ctx.pi.clone(), z.clone()], vec![z.clone(), one.clone()]])];
    for a in residue_representatives(ctx)? {
        local.push(Mat::from_rows(vec![vec![one.clone(), z.clone()], vec![a, ctx.pi.clone()]]));
    }
    local.iter().map(|t| canonicalize(ctx, &v.basis.mul(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(RingKind::Rational, n, d)
    }

    #[test]
    fn canonical_forms() {
        let ctx = LocalContext::rational(2).unwrap();
        let id = FMat::identity(RingKind::Rational, 5);
        let x0 = canonicalize(&ctx, &id).unwrap();
        assert_eq!(x0.basis, id);
        assert_eq!(canonicalize(&ctx, &id.scale(&q(2, 1))).unwrap(), x0);
        let x1 = canonicalize(&ctx, &FMat::diag(vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 2)])).unwrap();
        assert_eq!(x1.diagonal_exponents(&ctx), vec![2, 1, 1, 1, 0]);
        let half = canonicalize(&ctx, &FMat::diag(vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1)])).unwrap();
        assert!(gl_adjacent(&ctx, &x0, &half).unwrap());
        assert!(!gl_adjacent(&ctx, &x0, &x0).unwrap());
        assert!(!gl_adjacent(&ctx, &x0, &x1).unwrap());
        assert_eq!(relative_exponents(&ctx, &x0, &x1).unwrap(), vec![0, 1, 1, 1, 2]);
    }

    #[test]
    fn pgl2_star() {
        for p in [2u64, 3, 5] {
            let ctx = LocalContext::rational(p).unwrap();
            let v = canonicalize(&ctx, &FMat::identity(RingKind::Rational, 2)).unwrap();
            let nb = pgl2_neighbors(&ctx, &v).unwrap();
            let set: std::collections::BTreeSet<_> = nb.iter().cloned().collect();
            assert_eq!(set.len(), p as usize + 1);
            for w in &nb {
                assert!(gl_adjacent(&ctx, &v, w).unwrap());
                assert!(pgl2_neighbors(&ctx, w).unwrap().contains(&v));
            }
        }
    }
}

//! Kernels of O/𝔭^k -> O/𝔭^j inside the points of a group scheme, enumerated
//! directly: {g = I + X, X in 𝔭^j M_n, g in G(O/𝔭^k)}.

use num_integer::Integer;
use serde::Serialize;

use super::group::{element_order, group_closure, RMat, CLOSURE_LIMIT};
use super::hom::reduce_matrix;
use crate::arith::prime::PrimeIdeal;
use crate::arith::residue::FiniteRing;
use crate::error::{Error, Result};
use crate::linalg::matrix::FMat;
use crate::par;

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub enum Scheme {
    /// det = 1
    SL,
    GL,
    /// g^* F g = F, det = 1
    SU(FMat),
    /// g^t F g = F
    O(FMat),
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::SL => "SL",
            Scheme::GL => "GL",
            Scheme::SU(_) => "SU",
            Scheme::O(_) => "O",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub scheme: String,
    pub prime: String,
    pub p: u64,
    pub n: usize,
    pub j: u32,
    pub k: u32,
    pub candidates: u64,
    pub order: u64,
    pub abelian: bool,
    pub exponent: u64,
    pub elementary_abelian: bool,
    pub p_group: bool,
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Does the finite set of matrices `elems` (a group) commute? Checked on a
/// greedily chosen generating set, which suffices.
pub fn is_abelian(ring: &FiniteRing, n: usize, elems: &[RMat]) -> Result<bool> {
    let mut gens: Vec<RMat> = Vec::new();
    let mut covered = group_closure(ring, n, &gens, CLOSURE_LIMIT)?;
    for e in elems {
        if covered.contains(e) {
            continue;
        }
        for g in &gens {
            if ring.mat_mul(g, e, n) != ring.mat_mul(e, g, n) {
                return Ok(false);
            }
        }
        gens.push(e.clone());
        covered = group_closure(ring, n, &gens, CLOSURE_LIMIT)?;
    }
    Ok(true)
}

pub fn scheme_predicate<'a>(ring: &'a FiniteRing, scheme: &Scheme, n: usize) -> Result<Box<dyn Fn(&RMat) -> bool + Send + Sync + 'a>> {
    Ok(match scheme {
        Scheme::SL => Box::new(move |g: &RMat| ring.mat_det(g, n) == ring.one),
        Scheme::GL => Box::new(move |g: &RMat| ring.is_unit(ring.mat_det(g, n))),
        Scheme::SU(f) => {
            if !ring.base.conj_stable {
                return Err(Error::Input("conjugation does not descend to this residue ring".into()));
            }
            let fr = reduce_matrix(ring, f)?;
            Box::new(move |g: &RMat| {
                ring.mat_det(g, n) == ring.one && ring.mat_mul(&ring.mat_mul(&ring.mat_conj_transpose(g, n), &fr, n), g, n) == fr
            })
        }
        Scheme::O(f) => {
            let fr = reduce_matrix(ring, f)?;
            Box::new(move |g: &RMat| ring.mat_mul(&ring.mat_mul(&ring.mat_transpose(g, n), &fr, n), g, n) == fr)
        }
    })
}

/// Enumerate the level-j kernel inside G(O/𝔭^k) and report its structure.
pub fn congruence_quotient_check(scheme: &Scheme, n: usize, prime: &PrimeIdeal, j: u32, k: u32, budget: u64) -> Result<QuotientReport> {
    if j == 0 || j > k {
        return Err(Error::Input(format!("need 1 <= j <= k, got j={j}, k={k}")));
    }
    let ring = FiniteRing::from_prime(prime, k)?;
    let ideal = ring.ideal_power_elements(j);
    let s = ideal.len() as u64;
    // cost estimate: |𝔭^j / 𝔭^k|^(n^2) candidate matrices
    let candidates = s.checked_pow((n * n) as u32).filter(|&c| c <= budget).ok_or_else(|| Error::budget("congruence kernel enumeration", budget))?;
    let pred = scheme_predicate(&ring, scheme, n)?;
    let decode = |mut idx: u64| -> RMat {
        let mut g = ring.mat_identity(n);
        for e in g.iter_mut() {
            let x = ideal[(idx % s) as usize];
            idx /= s;
            *e = ring.add(*e, x);
        }
        g
    };
    let hits = par::filter_range(candidates, |i| pred(&decode(i)));
    let elems: Vec<RMat> = hits.into_iter().map(decode).collect();
    let order = elems.len() as u64;
    let abelian = is_abelian(&ring, n, &elems)?;
    let mut exponent = 1u64;
    for e in &elems {
        let o = element_order(&ring, e, n, order.max(1)).ok_or_else(|| Error::Input("element order exceeds group order".into()))?;
        exponent = exponent.lcm(&o);
    }
    let p = prime.p;
    Ok(QuotientReport {
        scheme: scheme.name().into(),
        prime: prime.describe(),
        p,
        n,
        j,
        k,
        candidates,
        order,
        abelian,
        exponent,
        elementary_abelian: abelian && (exponent == 1 || exponent == p),
        p_group: is_power_of(order, p),
    })
}

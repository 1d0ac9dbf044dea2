//! Deterministic identity testing for matrix expressions whose entries are
//! polynomials in integer variables.
//!
//! A polynomial of total degree <= D in n variables is determined by its values
//! on the simplex grid {x in Z_{>=0}^n : sum x <= D}; the forward differences
//! at the origin over that grid are its coefficients in the binomial basis
//! prod C(x_i, k_i). Identity testing and valuation bounds both read off those
//! differences.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::matrix::{Mat, Scalar};
use crate::par;

/// Entry of a variable matrix: constant + sum coeff * x_var.
#[derive(Clone, Debug)]
pub struct Affine<T> {
    pub constant: T,
    pub terms: Vec<(usize, T)>,
}

impl<T: Scalar> Affine<T> {
    pub fn constant(c: T) -> Self {
        Affine { constant: c, terms: vec![] }
    }

    pub fn eval(&self, x: &[i64]) -> T {
        let mut acc = self.constant.clone();
        for (v, c) in &self.terms {
            if x[*v] != 0 {
                acc = acc.add(&c.mul(&c.from_i64_like(x[*v])));
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub enum MatExpr<T> {
    Const(Mat<T>),
    Var(Mat<Affine<T>>),
    Add(Box<MatExpr<T>>, Box<MatExpr<T>>),
    Sub(Box<MatExpr<T>>, Box<MatExpr<T>>),
    Mul(Box<MatExpr<T>>, Box<MatExpr<T>>),
    Neg(Box<MatExpr<T>>),
}

impl<T: Scalar> MatExpr<T> {
    pub fn constant(m: Mat<T>) -> Self {
        MatExpr::Const(m)
    }

    /// `base + scale * X` where X is a fresh variable matrix starting at `first_var`
    /// (row-major numbering).
    pub fn generic(base: &Mat<T>, scale: &T, first_var: usize) -> Self {
        let mut k = first_var;
        let entries = base
            .data
            .iter()
            .map(|c| {
                let a = Affine { constant: c.clone(), terms: vec![(k, scale.clone())] };
                k += 1;
                a
            })
            .collect();
        MatExpr::Var(Mat { rows: base.rows, cols: base.cols, data: entries })
    }

    pub fn add(self, o: Self) -> Self {
        MatExpr::Add(Box::new(self), Box::new(o))
    }
    pub fn sub(self, o: Self) -> Self {
        MatExpr::Sub(Box::new(self), Box::new(o))
    }
    pub fn mul(self, o: Self) -> Self {
        MatExpr::Mul(Box::new(self), Box::new(o))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        MatExpr::Neg(Box::new(self))
    }

    pub fn degree(&self) -> u32 {
        match self {
            MatExpr::Const(_) => 0,
            MatExpr::Var(m) => u32::from(m.data.iter().any(|a| !a.terms.is_empty())),
            MatExpr::Add(a, b) | MatExpr::Sub(a, b) => a.degree().max(b.degree()),
            MatExpr::Mul(a, b) => a.degree() + b.degree(),
            MatExpr::Neg(a) => a.degree(),
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            MatExpr::Const(_) => 0,
            MatExpr::Var(m) => m.data.iter().flat_map(|a| a.terms.iter().map(|t| t.0 + 1)).max().unwrap_or(0),
            MatExpr::Add(a, b) | MatExpr::Sub(a, b) | MatExpr::Mul(a, b) => a.num_vars().max(b.num_vars()),
            MatExpr::Neg(a) => a.num_vars(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            MatExpr::Const(m) => (m.rows, m.cols),
            MatExpr::Var(m) => (m.rows, m.cols),
            MatExpr::Add(a, _) | MatExpr::Sub(a, _) | MatExpr::Neg(a) => a.shape(),
            MatExpr::Mul(a, b) => (a.shape().0, b.shape().1),
        }
    }

    pub fn eval(&self, x: &[i64]) -> Mat<T> {
        match self {
            MatExpr::Const(m) => m.clone(),
            MatExpr::Var(m) => m.map(|a| a.eval(x)),
            MatExpr::Add(a, b) => a.eval(x).add(&b.eval(x)),
            MatExpr::Sub(a, b) => a.eval(x).sub(&b.eval(x)),
            MatExpr::Mul(a, b) => a.eval(x).mul(&b.eval(x)),
            MatExpr::Neg(a) => a.eval(x).neg(),
        }
    }
}

/// Points of the simplex grid in a fixed deterministic order.
pub fn simplex_grid(nvars: usize, degree: u32) -> Vec<Vec<(usize, u32)>> {
    // sparse points: list of (var, value) with value > 0, vars increasing
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<(usize, u32)>> = vec![vec![]];
    for _ in 0..degree {
        let mut next = Vec::new();
        for p in &frontier {
            // add one to a variable >= the last variable used, merging
            let start = p.last().map_or(0, |e| e.0);
            for v in start..nvars {
                let mut q = p.clone();
                match q.last_mut() {
                    Some(last) if last.0 == v => last.1 += 1,
                    _ => q.push((v, 1)),
                }
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn dense_point(p: &[(usize, u32)], nvars: usize) -> Vec<i64> {
    let mut x = vec![0i64; nvars];
    for &(v, c) in p {
        x[v] = c as i64;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    pub points: usize,
    pub degree_bound: u32,
    pub nvars: usize,
    /// First disagreement: point and (row, col).
    pub failure: Option<(Vec<i64>, usize, usize)>,
}

pub fn check_degrees<T: Scalar>(exprs: &[&MatExpr<T>], degree_bound: u32) -> Result<()> {
    for e in exprs {
        let d = e.degree();
        if d > degree_bound {
            return Err(Error::DegreeBound { bound: degree_bound, degree: d });
        }
    }
    Ok(())
}

/// Do `lhs` and `rhs` agree as polynomial matrices? Evaluates on the simplex
/// grid of the given degree bound, which is equivalent to agreement on the full
/// box {0..D}^n for polynomials of total degree <= D.
pub fn poly_identity_test<T: Scalar>(lhs: &MatExpr<T>, rhs: &MatExpr<T>, degree_bound: u32) -> Result<IdentityReport> {
    check_degrees(&[lhs, rhs], degree_bound)?;
    if lhs.shape() != rhs.shape() {
        return Err(Error::Input("shape mismatch in identity test".into()));
    }
    let nvars = lhs.num_vars().max(rhs.num_vars());
    let grid = simplex_grid(nvars, degree_bound);
    let results: Vec<Option<(usize, usize)>> = par::map(&grid, |p| {
        let x = dense_point(p, nvars);
        let (a, b) = (lhs.eval(&x), rhs.eval(&x));
        first_diff(&a, &b)
    });
    let failure = grid.iter().zip(&results).find_map(|(p, r)| r.map(|(i, j)| (dense_point(p, nvars), i, j)));
    Ok(IdentityReport { holds: failure.is_none(), points: grid.len(), degree_bound, nvars, failure })
}

/// Same test on the full box {0..D}^n; only feasible for few variables.
pub fn poly_identity_test_box<T: Scalar>(lhs: &MatExpr<T>, rhs: &MatExpr<T>, degree_bound: u32) -> Result<IdentityReport> {
    check_degrees(&[lhs, rhs], degree_bound)?;
    let nvars = lhs.num_vars().max(rhs.num_vars());
    let side = degree_bound as u64 + 1;
    let total = side.checked_pow(nvars as u32).filter(|&t| t <= 1_000_000).ok_or_else(|| Error::budget("box grid", 1_000_000))?;
    let mut failure = None;
    for idx in 0..total {
        let mut k = idx;
        let x: Vec<i64> = (0..nvars)
            .map(|_| {
                let v = (k % side) as i64;
                k /= side;
                v
            })
            .collect();
        if let Some((i, j)) = first_diff(&lhs.eval(&x), &rhs.eval(&x)) {
            failure = Some((x, i, j));
            break;
        }
    }
    Ok(IdentityReport { holds: failure.is_none(), points: total as usize, degree_bound, nvars, failure })
}

fn first_diff<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Option<(usize, usize)> {
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a.get(i, j) != b.get(i, j) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Re-evaluate at random points in [-bound, bound]^n; true if all agree.
pub fn recheck_random<T: Scalar>(lhs: &MatExpr<T>, rhs: &MatExpr<T>, count: usize, seed: u64) -> bool {
    let nvars = lhs.num_vars().max(rhs.num_vars());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).all(|_| {
        let x: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-50..=50)).collect();
        lhs.eval(&x) == rhs.eval(&x)
    })
}

/// Forward differences at the origin for every multi-index of total degree <= D:
/// the coefficients of each entry in the binomial basis. Returned in simplex-grid order.
pub fn binomial_coefficients<T: Scalar>(expr: &MatExpr<T>, nvars: usize, degree_bound: u32) -> Result<Vec<(Vec<(usize, u32)>, Mat<T>)>> {
    check_degrees(&[expr], degree_bound)?;
    let grid = simplex_grid(nvars, degree_bound);
    let values: Vec<Mat<T>> = par::map(&grid, |p| expr.eval(&dense_point(p, nvars)));
    let index: HashMap<&Vec<(usize, u32)>, usize> = grid.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = Vec::with_capacity(grid.len());
    for k in &grid {
        // sum over j <= k of (-1)^{|k|-|j|} prod C(k_i, j_i) f(j)
        let mut acc = values[0].map(|x| x.zero_like());
        let mut js: Vec<(Vec<(usize, u32)>, i64)> = vec![(vec![], 1)];
        for &(v, kv) in k {
            let mut next = Vec::new();
            for (j, c) in &js {
                for jv in 0..=kv {
                    let mut jj = j.clone();
                    if jv > 0 {
                        jj.push((v, jv));
                    }
                    let sign = if (kv - jv) % 2 == 0 { 1 } else { -1 };
                    next.push((jj, c * sign * binom(kv, jv)));
                }
            }
            js = next;
        }
        for (j, c) in js {
            let f = &values[index[&j]];
            let s = f.data[0].from_i64_like(c);
            acc = acc.add(&f.scale(&s));
        }
        out.push((k.clone(), acc));
    }
    Ok(out)
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{FieldElement, RingKind};
    use crate::linalg::matrix::FMat;

    fn q() -> RingKind {
        RingKind::Rational
    }

    #[test]
    fn difference_of_squares() {
        let id = FMat::identity(q(), 2);
        let zero = id.map(|x| x.zero_like());
        let one = FieldElement::one(q());
        let x = MatExpr::generic(&zero, &one, 0);
        let lhs = MatExpr::Const(id.clone()).add(x.clone()).mul(MatExpr::Const(id.clone()).sub(x.clone()));
        let rhs = MatExpr::Const(id).sub(x.clone().mul(x));
        let r = poly_identity_test(&lhs, &rhs, 2).unwrap();
        assert!(r.holds);
        assert!(recheck_random(&lhs, &rhs, 100, 7));
        assert!(poly_identity_test(&lhs, &rhs, 1).is_err());
    }

    #[test]
    fn sum_is_not_product() {
        let zero = FMat::from_ints(q(), &[&[0]]);
        let one = FieldElement::one(q());
        let x = MatExpr::generic(&zero, &one, 0);
        let y = MatExpr::generic(&zero, &one, 1);
        let r = poly_identity_test(&x.clone().add(y.clone()), &x.mul(y), 2).unwrap();
        assert!(!r.holds);
        let rb = poly_identity_test_box(
            &MatExpr::generic(&zero, &one, 0).add(MatExpr::generic(&zero, &one, 1)),
            &MatExpr::generic(&zero, &one, 0).mul(MatExpr::generic(&zero, &one, 1)),
            2,
        )
        .unwrap();
        assert!(!rb.holds);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(simplex_grid(25, 1).len(), 26);
        assert_eq!(simplex_grid(3, 2).len(), 10);
        assert_eq!(simplex_grid(0, 3).len(), 1);
    }

    #[test]
    fn binomial_coefficients_of_square() {
        // x^2 = 2 C(x,2) + C(x,1)
        let zero = FMat::from_ints(q(), &[&[0]]);
        let one = FieldElement::one(q());
        let x = MatExpr::generic(&zero, &one, 0);
        let e = x.clone().mul(x);
        let c = binomial_coefficients(&e, 1, 2).unwrap();
        let vals: Vec<FieldElement> = c.iter().map(|(_, m)| m.get(0, 0).clone()).collect();
        assert_eq!(vals, vec![FieldElement::from_int(q(), 0), FieldElement::from_int(q(), 1), FieldElement::from_int(q(), 2)]);
    }
}

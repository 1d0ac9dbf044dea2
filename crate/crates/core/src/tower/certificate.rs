//! Containment certificates: for a conjugator c, the generic element
//! T = I + pi^a X (one integer variable per Z-basis coordinate of each entry of X)
//! is conjugated symbolically and c^{-1} T c is shown to equal an explicit
//! I + (affine matrix with coefficients of valuation >= b).

use serde::Serialize;

use crate::arith::polyid::{binomial_coefficients, poly_identity_test, recheck_random, Affine, MatExpr};
use crate::arith::ring::{FieldElement, RingElement, RingKind};
use crate::bttree::LocalContext;
use crate::error::{Error, Result};
use crate::linalg::json::matrix_to_value;
use crate::linalg::matrix::{FMat, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// c^{-1} Gamma(p^a) c <= Gamma(p^b), i.e. Gamma(p^a) <= c Gamma(p^b) c^{-1}.
    Inverse,
    /// c Gamma(p^a) c^{-1} <= Gamma(p^b).
    Forward,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentCertificate {
    #[serde(serialize_with = "ser_mat")]
    pub conjugator: FMat,
    pub direction: Direction,
    pub a: u32,
    pub b: u32,
    pub nvars: usize,
    pub grid: usize,
    pub degree_bound: u32,
    pub identity_holds: bool,
    /// Minimal valuation of the coefficients of each entry of the conjugate minus I
    /// (row-major; None when the entry is identically zero).
    pub entry_valuations: Vec<Option<i64>>,
    /// All coefficients integral at every prime, not only at p.
    pub integral_away_from_p: bool,
    pub random_recheck: bool,
    pub pass: bool,
    #[serde(skip)]
    pub rhs: MatExpr<FieldElement>,
}

fn ser_mat<S: serde::Serializer>(m: &FMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&matrix_to_value(m), s)
}

/// I + pi^a X with X generic over the ring of integers.
pub fn level_template(ctx: &LocalContext, n: usize, a: u32) -> MatExpr<FieldElement> {
    let kind = ctx.kind();
    let deg = kind.degree();
    let scale = ctx.pi_pow(a as i64);
    let basis: Vec<FieldElement> = (0..deg)
        .map(|k| {
            let mut c = vec![0i64; deg];
            c[k] = 1;
            &RingElement::from_i64s(kind, &c).to_field() * &scale
        })
        .collect();
    let mut v = 0;
    let data = (0..n * n)
        .map(|idx| {
            let constant = if idx / n == idx % n { FieldElement::one(kind) } else { FieldElement::zero(kind) };
            let terms = basis
                .iter()
                .map(|b| {
                    v += 1;
                    (v - 1, b.clone())
                })
                .collect();
            Affine { constant, terms }
        })
        .collect();
    MatExpr::Var(Mat { rows: n, cols: n, data })
}

pub fn conjugate_expr(c: &FMat, t: MatExpr<FieldElement>, dir: Direction) -> Result<MatExpr<FieldElement>> {
    let ci = c.inverse().ok_or(Error::Singular)?;
    let (l, r) = match dir {
        Direction::Inverse => (ci, c.clone()),
        Direction::Forward => (c.clone(), ci),
    };
    Ok(MatExpr::constant(l).mul(t).mul(MatExpr::constant(r)))
}

fn kind_of(m: &FMat) -> RingKind {
    m.kind()
}

/// Build the certificate, or refuse with the first failing entry.
pub fn certify_containment(ctx: &LocalContext, c: &FMat, a: u32, b: u32, dir: Direction) -> Result<ContainmentCertificate> {
    let n = c.rows;
    let kind = kind_of(c);
    let template = level_template(ctx, n, a);
    let nvars = template.num_vars();
    let lhs = conjugate_expr(c, template, dir)?;
    let coeffs = binomial_coefficients(&lhs, nvars, 1)?;
    // coeffs[0] is the constant term, then one linear coefficient matrix per variable
    let mut data: Vec<Affine<FieldElement>> = coeffs[0].1.data.iter().map(|x| Affine::constant(x.clone())).collect();
    for (mono, m) in &coeffs[1..] {
        let var = mono[0].0;
        for (slot, x) in data.iter_mut().zip(&m.data) {
            if !x.is_zero() {
                slot.terms.push((var, x.clone()));
            }
        }
    }
    let rhs = MatExpr::Var(Mat { rows: n, cols: n, data });
    let cert = assemble(ctx, c, a, b, dir, rhs, kind)?;
    if !cert.pass {
        return Err(Error::Certificate(refusal(&cert)));
    }
    Ok(cert)
}

fn refusal(cert: &ContainmentCertificate) -> String {
    let n = cert.conjugator.rows;
    if let Some((idx, v)) = cert.entry_valuations.iter().enumerate().find(|(_, v)| matches!(v, Some(v) if *v < cert.b as i64)) {
        return format!("entry ({}, {}) has valuation {} < {}", idx / n, idx % n, v.unwrap(), cert.b);
    }
    if !cert.identity_holds {
        return "conjugation identity fails".into();
    }
    "random re-evaluation failed".into()
}

fn assemble(
    ctx: &LocalContext,
    c: &FMat,
    a: u32,
    b: u32,
    dir: Direction,
    rhs: MatExpr<FieldElement>,
    kind: RingKind,
) -> Result<ContainmentCertificate> {
    let n = c.rows;
    let MatExpr::Var(m) = &rhs else {
        return Err(Error::Input("certificate right-hand side must be affine".into()));
    };
    let mut vals = Vec::with_capacity(n * n);
    let mut constant_ok = true;
    let mut integral = true;
    for (idx, e) in m.data.iter().enumerate() {
        let want = if idx / n == idx % n { FieldElement::one(kind) } else { FieldElement::zero(kind) };
        constant_ok &= e.constant == want;
        let mut best: Option<i64> = None;
        for (_, x) in &e.terms {
            integral &= x.is_integral();
            let v = ctx.val(x);
            best = match (best, v) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (None, v) => v,
                (a, None) => a,
            };
        }
        vals.push(best);
    }
    let lhs = conjugate_expr(c, level_template(ctx, n, a), dir)?;
    let report = poly_identity_test(&lhs, &rhs, 1)?;
    let random_recheck = recheck_random(&lhs, &rhs, 100, 0x5eed ^ a as u64 ^ ((b as u64) << 8));
    let vals_ok = vals.iter().all(|v| v.is_none_or(|v| v >= b as i64));
    let pass = constant_ok && vals_ok && report.holds && random_recheck;
    Ok(ContainmentCertificate {
        conjugator: c.clone(),
        direction: dir,
        a,
        b,
        nvars: report.nvars,
        grid: report.points,
        degree_bound: report.degree_bound,
        identity_holds: report.holds && constant_ok,
        entry_valuations: vals,
        integral_away_from_p: integral,
        random_recheck,
        pass,
        rhs,
    })
}

/// Re-verify a certificate from its conjugator and stored right-hand side only.
pub fn verify_certificate(ctx: &LocalContext, cert: &ContainmentCertificate) -> Result<ContainmentCertificate> {
    assemble(ctx, &cert.conjugator, cert.a, cert.b, cert.direction, cert.rhs.clone(), kind_of(&cert.conjugator))
}

#![allow(dead_code)]

//! Randomized invariant suites. Shared by the core `properties` test target and
//! the acceptance runner, so both exercise the same cases (fixed ChaCha seed).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use rfrs_core::arith::polyid::Affine;
use rfrs_core::arith::ring::{FieldElement, RingElement, RingKind};
use rfrs_core::bttree::lattice::{act, canonicalize, gl_adjacent, tree_distance, LocalContext};
use rfrs_core::bttree::{bfs_explore, models, TreeModel};
use rfrs_core::fpgroup::rs::table_is_consistent;
use rfrs_core::fpgroup::{abelianization, coset_enumerate, parse_presentation, reidemeister_schreier, tietze_simplify, word, Presentation, Transversal, Word};
use rfrs_core::linalg::intmat::{det, hnf_basis, snf, IntMatrix};
use rfrs_core::linalg::matrix::{FMat, Mat};
use rfrs_core::tower::{certify_containment, verify_certificate, Direction};

pub struct PropOutcome {
    pub name: &'static str,
    pub cases: u32,
    pub result: Result<(), String>,
}

fn run<S: Strategy>(name: &'static str, cases: u32, strat: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> PropOutcome
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, max_global_rejects: cases * 4, ..Config::default() };
    let mut r = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let result = r.run(&strat, test).map_err(|e| e.to_string());
    PropOutcome { name, cases, result }
}

fn int_mat(rows: &[Vec<i64>]) -> IntMatrix {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| vec(vec(-20i64..=20, c), r))
}

/// Product of elementary, swap and sign operations on the n x n identity.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = int_mat(&(0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect::<Vec<_>>());
    for &(i, j, q) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = int_mat(&(0..n).map(|a| (0..n).map(|b| (a == b) as i64).collect()).collect::<Vec<_>>());
        if i != j {
            e.set(i, j, q.into());
        } else if q < 0 {
            e.set(i, i, (-1).into());
        } else if n > 1 {
            let k = (i + 1) % n;
            e.set(i, i, 0.into());
            e.set(k, k, 0.into());
            e.set(i, k, 1.into());
            e.set(k, i, 1.into());
        }
        u = u.mul(&e);
    }
    u
}

pub fn snf_divisibility() -> PropOutcome {
    run("SNF divisor chain, rank, gcd and determinant", 2500, small_matrix(), |rows| {
        let m = int_mat(&rows);
        let s = snf(&m);
        prop_assert!(s.divisors.iter().all(|d| d.is_positive()));
        prop_assert!(s.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(s.rank(), hnf_basis(&m).rows);
        let g = m.data.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if !g.is_zero() {
            prop_assert_eq!(&s.divisors[0], &g);
        }
        if m.rows == m.cols {
            let prod: BigInt = if s.rank() == m.rows { s.divisors.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(prod, det(&m).abs());
        }
        Ok(())
    })
}

pub fn snf_unimodular_invariance() -> PropOutcome {
    let ops = || vec((0..5usize, 0..5usize, -3i64..=3), 0..10);
    run("SNF is invariant under unimodular U, V", 2000, (small_matrix(), ops(), ops()), |(rows, ou, ov)| {
        let m = int_mat(&rows);
        let (u, v) = (unimodular(m.rows, &ou), unimodular(m.cols, &ov));
        prop_assert!(det(&u).abs() == BigInt::from(1) && det(&v).abs() == BigInt::from(1));
        prop_assert_eq!(snf(&u.mul(&m).mul(&v)).divisors, snf(&m).divisors);
        Ok(())
    })
}

/// Finite groups with their orders.
fn finite_groups() -> Vec<(Presentation, usize)> {
    [
        ("gens a, b; rels a^2, b^3, (a*b)^5;", 60),
        ("gens a, b; rels a^2, b^3, (a*b)^4;", 24),
        ("gens a, b; rels a^2, b^3, (a*b)^7, [a, b]^4;", 168),
        ("gens r, s; rels r^8, s^2, (s*r)^2;", 16),
        ("gens i, j; rels i^4, i^2 = j^2, j^-1*i*j = i^-1;", 8),
        ("gens a, b, c, d; rels a^2, b^2, c^2, d^2, (a*b)^3, (b*c)^3, (c*d)^3, (a*c)^2, (a*d)^2, (b*d)^2;", 120),
    ]
    .iter()
    .map(|(t, o)| (parse_presentation(t).expect("bundled presentation"), *o))
    .collect()
}

fn subgroup_words(pres: &Presentation, raw: &[Vec<(usize, bool)>]) -> Vec<Word> {
    raw.iter()
        .map(|w| {
            w.iter()
                .map(|&(g, inv)| {
                    let l = word::gen(g % pres.ngens());
                    if inv {
                        word::inverse(&[l])[0]
                    } else {
                        l
                    }
                })
                .collect()
        })
        .collect()
}

fn subgroup_strategy() -> impl Strategy<Value = (usize, Vec<Vec<(usize, bool)>>)> {
    (0..6usize, vec(vec((0..4usize, any::<bool>()), 1..7), 0..3))
}

pub fn coset_relator_tracing() -> PropOutcome {
    let groups = finite_groups();
    run("coset tables trace every relator and fix H", 1500, subgroup_strategy(), move |(gi, raw)| {
        let (pres, order) = &groups[gi];
        let h = subgroup_words(pres, &raw);
        let t = coset_enumerate(pres, &h, 100_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(t.verify(pres));
        prop_assert!(table_is_consistent(&t));
        prop_assert_eq!(order % t.index(), 0);
        for w in &h {
            prop_assert_eq!(t.trace(0, w), 0);
        }
        if h.is_empty() {
            prop_assert_eq!(t.index(), *order);
        }
        Ok(())
    })
}

pub fn transversal_independence() -> PropOutcome {
    let groups = finite_groups();
    run("subgroup abelianization is independent of transversal and Tietze moves", 600, subgroup_strategy(), move |(gi, raw)| {
        let (pres, _) = &groups[gi];
        let h = subgroup_words(pres, &raw);
        let mut t = coset_enumerate(pres, &h, 100_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        t.standardize();
        let mut seen = Vec::new();
        for tr in [Transversal::Shortlex, Transversal::ReverseBfs, Transversal::DepthFirst] {
            let sp = reidemeister_schreier(pres, &t, tr).map_err(|e| TestCaseError::fail(e.to_string()))?;
            // Schreier count: index * (ngens - 1) + 1
            prop_assert_eq!(sp.pres.ngens(), t.index() * (pres.ngens() - 1) + 1);
            let a = abelianization(&sp.pres);
            prop_assert_eq!(&abelianization(&tietze_simplify(&sp.pres)), &a);
            seen.push(a);
        }
        prop_assert!(seen.windows(2).all(|w| w[0] == w[1]));
        Ok(())
    })
}

fn contexts() -> Vec<LocalContext> {
    vec![
        LocalContext::rational(2).unwrap(),
        LocalContext::rational(3).unwrap(),
        LocalContext::of_norm(RingKind::ImagQuadratic(1), 2, 2).unwrap(),
        LocalContext::of_norm(RingKind::ImagQuadratic(1), 5, 5).unwrap(),
        LocalContext::of_norm(RingKind::ImagQuadratic(7), 2, 2).unwrap(),
    ]
}

/// Entries (a + b theta) / p^e with small a, b.
type RawEntry = (i64, i64, u32);

fn field_matrix(ctx: &LocalContext, n: usize, cols: usize, raw: &[RawEntry]) -> FMat {
    let kind = ctx.kind();
    let p = BigInt::from(ctx.prime.p);
    let rows = (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let (a, b, e) = raw[(i * cols + j) % raw.len()];
                    let mut c = vec![BigInt::zero(); kind.degree()];
                    c[0] = a.into();
                    if kind.degree() > 1 {
                        c[1] = b.into();
                    }
                    FieldElement::new(RingElement::new(kind, c), p.pow(e))
                })
                .collect()
        })
        .collect();
    Mat::from_rows(rows)
}

fn integral_unimodular(kind: RingKind, n: usize, ops: &[(usize, usize, i64)]) -> FMat {
    let u = unimodular(n, ops);
    FMat::from_rows((0..n).map(|i| (0..n).map(|j| FieldElement::from_int(kind, u.get(i, j).clone())).collect()).collect())
}

fn entries() -> impl Strategy<Value = Vec<RawEntry>> {
    vec((-6i64..=6, -3i64..=3, 0u32..3), 9..=9)
}

pub fn canonicalize_invariance() -> PropOutcome {
    let ctxs = contexts();
    let strat = (0..5usize, 2..=3usize, entries(), vec((0..3usize, 0..3usize, -4i64..=4), 0..8), vec(-3i64..=3, 3));
    run("canonicalize is idempotent and ignores the choice of basis", 2000, strat, move |(ci, n, raw, ops, extra)| {
        let ctx = &ctxs[ci];
        let m = field_matrix(ctx, n, n, &raw);
        prop_assume!(!m.det().is_zero());
        let v = canonicalize(ctx, &m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&canonicalize(ctx, &v.basis).unwrap(), &v);
        let u = integral_unimodular(ctx.kind(), n, &ops);
        prop_assert_eq!(&canonicalize(ctx, &m.mul(&u)).unwrap(), &v);
        // an extra column inside the lattice changes nothing
        let x = FMat::from_rows((0..n).map(|i| vec![FieldElement::from_int(ctx.kind(), extra[i])]).collect());
        let y = m.mul(&x);
        let wide = FMat::from_rows((0..n).map(|i| m.row(i).iter().cloned().chain([y.get(i, 0).clone()]).collect()).collect());
        prop_assert_eq!(&canonicalize(ctx, &wide).unwrap(), &v);
        Ok(())
    })
}

pub fn tree_distances() -> PropOutcome {
    let ctxs = contexts();
    let strat = (0..5usize, entries(), entries(), entries(), entries());
    run("tree distance is a GL2-invariant metric and adjacency is distance 1", 1000, strat, move |(ci, r1, r2, r3, rg)| {
        let ctx = &ctxs[ci];
        let (a, b, c, g) = (field_matrix(ctx, 2, 2, &r1), field_matrix(ctx, 2, 2, &r2), field_matrix(ctx, 2, 2, &r3), field_matrix(ctx, 2, 2, &rg));
        prop_assume!([&a, &b, &c, &g].iter().all(|m| !m.det().is_zero()));
        let f = |m: &FMat| canonicalize(ctx, m).unwrap();
        let (u, v, w) = (f(&a), f(&b), f(&c));
        let d = |x, y| tree_distance(ctx, x, y).unwrap();
        prop_assert_eq!(d(&u, &u), 0);
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
        prop_assert_eq!(gl_adjacent(ctx, &u, &v).unwrap(), d(&u, &v) == 1);
        let (gu, gv) = (act(ctx, &g, &u).unwrap(), act(ctx, &g, &v).unwrap());
        prop_assert_eq!(d(&gu, &gv), d(&u, &v));
        Ok(())
    })
}

pub fn tree_acyclicity() -> PropOutcome {
    let mut ms: Vec<TreeModel> = [2u64, 3, 5].iter().map(|&p| models::pgl2(p).unwrap()).collect();
    ms.extend([models::magic().unwrap(), models::oq_tree().unwrap(), models::su_tree().unwrap()]);
    run("explored balls are trees with the predicted valences", 300, (0..6usize, 0..2usize, 1..=3usize), move |(mi, t, r)| {
        let m = &ms[mi];
        let t = t % m.types.len();
        let r = if mi >= 4 { r.min(2) } else { r };
        let x = bfs_explore(m, t, r, 100_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(x.is_tree && x.regular);
        prop_assert_eq!(x.edges.len() + 1, x.vertices.len());
        if mi < 3 {
            let q = [2usize, 3, 5][mi];
            let want = 1 + (q + 1) * (0..r).map(|k| q.pow(k as u32)).sum::<usize>();
            prop_assert_eq!(x.vertices.len(), want);
        }
        Ok(())
    })
}

pub fn certificate_reevaluation() -> PropOutcome {
    let m = models::magic().unwrap();
    let gens = models::o7_stabilizer();
    let strat = (vec((0..4usize, any::<bool>()), 0..8), 1u32..=3, 0..4usize, any::<bool>());
    run("containment certificates re-verify and reject tampering", 300, strat, move |(w, a, slot, which)| {
        let ctx = &m.ctx;
        let kind = ctx.kind();
        let mut c = FMat::identity(kind, 2);
        for &(g, inv) in &w {
            let x = if inv { gens[g].inverse().unwrap() } else { gens[g].clone() };
            c = c.mul(&x);
        }
        // c stabilizes the standard lattice, so it normalizes every Gamma(p^a)
        let cert = certify_containment(ctx, &c, a, a, Direction::Forward).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(verify_certificate(ctx, &cert).unwrap().pass);
        let mut bad = cert.clone();
        let rfrs_core::arith::polyid::MatExpr::Var(rhs) = &mut bad.rhs else { return Err(TestCaseError::fail("non-affine rhs")) };
        let e: &mut Affine<FieldElement> = &mut rhs.data[slot];
        if which {
            e.constant = &e.constant + &ctx.pi_pow(a as i64);
        } else {
            e.terms.push((0, ctx.pi_pow(a as i64)));
        }
        prop_assert!(!verify_certificate(ctx, &bad).unwrap().pass);
        Ok(())
    })
}

pub fn all() -> Vec<PropOutcome> {
    vec![
        snf_divisibility(),
        snf_unimodular_invariance(),
        coset_relator_tracing(),
        transversal_independence(),
        canonicalize_invariance(),
        tree_distances(),
        tree_acyclicity(),
        certificate_reevaluation(),
    ]
}

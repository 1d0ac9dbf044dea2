//! Finitely generated abelian groups from relation matrices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::intmat::{snf, zero_matrix, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Prime-power cyclic factors as (prime, exponent), sorted; a multiset.
    pub torsion: Vec<(BigInt, u32)>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: vec![] }
    }

    /// From the nonzero invariant factors of a relation matrix with `num_generators` columns.
    pub fn from_divisors(num_generators: usize, divisors: &[BigInt]) -> Self {
        let mut torsion = Vec::new();
        for d in divisors {
            if d.abs().is_one() {
                continue;
            }
            torsion.extend(factor(&d.abs()));
        }
        torsion.sort();
        AbelianInvariants { free_rank: num_generators - divisors.len(), torsion }
    }

    /// Order of the torsion subgroup as a prime factorization, e.g. [(2, 5)] for 2^5.
    pub fn torsion_order(&self) -> Vec<(BigInt, u32)> {
        let mut out: Vec<(BigInt, u32)> = Vec::new();
        for (p, e) in &self.torsion {
            match out.last_mut() {
                Some((q, f)) if q == p => *f += e,
                _ => out.push((p.clone(), *e)),
            }
        }
        out
    }

    pub fn torsion_order_string(&self) -> String {
        let t = self.torsion_order();
        if t.is_empty() {
            return "1".into();
        }
        t.iter().map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(" ")
    }

    pub fn has_p_torsion(&self, p: u64) -> bool {
        self.torsion.iter().any(|(q, _)| *q == BigInt::from(p))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for (p, e) in &self.torsion {
            if *e == 1 {
                parts.push(format!("Z/{p}"));
            } else {
                parts.push(format!("Z/{p}^{e}"));
            }
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Prime factorization by trial division (the divisors met here are small).
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Rows are relations, columns generators.
pub fn abelian_invariants(relation_matrix: &IntMatrix, num_generators: usize) -> AbelianInvariants {
    if relation_matrix.rows == 0 {
        return AbelianInvariants::free(num_generators);
    }
    assert_eq!(relation_matrix.cols, num_generators, "relation matrix width must equal generator count");
    let s = snf(relation_matrix);
    AbelianInvariants::from_divisors(num_generators, &s.divisors)
}

/// Sparse relation matrix in coordinate-list form: each row is a list of
/// (column, coefficient) pairs.
#[derive(Clone, Debug, Default)]
pub struct SparseRelations {
    pub ncols: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl SparseRelations {
    pub fn new(ncols: usize) -> Self {
        SparseRelations { ncols, rows: Vec::new() }
    }

    /// Add a row given as an arbitrary list of (column, coefficient) contributions.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = zero_matrix(self.rows.len(), self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                m.set(i, c as usize, BigInt::from(v));
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

/// row_q - f * row_r on sorted sparse rows; `None` on i64 overflow.
fn combine(q: &[(u32, i64)], r: &[(u32, i64)], f: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(q.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < q.len() || j < r.len() {
        let take_q = j == r.len() || (i < q.len() && q[i].0 < r[j].0);
        let take_r = i == q.len() || (j < r.len() && r[j].0 < q[i].0);
        if take_q {
            out.push(q[i]);
            i += 1;
        } else if take_r {
            out.push((r[j].0, r[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = q[i].1.checked_sub(r[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((q[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Abelian invariants of a sparse relation matrix: eliminate on unit pivots
/// (sparse, i64 with overflow checks), then dense Smith form of what remains.
pub fn abelian_invariants_sparse(rel: &SparseRelations) -> AbelianInvariants {
    let ncols = rel.ncols;
    let mut rows: Vec<Option<Vec<(u32, i64)>>> = rel.rows.iter().cloned().map(Some).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.as_ref().unwrap() {
            col_rows[c as usize].push(i as u32);
        }
    }
    let mut col_dead = vec![false; ncols];
    let mut unit_pivots = 0usize;
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().map(|(i, r)| Reverse((r.as_ref().unwrap().len(), i as u32))).collect();
    let mut overflow = false;

    while let Some(Reverse((len, ri))) = heap.pop() {
        let ri = ri as usize;
        let Some(row) = rows[ri].as_ref() else { continue };
        if row.len() != len {
            continue; // stale heap entry
        }
        // unit entry with the fewest other occurrences
        let mut best: Option<(usize, i64, usize)> = None;
        for &(c, v) in row {
            if v.abs() == 1 {
                let cnt = col_rows[c as usize].len();
                if best.is_none_or(|b| cnt < b.2) {
                    best = Some((c as usize, v, cnt));
                }
            }
        }
        let Some((pc, pv, _)) = best else { continue };
        let prow = rows[ri].take().unwrap();
        let others = std::mem::take(&mut col_rows[pc]);
        for &qi in &others {
            let qi = qi as usize;
            if qi == ri {
                continue;
            }
            let Some(q) = rows[qi].as_ref() else { continue };
            let Ok(pos) = q.binary_search_by_key(&(pc as u32), |e| e.0) else { continue };
            let a = q[pos].1;
            let Some(f) = a.checked_mul(pv) else {
                overflow = true;
                break;
            };
            let Some(new) = combine(q, &prow, f) else {
                overflow = true;
                break;
            };
            let old_cols: Vec<u32> = q.iter().map(|e| e.0).collect();
            for &(c, _) in &new {
                if old_cols.binary_search(&c).is_err() {
                    col_rows[c as usize].push(qi as u32);
                }
            }
            heap.push(Reverse((new.len(), qi as u32)));
            rows[qi] = if new.is_empty() { None } else { Some(new) };
        }
        if overflow {
            rows[ri] = Some(prow);
            col_rows[pc] = others;
            break;
        }
        col_dead[pc] = true;
        unit_pivots += 1;
    }

    let live_cols: Vec<usize> = (0..ncols).filter(|&c| !col_dead[c]).collect();
    let mut index = vec![usize::MAX; ncols];
    for (k, &c) in live_cols.iter().enumerate() {
        index[c] = k;
    }
    let live_rows: Vec<&Vec<(u32, i64)>> = rows.iter().flatten().collect();
    let mut dense = zero_matrix(live_rows.len(), live_cols.len());
    for (i, r) in live_rows.iter().enumerate() {
        for &(c, v) in r.iter() {
            dense.set(i, index[c as usize], BigInt::from(v));
        }
    }
    let divisors = if dense.rows == 0 || dense.cols == 0 { vec![] } else { snf(&dense).divisors };
    let mut all = vec![BigInt::one(); unit_pivots];
    all.extend(divisors);
    AbelianInvariants::from_divisors(ncols, &all)
}

/// Small helper for tests and reports: exponents as u64 where they fit.
pub fn torsion_as_u64(inv: &AbelianInvariants) -> Vec<(u64, u32)> {
    inv.torsion.iter().map(|(p, e)| (p.to_u64().unwrap_or(u64::MAX), *e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::intmat::int_matrix;

    #[test]
    fn two_generators_a2b2() {
        let inv = abelian_invariants(&int_matrix(&[&[2, 2]]), 2);
        assert_eq!(inv.free_rank, 1);
        assert_eq!(torsion_as_u64(&inv), vec![(2, 1)]);
    }

    #[test]
    fn no_relations() {
        assert_eq!(abelian_invariants(&zero_matrix(0, 0), 4), AbelianInvariants::free(4));
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let m = int_matrix(&[&[1, 2, 0, 3], &[0, 4, 0, 6], &[2, 0, 6, 0], &[1, 1, 1, 1]]);
        let mut s = SparseRelations::new(4);
        for r in m.to_rows() {
            s.push_row(r.iter().enumerate().map(|(c, v)| (c as u32, v.to_i64().unwrap())).collect());
        }
        assert_eq!(abelian_invariants_sparse(&s), abelian_invariants(&m, 4));
    }

    #[test]
    fn torsion_order_string() {
        let inv = AbelianInvariants::from_divisors(5, &[BigInt::from(2), BigInt::from(2), BigInt::from(4), BigInt::from(12)]);
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion_order_string(), "2^6 3^1");
        assert_eq!(inv.to_string(), "Z^1 x Z/2 x Z/2 x Z/2^2 x Z/2^2 x Z/3");
    }
}

//! Orbits with a Schreier transversal, and subspaces of residue-field vector
//! spaces in reduced row echelon form.

use std::collections::HashMap;
use std::hash::Hash;

use super::group::RMat;
use crate::arith::residue::FiniteRing;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Orbit<P> {
    /// Breadth-first order from the start point.
    pub points: Vec<P>,
    /// For each point after the first: (parent index, generator index) it was reached by.
    pub parent: Vec<Option<(usize, usize)>>,
    index: HashMap<P, usize>,
    /// `edge[i * ngens + s]` = index of points[i] . gens[s]
    pub edges: Vec<usize>,
}

impl<P: Clone + Eq + Hash> Orbit<P> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Generator indices whose product carries the start point to points[i].
    pub fn word_to(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent[i] {
            w.push(s);
            i = p;
        }
        w.reverse();
        w
    }

    /// Schreier generators u_i s u_{i.s}^{-1} of the stabilizer of the start point.
    pub fn schreier_words(&self, ngens: usize) -> Vec<StabWord> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for s in 0..ngens {
                let d = self.edges[i * ngens + s];
                if self.parent[d] == Some((i, s)) {
                    continue;
                }
                out.push(StabWord { forward: self.word_to(i), gen: s, back: self.word_to(d) });
            }
        }
        out
    }
}

/// The group element u_i * g_s * u_d^{-1} in generator indices (acting on the right of the start point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabWord {
    pub forward: Vec<usize>,
    pub gen: usize,
    pub back: Vec<usize>,
}

/// Orbit of `start` under `act(point, generator index)`, with budget.
pub fn orbit<P: Clone + Eq + Hash>(start: P, ngens: usize, act: impl Fn(&P, usize) -> P, limit: usize) -> Result<Orbit<P>> {
    let mut points = vec![start.clone()];
    let mut parent = vec![None];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < points.len() {
        for s in 0..ngens {
            let q = act(&points[i], s);
            let d = match index.get(&q) {
                Some(&d) => d,
                None => {
                    if points.len() >= limit {
                        return Err(Error::budget("orbit", limit as u64));
                    }
                    let d = points.len();
                    index.insert(q.clone(), d);
                    points.push(q);
                    parent.push(Some((i, s)));
                    d
                }
            };
            edges.push(d);
        }
        i += 1;
    }
    Ok(Orbit { points, parent, index, edges })
}

/// A subspace of F^n (F = residue field, table ring with k = 1), as the rows of its RREF basis.
pub type Subspace = Vec<Vec<u16>>;

pub fn rref(f: &FiniteRing, rows: &[Vec<u16>]) -> Subspace {
    let mut m: Vec<Vec<u16>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][c]).expect("residue field");
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                for cc in 0..ncols {
                    let t = f.mul(k, m[rank][cc]);
                    m[r][cc] = f.sub(m[r][cc], t);
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Image of a subspace under the column action v -> g v.
pub fn act_subspace(f: &FiniteRing, g: &RMat, n: usize, v: &Subspace) -> Subspace {
    let rows: Vec<Vec<u16>> = v
        .iter()
        .map(|x| {
            (0..n)
                .map(|i| (0..n).fold(0u16, |acc, j| f.add(acc, f.mul(g[i * n + j], x[j]))))
                .collect()
        })
        .collect();
    rref(f, &rows)
}

/// Orthogonal complement of a subspace for the bilinear form `b` (symmetric or hermitian via `conj`).
pub fn orthogonal_complement(f: &FiniteRing, b: &RMat, n: usize, v: &Subspace, hermitian: bool) -> Subspace {
    // w ⟂ x iff x^* B w = 0: rows (x^* B) form the linear conditions
    let cond: Vec<Vec<u16>> = v
        .iter()
        .map(|x| {
            (0..n)
                .map(|j| {
                    (0..n).fold(0u16, |acc, i| {
                        let xi = if hermitian { f.conj(x[i]) } else { x[i] };
                        f.add(acc, f.mul(xi, b[i * n + j]))
                    })
                })
                .collect()
        })
        .collect();
    null_space(f, &cond, n)
}

/// Basis (RREF) of {w : C w = 0}.
pub fn null_space(f: &FiniteRing, c: &[Vec<u16>], n: usize) -> Subspace {
    let r = rref(f, c);
    let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut w = vec![0u16; n];
        w[free] = f.one;
        for (row, &p) in r.iter().zip(&pivots) {
            w[p] = f.neg(row[free]);
        }
        basis.push(w);
    }
    rref(f, &basis)
}

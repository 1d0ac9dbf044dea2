//! Finite matrix groups over table-backed residue rings, materialized by
//! breadth-first closure.

use std::collections::HashMap;

use crate::arith::residue::FiniteRing;
use crate::error::{Error, Result};
use crate::par;

/// Row-major n x n matrix of ring element indices.
pub type RMat = Vec<u16>;

pub const CLOSURE_LIMIT: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    pub n: usize,
    pub gens: Vec<RMat>,
    /// Breadth-first order from the identity.
    pub elements: Vec<RMat>,
    index: HashMap<RMat, u32>,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &RMat) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &RMat) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }
}

/// Close `gens` under right multiplication. Each BFS level is expanded in
/// parallel and merged in a fixed order, so the result does not depend on scheduling.
pub fn group_closure(ring: &FiniteRing, n: usize, gens: &[RMat], limit: usize) -> Result<FiniteMatrixGroup> {
    let id = ring.mat_identity(n);
    // finite group: closure under products alone is closed under inverses
    let mut elements = vec![id.clone()];
    let mut index: HashMap<RMat, u32> = HashMap::from([(id, 0)]);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<Vec<RMat>> = par::map(&frontier, |&i| gens.iter().map(|g| ring.mat_mul(&elements[i], g, n)).collect());
        let mut next = Vec::new();
        for m in products.into_iter().flatten() {
            if !index.contains_key(&m) {
                if elements.len() >= limit {
                    return Err(Error::budget("group closure", limit as u64));
                }
                index.insert(m.clone(), elements.len() as u32);
                next.push(elements.len());
                elements.push(m);
            }
        }
        frontier = next;
    }
    Ok(FiniteMatrixGroup { n, gens: gens.to_vec(), elements, index })
}

pub fn is_identity(ring: &FiniteRing, m: &[u16], n: usize) -> bool {
    m == ring.mat_identity(n).as_slice()
}

/// Order of a matrix (`None` if it exceeds `limit`).
pub fn element_order(ring: &FiniteRing, m: &RMat, n: usize, limit: u64) -> Option<u64> {
    let mut x = m.clone();
    let mut k = 1;
    while !is_identity(ring, &x, n) {
        x = ring.mat_mul(&x, m, n);
        k += 1;
        if k > limit {
            return None;
        }
    }
    Some(k)
}

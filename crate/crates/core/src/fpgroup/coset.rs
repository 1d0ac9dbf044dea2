//! Coset enumeration, HLT style: relators are scanned and filled at each live
//! coset in order; when the table is full a lookahead pass (scan without
//! defining) collects deductions and coincidences before compacting.
//! Numbering is first-defined order, so results are reproducible.

use std::collections::VecDeque;

use super::presentation::Presentation;
use super::word::{column, Letter, Word};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

/// A complete coset table. Cosets are `0..index()`, coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub ngens: usize,
    /// Row-major, `2 * ngens` columns: generator k at 2k, inverse at 2k + 1.
    pub table: Vec<u32>,
    pub subgroup_gens: Vec<Word>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        if self.ngens == 0 {
            1
        } else {
            self.table.len() / (2 * self.ngens)
        }
    }

    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.table[c * 2 * self.ngens + column(l)] as usize
    }

    pub fn trace(&self, c: usize, w: &[Letter]) -> usize {
        w.iter().fold(c, |c, &l| self.act(c, l))
    }

    /// Build a table from a transitive right action: `images[k][c]` is coset c times generator k.
    /// Coset 0 is the base point.
    pub fn from_action(images: &[Vec<u32>], subgroup_gens: Vec<Word>) -> Result<Self> {
        let ngens = images.len();
        let n = images.first().map_or(1, |v| v.len());
        let mut table = vec![u32::MAX; n * 2 * ngens];
        for (k, img) in images.iter().enumerate() {
            if img.len() != n {
                return Err(Error::Input("action images of different sizes".into()));
            }
            for (c, &d) in img.iter().enumerate() {
                table[c * 2 * ngens + 2 * k] = d;
                let back = &mut table[d as usize * 2 * ngens + 2 * k + 1];
                if *back != u32::MAX {
                    return Err(Error::Input(format!("generator {k} does not act as a permutation")));
                }
                *back = c as u32;
            }
        }
        Ok(CosetTable { ngens, table, subgroup_gens })
    }

    /// Every relator traces to the identity at every coset and the subgroup
    /// generators fix coset 0.
    pub fn verify(&self, pres: &Presentation) -> bool {
        let n = self.index();
        (0..n).all(|c| pres.rels.iter().all(|r| self.trace(c, r) == c)) && self.subgroup_gens.iter().all(|h| self.trace(0, h) == 0)
    }

    /// Renumber cosets in breadth-first order from coset 0 (generators in order, each followed by its inverse).
    pub fn standardize(&mut self) {
        let n = self.index();
        let cols = 2 * self.ngens;
        let mut new_of = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        new_of[0] = 0;
        order.push(0usize);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for x in 0..cols {
                let d = self.table[c * cols + x] as usize;
                if new_of[d] == u32::MAX {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut t = vec![0u32; n * cols];
        for (newc, &oldc) in order.iter().enumerate() {
            for x in 0..cols {
                t[newc * cols + x] = new_of[self.table[oldc * cols + x] as usize];
            }
        }
        self.table = t;
    }
}

struct Full;

struct Enumerator<'a> {
    cols: usize,
    rels: &'a [Word],
    /// 1-based cosets; 0 = undefined
    t: Vec<u32>,
    p: Vec<u32>,
    n: usize,
    cap: usize,
    queue: VecDeque<u32>,
    dead: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl<'a> Enumerator<'a> {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.t[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.t[c as usize * self.cols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<u32, Full> {
        if self.n >= self.cap {
            return Err(Full);
        }
        self.n += 1;
        let d = self.n as u32;
        if self.t.len() < (self.n + 1) * self.cols {
            let grow = ((self.n + 1) * 2).min(self.cap + 1);
            self.t.resize(grow * self.cols, 0);
            self.p.resize(grow, 0);
        }
        self.p[d as usize] = d;
        for y in 0..self.cols {
            self.set(d, y, 0);
        }
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        let mut c = c;
        while self.p[c as usize] != r {
            let next = self.p[c as usize];
            self.p[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.p[hi as usize] = lo;
            self.queue.push_back(hi);
            self.dead += 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == 0 {
                    continue;
                }
                self.set(f, inv_col(x), 0);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != 0 {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, inv_col(x));
                    if fx != 0 {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, inv_col(x), e1);
                    }
                }
            }
        }
    }

    /// Scan `w` at `c`; with `fill`, define cosets so the scan completes.
    fn scan(&mut self, c: u32, w: &[Letter], fill: bool) -> std::result::Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let cols: Vec<usize> = w.iter().map(|&l| column(l)).collect();
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = cols.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let nx = self.get(f, cols[i]);
                if nx == 0 {
                    break;
                }
                f = nx;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nx = self.get(b, inv_col(cols[j as usize]));
                if nx == 0 {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = cols[i];
                self.set(f, x, b);
                self.set(b, inv_col(x), f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, cols[i])?;
        }
    }

    fn lookahead(&mut self) {
        let mut c = 1u32;
        while (c as usize) <= self.n {
            if self.alive(c) {
                let rels = self.rels;
                for r in rels {
                    let _ = self.scan(c, r, false);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumber live cosets 1..; returns the map old -> first live coset >= old.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![0u32; self.n + 2];
        let mut k = 0u32;
        for c in 1..=self.n {
            if self.alive(c as u32) {
                k += 1;
                map[c] = k;
            }
        }
        let live = k as usize;
        let mut t = vec![0u32; (live + 1) * self.cols];
        for c in 1..=self.n {
            if map[c] != 0 {
                for x in 0..self.cols {
                    let d = self.get(c as u32, x);
                    t[map[c] as usize * self.cols + x] = if d == 0 { 0 } else { map[d as usize] };
                }
            }
        }
        // dead cosets map to the next live one (for resuming the main loop)
        let mut next = live as u32 + 1;
        for c in (1..=self.n + 1).rev() {
            if c <= self.n && map[c] != 0 {
                next = map[c];
            } else {
                map[c] = next;
            }
        }
        self.t = t;
        self.p = (0..=live as u32).collect();
        self.n = live;
        self.dead = 0;
        map
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup_gens`.
pub fn coset_enumerate(pres: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let ngens = pres.ngens();
    if ngens == 0 {
        return Ok(CosetTable { ngens, table: vec![], subgroup_gens: subgroup_gens.to_vec() });
    }
    let cols = 2 * ngens;
    let init = 1024.min(max_cosets) + 1;
    let mut e = Enumerator {
        cols,
        rels: &pres.rels,
        t: vec![0; (init + 1) * cols],
        p: vec![0; init + 1],
        n: 1,
        cap: max_cosets,
        queue: VecDeque::new(),
        dead: 0,
    };
    e.p[1] = 1;
    let budget = || Error::budget("coset enumeration", max_cosets as u64);
    let relieve = |e: &mut Enumerator, c: u32| -> Result<u32> {
        e.lookahead();
        if e.dead == 0 {
            return Err(budget());
        }
        let map = e.compact();
        Ok(map[c as usize])
    };
    let mut hi = 0;
    while hi < subgroup_gens.len() {
        match e.scan(1, &subgroup_gens[hi], true) {
            Ok(()) => hi += 1,
            Err(Full) => {
                relieve(&mut e, 1)?;
            }
        }
    }
    let mut c = 1u32;
    'outer: while (c as usize) <= e.n {
        if !e.alive(c) {
            c += 1;
            continue;
        }
        for r in 0..pres.rels.len() {
            if e.scan(c, &pres.rels[r], true).is_err() {
                c = relieve(&mut e, c)?;
                continue 'outer;
            }
            if !e.alive(c) {
                c += 1;
                continue 'outer;
            }
        }
        for x in 0..cols {
            if e.get(c, x) == 0 && e.define(c, x).is_err() {
                c = relieve(&mut e, c)?;
                continue 'outer;
            }
        }
        c += 1;
    }
    e.compact();
    let n = e.n;
    let mut table = vec![0u32; n * cols];
    for c in 1..=n {
        for x in 0..cols {
            let d = e.get(c as u32, x);
            if d == 0 {
                return Err(Error::IncompleteTable);
            }
            table[(c - 1) * cols + x] = d - 1;
        }
    }
    Ok(CosetTable { ngens, table, subgroup_gens: subgroup_gens.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_presentation;
    use super::*;

    #[test]
    fn cyclic() {
        let p = parse_presentation("gens a; rels a^3;").unwrap();
        let t = coset_enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.verify(&p));
    }

    #[test]
    fn symmetric_groups() {
        let s3 = parse_presentation("gens a, b; rels a^2, b^3, (a b)^2;").unwrap();
        assert_eq!(coset_enumerate(&s3, &[], 100).unwrap().index(), 6);
        assert_eq!(coset_enumerate(&s3, &[vec![1]], 100).unwrap().index(), 3);
        // A5 as <a, b | a^2, b^3, (ab)^5>
        let a5 = parse_presentation("gens a, b; rels a^2, b^3, (a*b)^5;").unwrap();
        let t = coset_enumerate(&a5, &[], 1000).unwrap();
        assert_eq!(t.index(), 60);
        assert!(t.verify(&a5));
    }

    #[test]
    fn small_budget_forces_lookahead() {
        let a5 = parse_presentation("gens a, b; rels a^2, b^3, (a*b)^5;").unwrap();
        let t = coset_enumerate(&a5, &[], 70).unwrap();
        assert_eq!(t.index(), 60);
        assert!(coset_enumerate(&a5, &[], 30).is_err());
    }

    #[test]
    fn unreduced_subgroup_words() {
        // the second scan meets a backward-scanned suffix
        let a5 = parse_presentation("gens a, b; rels a^2, b^3, (a*b)^5;").unwrap();
        let h = vec![vec![1, 1], vec![-2, 2, 1]];
        let t = coset_enumerate(&a5, &h, 1000).unwrap();
        assert_eq!(t.index(), 30);
        assert!(t.verify(&a5));
    }

    #[test]
    fn infinite_index_hits_limit() {
        let z = parse_presentation("gens a, b; rels [a, b];").unwrap();
        assert!(matches!(coset_enumerate(&z, &[], 500), Err(Error::Budget { .. })));
    }
}


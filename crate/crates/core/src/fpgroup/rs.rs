//! Reidemeister-Schreier: a presentation of a finite-index subgroup from a
//! complete coset table and a Schreier transversal.

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::{self, Letter, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversal {
    /// Breadth-first with columns in order g1, g1^-1, g2, ...: shortlex-least representatives.
    Shortlex,
    /// Breadth-first with the column order reversed.
    ReverseBfs,
    /// Depth-first spanning tree.
    DepthFirst,
}

/// Spanning tree of the Schreier graph: for each coset, the (parent, letter) it was reached by.
pub fn spanning_tree(t: &CosetTable, strategy: Transversal) -> Result<Vec<Option<(usize, Letter)>>> {
    let n = t.index();
    let cols = 2 * t.ngens;
    let letters: Vec<Letter> = {
        let mut v: Vec<Letter> = (0..t.ngens).flat_map(|k| [word::gen(k), -word::gen(k)]).collect();
        if strategy == Transversal::ReverseBfs {
            v.reverse();
        }
        v
    };
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    match strategy {
        Transversal::Shortlex | Transversal::ReverseBfs => {
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(c) = queue.pop_front() {
                for &l in &letters {
                    let d = t.act(c, l);
                    if !seen[d] {
                        seen[d] = true;
                        parent[d] = Some((c, l));
                        queue.push_back(d);
                    }
                }
            }
        }
        Transversal::DepthFirst => {
            let mut stack = vec![(0usize, 0usize)];
            while let Some((c, i)) = stack.pop() {
                if i < cols {
                    stack.push((c, i + 1));
                    let l = letters[i];
                    let d = t.act(c, l);
                    if !seen[d] {
                        seen[d] = true;
                        parent[d] = Some((c, l));
                        stack.push((d, 0));
                    }
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Input("coset table is not transitive".into()));
    }
    Ok(parent)
}

/// Transversal words t_c with 0 . t_c = c.
pub fn transversal_words(parent: &[Option<(usize, Letter)>]) -> Vec<Word> {
    let n = parent.len();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(vec![]);
    fn build(c: usize, parent: &[Option<(usize, Letter)>], words: &mut Vec<Option<Word>>) -> Word {
        if let Some(w) = &words[c] {
            return w.clone();
        }
        // iterative walk to avoid deep recursion
        let mut chain = vec![];
        let mut x = c;
        while words[x].is_none() {
            let (p, l) = parent[x].expect("tree");
            chain.push((x, l));
            x = p;
        }
        let mut w = words[x].clone().unwrap();
        for &(y, l) in chain.iter().rev() {
            w.push(l);
            words[y] = Some(w.clone());
        }
        w
    }
    for c in 0..n {
        build(c, parent, &mut words);
    }
    words.into_iter().map(|w| w.unwrap()).collect()
}

#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub pres: Presentation,
    /// Each subgroup generator as a word in the parent generators.
    pub gen_words: Vec<Word>,
    /// For (coset, parent generator), the subgroup generator index or `None` on tree edges.
    pub schreier_index: Vec<Option<usize>>,
    pub ngens_parent: usize,
}

impl SubgroupPresentation {
    /// Rewrite a word of the parent group lying in the subgroup.
    pub fn rewrite(&self, table: &CosetTable, w: &[Letter]) -> Option<Word> {
        let mut c = 0usize;
        let mut out = Vec::new();
        for &l in w {
            let k = word::index(l);
            if l > 0 {
                if let Some(s) = self.schreier_index[c * self.ngens_parent + k] {
                    out.push(word::gen(s));
                }
                c = table.act(c, l);
            } else {
                let d = table.act(c, l);
                if let Some(s) = self.schreier_index[d * self.ngens_parent + k] {
                    out.push(-word::gen(s));
                }
                c = d;
            }
        }
        (c == 0).then(|| word::free_reduce(&out))
    }
}

pub fn reidemeister_schreier(pres: &Presentation, table: &CosetTable, strategy: Transversal) -> Result<SubgroupPresentation> {
    if table.ngens != pres.ngens() {
        return Err(Error::Input("coset table and presentation disagree on generators".into()));
    }
    let n = table.index();
    let m = pres.ngens();
    if table.table.len() != n * 2 * m || table.table.iter().any(|&d| d as usize >= n) {
        return Err(Error::IncompleteTable);
    }
    let parent = spanning_tree(table, strategy)?;
    let tw = transversal_words(&parent);
    let mut tree_edge = vec![false; n * m];
    for (d, pe) in parent.iter().enumerate() {
        if let Some((c, l)) = *pe {
            let k = word::index(l);
            if l > 0 {
                tree_edge[c * m + k] = true;
            } else {
                tree_edge[d * m + k] = true;
            }
        }
    }
    let mut schreier_index = vec![None; n * m];
    let mut gen_words = Vec::new();
    for c in 0..n {
        for k in 0..m {
            if !tree_edge[c * m + k] {
                let d = table.act(c, word::gen(k));
                let mut w = tw[c].clone();
                w.push(word::gen(k));
                w.extend(word::inverse(&tw[d]));
                schreier_index[c * m + k] = Some(gen_words.len());
                gen_words.push(word::free_reduce(&w));
            }
        }
    }
    let names = (1..=gen_words.len()).map(|i| format!("y{i}")).collect();
    let mut sp = SubgroupPresentation {
        pres: Presentation { gens: names, rels: vec![], provenance: None },
        gen_words,
        schreier_index,
        ngens_parent: m,
    };
    let mut rels = Vec::with_capacity(n * pres.rels.len());
    for c in 0..n {
        for r in &pres.rels {
            let mut w = tw[c].clone();
            w.extend_from_slice(r);
            w.extend(word::inverse(&tw[c]));
            let rw = sp.rewrite(table, &w).ok_or_else(|| Error::Input("relator does not trace to the identity".into()))?;
            rels.push(word::cyclic_reduce(&rw));
        }
    }
    sp.pres.rels = rels;
    Ok(sp)
}

/// Is every column entry consistent with its inverse?
pub fn table_is_consistent(t: &CosetTable) -> bool {
    let n = t.index();
    (0..n).all(|c| {
        (0..t.ngens).all(|k| {
            let l = word::gen(k);
            t.act(t.act(c, l), -l) == c
        })
    })
}

//! Tietze simplification: drop duplicate and trivial relators and eliminate
//! generators that occur exactly once in some relator, but only when the
//! substitution does not increase the total relator length.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::presentation::Presentation;
use super::word::{self, cyclic_canonical, Letter, Word};

struct State {
    rels: Vec<Option<Word>>,
    by_len: BTreeSet<(usize, usize)>,
    seen: HashMap<Word, usize>,
    occ: Vec<usize>,
    containing: Vec<HashSet<usize>>,
    alive: Vec<bool>,
}

impl State {
    fn insert(&mut self, w: Word) {
        let w = cyclic_canonical(&w);
        if w.is_empty() || self.seen.contains_key(&w) {
            return;
        }
        let id = self.rels.len();
        for &l in &w {
            let g = word::index(l);
            self.occ[g] += 1;
            self.containing[g].insert(id);
        }
        self.by_len.insert((w.len(), id));
        self.seen.insert(w.clone(), id);
        self.rels.push(Some(w));
    }

    fn remove(&mut self, id: usize) -> Word {
        let w = self.rels[id].take().expect("live relator");
        for &l in &w {
            let g = word::index(l);
            self.occ[g] -= 1;
            self.containing[g].remove(&id);
        }
        self.by_len.remove(&(w.len(), id));
        self.seen.remove(&w);
        w
    }

    /// A relator and generator whose elimination does not increase total length.
    fn candidate(&self) -> Option<(usize, usize)> {
        for &(len, id) in &self.by_len {
            let w = self.rels[id].as_ref().unwrap();
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &l in w {
                *counts.entry(word::index(l)).or_default() += 1;
            }
            let mut best: Option<(usize, usize)> = None;
            for (&g, &c) in &counts {
                if c != 1 {
                    continue;
                }
                let k = self.occ[g] - 1;
                // new total = total - len + k (len - 2)
                if k * len.saturating_sub(2) <= len {
                    let better = match best {
                        None => true,
                        Some((bk, bg)) => (k, g) < (bk, bg),
                    };
                    if better {
                        best = Some((k, g));
                    }
                }
            }
            if let Some((_, g)) = best {
                return Some((id, g));
            }
        }
        None
    }
}

fn substitute(w: &[Letter], g: usize, value: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if word::index(l) == g {
            if l > 0 {
                out.extend_from_slice(value);
            } else {
                out.extend(word::inverse(value));
            }
        } else {
            out.push(l);
        }
    }
    word::free_reduce(&out)
}

pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let n = p.ngens();
    let mut st = State {
        rels: Vec::new(),
        by_len: BTreeSet::new(),
        seen: HashMap::new(),
        occ: vec![0; n],
        containing: vec![HashSet::new(); n],
        alive: vec![true; n],
    };
    for r in &p.rels {
        st.insert(r.clone());
    }
    while let Some((id, g)) = st.candidate() {
        let r = st.remove(id);
        let pos = r.iter().position(|&l| word::index(l) == g).unwrap();
        let rot: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        // rot = g^e * rest, so g^e = rest^-1
        let rest = &rot[1..];
        let value = if rot[0] > 0 { word::inverse(rest) } else { rest.to_vec() };
        let mut ids: Vec<usize> = st.containing[g].iter().copied().collect();
        ids.sort_unstable();
        for i in ids {
            let w = st.remove(i);
            st.insert(substitute(&w, g, &value));
        }
        st.alive[g] = false;
    }
    let mut new_index = vec![usize::MAX; n];
    let mut gens = Vec::new();
    for g in 0..n {
        if st.alive[g] {
            new_index[g] = gens.len();
            gens.push(p.gens[g].clone());
        }
    }
    let mut rels: Vec<Word> = st
        .by_len
        .iter()
        .map(|&(_, id)| {
            st.rels[id]
                .as_ref()
                .unwrap()
                .iter()
                .map(|&l| {
                    let k = word::gen(new_index[word::index(l)]);
                    if l > 0 {
                        k
                    } else {
                        -k
                    }
                })
                .collect()
        })
        .collect();
    rels.sort_by(|a: &Word, b: &Word| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Presentation { gens, rels, provenance: p.provenance.clone() }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_presentation;
    use super::*;

    #[test]
    fn trivial_generator_removed() {
        let p = parse_presentation("gens a, b; rels a, b^3, a b a^-1 b;").unwrap();
        let q = tietze_simplify(&p);
        assert_eq!(q.gens, vec!["b".to_string()]);
        assert!(q.total_length() <= p.total_length());
    }

    #[test]
    fn duplicates_collapse() {
        let p = parse_presentation("gens a, b; rels a^2, a^-2, [a,b], [b,a];").unwrap();
        let q = tietze_simplify(&p);
        assert!(q.rels.len() <= 2);
    }
}

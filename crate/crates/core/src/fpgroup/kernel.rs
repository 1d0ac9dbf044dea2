//! Kernels of homomorphisms onto finite groups: the regular action of the
//! image gives the coset table of the kernel, and its Schreier generators
//! generate the kernel.

use std::collections::HashMap;
use std::hash::Hash;

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::rs::{spanning_tree, transversal_words, Transversal};
use super::word::{self, Word};
use crate::error::{Error, Result};

/// A finite group given by generator images; elements are acted on by right
/// multiplication with the image of a generator.
pub trait FiniteImage {
    type Elem: Clone + Eq + Hash;
    fn identity(&self) -> Self::Elem;
    fn ngens(&self) -> usize;
    /// `e * image(generator k)`
    fn mul_gen(&self, e: &Self::Elem, k: usize) -> Self::Elem;
}

/// Elements of the image in breadth-first order and the action of each generator on them.
pub fn regular_action<H: FiniteImage>(h: &H, limit: usize) -> Result<(Vec<H::Elem>, Vec<Vec<u32>>)> {
    let m = h.ngens();
    let mut elems = vec![h.identity()];
    let mut index: HashMap<H::Elem, u32> = HashMap::from([(h.identity(), 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); m];
    let mut i = 0;
    while i < elems.len() {
        for (k, img) in images.iter_mut().enumerate() {
            let y = h.mul_gen(&elems[i], k);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elems.len() >= limit {
                        return Err(Error::budget("image group order", limit as u64));
                    }
                    let j = elems.len() as u32;
                    index.insert(y.clone(), j);
                    elems.push(y);
                    j
                }
            };
            img.push(j);
        }
        i += 1;
    }
    Ok((elems, images))
}

/// Coset table of the kernel, from the regular action of the image. Fails
/// if some relator does not map to the identity.
pub fn kernel_table<H: FiniteImage>(pres: &Presentation, h: &H, limit: usize) -> Result<CosetTable> {
    if h.ngens() != pres.ngens() {
        return Err(Error::Input(format!("{} generator images for {} generators", h.ngens(), pres.ngens())));
    }
    let (_, images) = regular_action(h, limit)?;
    let mut t = CosetTable::from_action(&images, vec![])?;
    for (i, r) in pres.rels.iter().enumerate() {
        if t.trace(0, r) != 0 {
            return Err(Error::RelatorViolation { index: i, detail: format!("{} is not trivial in the image", pres.word_string(r)) });
        }
    }
    t.subgroup_gens = schreier_generators(&t, Transversal::Shortlex)?;
    Ok(t)
}

/// Nontrivial Schreier generators t_c x t_{cx}^{-1} of the stabilizer of coset 0.
pub fn schreier_generators(t: &CosetTable, strategy: Transversal) -> Result<Vec<Word>> {
    let parent = spanning_tree(t, strategy)?;
    let tw = transversal_words(&parent);
    let mut out = Vec::new();
    for c in 0..t.index() {
        for k in 0..t.ngens {
            let g = word::gen(k);
            let d = t.act(c, g);
            let mut w = tw[c].clone();
            w.push(g);
            w.extend(word::inverse(&tw[d]));
            let w = word::free_reduce(&w);
            if !w.is_empty() {
                out.push(w);
            }
        }
    }
    Ok(out)
}

pub fn kernel_generators<H: FiniteImage>(pres: &Presentation, h: &H, limit: usize) -> Result<Vec<Word>> {
    Ok(kernel_table(pres, h, limit)?.subgroup_gens)
}

//! Level-4 congruence subgroup of the reflection group of O(4,1; Z), in two
//! stages: the level-2 kernel W -> O(q0; Z/2), simplified, then the kernel of
//! its map to O(q0; Z/4).

use std::collections::HashMap;

use serde::Serialize;

use super::hom::{reduction_hom, Homomorphism};
use crate::arith::prime::factor_rational_prime;
use crate::arith::ring::RingKind;
use crate::data;
use crate::error::{Error, Result};
use crate::fpgroup::word::{self, Word};
use crate::fpgroup::{abelianization, coset_enumerate, kernel_table, regular_action, reidemeister_schreier, tietze_simplify, Presentation, Transversal};
use crate::linalg::abelian::AbelianInvariants;
use crate::linalg::forms::{preserves_form, FormKind};
use crate::linalg::json::GeneratorFile;
use crate::linalg::matrix::FMat;

#[derive(Clone, Debug, Serialize)]
pub struct DiagramCheck {
    /// (i, j, required m_ij, computed order of s_i s_j)
    pub pairs: Vec<(usize, usize, u64, Option<u64>)>,
    pub integral: bool,
    pub preserves_form: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct O41Report {
    pub diagram: DiagramCheck,
    pub index_level2: usize,
    pub enumerated_index_level2: usize,
    pub level2_rs_generators: usize,
    pub level2_generators: usize,
    pub level2_length: usize,
    pub index_level4_in_level2: usize,
    pub minus_identity_in_image: bool,
    pub level4_rs_generators: usize,
    pub level4_generators: usize,
    pub level4_length: usize,
    pub invariants: AbelianInvariants,
    pub no_2_torsion: bool,
}

/// m_ij from the "coxeter" field; unlisted pairs commute.
pub fn coxeter_matrix(gf: &GeneratorFile, n: usize) -> Result<Vec<Vec<u64>>> {
    let mut m = vec![vec![2u64; n]; n];
    for i in 0..n {
        m[i][i] = 1;
    }
    let edges = gf.extra.get("coxeter").and_then(|v| v.as_array()).ok_or_else(|| Error::Input("missing coxeter field".into()))?;
    for e in edges {
        let bad = || Error::Input(format!("bad coxeter edge {e}"));
        let a = e.as_array().ok_or_else(bad)?;
        let idx = |v: &serde_json::Value| -> Result<usize> {
            let s = v.as_str().ok_or_else(bad)?;
            s.strip_prefix('s').and_then(|k| k.parse::<usize>().ok()).filter(|k| (1..=n).contains(k)).map(|k| k - 1).ok_or_else(bad)
        };
        let (i, j) = (idx(&a[0])?, idx(&a[1])?);
        let mij = a.get(2).and_then(|v| v.as_u64()).ok_or_else(bad)?;
        m[i][j] = mij;
        m[j][i] = mij;
    }
    Ok(m)
}

pub fn coxeter_presentation(m: &[Vec<u64>]) -> Result<Presentation> {
    let n = m.len();
    let gens = (1..=n).map(|i| format!("s{i}")).collect();
    let mut rels: Vec<Word> = Vec::new();
    for i in 0..n {
        rels.push(vec![word::gen(i); 2]);
        for j in i + 1..n {
            rels.push(word::power(&[word::gen(i), word::gen(j)], m[i][j] as i64));
        }
    }
    Presentation::new(gens, rels)
}

fn exact_order(m: &FMat, limit: u64) -> Option<u64> {
    let mut x = m.clone();
    for k in 1..=limit {
        if x.is_identity() {
            return Some(k);
        }
        x = x.mul(m);
    }
    None
}

pub fn check_diagram(mats: &[FMat], form: &FMat, m: &[Vec<u64>]) -> Result<DiagramCheck> {
    let n = mats.len();
    let integral = mats.iter().all(|s| s.is_integral() && s.inverse().is_some_and(|t| t.is_integral()));
    let mut pf = true;
    for s in mats {
        pf &= preserves_form(s, form, FormKind::Bilinear)?;
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let o = exact_order(&mats[i].mul(&mats[j]), 12);
            pairs.push((i, j, m[i][j], o));
        }
    }
    let ok = integral && pf && pairs.iter().all(|&(_, _, want, got)| got == Some(want));
    Ok(DiagramCheck { pairs, integral, preserves_form: pf, ok })
}

pub fn level4_homology(max_cosets: usize, transversal: Transversal) -> Result<O41Report> {
    let (mats, gf) = data::o41_reflections()?;
    let form = gf.form.clone().ok_or_else(|| Error::Input("reflection file lacks the form".into()))?;
    let cm = coxeter_matrix(&gf, mats.len())?;
    let diagram = check_diagram(&mats, &form, &cm)?;
    if !diagram.ok {
        return Err(Error::Certificate("reflection matrices do not match the Coxeter diagram".into()));
    }
    let w = coxeter_presentation(&cm)?;
    let two = factor_rational_prime(RingKind::Rational, 2)?.remove(0);

    // stage 1: level 2
    let hom2 = reduction_hom(&w, &mats, &two, 1)?;
    let t2 = kernel_table(&w, &hom2, 1 << 20)?;
    let index2 = t2.index();
    let mut t2e = coset_enumerate(&w, &t2.subgroup_gens, max_cosets)?;
    if t2e.index() != index2 || !t2e.verify(&w) {
        return Err(Error::Certificate(format!("level-2 enumeration gave index {} against image order {index2}", t2e.index())));
    }
    t2e.standardize();
    let sp2 = reidemeister_schreier(&w, &t2e, transversal)?;
    let g2 = tietze_simplify(&sp2.pres);
    let pos: HashMap<&String, usize> = sp2.pres.gens.iter().enumerate().map(|(i, g)| (g, i)).collect();

    // stage 2: images of the surviving level-2 generators mod 4
    let hom4_w = reduction_hom(&w, &mats, &two, 2)?;
    let images = g2.gens.iter().map(|g| hom4_w.eval(&sp2.gen_words[pos[g]])).collect();
    let hom4 = Homomorphism { ring: hom4_w.ring.clone(), n: 5, images };
    let (elems, _) = regular_action(&hom4, 1 << 20)?;
    let ring = &hom4.ring;
    let minus_i: Vec<u16> = (0..25).map(|k| if k % 6 == 0 { ring.from_int(-1) } else { ring.zero() }).collect();
    let minus_identity_in_image = elems.contains(&minus_i);
    let t4 = kernel_table(&g2, &hom4, 1 << 20)?;
    let sp4 = reidemeister_schreier(&g2, &t4, transversal)?;
    let g4 = tietze_simplify(&sp4.pres);
    let inv = abelianization(&g4);
    Ok(O41Report {
        diagram,
        index_level2: index2,
        enumerated_index_level2: t2e.index(),
        level2_rs_generators: sp2.pres.ngens(),
        level2_generators: g2.ngens(),
        level2_length: g2.total_length(),
        index_level4_in_level2: t4.index(),
        minus_identity_in_image,
        level4_rs_generators: sp4.pres.ngens(),
        level4_generators: g4.ngens(),
        level4_length: g4.total_length(),
        no_2_torsion: !inv.has_p_torsion(2),
        invariants: inv,
    })
}

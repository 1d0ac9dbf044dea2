//! H_1 of principal congruence subgroups: kernel of the reduction map, a
//! Reidemeister-Schreier presentation, Tietze simplification and Smith form.

use serde::Serialize;

use crate::arith::prime::PrimeIdeal;
use crate::congsub::hom::reduction_hom;
use crate::error::{Error, Result};
use crate::fpgroup::{
    abelianization, coset_enumerate, kernel_table, reidemeister_schreier, tietze_simplify, Presentation, Transversal,
};
use crate::linalg::abelian::AbelianInvariants;
use crate::linalg::matrix::FMat;

#[derive(Clone, Debug)]
pub struct HomologyOptions {
    pub max_index: usize,
    pub max_cosets: usize,
    /// Re-derive the index by coset enumeration on the Schreier generators.
    pub cross_check: bool,
    pub transversal: Transversal,
    pub simplify: bool,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            max_index: 50_000,
            max_cosets: crate::fpgroup::DEFAULT_MAX_COSETS,
            cross_check: true,
            transversal: Transversal::Shortlex,
            simplify: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRow {
    pub norm: u64,
    pub prime: String,
    pub index: usize,
    pub enumerated_index: Option<usize>,
    pub rank: usize,
    pub torsion: String,
    pub invariants: AbelianInvariants,
    pub rs_generators: usize,
    pub rs_length: usize,
    pub simplified_generators: usize,
    pub simplified_length: usize,
}

/// Presentation of the level-𝔭 kernel.
pub fn congruence_kernel_presentation(pres: &Presentation, mats: &[FMat], prime: &PrimeIdeal, opts: &HomologyOptions) -> Result<(Presentation, usize, Option<usize>)> {
    let hom = reduction_hom(pres, mats, prime, 1)?;
    let table = kernel_table(pres, &hom, opts.max_index)?;
    let index = table.index();
    let (table, enumerated) = if opts.cross_check {
        let mut t = coset_enumerate(pres, &table.subgroup_gens, opts.max_cosets)?;
        if t.index() != index || !t.verify(pres) {
            return Err(Error::Certificate(format!("coset enumeration gave index {} but the image has order {index}", t.index())));
        }
        t.standardize();
        let idx = t.index();
        (t, Some(idx))
    } else {
        (table, None)
    };
    let sp = reidemeister_schreier(pres, &table, opts.transversal)?;
    Ok((sp.pres, index, enumerated))
}

pub fn congruence_homology(pres: &Presentation, mats: &[FMat], prime: &PrimeIdeal, opts: &HomologyOptions) -> Result<HomologyRow> {
    let (sub, index, enumerated_index) = congruence_kernel_presentation(pres, mats, prime, opts)?;
    let (rs_generators, rs_length) = (sub.ngens(), sub.total_length());
    let simp = if opts.simplify { tietze_simplify(&sub) } else { sub };
    let inv = abelianization(&simp);
    Ok(HomologyRow {
        norm: prime.norm(),
        prime: prime.describe(),
        index,
        enumerated_index,
        rank: inv.free_rank,
        torsion: inv.torsion_order_string(),
        invariants: inv,
        rs_generators,
        rs_length,
        simplified_generators: simp.ngens(),
        simplified_length: simp.total_length(),
    })
}

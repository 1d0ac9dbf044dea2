//! Reduction homomorphisms from matrix groups over number rings to their
//! images over O/𝔭^k.

use crate::arith::prime::PrimeIdeal;
use crate::arith::residue::FiniteRing;
use crate::error::{Error, Result};
use crate::fpgroup::kernel::FiniteImage;
use crate::fpgroup::presentation::Presentation;
use crate::fpgroup::word::{self, Letter};
use crate::linalg::matrix::FMat;

use super::group::RMat;

/// Generators mapped into GL_n(O/𝔭^k).
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub ring: FiniteRing,
    pub n: usize,
    pub images: Vec<RMat>,
}

impl FiniteImage for Homomorphism {
    type Elem = RMat;
    fn identity(&self) -> RMat {
        self.ring.mat_identity(self.n)
    }
    fn ngens(&self) -> usize {
        self.images.len()
    }
    fn mul_gen(&self, e: &RMat, k: usize) -> RMat {
        self.ring.mat_mul(e, &self.images[k], self.n)
    }
}

impl Homomorphism {
    pub fn eval(&self, w: &[Letter]) -> RMat {
        let mut acc = self.identity();
        for &l in w {
            let g = &self.images[word::index(l)];
            let g = if l > 0 { g.clone() } else { self.ring.mat_inverse(g, self.n).expect("invertible image") };
            acc = self.ring.mat_mul(&acc, &g, self.n);
        }
        acc
    }
}

/// Evaluate a word exactly over the number field.
pub fn eval_exact(mats: &[FMat], inverses: &[FMat], w: &[Letter]) -> FMat {
    let n = mats[0].rows;
    let mut acc = FMat::identity(mats[0].kind(), n);
    for &l in w {
        let g = if l > 0 { &mats[word::index(l)] } else { &inverses[word::index(l)] };
        acc = acc.mul(g);
    }
    acc
}

/// Check every relator of `pres` on the matrices exactly; error names the first failure.
pub fn check_relators_exact(pres: &Presentation, mats: &[FMat]) -> Result<Vec<FMat>> {
    if mats.len() != pres.ngens() {
        return Err(Error::Input(format!("{} matrices for {} generators", mats.len(), pres.ngens())));
    }
    let inverses = mats
        .iter()
        .map(|m| m.inverse().ok_or(Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    for (i, r) in pres.rels.iter().enumerate() {
        let v = eval_exact(mats, &inverses, r);
        if !v.is_identity() {
            return Err(Error::RelatorViolation { index: i, detail: format!("{} evaluates to {:?}", pres.word_string(r), v) });
        }
    }
    Ok(inverses)
}

pub fn reduce_matrix(ring: &FiniteRing, m: &FMat) -> Result<RMat> {
    m.data.iter().map(|x| ring.from_field(x)).collect()
}

/// The reduction map on generators, with the relators verified exactly over O and again in the quotient.
pub fn reduction_hom(pres: &Presentation, mats: &[FMat], prime: &PrimeIdeal, k: u32) -> Result<Homomorphism> {
    check_relators_exact(pres, mats)?;
    for m in mats {
        if m.kind() != prime.kind {
            return Err(Error::RingMismatch(format!("{} vs {}", m.kind().name(), prime.kind.name())));
        }
        if !m.is_integral() || !m.inverse().map(|x| x.is_integral()).unwrap_or(false) {
            return Err(Error::Input("generator matrices must be integral with integral inverse".into()));
        }
    }
    let ring = FiniteRing::from_prime(prime, k)?;
    let n = mats[0].rows;
    let images = mats.iter().map(|m| reduce_matrix(&ring, m)).collect::<Result<Vec<_>>>()?;
    let h = Homomorphism { ring, n, images };
    for (i, r) in pres.rels.iter().enumerate() {
        if h.eval(r) != h.identity() {
            return Err(Error::RelatorViolation { index: i, detail: "fails in the quotient".into() });
        }
    }
    Ok(h)
}

/// Entrywise natural map from level k to a coarser level.
pub fn coarsen(fine: &FiniteRing, coarse: &FiniteRing, m: &RMat) -> RMat {
    m.iter().map(|&a| coarse.base.index_of(&fine.base.to_coarser(&coarse.base, &fine.element(a))) as u16).collect()
}

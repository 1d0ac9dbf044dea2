//! Matrices I + tX over O_E/𝔭5^2 = F5[t], t = zeta - 1, that preserve the
//! reduced hermitian form.

use serde::Serialize;

use crate::arith::prime::factor_rational_prime;
use crate::arith::residue::FiniteRing;
use crate::arith::ring::{cyc5, RingKind};
use crate::error::Result;
use crate::instances;
use crate::par;

use super::hom::reduce_matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuCount {
    pub lift_count: u64,
    pub scalar_count: u64,
    pub pu_count: u64,
    /// The reduced form, as residues of h modulo 𝔭5^2 (entries as integers mod 5 since h is congruent to a rational matrix).
    pub reduced_form_matches: bool,
    /// conj(t) = -t in O_E/𝔭5^2, i.e. zeta -> 2 - zeta.
    pub involution_negates_t: bool,
}

pub fn pu_ring() -> Result<FiniteRing> {
    let p5 = factor_rational_prime(RingKind::Cyclotomic5, 5)?.remove(0);
    FiniteRing::from_prime(&p5, 2)
}

pub fn pu_identity_congruent_count() -> Result<PuCount> {
    let ring = pu_ring()?;
    let h = reduce_matrix(&ring, &instances::hermitian_h())?;
    let expected: Vec<u16> = instances::reduced_h_mod_p5sq().iter().flatten().map(|&x| ring.from_int(x)).collect();
    let t = ring.from_element(&cyc5::pi());
    let digits: Vec<u16> = (0..5).map(|a| ring.mul(t, ring.from_int(a))).collect();
    let build = |mut idx: u64| -> [u16; 9] {
        let mut g = [0u16; 9];
        for (k, e) in g.iter_mut().enumerate() {
            let d = digits[(idx % 5) as usize];
            *e = if k % 4 == 0 { ring.add(ring.one, d) } else { d };
            idx /= 5;
        }
        g
    };
    // g^* h g == h, row by row with early exit
    let unitary = |g: &[u16; 9]| {
        let mut a = [0u16; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut x = 0;
                for k in 0..3 {
                    x = ring.add(x, ring.mul(ring.conj(g[k * 3 + i]), h[k * 3 + j]));
                }
                a[i * 3 + j] = x;
            }
        }
        (0..9).all(|ij| {
            let (i, j) = (ij / 3, ij % 3);
            let mut x = 0;
            for k in 0..3 {
                x = ring.add(x, ring.mul(a[i * 3 + k], g[k * 3 + j]));
            }
            x == h[ij]
        })
    };
    let lift_count = par::count_range(5u64.pow(9), |i| unitary(&build(i)));
    let scalar_count = (0..5u16)
        .filter(|&a| {
            let mut g = [0u16; 9];
            for i in 0..3 {
                g[i * 3 + i] = ring.add(ring.one, digits[a as usize]);
            }
            unitary(&g)
        })
        .count() as u64;
    Ok(PuCount {
        lift_count,
        scalar_count,
        pu_count: lift_count / scalar_count.max(1),
        reduced_form_matches: h == expected,
        involution_negates_t: ring.conj(t) == ring.neg(t),
    })
}

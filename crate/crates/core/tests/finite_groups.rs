use rfrs_core::arith::prime::{factor_rational_prime, prime_of_norm};
use rfrs_core::arith::residue::FiniteRing;
use rfrs_core::arith::ring::RingKind;
use rfrs_core::congsub::hom::reduce_matrix;
use rfrs_core::congsub::*;
use rfrs_core::data::bianchi_data;
use rfrs_core::instances;

fn gaussian_prime(norm: u64) -> rfrs_core::arith::prime::PrimeIdeal {
    let p = (2..=norm).find(|p| norm.is_multiple_of(*p)).unwrap();
    prime_of_norm(RingKind::ImagQuadratic(1), p, norm).unwrap()
}

#[test]
fn sl2_closures() {
    for (norm, order) in [(2u64, 6usize), (5, 120)] {
        let prime = gaussian_prime(norm);
        let (pres, mats, _) = bianchi_data(1).unwrap();
        let hom = reduction_hom(&pres, &mats, &prime, 1).unwrap();
        let g = group_closure(&hom.ring, 2, &hom.images, CLOSURE_LIMIT).unwrap();
        assert_eq!(g.order(), order);
    }
}

#[test]
fn level_compatibility() {
    let prime = gaussian_prime(2);
    let (pres, mats, _) = bianchi_data(1).unwrap();
    let fine = reduction_hom(&pres, &mats, &prime, 3).unwrap();
    let coarse = reduction_hom(&pres, &mats, &prime, 1).unwrap();
    for (f, c) in fine.images.iter().zip(&coarse.images) {
        assert_eq!(&hom::coarsen(&fine.ring, &coarse.ring, f), c);
    }
}

#[test]
fn lemma_levels() {
    let prime = gaussian_prime(2);
    // at (1+i) also k = 2j is elementary abelian, since 2 lies in (1+i)^2
    for (j, k) in [(1, 2), (2, 3), (2, 4)] {
        let r = congruence_quotient_check(&Scheme::SL, 2, &prime, j, k, lemma::DEFAULT_BUDGET).unwrap();
        assert!(r.abelian && r.p_group && r.elementary_abelian, "{r:?}");
        assert_eq!(r.exponent, 2);
        // |ker| = N^{3(k-j)} for SL2
        assert_eq!(r.order, 2u64.pow(3 * (k - j)));
    }
    let r = congruence_quotient_check(&Scheme::SL, 2, &prime, 2, 2, lemma::DEFAULT_BUDGET).unwrap();
    assert_eq!(r.order, 1);
}

#[test]
fn lemma_budget_declared() {
    let prime = gaussian_prime(5);
    assert!(matches!(congruence_quotient_check(&Scheme::SL, 2, &prime, 1, 4, 1000), Err(rfrs_core::Error::Budget { .. })));
}

#[test]
fn pu_count() {
    let c = pu_identity_congruent_count().unwrap();
    assert_eq!(c.lift_count, 5u64.pow(6));
    assert_eq!(c.scalar_count, 5);
    assert_eq!(c.pu_count, 5u64.pow(5));
    assert!(c.reduced_form_matches);
    assert!(c.involution_negates_t);
}

#[test]
fn orthogonal_mod2_closure() {
    let two = factor_rational_prime(RingKind::Rational, 2).unwrap().remove(0);
    let ring = FiniteRing::from_prime(&two, 1).unwrap();
    let gens: Vec<RMat> = rfrs_core::data::o41_reflections().unwrap().0.iter().map(|m| reduce_matrix(&ring, m).unwrap()).collect();
    let g = group_closure(&ring, 5, &gens, CLOSURE_LIMIT).unwrap();
    // q0 is degenerate mod 2; the image permutes e1..e5 up to the s5 twist
    assert_eq!(g.order(), 120);
    let alpha = instances::alpha();
    let ai = alpha.inverse().unwrap();
    let conj: Vec<RMat> = rfrs_core::data::o41_reflections().unwrap().0.iter().map(|m| reduce_matrix(&ring, &ai.mul(m).mul(&alpha)).unwrap()).collect();
    assert_eq!(group_closure(&ring, 5, &conj, CLOSURE_LIMIT).unwrap().order(), 120);
}

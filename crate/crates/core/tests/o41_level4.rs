use rfrs_core::congsub::o41::level4_homology;
use rfrs_core::fpgroup::{Transversal, DEFAULT_MAX_COSETS};
use rfrs_core::linalg::abelian::AbelianInvariants;

#[test]
fn level4_abelianization() {
    let r = level4_homology(DEFAULT_MAX_COSETS, Transversal::Shortlex).unwrap();
    assert!(r.diagram.ok);
    assert_eq!(r.index_level2, 120);
    assert_eq!(r.enumerated_index_level2, 120);
    assert_eq!(r.index_level4_in_level2, 1 << 10);
    // so Gamma(4) of W x {+-I} lies in W
    assert!(!r.minus_identity_in_image);
    assert_eq!(r.invariants, AbelianInvariants::free(55));
    assert!(r.no_2_torsion);
}

#[test]
fn level4_transversal_independent() {
    let a = level4_homology(DEFAULT_MAX_COSETS, Transversal::DepthFirst).unwrap();
    let b = level4_homology(DEFAULT_MAX_COSETS, Transversal::ReverseBfs).unwrap();
    assert_eq!(a.invariants, b.invariants);
    assert_eq!(a.invariants.free_rank, 55);
}

//! Finitely presented groups: parsing, coset enumeration, kernels of maps
//! onto finite groups, Reidemeister-Schreier, Tietze moves, abelianization.

pub mod coset;
pub mod kernel;
pub mod parse;
pub mod presentation;
pub mod rs;
pub mod tietze;
pub mod word;

pub use coset::{coset_enumerate, CosetTable, DEFAULT_MAX_COSETS};
pub use kernel::{kernel_generators, kernel_table, regular_action, schreier_generators, FiniteImage};
pub use parse::parse_presentation;
pub use presentation::Presentation;
pub use rs::{reidemeister_schreier, SubgroupPresentation, Transversal};
pub use tietze::tietze_simplify;
pub use word::{Letter, Word};

use crate::linalg::abelian::{abelian_invariants_sparse, AbelianInvariants, SparseRelations};

pub fn relation_matrix(p: &Presentation) -> SparseRelations {
    let mut rel = SparseRelations::new(p.ngens());
    for r in &p.rels {
        let sums = word::exponent_sums(r, p.ngens());
        rel.push_row(sums.iter().enumerate().filter(|(_, &s)| s != 0).map(|(i, &s)| (i as u32, s)).collect());
    }
    rel
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    abelian_invariants_sparse(&relation_matrix(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianizations() {
        let p = parse_presentation("gens a, b; rels [a, b];").unwrap();
        assert_eq!(abelianization(&p).free_rank, 2);
        let s3 = parse_presentation("gens a, b; rels a^2, b^3, (a b)^2;").unwrap();
        let inv = abelianization(&s3);
        assert_eq!((inv.free_rank, inv.torsion_order_string()), (0, "2^1".to_string()));
    }

    #[test]
    fn rs_index_two_in_free_group() {
        // <a | > has no relators: index-2 subgroup <a^2> is free of rank 1
        let p = parse_presentation("gens a, b; rels;").unwrap();
        let t = CosetTable::from_action(&[vec![1, 0], vec![0, 1]], vec![vec![1, 1], vec![2]]).unwrap();
        let sp = reidemeister_schreier(&p, &t, Transversal::Shortlex).unwrap();
        assert_eq!(sp.pres.ngens(), 2 + 1);
        assert_eq!(abelianization(&sp.pres).free_rank, 3);
    }

    #[test]
    fn rs_on_s3_kernel() {
        // derived subgroup of S3 is Z/3
        let s3 = parse_presentation("gens a, b; rels a^2, b^3, (a b)^2;").unwrap();
        let t = coset_enumerate(&s3, &[vec![2]], 100).unwrap();
        assert_eq!(t.index(), 2);
        for tr in [Transversal::Shortlex, Transversal::ReverseBfs, Transversal::DepthFirst] {
            let sp = reidemeister_schreier(&s3, &t, tr).unwrap();
            assert_eq!(sp.pres.ngens(), 2 + 1);
            assert_eq!(sp.pres.rels.len(), 2 * 3);
            let inv = abelianization(&sp.pres);
            assert_eq!((inv.free_rank, inv.torsion_order_string()), (0, "3^1".to_string()));
            let simp = tietze_simplify(&sp.pres);
            assert_eq!(abelianization(&simp), inv);
        }
    }
}

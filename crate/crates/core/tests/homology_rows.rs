use rfrs_core::arith::prime::prime_of_norm;
use rfrs_core::arith::ring::RingKind;
use rfrs_core::data::{bianchi_data, has_data};
use rfrs_core::homology::{congruence_homology, HomologyOptions};

fn row(d: u32, p: u64, norm: u64) -> (usize, String) {
    let (pres, mats, _) = bianchi_data(d).unwrap();
    let prime = prime_of_norm(RingKind::ImagQuadratic(d), p, norm).unwrap();
    let r = congruence_homology(&pres, &mats, &prime, &HomologyOptions::default()).unwrap();
    assert_eq!(Some(r.index), r.enumerated_index);
    (r.rank, r.torsion.to_string())
}

#[test]
fn gaussian_rows() {
    assert_eq!(row(1, 2, 2), (0, "2^5".into()));
    assert_eq!(row(1, 5, 5), (6, "1".into()));
    assert_eq!(row(1, 3, 9), (20, "1".into()));
    assert_eq!(row(1, 13, 13), (42, "1".into()));
}

#[test]
fn ingested_rows() {
    let cases: &[(u32, u64, u64, usize, &str)] = &[
        (2, 2, 2, 3, "2^2"),
        (2, 3, 3, 4, "1"),
        (2, 11, 11, 60, "1"),
        (3, 3, 3, 0, "3^3"),
        (3, 2, 4, 5, "2^1"),
        (3, 7, 7, 8, "1"),
        (7, 2, 2, 3, "2^1"),
        (7, 3, 9, 40, "3^1"),
        (11, 2, 4, 15, "2^2"),
        (11, 5, 5, 12, "1"),
    ];
    for &(d, p, n, rank, tors) in cases {
        if !has_data(&format!("sl2_d{d}.pres")) {
            eprintln!("skipping d={d}: no data");
            continue;
        }
        assert_eq!(row(d, p, n), (rank, tors.to_string()), "d={d} norm {n}");
    }
}

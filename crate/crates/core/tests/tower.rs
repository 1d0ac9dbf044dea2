use rfrs_core::arith::ring::{FieldElement, RingKind};
use rfrs_core::bttree::lattice::act;
use rfrs_core::bttree::models;
use rfrs_core::instances;
use rfrs_core::linalg::abelian::AbelianInvariants;
use rfrs_core::linalg::matrix::FMat;
use rfrs_core::tower::*;

#[test]
fn magic_first_step_and_report() {
    let ex = example("magic").unwrap();
    let steps = build_tower(&ex, 10).unwrap();
    assert_eq!(steps.len(), 11);
    assert!(steps[0].g.is_identity());
    assert_eq!(steps[1].g, models::magic_g1_o7());
    assert_eq!(steps[1].source_i, Some(0));
    let r = tower_report(&ex, &steps, None).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.cofinality_radius, 2);
    // the certificates are local at (w) only for g1 = [[0,2],[1,0]]
    assert!(!steps[1].certificate.as_ref().unwrap().integral_away_from_p);
    let r = tower_report(&ex, &steps, Some(3)).unwrap();
    assert!(!r.passed());
}

#[test]
fn magic_radius_three() {
    let ex = example("magic").unwrap();
    let steps = build_tower(&ex, 21).unwrap();
    let r = tower_report(&ex, &steps, Some(3)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn magic_variant_conjugator_is_global() {
    // [[0, w], [1, 0]] moves v0 to the same neighbour and is a unit away from (w)
    let ex = example("magic").unwrap();
    let k = RingKind::ImagQuadratic(7);
    let w = rfrs_core::arith::ring::RingElement::generator(k).to_field();
    let g = FMat::from_rows(vec![vec![FieldElement::zero(k), w], vec![FieldElement::one(k), FieldElement::zero(k)]]);
    let ctx = &ex.model.ctx;
    assert_eq!(act(ctx, &g, &ex.model.base(0).vertex).unwrap(), steps_vertex(&ex, 1));
    let c = certify_containment(ctx, &g, 2, 1, Direction::Inverse).unwrap();
    assert!(c.pass && c.integral_away_from_p);
}

fn steps_vertex(ex: &TowerExample, n: usize) -> rfrs_core::bttree::Vertex {
    build_tower(ex, n).unwrap()[n].vertex.clone()
}

#[test]
fn pu21_three_steps() {
    let ex = example("pu21").unwrap();
    let steps = build_tower(&ex, 3).unwrap();
    assert_eq!(steps[1].g, instances::g0());
    let r = tower_report(&ex, &steps, None).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for s in &steps[1..] {
        let c = s.certificate.as_ref().unwrap();
        assert_eq!((c.a, c.b, c.nvars), (4, 2, 36));
    }
}

#[test]
fn o41_ten_steps_cover_ball() {
    let ex = example("o41").unwrap();
    let steps = build_tower(&ex, 10).unwrap();
    assert_eq!(steps[1].g, instances::o41_g1());
    let r = tower_report(&ex, &steps, Some(1)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for s in &steps {
        assert!(s.g.det().is_one());
    }
}

#[test]
fn fault_injection_fails_with_step_index() {
    for (name, steps) in [("magic", 10), ("pu21", 3)] {
        let ex = example(name).unwrap();
        let good = build_tower(&ex, steps).unwrap();
        for n in 1..good.len() {
            for (r, c) in [(0usize, 0usize), (1, 0), (0, 1)] {
                let mut bad = good.clone();
                let g = &mut bad[n].g;
                let x = g.get(r, c) + &FieldElement::one(g.kind());
                g.set(r, c, x);
                let rep = tower_report(&ex, &bad, None).unwrap();
                assert!(!rep.passed(), "{name}: corruption at step {n} entry ({r},{c}) not detected");
                assert!(!rep.checks[n].problems.is_empty());
            }
        }
    }
}

#[test]
fn trivial_cases() {
    let ex = example("magic").unwrap();
    let r = tower_report(&ex, &[], None).unwrap();
    assert!(r.passed() && r.cofinality_radius == 0);
    let ctx = &ex.model.ctx;
    let id = FMat::identity(RingKind::ImagQuadratic(7), 2);
    let c = certify_containment(ctx, &id, 3, 2, Direction::Forward).unwrap();
    assert!(c.pass);
    // wrong level direction is refused
    assert!(certify_containment(ctx, &models::magic_g1_o7(), 1, 1, Direction::Inverse).is_err());
    let x0 = ex.model.base(0).vertex;
    let t = transporter_search(ctx, &[models::magic_g1_o7()], (&x0, &x0), (&x0, &x0), 3).unwrap();
    assert!(t.word.is_empty());
}

#[test]
fn transporter_on_pgl2_ball() {
    let m = models::pgl2(2).unwrap();
    let ctx = &m.ctx;
    let x0 = m.base(0).vertex;
    let g1 = FMat::from_ints(RingKind::Rational, &[&[0, 2], &[1, 0]]);
    let x1 = act(ctx, &g1, &x0).unwrap();
    let mut seeds = instances::gl2z_generators();
    seeds.push(g1.clone());
    let t = transporter_search(ctx, &seeds, (&x0, &x1), (&x1, &x0), 1).unwrap();
    assert_eq!(t.word, vec![3]);
    let ball = rfrs_core::bttree::bfs_explore(&m, 0, 2, 100).unwrap();
    for v in ball.vertices.iter().filter(|v| v.depth == 2) {
        let parent = ball.edges.iter().find_map(|&(a, b)| if b == v.id { Some(a) } else { None }).unwrap();
        let p = &ball.vertices[parent].lattice;
        let t = transporter_search(ctx, &seeds, (&x0, &x1), (p, &v.lattice), 3).unwrap();
        assert!(t.word.len() <= 3);
        assert_eq!(act(ctx, &t.element, &x0).unwrap(), *p);
    }
}

#[test]
fn p_torsion() {
    assert!(check_no_p_torsion(&AbelianInvariants::free(55), 2));
    assert!(check_no_p_torsion(&AbelianInvariants::free(60), 5));
    let t = AbelianInvariants { free_rank: 0, torsion: vec![(2.into(), 1); 5] };
    assert!(!check_no_p_torsion(&t, 2));
}

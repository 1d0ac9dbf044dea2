//! Concrete trees: the PGL2 trees, the tree of O(q) at 2 and the tree of SU(h0) at (zeta - 1).

use super::lattice::{canonicalize, LocalContext, Vertex};
use super::star::{StarSeed, TreeModel, VertexType};
use crate::arith::ring::{cyc5, FieldElement, RingElement, RingKind};
use crate::data;
use crate::error::{Error, Result};
use crate::instances;
use crate::linalg::forms::FormKind;
use crate::linalg::matrix::{FMat, Mat};

/// The tree of PGL2(Q_p), one vertex type, stabilizer GL2(Z).
pub fn pgl2(p: u64) -> Result<TreeModel> {
    let ctx = LocalContext::rational(p)?;
    let q = RingKind::Rational;
    let ty = VertexType {
        label: "x0".into(),
        basis: FMat::identity(q, 2),
        stabilizer: instances::gl2z_generators(),
        seed: StarSeed { subspace: vec![vec![0, 1]], target_type: 0, transport: FMat::from_ints(q, &[&[0, p as i64], &[1, 0]]) },
    };
    TreeModel::build(&format!("pgl2(Q_{p})"), ctx, None, vec![ty])
}

/// Generators of SL2(O_7) (with -I) together with diag(-1, 1), fixing the standard lattice.
pub fn o7_stabilizer() -> Vec<FMat> {
    let k = RingKind::ImagQuadratic(7);
    let w = RingElement::generator(k).to_field();
    let (o, z) = (FieldElement::one(k), FieldElement::zero(k));
    let u = Mat::from_rows(vec![vec![o.clone(), w], vec![z.clone(), o.clone()]]);
    vec![
        FMat::from_ints(k, &[&[0, -1], &[1, 0]]),
        FMat::from_ints(k, &[&[1, 1], &[0, 1]]),
        u,
        FMat::from_ints(k, &[&[-1, 0], &[0, 1]]),
    ]
}

/// The tree of PGL2 over the completion of O_7 at (w), w^2 = w - 2, with the
/// conjugator g1 = [[0, 2], [1, 0]] as the transport to the seed neighbour.
pub fn magic() -> Result<TreeModel> {
    let k = RingKind::ImagQuadratic(7);
    let w = RingElement::generator(k);
    let prime = crate::arith::prime::factor_rational_prime(k, 2)?
        .into_iter()
        .find(|p| p.valuation(&w).unwrap_or(0) > 0)
        .ok_or_else(|| Error::Input("no prime over 2 containing w".into()))?;
    let ctx = LocalContext::new(prime)?;
    let ty = VertexType {
        label: "x0".into(),
        basis: FMat::identity(k, 2),
        stabilizer: o7_stabilizer(),
        seed: StarSeed { subspace: vec![vec![0, 1]], target_type: 0, transport: magic_g1_o7() },
    };
    TreeModel::build("magic", ctx, None, vec![ty])
}

pub fn magic_g1_o7() -> FMat {
    instances::embed(&instances::magic_g1(), RingKind::ImagQuadratic(7))
}

/// Stabilizer of L0 = Z^5 in O(q): the reflections of O(4,1; Z) moved to q
/// coordinates, and -I.
pub fn o41_stabilizer() -> Result<Vec<FMat>> {
    let (refl, _) = data::o41_reflections()?;
    let a = instances::alpha();
    let ai = a.inverse().ok_or(Error::Singular)?;
    let mut gens: Vec<FMat> = refl.iter().map(|s| ai.mul(s).mul(&a)).collect();
    gens.push(FMat::identity(RingKind::Rational, 5).neg());
    Ok(gens)
}

/// L_r = <2^ceil(r) e1, e2, e3, e4, 2^ceil(-r) e5> for r = k/2.
pub fn oq_apartment_vertex(ctx: &LocalContext, k: i64) -> Result<Vertex> {
    let two = |e: i64| FieldElement::from_int(RingKind::Rational, 2).pow(e as i32);
    let one = FieldElement::one(RingKind::Rational);
    let up = k.div_euclid(2) + k.rem_euclid(2);
    let down = (-k).div_euclid(2) + (-k).rem_euclid(2);
    canonicalize(ctx, &FMat::diag(vec![two(up), one.clone(), one.clone(), one, two(down)]))
}

fn with_edge_stabilizer(mut model: TreeModel, from: usize, to: usize) -> Result<TreeModel> {
    let extra = model.edge_stabilizer(from, 0)?;
    let mut types = std::mem::take(&mut model.types);
    for g in extra {
        if !types[to].stabilizer.contains(&g) {
            types[to].stabilizer.push(g);
        }
    }
    TreeModel::build(&model.name, model.ctx, model.form, types)
}

/// The tree of O(q) over Q_2 containing L0 (type 0) and L_{1/2} (type 1).
pub fn oq_tree() -> Result<TreeModel> {
    let q = RingKind::Rational;
    let ctx = LocalContext::rational(2)?;
    let id = FMat::identity(q, 5);
    let half = FMat::from_ints(q, &[&[2, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
    let x0 = VertexType {
        label: "x0".into(),
        basis: id.clone(),
        stabilizer: o41_stabilizer()?,
        seed: StarSeed {
            subspace: vec![vec![0, 1, 0, 0, 0], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]],
            target_type: 1,
            transport: id.clone(),
        },
    };
    let xh = VertexType {
        label: "x1/2".into(),
        basis: half,
        stabilizer: vec![instances::o41_g1(), instances::o41_m()],
        seed: StarSeed { subspace: vec![vec![1, 0, 0, 0, 0]], target_type: 0, transport: id },
    };
    let model = TreeModel::build("oq", ctx, Some((instances::q_form(), FormKind::Bilinear)), vec![x0, xh])?;
    with_edge_stabilizer(model, 0, 1)
}

/// <pi^ceil(k/2) e1, e2, pi^ceil(-k/2) e3>: k = 0 is phi0, k = 1 is psi.
pub fn su_tree_vertex(ctx: &LocalContext, k: i64) -> Result<Vertex> {
    let e = RingKind::Cyclotomic5;
    let up = k.div_euclid(2) + k.rem_euclid(2);
    let down = (-k).div_euclid(2) + (-k).rem_euclid(2);
    canonicalize(ctx, &FMat::diag(vec![ctx.pi_pow(up), FieldElement::one(e), ctx.pi_pow(down)]))
}

/// The tree of SU(h0) over the completion of Z[zeta5] at pi = zeta - 1.
pub fn su_tree() -> Result<TreeModel> {
    let e = RingKind::Cyclotomic5;
    let ctx = LocalContext::of_norm(e, 5, 5)?;
    let id = FMat::identity(e, 3);
    let pi = cyc5::pi().to_field();
    let psi = FMat::diag(vec![pi, FieldElement::one(e), FieldElement::one(e)]);
    let phi0 = VertexType {
        label: "phi0".into(),
        basis: id.clone(),
        stabilizer: instances::su_h0_generators(),
        seed: StarSeed { subspace: vec![vec![0, 1, 0], vec![0, 0, 1]], target_type: 1, transport: id.clone() },
    };
    let psi = VertexType {
        label: "psi".into(),
        basis: psi,
        stabilizer: vec![instances::g0()],
        seed: StarSeed { subspace: vec![vec![1, 0, 0]], target_type: 0, transport: id },
    };
    let model = TreeModel::build("su", ctx, Some((instances::hermitian_h0(), FormKind::Hermitian)), vec![phi0, psi])?;
    with_edge_stabilizer(model, 0, 1)
}

pub fn by_name(name: &str) -> Result<TreeModel> {
    match name {
        "oq" | "o41" => oq_tree(),
        "su" | "pu21" => su_tree(),
        "magic" => magic(),
        s if s.starts_with("pgl2-") => {
            let p: u64 = s[5..].parse().map_err(|_| Error::Input(format!("bad prime in {s}")))?;
            pgl2(p)
        }
        _ => Err(Error::Input(format!("unknown tree model {name} (oq, su, magic, pgl2-<p>)"))),
    }
}

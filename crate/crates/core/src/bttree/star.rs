//! Trees embedded in the building of PGL_n, described by their vertex types.
//! Each type has a base lattice L_t with basis B_t, global generators of
//! (part of) its stabilizer, and one seed neighbour pi L_t + lift(S) with a
//! global element carrying the base of the neighbour's type onto it. The star
//! of L_t is the orbit of S under the reduced stabilizer.

use serde::Serialize;

use super::lattice::{canonicalize, gl_adjacent, LocalContext, Vertex};
use crate::arith::residue::FiniteRing;
use crate::congsub::group::RMat;
use crate::congsub::orbit::{act_subspace, orbit, rref, Orbit, Subspace};
use crate::error::{Error, Result};
use crate::linalg::forms::{preserves_form, FormKind};
use crate::linalg::matrix::FMat;

pub const ORBIT_LIMIT: usize = 100_000;

#[derive(Clone, Debug)]
pub struct StarSeed {
    /// Rows span a subspace of L_t / pi L_t in the coordinates of B_t.
    pub subspace: Vec<Vec<i64>>,
    pub target_type: usize,
    /// tau with tau(base of target type) = pi L_t + lift(subspace).
    pub transport: FMat,
}

#[derive(Clone, Debug)]
pub struct VertexType {
    pub label: String,
    pub basis: FMat,
    pub stabilizer: Vec<FMat>,
    pub seed: StarSeed,
}

#[derive(Clone, Debug)]
pub struct StarEdge {
    pub subspace: Subspace,
    /// Stabilizer generator indices, applied left to right.
    pub word: Vec<usize>,
    pub target_type: usize,
    /// Global element carrying the base of `target_type` onto this neighbour.
    pub transport: FMat,
    pub vertex: Vertex,
}

#[derive(Clone, Debug)]
pub struct Star {
    pub vertex: Vertex,
    pub edges: Vec<StarEdge>,
    pub reduced_gens: Vec<RMat>,
    pub orbit: Orbit<Subspace>,
}

impl Star {
    pub fn valence(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeVertex {
    pub vertex: Vertex,
    pub ty: usize,
    #[serde(skip)]
    pub transport: FMat,
}

#[derive(Debug)]
pub struct TreeModel {
    pub name: String,
    pub ctx: LocalContext,
    pub form: Option<(FMat, FormKind)>,
    pub types: Vec<VertexType>,
    pub stars: Vec<Star>,
    pub field: FiniteRing,
}

/// Product g_{w_k} ... g_{w_1} for a word applied left to right to a point.
pub fn word_element(gens: &[FMat], word: &[usize], n: usize) -> FMat {
    let kind = gens.first().map(|g| g.kind()).unwrap_or(crate::arith::ring::RingKind::Rational);
    let mut h = FMat::identity(kind, n);
    for &s in word {
        h = gens[s].mul(&h);
    }
    h
}

/// The matrix of g in the basis B, reduced modulo pi; g must stabilize the lattice.
pub fn reduce_in_basis(field: &FiniteRing, basis: &FMat, g: &FMat) -> Result<RMat> {
    let binv = basis.inverse().ok_or(Error::Singular)?;
    let a = binv.mul(g).mul(basis);
    let ainv = a.inverse().ok_or(Error::Singular)?;
    for x in a.data.iter().chain(&ainv.data) {
        if field.base.prime.valuation_field(x).is_some_and(|v| v < 0) {
            return Err(Error::Input("element does not stabilize the lattice".into()));
        }
    }
    a.data.iter().map(|x| field.from_field(x)).collect()
}

fn lift_subspace(field: &FiniteRing, s: &Subspace) -> Vec<Vec<crate::arith::ring::FieldElement>> {
    s.iter().map(|row| row.iter().map(|&x| field.lift(x).to_field()).collect()).collect()
}

/// pi L + lift(S), as a generating matrix in global coordinates.
pub fn neighbor_lattice(ctx: &LocalContext, field: &FiniteRing, basis: &FMat, s: &Subspace) -> FMat {
    let n = basis.rows;
    let mut cols: Vec<Vec<crate::arith::ring::FieldElement>> = (0..n).map(|c| basis.col(c).iter().map(|x| x * &ctx.pi).collect()).collect();
    for v in lift_subspace(field, s) {
        let col: Vec<_> = (0..n)
            .map(|r| (0..n).fold(crate::arith::ring::FieldElement::zero(ctx.kind()), |acc, j| &acc + &(basis.get(r, j) * &v[j])))
            .collect();
        cols.push(col);
    }
    FMat::from_cols(cols)
}

impl TreeModel {
    pub fn build(name: &str, ctx: LocalContext, form: Option<(FMat, FormKind)>, types: Vec<VertexType>) -> Result<Self> {
        let field = FiniteRing::from_prime(&ctx.prime, 1)?;
        if let Some((f, kind)) = &form {
            for t in &types {
                for (i, g) in t.stabilizer.iter().chain(std::iter::once(&t.seed.transport)).enumerate() {
                    if !preserves_form(g, f, *kind)? {
                        return Err(Error::Input(format!("{name}: element {i} for type {} does not preserve the form", t.label)));
                    }
                }
            }
        }
        let mut model = TreeModel { name: name.into(), ctx, form, types, stars: vec![], field };
        for t in 0..model.types.len() {
            let star = model.compute_star(t)?;
            model.stars.push(star);
        }
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.types[0].basis.rows
    }

    pub fn base(&self, t: usize) -> TreeVertex {
        TreeVertex { vertex: self.stars[t].vertex.clone(), ty: t, transport: FMat::identity(self.ctx.kind(), self.dim()) }
    }

    pub fn valences(&self) -> Vec<usize> {
        self.stars.iter().map(|s| s.valence()).collect()
    }

    fn compute_star(&self, t: usize) -> Result<Star> {
        let ty = &self.types[t];
        let n = self.dim();
        let f = &self.field;
        let vertex = canonicalize(&self.ctx, &ty.basis)?;
        let reduced_gens: Vec<RMat> = ty.stabilizer.iter().map(|g| reduce_in_basis(f, &ty.basis, g)).collect::<Result<_>>()?;
        let seed_rows: Vec<Vec<u16>> = ty.seed.subspace.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
        let seed = rref(f, &seed_rows);
        let orb = orbit(seed, reduced_gens.len(), |s, k| act_subspace(f, &reduced_gens[k], n, s), ORBIT_LIMIT)?;
        let target = &self.types[ty.seed.target_type];
        let mut edges = Vec::with_capacity(orb.len());
        for i in 0..orb.len() {
            let word = orb.word_to(i);
            let h = word_element(&ty.stabilizer, &word, n);
            let transport = h.mul(&ty.seed.transport);
            let via_transport = canonicalize(&self.ctx, &transport.mul(&target.basis))?;
            let direct = canonicalize(&self.ctx, &neighbor_lattice(&self.ctx, f, &ty.basis, &orb.points[i]))?;
            if via_transport != direct {
                return Err(Error::Certificate(format!("{}: star edge {i} of type {} disagrees with its transport", self.name, ty.label)));
            }
            if !gl_adjacent(&self.ctx, &vertex, &direct)? {
                return Err(Error::Certificate(format!("{}: star edge {i} of type {} is not adjacent", self.name, ty.label)));
            }
            edges.push(StarEdge { subspace: orb.points[i].clone(), word, target_type: ty.seed.target_type, transport, vertex: direct });
        }
        Ok(Star { vertex, edges, reduced_gens, orbit: orb })
    }

    /// Neighbours of a vertex given with a transport from its type's base.
    pub fn neighbors(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>> {
        self.stars[v.ty]
            .edges
            .iter()
            .map(|e| {
                let h = v.transport.mul(&e.transport);
                let vertex = canonicalize(&self.ctx, &h.mul(&self.types[e.target_type].basis))?;
                Ok(TreeVertex { vertex, ty: e.target_type, transport: h })
            })
            .collect()
    }

    /// Global generators of the stabilizer of star edge `edge` of type `t`, as
    /// Schreier generators of the orbit (identity elements dropped).
    pub fn edge_stabilizer(&self, t: usize, edge: usize) -> Result<Vec<FMat>> {
        let ty = &self.types[t];
        let star = &self.stars[t];
        let n = self.dim();
        let ngens = ty.stabilizer.len();
        // re-root the orbit at the requested point
        let f = &self.field;
        let gens = &star.reduced_gens;
        let orb = orbit(star.orbit.points[edge].clone(), ngens, |s, k| act_subspace(f, &gens[k], n, s), ORBIT_LIMIT)?;
        let mut out: Vec<FMat> = Vec::new();
        for sw in orb.schreier_words(ngens) {
            // u_back^{-1} g_s u_forward fixes the start point
            let fwd = word_element(&ty.stabilizer, &sw.forward, n);
            let back = word_element(&ty.stabilizer, &sw.back, n);
            let g = back.inverse().ok_or(Error::Singular)?.mul(&ty.stabilizer[sw.gen]).mul(&fwd);
            if !g.is_identity() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Orbit of a vector (rather than a subspace) of L_t / pi L_t under the reduced stabilizer.
    pub fn vector_orbit(&self, t: usize, v: &[i64]) -> Result<Vec<Vec<u16>>> {
        let n = self.dim();
        let f = &self.field;
        let gens = &self.stars[t].reduced_gens;
        let start: Vec<u16> = v.iter().map(|&x| f.from_int(x)).collect();
        let orb = orbit(
            start,
            gens.len(),
            |x, k| (0..n).map(|i| (0..n).fold(0u16, |acc, j| f.add(acc, f.mul(gens[k][i * n + j], x[j])))).collect(),
            ORBIT_LIMIT,
        )?;
        Ok(orb.points)
    }
}

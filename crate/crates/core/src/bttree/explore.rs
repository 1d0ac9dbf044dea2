use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::lattice::gl_adjacent;
use super::star::{TreeModel, TreeVertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ExploredVertex {
    pub id: usize,
    pub key: String,
    pub ty: usize,
    pub type_label: String,
    pub depth: usize,
    pub lattice: super::lattice::Vertex,
}

#[derive(Clone, Debug, Serialize)]
pub struct Exploration {
    pub model: String,
    pub radius: usize,
    pub vertices: Vec<ExploredVertex>,
    pub edges: Vec<(usize, usize)>,
    /// |E| = |V| - 1 and connected.
    pub is_tree: bool,
    /// Every vertex strictly inside the ball has degree equal to its type's valence.
    pub regular: bool,
    pub valences: Vec<usize>,
    #[serde(skip)]
    pub transports: Vec<TreeVertex>,
}

/// Ball of the given radius around the base vertex of type `start_type`.
pub fn bfs_explore(model: &TreeModel, start_type: usize, radius: usize, budget: usize) -> Result<Exploration> {
    let start = model.base(start_type);
    let mut index: HashMap<super::lattice::Vertex, usize> = HashMap::from([(start.vertex.clone(), 0)]);
    let mut verts = vec![start];
    let mut depth = vec![0usize];
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut degree_ok = true;
    let mut i = 0;
    while i < verts.len() {
        if depth[i] == radius {
            i += 1;
            continue;
        }
        let nbrs = model.neighbors(&verts[i])?;
        let distinct: BTreeSet<_> = nbrs.iter().map(|n| n.vertex.clone()).collect();
        if distinct.len() != model.stars[verts[i].ty].valence() {
            degree_ok = false;
        }
        for n in nbrs {
            if !gl_adjacent(&model.ctx, &verts[i].vertex, &n.vertex)? {
                return Err(Error::Certificate(format!("{}: non-adjacent neighbour at vertex {i}", model.name)));
            }
            let j = match index.get(&n.vertex) {
                Some(&j) => j,
                None => {
                    if verts.len() >= budget {
                        return Err(Error::budget("tree vertices", budget as u64));
                    }
                    let j = verts.len();
                    index.insert(n.vertex.clone(), j);
                    depth.push(depth[i] + 1);
                    verts.push(n);
                    j
                }
            };
            edges.insert((i.min(j), i.max(j)));
        }
        i += 1;
    }
    let is_tree = edges.len() + 1 == verts.len() && edges.iter().all(|&(a, b)| a != b && depth[a].abs_diff(depth[b]) == 1);
    let vertices = verts
        .iter()
        .enumerate()
        .map(|(id, v)| ExploredVertex {
            id,
            key: v.vertex.key(),
            ty: v.ty,
            type_label: model.types[v.ty].label.clone(),
            depth: depth[id],
            lattice: v.vertex.clone(),
        })
        .collect();
    Ok(Exploration {
        model: model.name.clone(),
        radius,
        vertices,
        edges: edges.into_iter().collect(),
        is_tree,
        regular: degree_ok,
        valences: model.valences(),
        transports: verts,
    })
}

impl Exploration {
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"{}\" {{\n", self.model);
        for v in &self.vertices {
            let _ = writeln!(s, "  n{} [label=\"{} d{}\"];", v.id, v.type_label, v.depth);
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn count_by_type(&self) -> Vec<usize> {
        let mut out = vec![0; self.valences.len()];
        for v in &self.vertices {
            out[v.ty] += 1;
        }
        out
    }
}

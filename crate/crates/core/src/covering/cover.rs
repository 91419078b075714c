use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Skeleton, WeightedGraph};
use crate::rational::Rational;
use crate::tree::MetricTree;

use super::fiber::FiberData;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVertex {
    pub base: usize,
    pub copy: u64,
    pub weight: u64,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdge {
    pub base: usize,
    pub copy: u64,
    pub source: usize,
    pub target: usize,
    pub length: Rational,
    pub inertia: u64,
}

/// Preimage of an infinite leaf (a point of `P^1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLeaf {
    pub point: usize,
    pub copy: u64,
    pub vertex: usize,
    pub inertia: u64,
}

/// The unstabilized cover of the base tree, with its map to the tree
/// recorded by the `base` fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringGraph {
    pub n: u64,
    pub vertices: Vec<CoverVertex>,
    pub edges: Vec<CoverEdge>,
    pub leaves: Vec<CoverLeaf>,
}

impl CoveringGraph {
    /// The finite part as a weighted metric graph.
    pub fn to_graph(&self) -> Skeleton {
        WeightedGraph {
            weights: self.vertices.iter().map(|v| v.weight).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    source: e.source,
                    target: e.target,
                    length: e.length.clone(),
                })
                .collect(),
        }
    }

    /// Drops infinite leaves and reduces to the minimal model.
    pub fn stabilize(&self) -> Skeleton {
        self.to_graph().stabilize()
    }
}

/// Glues the fibers over the tree: copy `j` of an edge over `{u, v}` meets
/// copy `j mod g_u` of `u` and `j mod g_v` of `v`, and has length
/// `l(e) / i_e`. Points hang off copy `j mod g_v` the same way.
pub fn assemble_covering(tree: &MetricTree, fibers: &FiberData) -> Result<CoveringGraph> {
    let mut offset = Vec::with_capacity(tree.vertex_count());
    let mut vertices = Vec::new();
    for (v, f) in fibers.vertices.iter().enumerate() {
        offset.push(vertices.len());
        for copy in 0..f.count {
            vertices.push(CoverVertex {
                base: v,
                copy,
                weight: f.weight,
                degree: f.degree,
            });
        }
    }
    let at = |v: usize, j: u64| offset[v] + (j % fibers.vertices[v].count) as usize;
    let mut edges = Vec::new();
    for (e, (edge, f)) in tree.edges().iter().zip(&fibers.edges).enumerate() {
        for (end, v) in [("source", edge.source), ("target", edge.target)] {
            if f.count % fibers.vertices[v].count != 0 {
                return Err(Error::InvalidCoveringData(format!(
                    "{end} of edge {e} has {} preimages, not dividing {}",
                    fibers.vertices[v].count, f.count
                )));
            }
        }
        let length = &edge.length / &Rational::from_integer(f.inertia as i64);
        for j in 0..f.count {
            edges.push(CoverEdge {
                base: e,
                copy: j,
                source: at(edge.source, j),
                target: at(edge.target, j),
                length: length.clone(),
                inertia: f.inertia,
            });
        }
    }
    let mut leaves = Vec::new();
    for (&p, f) in &fibers.points {
        let v = *tree.leaves().get(&p).ok_or(Error::UnknownPoint(p))?;
        for j in 0..f.count {
            leaves.push(CoverLeaf {
                point: p,
                copy: j,
                vertex: at(v, j),
                inertia: f.inertia,
            });
        }
    }
    let cover = CoveringGraph {
        n: fibers.n,
        vertices,
        edges,
        leaves,
    };
    let components = cover.to_graph().component_count();
    if components != 1 {
        return Err(Error::DisconnectedCover { components });
    }
    Ok(cover)
}

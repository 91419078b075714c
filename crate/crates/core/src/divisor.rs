//! Divisors on the base tree and the slopes of the rational function whose
//! Laplacian they are.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::MetricTree;

/// Integer divisor on the vertices of a tree, together with the orders of the
/// points it was specialized from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDivisor {
    pub coefficients: Vec<i64>,
    pub point_orders: BTreeMap<usize, i64>,
}

impl TreeDivisor {
    pub fn degree(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

/// Slopes of `ψ` with `Δψ = div`. `edge_slope` holds magnitudes indexed by
/// tree edge; `signed` holds the sum of the divisor over the component of
/// `T − e` away from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeAssignment {
    pub edge_slope: Vec<u64>,
    pub leaf_order: BTreeMap<usize, i64>,
    #[serde(skip)]
    pub(crate) signed: Vec<i64>,
}

/// Pushes the point multiplicities to the vertices the points are attached to.
pub fn specialize_divisor(tree: &MetricTree, multiplicities: &BTreeMap<usize, i64>) -> Result<TreeDivisor> {
    let degree: i64 = multiplicities.values().sum();
    if degree != 0 {
        return Err(Error::DegreeNonZero { degree });
    }
    let mut coefficients = vec![0; tree.vertex_count()];
    for (&p, &m) in multiplicities {
        let v = *tree.leaves().get(&p).ok_or(Error::UnknownPoint(p))?;
        coefficients[v] += m;
    }
    Ok(TreeDivisor {
        coefficients,
        point_orders: multiplicities.clone(),
    })
}

/// Slope along every edge: the divisor summed over the side not containing
/// the root.
pub fn edge_slopes(tree: &MetricTree, div: &TreeDivisor) -> SlopeAssignment {
    let (parent, order) = tree.parent_edges();
    let mut subtree: Vec<i64> = div.coefficients.clone();
    let mut signed = vec![0; tree.edges().len()];
    for &v in order.iter().rev() {
        if let Some(e) = parent[v] {
            signed[e] = subtree[v];
            let up = tree.edges()[e].other(v);
            subtree[up] += subtree[v];
        }
    }
    SlopeAssignment {
        edge_slope: signed.iter().map(|s| s.unsigned_abs()).collect(),
        leaf_order: div.point_orders.clone(),
        signed,
    }
}

/// Recovers the divisor from signed slopes: at `v` it is the slope on the
/// parent edge minus the slopes on the child edges.
pub fn reconstruct_divisor(tree: &MetricTree, slopes: &SlopeAssignment) -> Vec<i64> {
    let (parent, _) = tree.parent_edges();
    let mut out = vec![0; tree.vertex_count()];
    for (e, s) in slopes.signed.iter().enumerate() {
        let edge = &tree.edges()[e];
        let child = if parent[edge.source] == Some(e) {
            edge.source
        } else {
            edge.target
        };
        out[child] += s;
        out[edge.other(child)] -= s;
    }
    out
}

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::divisor::SlopeAssignment;
use crate::error::{Error, Result};
use crate::tree::MetricTree;

/// Fiber over a base edge or point: `count` preimages, each with
/// ramification index `inertia`; `count · inertia = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub count: u64,
    pub inertia: u64,
}

impl Fiber {
    /// Fiber of a direction along which `f` (or `ψ`) has order `c`.
    pub fn from_order(c: i64, n: u64) -> Fiber {
        let count = c.unsigned_abs().gcd(&n);
        Fiber {
            count,
            inertia: n / count,
        }
    }
}

/// Fiber over a base vertex: `count` preimages of local degree `degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFiber {
    pub count: u64,
    pub degree: u64,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberData {
    pub n: u64,
    pub edges: Vec<Fiber>,
    pub points: BTreeMap<usize, Fiber>,
    pub vertices: Vec<VertexFiber>,
}

/// Weight of each preimage of a vertex from the local Riemann–Hurwitz
/// condition over a genus-zero vertex:
/// `2w − 2 = −2d + Σ_item (d / i)(i − 1)`.
pub fn vertex_weight(degree: u64, inertias: &[u64]) -> Result<u64> {
    let mut twice: i64 = 2 - 2 * degree as i64;
    for &i in inertias {
        if i == 0 || !degree.is_multiple_of(i) {
            return Err(Error::InvalidCoveringData(format!(
                "inertia {i} does not divide the local degree {degree}"
            )));
        }
        twice += ((degree / i) * (i - 1)) as i64;
    }
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InvalidCoveringData(format!(
            "local Riemann-Hurwitz gives weight {twice}/2 at a vertex of degree {degree}"
        )));
    }
    Ok((twice / 2) as u64)
}

/// Assembles vertex fibers from the edge and point fibers of a tree:
/// `g_v` is the gcd of the counts of everything incident to `v`.
pub fn vertex_fibers(
    tree: &MetricTree,
    n: u64,
    edges: &[Fiber],
    points: &BTreeMap<usize, Fiber>,
) -> Result<Vec<VertexFiber>> {
    (0..tree.vertex_count())
        .map(|v| {
            let items: Vec<Fiber> = tree
                .incident_edges(v)
                .iter()
                .map(|&e| edges[e])
                .chain(tree.points_at(v).filter_map(|p| points.get(&p).copied()))
                .collect();
            let count = items.iter().fold(n, |g, f| g.gcd(&f.count));
            let degree = n / count;
            let inertias: Vec<u64> = items.iter().map(|f| f.inertia).collect();
            Ok(VertexFiber {
                count,
                degree,
                weight: vertex_weight(degree, &inertias)?,
            })
        })
        .collect()
}

/// Fiber counts and inertia orders of the `Z/n` cover over every edge,
/// point and vertex of the tree.
pub fn fiber_data(n: u64, slopes: &SlopeAssignment, tree: &MetricTree) -> Result<FiberData> {
    let edges: Vec<Fiber> = slopes
        .edge_slope
        .iter()
        .map(|&s| Fiber::from_order(s as i64, n))
        .collect();
    let points: BTreeMap<usize, Fiber> = slopes
        .leaf_order
        .iter()
        .map(|(&p, &c)| (p, Fiber::from_order(c, n)))
        .collect();
    let vertices = vertex_fibers(tree, n, &edges, &points)?;
    Ok(FiberData {
        n,
        edges,
        points,
        vertices,
    })
}

use std::collections::BTreeMap;

use crate::error::Result;
use crate::rational::Rational;
use crate::valuation::{pairwise_valuations, ValuedPoint};

use super::metric::{MetricTree, TreeEdge};

/// Nested grouping of the affine points by common reduction.
enum Cluster {
    Point(usize),
    Ball { depth: i64, parts: Vec<Cluster> },
}

fn cluster(members: Vec<usize>, v: &[Vec<i64>]) -> Cluster {
    if members.len() == 1 {
        return Cluster::Point(members[0]);
    }
    let depth = members
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| members[a + 1..].iter().map(move |&j| v[i][j]))
        .min()
        .expect("at least two members");
    // ultrametric: "v > depth" is an equivalence relation on the ball
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &i in &members {
        match parts.iter_mut().find(|p| v[p[0]][i] > depth) {
            Some(p) => p.push(i),
            None => parts.push(vec![i]),
        }
    }
    Cluster::Ball {
        depth,
        parts: parts.into_iter().map(|p| cluster(p, v)).collect(),
    }
}

struct Builder {
    vertex_count: usize,
    edges: Vec<TreeEdge>,
    leaves: BTreeMap<usize, usize>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Emits the vertex for a ball and everything below it.
    fn emit(&mut self, depth: i64, parts: &[Cluster]) -> usize {
        let v = self.vertex();
        for part in parts {
            match part {
                Cluster::Point(p) => {
                    self.leaves.insert(*p, v);
                }
                Cluster::Ball { depth: d, parts } => {
                    let w = self.emit(*d, parts);
                    self.edges.push(TreeEdge {
                        source: v,
                        target: w,
                        length: Rational::from_integer(d - depth),
                    });
                }
            }
        }
        v
    }
}

/// The separating tree of a point set: one vertex per ball in which the
/// points split into at least three directions, edges weighted by depth
/// differences, each point attached where it separates from the rest.
/// ∞ attaches at the outermost vertex, which is also the root.
pub fn separating_tree(points: &[ValuedPoint]) -> Result<MetricTree> {
    let v = pairwise_valuations(points)?;
    if points.len() <= 2 {
        return Ok(MetricTree::single_vertex(0..points.len()));
    }
    let infinity = points.iter().position(ValuedPoint::is_infinity);
    let affine: Vec<usize> = (0..points.len()).filter(|&i| Some(i) != infinity).collect();
    let mut b = Builder {
        vertex_count: 0,
        edges: Vec::new(),
        leaves: BTreeMap::new(),
    };
    let (depth, parts) = match cluster(affine, &v) {
        Cluster::Ball { depth, parts } => (depth, parts),
        Cluster::Point(_) => unreachable!("at least two affine points"),
    };
    let root = if let Some(inf) = infinity {
        let r = b.emit(depth, &parts);
        b.leaves.insert(inf, r);
        r
    } else if parts.len() >= 3 {
        b.emit(depth, &parts)
    } else {
        // the outer ball has only two directions: no vertex there
        match (&parts[0], &parts[1]) {
            (Cluster::Point(p), Cluster::Ball { depth, parts })
            | (Cluster::Ball { depth, parts }, Cluster::Point(p)) => {
                let r = b.emit(*depth, parts);
                b.leaves.insert(*p, r);
                r
            }
            (Cluster::Ball { depth: da, parts: pa }, Cluster::Ball { depth: db, parts: pb }) => {
                let a = b.emit(*da, pa);
                let c = b.emit(*db, pb);
                b.edges.push(TreeEdge {
                    source: a,
                    target: c,
                    length: Rational::from_integer((da - depth) + (db - depth)),
                });
                a
            }
            (Cluster::Point(_), Cluster::Point(_)) => unreachable!("three or more points"),
        }
    };
    MetricTree::new(b.vertex_count, b.edges, b.leaves, root)
}

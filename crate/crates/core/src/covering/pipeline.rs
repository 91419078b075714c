use serde::{Deserialize, Serialize};

use crate::divisor::{edge_slopes, reconstruct_divisor, specialize_divisor, SlopeAssignment, TreeDivisor};
use crate::error::{Error, Result};
use crate::graph::Skeleton;
use crate::rational::Rational;
use crate::tree::{separating_tree, MetricTree};

use super::config::{branch_points, rh_genus, BranchConfiguration};
use super::cover::{assemble_covering, CoveringGraph};
use super::fiber::{fiber_data, FiberData};

/// Outcome of one invariant check run on the pipeline output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Every intermediate artifact of the forward computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub configuration: BranchConfiguration,
    pub branch_points: Vec<usize>,
    pub tree: MetricTree,
    pub divisor: TreeDivisor,
    pub slopes: SlopeAssignment,
    pub fibers: FiberData,
    pub covering: CoveringGraph,
    pub skeleton: Skeleton,
    pub genus: u64,
    pub checks: Vec<Check>,
}

/// Tree, divisor, slopes, fibers, gluing and stabilization, followed by the
/// invariant checks. A failed check is an internal error.
pub fn compute_skeleton(cfg: &BranchConfiguration) -> Result<SkeletonReport> {
    let tree = separating_tree(cfg.points())?;
    let divisor = specialize_divisor(&tree, &cfg.orders())?;
    let slopes = edge_slopes(&tree, &divisor);
    let fibers = fiber_data(cfg.n(), &slopes, &tree)?;
    let covering = assemble_covering(&tree, &fibers)?;
    let skeleton = covering.stabilize();
    let expected = rh_genus(cfg);

    let checks = vec![
        check(
            "divisor round trip",
            reconstruct_divisor(&tree, &slopes) == divisor.coefficients,
        ),
        check("fiber degrees", fiber_degrees(&fibers)),
        check("edge lengths", edge_lengths(&tree, &covering)),
        check("harmonicity", harmonic(&tree, &covering)),
        check("local riemann-hurwitz", local_rh(&covering)),
        check(
            "genus",
            skeleton.genus() == expected && covering.to_graph().genus() == expected,
        ),
        check("stable", skeleton.stabilize() == skeleton),
    ];
    if let Some(c) = checks.iter().find(|c| !c.passed) {
        return Err(Error::InvalidCoveringData(format!("check '{}' failed", c.name)));
    }
    Ok(SkeletonReport {
        configuration: cfg.clone(),
        branch_points: branch_points(cfg),
        tree,
        divisor,
        slopes,
        fibers,
        covering,
        genus: skeleton.genus(),
        skeleton,
        checks,
    })
}

fn check(name: &str, passed: bool) -> Check {
    Check {
        name: name.to_string(),
        passed,
    }
}

fn fiber_degrees(f: &FiberData) -> bool {
    f.edges
        .iter()
        .chain(f.points.values())
        .all(|x| x.count * x.inertia == f.n)
        && f.vertices.iter().all(|v| v.count * v.degree == f.n)
}

fn edge_lengths(tree: &MetricTree, cover: &CoveringGraph) -> bool {
    cover
        .edges
        .iter()
        .all(|e| &e.length * &Rational::from_integer(e.inertia as i64) == tree.edges()[e.base].length)
}

/// At every preimage vertex, the inertias of the preimages of each incident
/// base direction add up to the local degree.
fn harmonic(tree: &MetricTree, cover: &CoveringGraph) -> bool {
    cover.vertices.iter().enumerate().all(|(id, v)| {
        let edge_ok = tree.incident_edges(v.base).iter().all(|&e| {
            let total: u64 = cover
                .edges
                .iter()
                .filter(|c| c.base == e && (c.source == id || c.target == id))
                .map(|c| c.inertia)
                .sum();
            total == v.degree
        });
        let leaf_ok = tree.points_at(v.base).all(|p| {
            let total: u64 = cover
                .leaves
                .iter()
                .filter(|l| l.point == p && l.vertex == id)
                .map(|l| l.inertia)
                .sum();
            total == v.degree
        });
        edge_ok && leaf_ok
    })
}

/// `2 − 2w(v') = 2 d(v') − Σ (i − 1)` over edges and leaves at `v'`.
fn local_rh(cover: &CoveringGraph) -> bool {
    cover.vertices.iter().enumerate().all(|(id, v)| {
        let edges = cover
            .edges
            .iter()
            .filter(|e| e.source == id || e.target == id)
            .map(|e| e.inertia as i64 - 1);
        let leaves = cover
            .leaves
            .iter()
            .filter(|l| l.vertex == id)
            .map(|l| l.inertia as i64 - 1);
        let ramification: i64 = edges.chain(leaves).sum();
        2 - 2 * v.weight as i64 == 2 * v.degree as i64 - ramification
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::Root;
    use crate::valuation::{PiSeries, ValuedPoint};
    use std::collections::BTreeSet;

    fn root(terms: &[(i64, i64)], mult: i64) -> Root {
        Root {
            point: ValuedPoint::Affine(PiSeries::from_ints(terms, 6)),
            mult,
        }
    }

    fn three_roots(n: u64) -> BranchConfiguration {
        BranchConfiguration::new(n, vec![root(&[], 1), root(&[(0, 1)], 1), root(&[(1, 1)], 1)]).unwrap()
    }

    #[test]
    fn k33_example() {
        let cfg = BranchConfiguration::new(
            3,
            vec![
                root(&[], 2),
                root(&[(1, 1)], 1),
                root(&[(0, 1)], 2),
                root(&[(0, 1), (1, 1)], 1),
                root(&[(0, 2)], 2),
                root(&[(0, 2), (1, 1)], 1),
            ],
        )
        .unwrap();
        let report = compute_skeleton(&cfg).unwrap();
        let s = &report.skeleton;
        assert_eq!(report.genus, 4);
        assert_eq!(s.weights, vec![0; 6]);
        assert_eq!(s.edges.len(), 9);
        assert!(s.edges.iter().all(|e| e.length == Rational::one()));
        let pairs: BTreeSet<(usize, usize)> = s
            .edges
            .iter()
            .map(|e| (e.source.min(e.target), e.source.max(e.target)))
            .collect();
        assert_eq!(pairs.len(), 9);
        // bipartite with parts of size three
        let mut side = [None; 6];
        side[0] = Some(false);
        for _ in 0..6 {
            for e in &s.edges {
                if let Some(x) = side[e.source] {
                    side[e.target] = Some(!x);
                }
                if let Some(x) = side[e.target] {
                    side[e.source] = Some(!x);
                }
            }
        }
        assert!(s.edges.iter().all(|e| side[e.source] != side[e.target]));
        assert_eq!(side.iter().filter(|x| **x == Some(true)).count(), 3);
    }

    #[test]
    fn three_roots_genus_three() {
        let report = compute_skeleton(&three_roots(4)).unwrap();
        let s = &report.skeleton;
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edges.len(), 2);
        assert!(s.edges.iter().all(|e| e.length == Rational::new(1, 2) && !e.is_loop()));
        assert_eq!(s.weights, vec![1, 1]);
        assert_eq!(report.genus, 3);
        assert_eq!(rh_genus(&three_roots(4)), 3);
    }

    #[test]
    fn three_roots_genus_four() {
        let report = compute_skeleton(&three_roots(6)).unwrap();
        let s = &report.skeleton;
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edges.len(), 2);
        assert!(s.edges.iter().all(|e| e.length == Rational::new(1, 3) && !e.is_loop()));
        let mut w = s.weights.clone();
        w.sort();
        assert_eq!(w, vec![1, 2]);
        assert_eq!(report.genus, 4);
    }

    #[test]
    fn elliptic_case_is_a_loop() {
        let report = compute_skeleton(&three_roots(2)).unwrap();
        let s = &report.skeleton;
        assert_eq!(s.weights, vec![0]);
        assert_eq!(s.edges.len(), 1);
        assert!(s.edges[0].is_loop());
        assert_eq!(s.edges[0].length, Rational::from_integer(2));
        assert_eq!(report.genus, 1);
    }

    #[test]
    fn branch_points_skip_divisible_orders() {
        assert_eq!(branch_points(&three_roots(4)), vec![0, 1, 2, 3]);
        let cfg = BranchConfiguration::new(3, vec![root(&[], 3), root(&[(0, 1)], 1)]).unwrap();
        assert_eq!(branch_points(&cfg), vec![1, 2]);
        assert_eq!(branch_points(&three_roots(6)), vec![0, 1, 2, 3]);
        let quartic = BranchConfiguration::new(
            2,
            vec![root(&[], 1), root(&[(0, 1)], 1), root(&[(0, 2)], 1), root(&[(0, 3)], 1)],
        )
        .unwrap();
        assert_eq!(rh_genus(&quartic), 1);
    }

    #[test]
    fn reducible_input_is_rejected() {
        let err = BranchConfiguration::new(4, vec![root(&[], 2), root(&[(0, 1)], 2)]).unwrap_err();
        assert_eq!(err, Error::Reducible { gcd: 2 });
    }

    #[test]
    fn scaling_lengths() {
        // deeper clusters scale every skeleton length
        let deep = BranchConfiguration::new(4, vec![root(&[], 1), root(&[(0, 1)], 1), root(&[(2, 1)], 1)]).unwrap();
        let s = compute_skeleton(&deep).unwrap().skeleton;
        assert!(s.edges.iter().all(|e| e.length == Rational::one()));
    }
}

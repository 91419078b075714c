use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::tree::{MetricTree, TreeEdge};

/// An unlabeled tree whose interior vertices all have valence three,
/// counting the `r` leaves. Interior vertices are `0..r − 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivalentTree {
    pub edges: Vec<(usize, usize)>,
    pub leaves: Vec<usize>,
}

impl TrivalentTree {
    pub fn leaf_count(&self) -> usize {
        self.leaves.iter().sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.leaves.len()
    }

    /// Unit-length metric tree with leaf `i` attached as point `i`, rooted
    /// at vertex 0.
    pub fn to_metric_tree(&self) -> MetricTree {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| TreeEdge {
                source: a,
                target: b,
                length: Rational::one(),
            })
            .collect();
        let mut points = BTreeMap::new();
        for (v, &k) in self.leaves.iter().enumerate() {
            for _ in 0..k {
                points.insert(points.len(), v);
            }
        }
        MetricTree::new(self.vertex_count(), edges, points, 0).expect("trivalent trees are valid")
    }
}

/// Tree with leaves as explicit nodes, used while growing.
#[derive(Clone)]
struct Grown {
    adjacency: Vec<Vec<usize>>,
}

impl Grown {
    fn claw() -> Grown {
        Grown {
            adjacency: vec![vec![1, 2, 3], vec![0], vec![0], vec![0]],
        }
    }

    /// Subdivides the edge `{u, v}` and hangs a new leaf off the middle.
    fn sprout(&self, u: usize, v: usize) -> Grown {
        let mut adjacency = self.adjacency.clone();
        let w = adjacency.len();
        let x = w + 1;
        for (a, b) in [(u, v), (v, u)] {
            let slot = adjacency[a].iter().position(|&y| y == b).expect("edge exists");
            adjacency[a][slot] = w;
        }
        adjacency.push(vec![u, v, x]);
        adjacency.push(vec![w]);
        Grown { adjacency }
    }

    fn rooted_code(&self, v: usize, parent: usize) -> String {
        let mut children: Vec<String> = self.adjacency[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }

    /// Isomorphism invariant code: rooted code at the center, or the sorted
    /// pair of halves at a bicentral edge.
    fn code(&self) -> String {
        let n = self.adjacency.len();
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        let mut removed = vec![false; n];
        let mut left = n;
        while left > 2 {
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
                left -= 1;
                for &w in &self.adjacency[v] {
                    if !removed[w] {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
        match centers[..] {
            [c] => self.rooted_code(c, usize::MAX),
            [a, b] => {
                let (x, y) = (self.rooted_code(a, b), self.rooted_code(b, a));
                if x <= y {
                    format!("[{x}{y}]")
                } else {
                    format!("[{y}{x}]")
                }
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    fn to_trivalent(&self) -> TrivalentTree {
        let interior: Vec<usize> = (0..self.adjacency.len())
            .filter(|&v| self.adjacency[v].len() == 3)
            .collect();
        let id: BTreeMap<usize, usize> = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut leaves = vec![0; interior.len()];
        for &v in &interior {
            for &w in &self.adjacency[v] {
                match id.get(&w) {
                    Some(&j) if id[&v] < j => edges.push((id[&v], j)),
                    Some(_) => {}
                    None => leaves[id[&v]] += 1,
                }
            }
        }
        TrivalentTree { edges, leaves }
    }
}

/// One representative of every isomorphism class of trivalent trees with
/// `r ≥ 3` unlabeled leaves, in a fixed order.
pub fn enumerate_trivalent_trees(r: usize) -> Vec<TrivalentTree> {
    assert!(r >= 3, "trivalent trees need at least three leaves");
    let mut level: BTreeMap<String, Grown> = BTreeMap::new();
    let claw = Grown::claw();
    level.insert(claw.code(), claw);
    for _ in 3..r {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for u in 0..t.adjacency.len() {
                for &v in &t.adjacency[u] {
                    if u < v {
                        let g = t.sprout(u, v);
                        next.entry(g.code()).or_insert(g);
                    }
                }
            }
        }
        level = next;
    }
    level.values().map(Grown::to_trivalent).collect()
}

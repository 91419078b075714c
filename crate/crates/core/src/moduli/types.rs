use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm, ColoredGraph};
use crate::covering::{assemble_covering, vertex_fibers, CoveringGraph, Fiber, FiberData};
use crate::error::{Error, Result};
use crate::graph::{Edge, LinearLength, WeightedGraph};
use crate::tree::MetricTree;

/// Which interior edges of a tree are ramified (one preimage instead of `p`).
pub type Signature = Vec<bool>;

/// `r_v`: points at `v` plus ramified edges at `v`.
pub fn ramification_count(tree: &MetricTree, ramified: &[bool], v: usize) -> usize {
    tree.points_at(v).count() + tree.incident_edges(v).iter().filter(|&&e| ramified[e]).count()
}

/// Every vertex has `r_v = 0` or `r_v ≥ 2`, and `(p − 1)(r_v − 2)` is even.
pub fn is_admissible(tree: &MetricTree, ramified: &[bool], p: u64) -> bool {
    (0..tree.vertex_count()).all(|v| {
        let r = ramification_count(tree, ramified, v) as u64;
        r == 0 || (r >= 2 && ((p - 1) * (r - 2)).is_multiple_of(2))
    })
}

/// The degree-`p` cover of a tree in which every point is a branch point and
/// the ramified edges are those of the signature.
pub fn covering_from_signature(tree: &MetricTree, ramified: &[bool], p: u64) -> Result<CoveringGraph> {
    if ramified.len() != tree.edges().len() {
        return Err(Error::InvalidInput(format!(
            "signature has {} entries for {} edges",
            ramified.len(),
            tree.edges().len()
        )));
    }
    let edges: Vec<Fiber> = ramified
        .iter()
        .map(|&r| {
            if r {
                Fiber { count: 1, inertia: p }
            } else {
                Fiber { count: p, inertia: 1 }
            }
        })
        .collect();
    let points: BTreeMap<usize, Fiber> = tree
        .leaves()
        .keys()
        .map(|&q| (q, Fiber { count: 1, inertia: p }))
        .collect();
    let vertices = vertex_fibers(tree, p, &edges, &points).map_err(|e| Error::InadmissibleSignature(e.to_string()))?;
    assemble_covering(
        tree,
        &FiberData {
            n: p,
            edges,
            points,
            vertices,
        },
    )
}

/// A weighted graph whose edges carry formal lengths in terms of the base
/// edge lengths; edges with equal formal length form one class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstrainedType {
    pub graph: WeightedGraph<LinearLength>,
}

/// How types are compared when removing duplicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DedupMode {
    /// Weighted graph together with the edge-class structure.
    Constrained,
    /// Weighted graph only.
    Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum NodeColor {
    Vertex(u64),
    Bundle { count: usize, is_loop: bool },
    Class,
}

/// Isomorphism key of a type under the chosen comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeKey {
    palette: Vec<NodeColor>,
    form: CanonicalForm,
}

impl ConstrainedType {
    /// The type of a cover: each edge's class is its base edge, then the
    /// graph is stabilized (smoothing adds classes formally).
    pub fn from_covering(cover: &CoveringGraph) -> ConstrainedType {
        let graph = WeightedGraph {
            weights: cover.vertices.iter().map(|v| v.weight).collect(),
            edges: cover
                .edges
                .iter()
                .map(|e| Edge {
                    source: e.source,
                    target: e.target,
                    length: LinearLength::unit(e.base),
                })
                .collect(),
        };
        ConstrainedType {
            graph: graph.stabilize(),
        }
    }

    pub fn genus(&self) -> u64 {
        self.graph.genus()
    }

    /// Distinct formal lengths, in order.
    pub fn classes(&self) -> Vec<LinearLength> {
        let mut out: Vec<LinearLength> = self.graph.edges.iter().map(|e| e.length.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Contracts every edge of one class at once. Merged vertices add their
    /// weights, plus one for every contracted edge that closes a cycle.
    pub fn contract_class(&self, class: &LinearLength) -> ConstrainedType {
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut extra = vec![0u64; n];
        let mut cycles = 0u64;
        let mut cycle_at = Vec::new();
        for e in self.graph.edges.iter().filter(|e| &e.length == class) {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a == b {
                cycles += 1;
                cycle_at.push(e.source);
            } else {
                parent[a.max(b)] = a.min(b);
            }
        }
        for v in cycle_at {
            let root = find(&mut parent, v);
            extra[root] += 1;
        }
        debug_assert_eq!(extra.iter().sum::<u64>(), cycles);
        let mut id = vec![usize::MAX; n];
        let mut weights = Vec::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            if id[root] == usize::MAX {
                id[root] = weights.len();
                weights.push(extra[root]);
            }
            id[v] = id[root];
            weights[id[v]] += self.graph.weights[v];
        }
        let edges = self
            .graph
            .edges
            .iter()
            .filter(|e| &e.length != class)
            .map(|e| Edge {
                source: id[e.source],
                target: id[e.target],
                length: e.length.clone(),
            })
            .collect();
        ConstrainedType {
            graph: WeightedGraph { weights, edges },
        }
    }

    pub fn key(&self, mode: DedupMode) -> TypeKey {
        let g = &self.graph;
        let mut colors: Vec<NodeColor> = g.weights.iter().map(|&w| NodeColor::Vertex(w)).collect();
        let mut links: Vec<(usize, usize, u32)> = Vec::new();
        let mut bundles: BTreeMap<(usize, usize, Option<&LinearLength>), usize> = BTreeMap::new();
        for e in &g.edges {
            let label = match mode {
                DedupMode::Constrained => Some(&e.length),
                DedupMode::Graph => None,
            };
            *bundles
                .entry((e.source.min(e.target), e.source.max(e.target), label))
                .or_default() += 1;
        }
        let mut class_node: BTreeMap<usize, usize> = BTreeMap::new();
        for ((a, b, label), count) in bundles {
            let node = colors.len();
            colors.push(NodeColor::Bundle { count, is_loop: a == b });
            links.push((node, a, 1));
            if a != b {
                links.push((node, b, 1));
            }
            if let Some(label) = label {
                for (&class, &c) in &label.0 {
                    let cn = *class_node.entry(class).or_insert_with(|| {
                        colors.push(NodeColor::Class);
                        colors.len() - 1
                    });
                    links.push((node, cn, c as u32));
                }
            }
        }
        let mut palette = colors.clone();
        palette.sort();
        palette.dedup();
        let rank = |c: &NodeColor| palette.binary_search(c).expect("in palette") as u32;
        let mut cg = ColoredGraph::new(colors.iter().map(rank).collect());
        for (a, b, m) in links {
            cg.add_edge(a, b, m);
        }
        TypeKey {
            palette,
            form: canonical_form(&cg),
        }
    }
}

/// The constrained type of the cover of a trivalent (or any) tree with the
/// given signature.
pub fn covering_type(tree: &MetricTree, ramified: &[bool], p: u64) -> Result<ConstrainedType> {
    if !is_admissible(tree, ramified, p) {
        return Err(Error::InadmissibleSignature(format!(
            "some vertex has r_v = 1 or (p - 1)(r_v - 2) odd for p = {p}"
        )));
    }
    Ok(ConstrainedType::from_covering(&covering_from_signature(
        tree, ramified, p,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::enumerate_trivalent_trees;

    fn signatures(m: usize) -> impl Iterator<Item = Signature> {
        (0..1u32 << m).map(move |bits| (0..m).map(|i| bits >> i & 1 == 1).collect())
    }

    #[test]
    fn four_leaves() {
        let tree = enumerate_trivalent_trees(4)[0].to_metric_tree();
        let ramified = covering_type(&tree, &[true], 3).unwrap();
        assert_eq!(ramified.graph.weights, vec![1, 1]);
        assert_eq!(ramified.graph.edges.len(), 1);
        assert_eq!(ramified.genus(), 2);
        let unramified = covering_type(&tree, &[false], 3).unwrap();
        assert_eq!(unramified.graph.weights, vec![0, 0]);
        assert_eq!(unramified.graph.edges.len(), 3);
        assert_eq!(unramified.genus(), 2);
        assert_eq!(unramified.classes().len(), 1);
        assert!(covering_type(&tree, &[true], 2).is_err());
    }

    #[test]
    fn admissibility_matches_weights() {
        for p in [2, 3, 5] {
            for r in 4..=8 {
                for t in enumerate_trivalent_trees(r) {
                    let tree = t.to_metric_tree();
                    for s in signatures(tree.edges().len()) {
                        let direct = covering_from_signature(&tree, &s, p).is_ok();
                        assert_eq!(is_admissible(&tree, &s, p), direct, "p={p} r={r} {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn genus_identity() {
        for p in [2u64, 3, 5, 7] {
            for r in 4..=9u64 {
                for t in enumerate_trivalent_trees(r as usize) {
                    let tree = t.to_metric_tree();
                    for s in signatures(tree.edges().len()) {
                        if let Ok(ty) = covering_type(&tree, &s, p) {
                            // (p − 1)(r/2 − 1)
                            assert_eq!(2 * ty.genus(), (p - 1) * (r - 2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contraction_keeps_genus() {
        let t = &enumerate_trivalent_trees(6)[1];
        let tree = t.to_metric_tree();
        for s in signatures(3) {
            if let Ok(ty) = covering_type(&tree, &s, 3) {
                for class in ty.classes() {
                    let c = ty.contract_class(&class);
                    assert_eq!(c.genus(), ty.genus());
                    assert!(c.graph.edges.len() < ty.graph.edges.len());
                }
                let mut full = ty.clone();
                while let Some(class) = full.classes().first().cloned() {
                    full = full.contract_class(&class);
                }
                assert_eq!(full.graph.weights, vec![ty.genus()]);
            }
        }
    }

    #[test]
    fn keys_see_classes() {
        // mirror-image signatures on the caterpillar give the same type
        let tree = enumerate_trivalent_trees(5)[0].to_metric_tree();
        let a = covering_type(&tree, &[true, false], 3).unwrap();
        let b = covering_type(&tree, &[false, true], 3).unwrap();
        assert_eq!(a.key(DedupMode::Constrained), b.key(DedupMode::Constrained));
        let c = covering_type(&tree, &[true, true], 3).unwrap();
        assert_ne!(a.key(DedupMode::Graph), c.key(DedupMode::Graph));
    }
}

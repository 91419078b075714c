use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::MetricTree;

/// Combinatorial data of a degree-`p` superelliptic cover of a tree: which
/// edges are ramified and how many branch points reduce to each vertex.
/// Points attached to `tree` are ignored; `leaf_counts` decides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDatum {
    pub tree: MetricTree,
    pub p: u64,
    pub ramified: Vec<bool>,
    pub leaf_counts: Vec<usize>,
}

/// A cover described by its graph: per base vertex the weight and number of
/// preimages, per base edge whether it is ramified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDescription {
    pub tree: MetricTree,
    pub p: u64,
    pub ramified: Vec<bool>,
    pub weights: Vec<u64>,
    pub preimages: Vec<u64>,
}

impl CoveringDatum {
    /// `r_v`: branch points at `v` plus ramified edges at `v`.
    pub fn ramification_count(&self, v: usize) -> usize {
        self.leaf_counts[v]
            + self
                .tree
                .incident_edges(v)
                .iter()
                .filter(|&&e| self.ramified[e])
                .count()
    }

    /// Shape checks and the rule `r_v = 0` or `r_v ≥ 2` with an integral
    /// weight `(p − 1)(r_v − 2)/2`.
    pub fn validate(&self) -> Result<()> {
        if self.ramified.len() != self.tree.edges().len() {
            return Err(Error::InvalidInput(format!(
                "{} ramification flags for {} edges",
                self.ramified.len(),
                self.tree.edges().len()
            )));
        }
        if self.leaf_counts.len() != self.tree.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "{} leaf counts for {} vertices",
                self.leaf_counts.len(),
                self.tree.vertex_count()
            )));
        }
        for v in 0..self.tree.vertex_count() {
            let r = self.ramification_count(v) as u64;
            if r == 1 {
                return Err(Error::NotRealizable(format!(
                    "vertex {v} has a single ramified direction"
                )));
            }
            if r >= 2 && !((self.p - 1) * (r - 2)).is_multiple_of(2) {
                return Err(Error::NotRealizable(format!(
                    "vertex {v} would need weight {}/2",
                    (self.p - 1) * (r - 2)
                )));
            }
        }
        if self.leaf_counts.iter().sum::<usize>() == 0 {
            return Err(Error::NotRealizable("the cover has no branch points".into()));
        }
        Ok(())
    }

    /// The tree with `leaf_counts[v]` points attached at each `v`, numbered
    /// by vertex.
    pub fn marked_tree(&self) -> MetricTree {
        let mut leaves = std::collections::BTreeMap::new();
        for (v, &k) in self.leaf_counts.iter().enumerate() {
            for _ in 0..k {
                leaves.insert(leaves.len(), v);
            }
        }
        MetricTree::new(
            self.tree.vertex_count(),
            self.tree.edges().to_vec(),
            leaves,
            self.tree.root(),
        )
        .expect("same shape as a valid tree")
    }
}

/// Leaf counts from local Riemann–Hurwitz: a vertex with one preimage of
/// weight `w` needs `r_v = 2 + 2w/(p − 1)` ramified directions; a vertex with
/// `p` preimages must have weight 0 and no ramified edge.
pub fn leaf_counts_from_cover(cover: &CoverDescription) -> Result<CoveringDatum> {
    let p = cover.p;
    if !crate::moduli::is_prime(p) {
        return Err(Error::CompositeDegree(p));
    }
    let tree = &cover.tree;
    if cover.weights.len() != tree.vertex_count() || cover.preimages.len() != tree.vertex_count() {
        return Err(Error::InvalidInput(
            "weights and preimages need one entry per vertex".into(),
        ));
    }
    let mut leaf_counts = Vec::with_capacity(tree.vertex_count());
    for v in 0..tree.vertex_count() {
        let ramified_edges = tree.incident_edges(v).iter().filter(|&&e| cover.ramified[e]).count();
        let w = cover.weights[v];
        let r = match cover.preimages[v] {
            1 => {
                if !(2 * w).is_multiple_of(p - 1) {
                    return Err(Error::NotRealizable(format!(
                        "weight {w} at vertex {v} is not a multiple of (p - 1)/2"
                    )));
                }
                2 + (2 * w / (p - 1)) as usize
            }
            k if k == p => {
                if w != 0 || ramified_edges > 0 {
                    return Err(Error::NotRealizable(format!(
                        "vertex {v} has {p} preimages but weight {w} or a ramified edge"
                    )));
                }
                0
            }
            k => {
                return Err(Error::NotRealizable(format!(
                    "vertex {v} has {k} preimages, expected 1 or {p}"
                )));
            }
        };
        if r < ramified_edges {
            return Err(Error::NotRealizable(format!(
                "vertex {v} has {ramified_edges} ramified edges but weight {w} allows only {r}"
            )));
        }
        leaf_counts.push(r - ramified_edges);
    }
    let datum = CoveringDatum {
        tree: tree.clone(),
        p,
        ramified: cover.ramified.clone(),
        leaf_counts,
    };
    datum.validate()?;
    Ok(datum)
}

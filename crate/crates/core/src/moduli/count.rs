use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{assemble_covering, fiber_data};
use crate::divisor::{edge_slopes, specialize_divisor};
use crate::error::{Error, Result};
use crate::tree::MetricTree;

use super::trees::enumerate_trivalent_trees;
use super::types::{covering_type, ConstrainedType, DedupMode, TypeKey};

/// Where ∞ goes on a tree whose leaves are the roots of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Placement {
    /// `r` simple roots on the leaves, ∞ at any interior vertex.
    Vertices,
    /// One leaf is ∞ with order `−(r − 1)`, the others simple roots.
    Leaves,
    /// Both of the above.
    Union,
    /// The leaves are exactly the `r` branch points: ∞ is a leaf when
    /// `p ∤ r − 1`, and an unramified point at a vertex when `p | r`.
    BranchPoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: usize,
    pub types: Vec<ConstrainedType>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_arguments(r: usize, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::CompositeDegree(p));
    }
    if r < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 leaves, got {r}")));
    }
    Ok(())
}

/// Runs `f` on every item, in parallel on `jobs` threads when given, and
/// keeps the first type seen for every key in item order.
fn collect_types<T: Sync>(
    items: &[T],
    jobs: Option<usize>,
    mode: DedupMode,
    f: impl Fn(&T) -> Vec<ConstrainedType> + Sync + Send,
) -> Result<CountReport> {
    let work = || -> Vec<Vec<(TypeKey, ConstrainedType)>> {
        items
            .par_iter()
            .map(|item| f(item).into_iter().map(|t| (t.key(mode), t)).collect())
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start {n} worker threads: {e}")))?
            .install(work),
        None => work(),
    };
    let mut seen: BTreeMap<TypeKey, ConstrainedType> = BTreeMap::new();
    for (key, t) in results.into_iter().flatten() {
        seen.entry(key).or_insert(t);
    }
    Ok(CountReport {
        count: seen.len(),
        types: seen.into_values().collect(),
    })
}

/// Number of maximal cones of the moduli space of tropical superelliptic
/// curves of degree `p` with `r` branch points: distinct types over all
/// trivalent trees and admissible signatures.
pub fn count_s_cones(r: usize, p: u64, mode: DedupMode, jobs: Option<usize>) -> Result<CountReport> {
    check_arguments(r, p)?;
    let trees: Vec<MetricTree> = enumerate_trivalent_trees(r)
        .iter()
        .map(|t| t.to_metric_tree())
        .collect();
    collect_types(&trees, jobs, mode, |tree| {
        let m = tree.edges().len();
        (0..1u64 << m)
            .filter_map(|bits| {
                let s: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
                covering_type(tree, &s, p).ok()
            })
            .collect()
    })
}

/// The type of `y^p = f` for the given orders of `f` at the points of the
/// tree, with formal unit lengths.
fn divisor_type(tree: &MetricTree, orders: &BTreeMap<usize, i64>, p: u64) -> Option<ConstrainedType> {
    let div = specialize_divisor(tree, orders).ok()?;
    let slopes = edge_slopes(tree, &div);
    let fibers = fiber_data(p, &slopes, tree).ok()?;
    let cover = assemble_covering(tree, &fibers).ok()?;
    Some(ConstrainedType::from_covering(&cover))
}

fn placements(tree: &MetricTree, r: usize, p: u64, placement: Placement) -> Vec<(MetricTree, BTreeMap<usize, i64>)> {
    let r_i = r as i64;
    let at_vertices = || {
        (0..tree.vertex_count()).map(move |v| {
            let mut leaves = tree.leaves().clone();
            leaves.insert(r, v);
            let t = MetricTree::new(tree.vertex_count(), tree.edges().to_vec(), leaves, 0).expect("valid");
            let mut orders: BTreeMap<usize, i64> = (0..r).map(|i| (i, 1)).collect();
            orders.insert(r, -r_i);
            (t, orders)
        })
    };
    let at_leaves = || {
        (0..r).map(move |inf| {
            let orders = (0..r).map(|i| (i, if i == inf { 1 - r_i } else { 1 })).collect();
            (tree.clone(), orders)
        })
    };
    let p_i = p as i64;
    match placement {
        Placement::Vertices => at_vertices().collect(),
        Placement::Leaves => at_leaves().collect(),
        Placement::Union => at_vertices().chain(at_leaves()).collect(),
        Placement::BranchPoints => {
            let mut out = Vec::new();
            if (r_i - 1) % p_i != 0 {
                out.extend(at_leaves());
            }
            if r_i % p_i == 0 {
                // an unramified ∞ does not change the cover, one vertex suffices
                out.extend(at_vertices().take(1));
            }
            out
        }
    }
}

/// Number of maximal cones of the locus of curves with distinct roots,
/// over all trivalent trees with `r` leaves and the chosen ∞ placements.
pub fn count_sp_cones(
    r: usize,
    p: u64,
    placement: Placement,
    mode: DedupMode,
    jobs: Option<usize>,
) -> Result<CountReport> {
    check_arguments(r, p)?;
    let trees: Vec<MetricTree> = enumerate_trivalent_trees(r)
        .iter()
        .map(|t| t.to_metric_tree())
        .collect();
    collect_types(&trees, jobs, mode, |tree| {
        placements(tree, r, p, placement)
            .into_iter()
            .filter_map(|(t, orders)| divisor_type(&t, &orders, p))
            .collect()
    })
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::datum::CoveringDatum;

/// Exponents of the branch points: `residues` in `1..p`, and the integer
/// `exponents` after balancing at the target vertex so that they sum to 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentAssignment {
    pub target_vertex: usize,
    pub residues: BTreeMap<usize, u64>,
    pub exponents: BTreeMap<usize, i64>,
}

/// First vertex with at least two branch points, else the first with one.
pub fn target_vertex(datum: &CoveringDatum) -> Option<usize> {
    let counts = &datum.leaf_counts;
    (0..counts.len())
        .find(|&v| counts[v] >= 2)
        .or_else(|| (0..counts.len()).find(|&v| counts[v] >= 1))
}

/// `m` nonzero residues mod `p` adding up to `t`: all ones, with the last
/// (and if needed the one before it) adjusted.
fn fill(m: usize, t: u64, p: u64) -> Option<Vec<u64>> {
    match m {
        0 => (t == 0).then(Vec::new),
        1 => (t != 0).then(|| vec![t]),
        _ if p == 2 => (m as u64 % 2 == t).then(|| vec![1; m]),
        _ => {
            let mut out = vec![1; m];
            let rest = |ones: u64| (t + p * m as u64 - ones) % p;
            let last = rest(m as u64 - 1);
            if last != 0 {
                out[m - 1] = last;
            } else {
                out[m - 2] = 2;
                out[m - 1] = rest(m as u64);
            }
            Some(out)
        }
    }
}

/// Solves the total Laplacian equations: the residues over the far side of
/// every edge (seen from the target vertex) vanish exactly on unramified
/// edges, and all residues add up to 0. Values are pushed from the target
/// vertex outward: each vertex splits the value its parent edge demands
/// among its own points and its ramified child edges.
pub fn solve_total_laplacian(datum: &CoveringDatum) -> Result<ExponentAssignment> {
    datum.validate()?;
    let p = datum.p;
    let v0 = target_vertex(datum).ok_or_else(|| Error::NotRealizable("no branch points".into()))?;
    let tree = datum.marked_tree().with_root(v0)?;
    let (parent, order) = tree.parent_edges();
    let mut demand = vec![0u64; tree.vertex_count()];
    let mut residues = BTreeMap::new();
    for &v in &order {
        let points: Vec<usize> = tree.points_at(v).collect();
        let children: Vec<usize> = tree
            .incident_edges(v)
            .iter()
            .copied()
            .filter(|&e| parent[v] != Some(e) && datum.ramified[e])
            .collect();
        let values = fill(points.len() + children.len(), demand[v], p).ok_or_else(|| {
            Error::NotRealizable(format!(
                "vertex {v} cannot produce residue {} from {} free values",
                demand[v],
                points.len() + children.len()
            ))
        })?;
        for (&q, &a) in points.iter().zip(&values) {
            residues.insert(q, a);
        }
        for (&e, &a) in children.iter().zip(&values[points.len()..]) {
            demand[tree.edges()[e].other(v)] = a;
        }
    }
    let mut exponents: BTreeMap<usize, i64> = residues.iter().map(|(&q, &a)| (q, a as i64)).collect();
    let total: i64 = exponents.values().sum();
    let balance = tree.points_at(v0).last().expect("target vertex carries a point");
    *exponents.get_mut(&balance).expect("assigned") -= total;
    Ok(ExponentAssignment {
        target_vertex: v0,
        residues,
        exponents,
    })
}

/// Whether residues (indexed by point) satisfy every edge condition and add
/// up to 0 mod `p`.
pub fn satisfies_total_laplacian(datum: &CoveringDatum, residues: &[u64]) -> bool {
    let p = datum.p;
    let tree = datum.marked_tree();
    if residues.len() != tree.leaves().len() || residues.iter().any(|&a| a % p == 0) {
        return false;
    }
    let (parent, order) = tree.parent_edges();
    let mut sum = vec![0u64; tree.vertex_count()];
    for (&q, &v) in tree.leaves() {
        sum[v] = (sum[v] + residues[q]) % p;
    }
    for &v in order.iter().rev() {
        if let Some(e) = parent[v] {
            if (sum[v] != 0) != datum.ramified[e] {
                return false;
            }
            let up = tree.edges()[e].other(v);
            sum[up] = (sum[up] + sum[v]) % p;
        }
    }
    sum[tree.root()] == 0
}

/// Every solution in `(F_p^*)^s`, by enumeration.
pub fn brute_force_solutions(datum: &CoveringDatum) -> Vec<Vec<u64>> {
    let s: usize = datum.leaf_counts.iter().sum();
    let p = datum.p;
    let mut out = Vec::new();
    let mut current = vec![1u64; s];
    loop {
        if satisfies_total_laplacian(datum, &current) {
            out.push(current.clone());
        }
        let mut i = 0;
        while i < s && current[i] == p - 1 {
            current[i] = 1;
            i += 1;
        }
        if i == s {
            return out;
        }
        current[i] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_hits_every_target() {
        for p in [3u64, 5, 7] {
            for m in 2..6 {
                for t in 0..p {
                    let v = fill(m, t, p).unwrap();
                    assert_eq!(v.len(), m);
                    assert!(v.iter().all(|&a| a % p != 0));
                    assert_eq!(v.iter().sum::<u64>() % p, t);
                }
            }
        }
        assert_eq!(fill(1, 0, 3), None);
        assert_eq!(fill(0, 1, 3), None);
        assert_eq!(fill(3, 0, 2), None);
        assert_eq!(fill(2, 0, 2), Some(vec![1, 1]));
    }
}

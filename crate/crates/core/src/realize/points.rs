use num_integer::Integer;

use crate::rational::Rational;
use crate::valuation::{PiSeries, ValuedPoint};

use super::datum::CoveringDatum;

/// Points whose separating tree is the datum's tree with lengths multiplied
/// by the returned scale (the least common denominator of the lengths).
///
/// The vertex reached through edges of total length `d` from the root is the
/// ball of radius `d` around a prefix series; its directions (own points
/// first, then child edges) get the residues `0, 1, 2, …` at `π^d`.
pub fn construct_points(datum: &CoveringDatum, root: usize) -> (Vec<ValuedPoint>, Rational) {
    let tree = datum.marked_tree().with_root(root).expect("root in range");
    let mut scale = num_bigint::BigInt::from(1);
    for e in tree.edges() {
        scale = scale.lcm(e.length.denom());
    }
    let scale_i: i64 = scale.try_into().expect("length denominators fit in i64");
    let scale = Rational::from_integer(scale_i);
    let (parent, order) = tree.parent_edges();
    let n = tree.vertex_count();
    let mut depth = vec![0i64; n];
    let mut prefix: Vec<Vec<(i64, i64)>> = vec![Vec::new(); n];
    let mut terms: Vec<Vec<(i64, i64)>> = vec![Vec::new(); tree.leaves().len()];
    for &v in &order {
        let mut residue = 0;
        for q in tree.points_at(v) {
            let mut t = prefix[v].clone();
            t.push((depth[v], residue));
            terms[q] = t;
            residue += 1;
        }
        let mut children: Vec<usize> = tree
            .incident_edges(v)
            .iter()
            .copied()
            .filter(|&e| parent[v] != Some(e))
            .collect();
        children.sort_unstable();
        for e in children {
            let c = tree.edges()[e].other(v);
            let len = &tree.edges()[e].length * &scale;
            let len: i64 = len.numer().try_into().expect("integral length fits in i64");
            depth[c] = depth[v] + len;
            let mut t = prefix[v].clone();
            t.push((depth[v], residue));
            prefix[c] = t;
            residue += 1;
        }
    }
    let truncation = terms.iter().flatten().map(|(k, _)| k + 1).max().unwrap_or(1);
    let points = terms
        .iter()
        .map(|t| ValuedPoint::Affine(PiSeries::from_ints(t, truncation)))
        .collect();
    (points, scale)
}

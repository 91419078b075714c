use std::collections::BTreeMap;

use crate::error::Result;
use crate::rational::Rational;

use super::distance::DistanceMatrix;
use super::metric::{MetricTree, TreeEdge};

/// Neighbor joining in exact arithmetic.
///
/// Returns the tree realizing `d` with one leaf vertex per point (finite
/// stems). Zero-length edges are contracted, so points at distance zero end
/// up on the same vertex. Ties in the Q-criterion go to the lexicographically
/// smallest pair; on a tree metric every minimizing pair is a cherry.
pub fn neighbor_joining(d: &DistanceMatrix) -> Result<MetricTree> {
    d.check_tree_metric()?;
    let n = d.len();
    if n <= 1 {
        return Ok(MetricTree::single_vertex(0..n));
    }

    // node ids: 0..n are the points, internal nodes follow
    let mut dist: Vec<Vec<Rational>> = d.entries.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut raw_edges: Vec<(usize, usize, Rational)> = Vec::new();
    let mut next = n;

    while active.len() > 2 {
        let m = active.len();
        let m2 = Rational::from_integer(m as i64 - 2);
        let totals: Vec<Rational> = active
            .iter()
            .map(|&i| active.iter().map(|&k| dist[i][k].clone()).sum())
            .collect();
        let mut best: Option<(Rational, usize, usize)> = None;
        for a in 0..m {
            for b in (a + 1)..m {
                let q = &(&m2 * &dist[active[a]][active[b]]) - &(&totals[a] + &totals[b]);
                if best.as_ref().is_none_or(|(bq, _, _)| q < *bq) {
                    best = Some((q, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("at least three active nodes");
        let (i, j) = (active[a], active[b]);
        let dij = dist[i][j].clone();
        let two = Rational::from_integer(2);
        let li = &(&dij / &two) + &(&(&totals[a] - &totals[b]) / &(&two * &m2));
        let lj = &dij - &li;

        let u = next;
        next += 1;
        for row in dist.iter_mut() {
            row.push(Rational::zero());
        }
        dist.push(vec![Rational::zero(); next]);
        for &k in &active {
            if k != i && k != j {
                let duk = &(&(&dist[i][k] + &dist[j][k]) - &dij) / &two;
                dist[u][k] = duk.clone();
                dist[k][u] = duk;
            }
        }
        raw_edges.push((u, i, li));
        raw_edges.push((u, j, lj));
        active.retain(|&k| k != i && k != j);
        active.push(u);
    }
    let (i, j) = (active[0], active[1]);
    raw_edges.push((i, j, dist[i][j].clone()));

    // contract zero-length edges
    let mut parent: Vec<usize> = (0..next).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let up = parent[y];
            parent[y] = r;
            y = up;
        }
        r
    }
    for (a, b, l) in &raw_edges {
        if l.is_zero() {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..next {
        let r = find(&mut parent, x);
        let len = ids.len();
        ids.entry(r).or_insert(len);
    }
    let mut edges = Vec::new();
    for (a, b, l) in raw_edges {
        if !l.is_zero() {
            edges.push(TreeEdge {
                source: ids[&find(&mut parent, a)],
                target: ids[&find(&mut parent, b)],
                length: l,
            });
        }
    }
    let leaves = (0..n).map(|p| (p, ids[&find(&mut parent, p)])).collect();
    MetricTree::new(ids.len(), edges, leaves, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{distance_matrix, separating_tree};
    use crate::valuation::{PiSeries, ValuedPoint};

    fn r(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn claw_with_unit_stems() {
        let d = DistanceMatrix {
            entries: vec![vec![r(0), r(2), r(2)], vec![r(2), r(0), r(2)], vec![r(2), r(2), r(0)]],
            offset: 2,
        };
        let t = neighbor_joining(&d).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edges().len(), 3);
        assert!(t.edges().iter().all(|e| e.length == r(1)));
        let stripped = t.strip_leaf_stems();
        assert_eq!(stripped.vertex_count(), 1);
    }

    #[test]
    fn k33_matrix_gives_the_star() {
        let pt = |terms: &[(i64, i64)]| ValuedPoint::Affine(PiSeries::from_ints(terms, 6));
        let pts = vec![
            pt(&[]),
            pt(&[(1, 1)]),
            pt(&[(0, 1)]),
            pt(&[(0, 1), (1, 1)]),
            pt(&[(0, 2)]),
            pt(&[(0, 2), (1, 1)]),
        ];
        let nj = neighbor_joining(&distance_matrix(&pts).unwrap()).unwrap();
        let stripped = nj.strip_leaf_stems();
        assert_eq!(stripped.vertex_count(), 4);
        assert!(stripped.same_leaf_metric(&separating_tree(&pts).unwrap()));
    }

    #[test]
    fn reproduces_an_additive_metric() {
        // caterpillar ((a,b),(c),(d,e)) with assorted lengths
        let t = MetricTree::new(
            8,
            vec![
                TreeEdge {
                    source: 0,
                    target: 1,
                    length: r(3),
                },
                TreeEdge {
                    source: 1,
                    target: 2,
                    length: Rational::new(1, 2),
                },
                TreeEdge {
                    source: 0,
                    target: 3,
                    length: r(1),
                },
                TreeEdge {
                    source: 0,
                    target: 4,
                    length: r(2),
                },
                TreeEdge {
                    source: 1,
                    target: 5,
                    length: r(1),
                },
                TreeEdge {
                    source: 2,
                    target: 6,
                    length: r(4),
                },
                TreeEdge {
                    source: 2,
                    target: 7,
                    length: Rational::new(1, 3),
                },
            ],
            [(0, 3), (1, 4), (2, 5), (3, 6), (4, 7)].into(),
            0,
        )
        .unwrap();
        let entries = (0..5)
            .map(|i| (0..5).map(|j| t.leaf_distance(i, j).unwrap()).collect())
            .collect();
        let d = DistanceMatrix { entries, offset: 0 };
        let nj = neighbor_joining(&d).unwrap();
        assert_eq!(nj.vertex_count(), 8);
        assert!(nj.same_leaf_metric(&t));
    }
}

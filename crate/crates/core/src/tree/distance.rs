use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valuation::{pairwise_valuations, ValuedPoint};

/// Leaf-to-leaf distances `d_ij = N − 2 v(m_ij)` between points, indexed by
/// their position in the input list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub entries: Vec<Vec<Rational>>,
    pub offset: i64,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    /// Checks symmetry, zero diagonal, non-negativity and the four-point
    /// condition `d_ij + d_kl ≤ max(d_ik + d_jl, d_il + d_jk)` over all
    /// quadruples (repeated indices included, which covers the triangle
    /// inequality).
    pub fn check_tree_metric(&self) -> Result<()> {
        let n = self.len();
        let d = &self.entries;
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotATreeMetric(format!("row {i} has wrong length")));
            }
            if !row[i].is_zero() {
                return Err(Error::NotATreeMetric(format!("d[{i}][{i}] is not zero")));
            }
            for j in 0..n {
                if row[j] != d[j][i] {
                    return Err(Error::NotATreeMetric(format!("d[{i}][{j}] is not symmetric")));
                }
                if row[j].is_negative() {
                    return Err(Error::NotATreeMetric(format!("d[{i}][{j}] is negative")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = &d[i][j] + &d[k][l];
                        let a = &d[i][k] + &d[j][l];
                        let b = &d[i][l] + &d[j][k];
                        if lhs > a.max(b) {
                            return Err(Error::NotATreeMetric(format!(
                                "four-point condition fails on ({i}, {j}, {k}, {l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Distance matrix of a point set with the minimal even offset
/// `N = 2 · max v(m_ij)`, which makes every entry non-negative.
pub fn distance_matrix(points: &[ValuedPoint]) -> Result<DistanceMatrix> {
    let v = pairwise_valuations(points)?;
    let n = points.len();
    let max_v = v
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row[i + 1..].iter().copied())
        .max()
        .unwrap_or(0);
    let offset = 2 * max_v;
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::zero()
                    } else {
                        Rational::from_integer(offset - 2 * v[i][j])
                    }
                })
                .collect()
        })
        .collect();
    Ok(DistanceMatrix { entries, offset })
}

//! From a tropical cover of prime degree back to an explicit curve
//! `y^p = f(x)` that tropicalizes to it.

mod datum;
mod points;
mod solver;

pub use datum::{leaf_counts_from_cover, CoverDescription, CoveringDatum};
pub use points::construct_points;
pub use solver::{
    brute_force_solutions, satisfies_total_laplacian, solve_total_laplacian, target_vertex, ExponentAssignment,
};

use serde::{Deserialize, Serialize};

use crate::covering::{compute_skeleton, BranchConfiguration, Root};
use crate::error::{Error, Result};
use crate::graph::Skeleton;
use crate::moduli::{covering_from_signature, is_prime};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub configuration: BranchConfiguration,
    pub assignment: ExponentAssignment,
    /// Skeleton lengths are the datum's lengths times this factor.
    pub scale: Rational,
}

/// An explicit curve tropicalizing to the cover described by `datum`.
pub fn realize(datum: &CoveringDatum) -> Result<Realization> {
    if !is_prime(datum.p) {
        return Err(Error::CompositeDegree(datum.p));
    }
    let assignment = solve_total_laplacian(datum)?;
    let (points, scale) = construct_points(datum, assignment.target_vertex);
    let roots = points
        .into_iter()
        .enumerate()
        .map(|(q, point)| Root {
            point,
            mult: assignment.exponents[&q],
        })
        .collect();
    Ok(Realization {
        configuration: BranchConfiguration::new(datum.p, roots)?,
        assignment,
        scale,
    })
}

/// The skeleton the datum describes, with lengths multiplied by `scale`.
pub fn expected_skeleton(datum: &CoveringDatum, scale: &Rational) -> Result<Skeleton> {
    let tree = datum.marked_tree().scaled(scale);
    Ok(covering_from_signature(&tree, &datum.ramified, datum.p)?.stabilize())
}

/// Runs the forward computation on the realized curve and compares with
/// the skeleton the datum describes.
pub fn verify(datum: &CoveringDatum, realization: &Realization) -> Result<bool> {
    let computed = compute_skeleton(&realization.configuration)?.skeleton;
    let expected = expected_skeleton(datum, &realization.scale)?;
    Ok(computed.isomorphism_key() == expected.isomorphism_key())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{enumerate_trivalent_trees, is_admissible};

    fn data(r: usize, p: u64) -> Vec<CoveringDatum> {
        let mut out = Vec::new();
        for t in enumerate_trivalent_trees(r) {
            let tree = t.to_metric_tree();
            let m = tree.edges().len();
            for mask in 0u32..(1 << m) {
                let ramified: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
                if is_admissible(&tree, &ramified, p) {
                    out.push(CoveringDatum {
                        tree: tree.clone(),
                        p,
                        ramified,
                        leaf_counts: t.leaves.clone(),
                    });
                }
            }
        }
        out
    }

    #[test]
    fn small_trees_round_trip() {
        for p in [2, 3, 5] {
            for r in 4..=6 {
                for datum in data(r, p) {
                    let real = realize(&datum).unwrap();
                    assert_eq!(real.configuration.roots().iter().map(|x| x.mult).sum::<i64>(), 0);
                    assert!(verify(&datum, &real).unwrap(), "{datum:?}");
                }
            }
        }
    }

    #[test]
    fn solver_output_is_a_brute_force_solution() {
        for p in [3, 5] {
            for datum in data(5, p) {
                let a = solve_total_laplacian(&datum).unwrap();
                let residues: Vec<u64> = a.residues.values().copied().collect();
                let all = brute_force_solutions(&datum);
                assert!(all.contains(&residues));
                assert_eq!(all.len() as u64 % (p - 1), 0);
            }
        }
    }

    #[test]
    fn rejects_composite_and_bad_data() {
        let mut datum = data(4, 3).remove(0);
        datum.p = 4;
        assert!(matches!(realize(&datum), Err(Error::CompositeDegree(4))));
        let mut datum = data(4, 3).remove(0);
        datum.leaf_counts = vec![0; datum.leaf_counts.len()];
        assert!(matches!(realize(&datum), Err(Error::NotRealizable(_))));
    }
}

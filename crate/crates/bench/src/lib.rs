//! Inputs shared by the benchmarks.

use skeleton_core::{BranchConfiguration, PiSeries, Root, ValuedPoint};

fn root(terms: &[(i64, i64)], mult: i64, truncation: i64) -> Root {
    Root {
        point: ValuedPoint::Affine(PiSeries::from_ints(terms, truncation)),
        mult,
    }
}

/// `y^3 = x^2 (x − π) (x − 1)^2 (x − 1 − π) (x − 2)^2 (x − 2 − π)`, whose
/// skeleton is `K_{3,3}`.
pub fn bipartite_curve() -> BranchConfiguration {
    BranchConfiguration::new(
        3,
        vec![
            root(&[], 2, 4),
            root(&[(1, 1)], 1, 4),
            root(&[(0, 1)], 2, 4),
            root(&[(0, 1), (1, 1)], 1, 4),
            root(&[(0, 2)], 2, 4),
            root(&[(0, 2), (1, 1)], 1, 4),
        ],
    )
    .expect("valid curve")
}

/// `y^n` over `k` roots forming a caterpillar: root `i` is `π^i`, so the
/// separating tree is a path with one branch point per vertex.
pub fn caterpillar_curve(n: u64, k: usize) -> BranchConfiguration {
    let truncation = k as i64 + 1;
    let roots = (0..k)
        .map(|i| {
            let terms = if i == 0 { vec![] } else { vec![(i as i64, 1)] };
            root(&terms, 1, truncation)
        })
        .collect();
    BranchConfiguration::new(n, roots).expect("valid curve")
}

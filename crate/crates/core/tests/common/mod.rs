#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skeleton_core::{BranchConfiguration, PiSeries, Rational, Root, ValuedPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random π-adic point with small digits, clustered enough that deep
/// trees occur.
pub fn random_series(rng: &mut ChaCha8Rng, truncation: i64) -> PiSeries {
    let len = rng.gen_range(0..=truncation.min(4));
    let terms = (0..len)
        .map(|k| {
            let num = rng.gen_range(-2..=2);
            let den = if rng.gen_bool(0.2) { 2 } else { 1 };
            (k, Rational::new(num, den))
        })
        .collect();
    PiSeries::new(terms, truncation)
}

/// Random distinct points of non-negative valuation; fewer than `count`
/// when the truncation leaves too little room.
pub fn random_points(rng: &mut ChaCha8Rng, count: usize, truncation: i64) -> Vec<ValuedPoint> {
    let mut points: Vec<ValuedPoint> = Vec::with_capacity(count);
    for _ in 0..20 * count {
        if points.len() == count {
            break;
        }
        let p = ValuedPoint::Affine(random_series(rng, truncation));
        if points.iter().all(|q| skeleton_core::pairwise_valuation(&p, q).is_ok()) {
            points.push(p);
        }
    }
    points
}

/// A random valid configuration with `n ≤ 12`, at most 8 roots,
/// multiplicities in `[-3, 3]` and truncation at most 6.
pub fn random_configuration(rng: &mut ChaCha8Rng) -> BranchConfiguration {
    loop {
        let n = rng.gen_range(2..=12u64);
        let count = rng.gen_range(1..=8usize);
        let truncation = rng.gen_range(1..=6i64);
        let points = random_points(rng, count, truncation);
        let roots: Vec<Root> = points
            .into_iter()
            .map(|point| {
                let mut mult = 0;
                while mult == 0 {
                    mult = rng.gen_range(-3..=3);
                }
                Root { point, mult }
            })
            .collect();
        if let Ok(cfg) = BranchConfiguration::new(n, roots) {
            return cfg;
        }
    }
}

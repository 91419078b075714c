mod common;

use skeleton_core::divisor::{edge_slopes, reconstruct_divisor, specialize_divisor};
use skeleton_core::tree::{distance_matrix, neighbor_joining, separating_tree};

#[test]
fn neighbor_joining_matches_separating_tree_at_every_truncation() {
    let mut rng = common::rng(11);
    for truncation in 1..=6 {
        for count in 3..=8 {
            let points = common::random_points(&mut rng, count, truncation);
            if points.len() < 3 {
                continue;
            }
            let d = distance_matrix(&points).unwrap();
            d.check_tree_metric().unwrap();
            let nj = neighbor_joining(&d).unwrap();
            let sep = separating_tree(&points).unwrap();
            assert!(nj.strip_leaf_stems().same_leaf_metric(&sep));
        }
    }
}

#[test]
fn slopes_of_random_curves_reconstruct_their_divisor() {
    let mut rng = common::rng(12);
    for _ in 0..300 {
        let cfg = common::random_configuration(&mut rng);
        let tree = separating_tree(cfg.points()).unwrap();
        let div = specialize_divisor(&tree, &cfg.orders()).unwrap();
        let slopes = edge_slopes(&tree, &div);
        assert_eq!(reconstruct_divisor(&tree, &slopes), div.coefficients);
    }
}

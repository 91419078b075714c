mod common;

use skeleton_core::{compute_skeleton, rh_genus};

#[test]
fn genus_is_conserved_on_random_configurations() {
    let mut rng = common::rng(7);
    for _ in 0..2000 {
        let cfg = common::random_configuration(&mut rng);
        let report = compute_skeleton(&cfg).unwrap_or_else(|e| panic!("{cfg:?}: {e}"));
        assert_eq!(report.genus, rh_genus(&cfg), "{cfg:?}");
    }
}

use skeleton_core::moduli::enumerate_trivalent_trees;
use skeleton_core::realize::{realize, satisfies_total_laplacian, verify, CoveringDatum};
use skeleton_core::tree::MetricTree;
use skeleton_core::{compute_skeleton, Rational};

#[test]
fn rational_lengths_are_scaled_to_integers() {
    let t = enumerate_trivalent_trees(6).remove(1);
    let base = t.to_metric_tree();
    let lengths = [Rational::new(1, 2), Rational::new(2, 3), Rational::from_integer(3)];
    let mut edges = base.edges().to_vec();
    for (i, e) in edges.iter_mut().enumerate() {
        e.length = lengths[i % 3].clone();
    }
    let tree = MetricTree::new(base.vertex_count(), edges, Default::default(), 0).unwrap();
    let datum = CoveringDatum {
        ramified: vec![true; tree.edges().len()],
        tree,
        p: 3,
        leaf_counts: t.leaves.clone(),
    };
    let real = realize(&datum).unwrap();
    assert_eq!(real.scale, Rational::from_integer(6));
    assert!(verify(&datum, &real).unwrap());
    let residues: Vec<u64> = real.assignment.residues.values().copied().collect();
    assert!(satisfies_total_laplacian(&datum, &residues));
    assert_eq!(compute_skeleton(&real.configuration).unwrap().genus, 4);
}

#[test]
fn unramified_star_gives_p_copies() {
    // three branch points at each arm end, none at the center, which lifts
    // to p copies
    let tree = MetricTree::new(
        4,
        (1..4)
            .map(|v| skeleton_core::tree::TreeEdge {
                source: 0,
                target: v,
                length: Rational::from_integer(1),
            })
            .collect(),
        Default::default(),
        0,
    )
    .unwrap();
    for p in [3, 5] {
        let datum = CoveringDatum {
            tree: tree.clone(),
            p,
            ramified: vec![false; 3],
            leaf_counts: vec![0, 3, 3, 3],
        };
        let real = realize(&datum).unwrap();
        assert!(verify(&datum, &real).unwrap());
    }
}

fn two_vertices(p: u64, ramified: bool) -> CoveringDatum {
    let edge = skeleton_core::tree::TreeEdge {
        source: 0,
        target: 1,
        length: Rational::from_integer(1),
    };
    CoveringDatum {
        tree: MetricTree::new(2, vec![edge], Default::default(), 0).unwrap(),
        p,
        ramified: vec![ramified],
        leaf_counts: vec![2, 2],
    }
}

#[test]
fn two_vertex_instances_agree_with_brute_force() {
    for ramified in [true, false] {
        let datum = two_vertices(3, ramified);
        let a = skeleton_core::realize::solve_total_laplacian(&datum).unwrap();
        let residues: Vec<u64> = a.residues.values().copied().collect();
        let all = skeleton_core::realize::brute_force_solutions(&datum);
        assert!(all.contains(&residues));
        let side = (residues[2] + residues[3]) % 3;
        assert_eq!(side != 0, ramified);
        assert_eq!(a.exponents.values().sum::<i64>(), 0);
    }
}

#[test]
fn scaling_a_solution_by_a_unit_gives_a_solution() {
    let t = enumerate_trivalent_trees(7).remove(0);
    let tree = t.to_metric_tree();
    for p in [3u64, 5, 7] {
        let datum = CoveringDatum {
            ramified: vec![true; tree.edges().len()],
            tree: tree.clone(),
            p,
            leaf_counts: t.leaves.clone(),
        };
        let a = skeleton_core::realize::solve_total_laplacian(&datum).unwrap();
        for c in 1..p {
            let scaled: Vec<u64> = a.residues.values().map(|x| x * c % p).collect();
            assert!(satisfies_total_laplacian(&datum, &scaled));
        }
    }
}

#[test]
fn hyperelliptic_round_trip_is_exhaustive() {
    use skeleton_core::moduli::is_admissible;
    let mut checked = 0;
    for r in 4..=8 {
        for t in enumerate_trivalent_trees(r) {
            let tree = t.to_metric_tree();
            let m = tree.edges().len();
            for mask in 0u32..(1 << m) {
                let ramified: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
                if !is_admissible(&tree, &ramified, 2) {
                    continue;
                }
                let datum = CoveringDatum {
                    tree: tree.clone(),
                    p: 2,
                    ramified,
                    leaf_counts: t.leaves.clone(),
                };
                assert!(verify(&datum, &realize(&datum).unwrap()).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

mod common;

use common::{worst_fd_error, FD_INSTANCES, FD_TOLERANCE};
use hierfit::embedding::EmbeddingStore;
use hierfit::loss;

macro_rules! fd_test {
    ($name:ident, $kernel:literal, $seed:literal) => {
        #[test]
        fn $name() {
            let (err, n) = worst_fd_error($kernel, $seed);
            assert_eq!(n, FD_INSTANCES);
            assert!(err < FD_TOLERANCE, "{}: relative error {err:e}", $kernel);
        }
    };
}

fd_test!(contrastive_matches_finite_differences, "contrastive", 1);
fd_test!(triplet_attract_matches_finite_differences, "triplet_attract", 2);
fd_test!(triplet_repel_matches_finite_differences, "triplet_repel", 3);
fd_test!(hypernym_triplet_matches_finite_differences, "hypernym_triplet", 4);
fd_test!(quadruplet_matches_finite_differences, "quadruplet", 5);
fd_test!(preservation_matches_finite_differences, "preservation", 6);
fd_test!(attract_repel_reg_matches_finite_differences, "attract_repel_reg", 7);
fd_test!(counterfit_synonym_matches_finite_differences, "counterfit_synonym", 8);
fd_test!(counterfit_antonym_matches_finite_differences, "counterfit_antonym", 9);
fd_test!(
    counterfit_preserve_matches_finite_differences,
    "counterfit_preserve",
    10
);
fd_test!(asymmetric_norm_matches_finite_differences, "asymmetric_norm", 11);

#[test]
fn inactive_hinges_have_exactly_zero_gradients() {
    let store = EmbeddingStore::from_rows([
        ("a", vec![1.0, 0.0, 0.0]),
        ("p", vec![1.0, 0.01, 0.0]),
        ("n", vec![-1.0, 0.0, 0.2]),
    ])
    .unwrap();
    let r = loss::triplet_attract_loss(&store, 0, 1, &[2], 0.5);
    assert_eq!(r.loss, 0.0);
    assert_eq!(r.active_terms, 0);
    assert!(r.grads.values().flatten().all(|&g| g == 0.0));
}

#[test]
fn quadruplet_degenerate_equality_is_zero() {
    let basis = |i: usize| (0..4).map(|k| if k == i { 1.0 } else { 0.0 }).collect::<Vec<f64>>();
    let store = EmbeddingStore::from_rows((0..4).map(|i| (format!("e{i}"), basis(i)))).unwrap();
    let q = loss::quadruplet_hierarchy_loss(&store, 0, 1, 2, &[3], 0.0, 0.0);
    assert_eq!(q.loss, 0.0);
    assert_eq!(q.active_terms, 0);
    assert_eq!(q.total_terms, 4);
    assert!(q.grads.is_empty());
}

#[test]
fn boundary_hinge_contributes_nothing() {
    // D(a, p) = D(a, n) exactly with zero margin.
    let store =
        EmbeddingStore::from_rows([("a", vec![1.0, 0.0]), ("p", vec![0.0, 1.0]), ("n", vec![0.0, -1.0])]).unwrap();
    let r = loss::triplet_attract_loss(&store, 0, 1, &[2], 0.0);
    assert_eq!((r.loss, r.active_terms, r.total_terms), (0.0, 0, 1));
    assert!(r.grads.is_empty());
}

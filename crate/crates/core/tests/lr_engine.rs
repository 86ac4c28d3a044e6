mod common;

use common::{naive_lr, part};
use horncone::horn::{subsets, IndexSet};
use horncone::lr::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn documented_coefficients() {
    assert_eq!(lr_coefficient(&Partition::empty(), &part(&[3, 1]), &part(&[3, 1])), big(1));
    assert_eq!(lr_coefficient(&part(&[1]), &part(&[1]), &part(&[2])), big(1));
    assert_eq!(lr_coefficient(&part(&[1]), &part(&[1]), &part(&[1, 1])), big(1));
    assert_eq!(lr_coefficient(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])), big(2));
    assert_eq!(naive_lr(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])), 2);
    // Weight mismatch and non-containment.
    assert_eq!(lr_coefficient(&part(&[1]), &part(&[1]), &part(&[3])), big(0));
    assert_eq!(lr_coefficient(&part(&[3]), &part(&[1]), &part(&[2, 2])), big(0));
}

#[test]
fn naive_oracle_weight_six() {
    for w in 0..=6 {
        for nu in partitions_of(w) {
            for lam in subpartitions(&nu) {
                for mu in partitions_of(w - lam.weight()) {
                    assert_eq!(
                        lr_coefficient_uncached(&lam, &mu, &nu),
                        big(naive_lr(&lam, &mu, &nu)),
                        "{lam} {mu} {nu}"
                    );
                }
            }
        }
    }
}

#[test]
fn documented_products() {
    let p = multi_product(&[part(&[1]), part(&[1]), part(&[1, 1])], BoxBound::new(2, 2)).unwrap();
    assert_eq!(p.terms().len(), 1);
    assert_eq!(p.coefficient(&part(&[2, 2])), big(1));
    let single = multi_product(&[part(&[2, 1])], BoxBound::new(2, 2)).unwrap();
    assert_eq!(single.terms().len(), 1);
    assert_eq!(single.coefficient(&part(&[2, 1])), big(1));
    assert!(multi_product(&[part(&[2]), part(&[1, 1])], BoxBound::new(2, 2)).unwrap().is_zero());
    assert!(multi_product(&[part(&[3])], BoxBound::new(2, 2)).is_err());
}

#[test]
fn documented_multiplicities() {
    assert_eq!(tensor_multiplicity(&[part(&[1]), part(&[1])], &part(&[2])), big(1));
    assert_eq!(tensor_multiplicity(&[part(&[3, 1])], &part(&[3, 1])), big(1));
    assert_eq!(tensor_multiplicity(&[part(&[1]), part(&[1]), part(&[1])], &part(&[1, 1, 1])), big(1));
    assert_eq!(tensor_multiplicity(&[part(&[1]), part(&[1]), part(&[1])], &part(&[2, 1])), big(2));
}

#[test]
fn index_set_partitions() {
    let set = |e: &[u32], n| IndexSet::new(e.to_vec(), n).unwrap();
    assert_eq!(lambda_of_index_set(&set(&[1, 2], 4)), Partition::empty());
    assert_eq!(lambda_of_index_set(&set(&[2, 4], 4)), part(&[2, 1]));
    assert_eq!(lambda_of_index_set(&set(&[2, 3], 4)), part(&[1, 1]));
    assert_eq!(omega_partition(&set(&[2, 4], 4)), part(&[1]));
    assert_eq!(omega_partition(&set(&[3, 4], 4)), Partition::empty());
    assert_eq!(omega_partition(&set(&[2], 4)), part(&[2]));
}

#[test]
fn complementarity_up_to_eight() {
    for n in 1..=8u32 {
        for r in 1..=n {
            let cols = n - r;
            for i in subsets(r, n) {
                let lam = lambda_of_index_set(&i).padded(r as usize);
                let om = omega_partition(&i).padded(r as usize);
                for j in 0..r as usize {
                    assert_eq!(lam[j] + om[r as usize - 1 - j], cols, "{i:?}");
                }
                assert!(BoxBound::grassmannian(r as usize, n as usize).fits(&omega_partition(&i)));
            }
        }
    }
}

#[test]
fn documented_strips() {
    let (a, b, c) = strip_first_rows(&part(&[2]), &part(&[1]), &part(&[3])).unwrap();
    assert!(a.is_empty() && b.is_empty() && c.is_empty());
    assert_eq!(lr_coefficient(&part(&[2]), &part(&[1]), &part(&[3])), big(1));
    let (a, b, c) = strip_first_rows(&part(&[2, 1]), &part(&[1, 1]), &part(&[3, 2])).unwrap();
    assert_eq!((a.clone(), b.clone(), c.clone()), (part(&[1]), part(&[1]), part(&[2])));
    assert_eq!(lr_coefficient(&part(&[2, 1]), &part(&[1, 1]), &part(&[3, 2])), lr_coefficient(&a, &b, &c));
    let (a, b, c) = strip_first_rows(&part(&[3, 3]), &part(&[3, 3]), &part(&[6, 6])).unwrap();
    assert_eq!(lr_coefficient(&part(&[3, 3]), &part(&[3, 3]), &part(&[6, 6])), lr_coefficient(&a, &b, &c));
    assert!(strip_first_rows(&part(&[2]), &part(&[2]), &part(&[3, 1])).is_err());
}

#[test]
fn symmetry_up_to_six() {
    let pool = partitions_up_to(6, 6);
    for nu in &pool {
        for lam in subpartitions(nu) {
            for mu in partitions_of(nu.weight() - lam.weight()) {
                assert_eq!(lr_coefficient(&lam, &mu, nu), lr_coefficient(&mu, &lam, nu));
            }
        }
    }
}

#[test]
fn duality_in_small_boxes() {
    for rows in 1..=3 {
        for cols in 0..=3 {
            let bound = BoxBound::new(rows, cols);
            let all: Vec<Partition> = (0..=(rows * cols) as u32)
                .flat_map(|w| partitions_in_box(bound, w))
                .collect();
            for a in &all {
                for b in &all {
                    let prod = multi_product(&[a.clone(), b.clone()], bound).unwrap();
                    let top = prod.coefficient(&bound.full());
                    let dual = bound.complement(a).unwrap() == *b;
                    assert_eq!(top == big(1), dual, "{a} {b} in {rows}x{cols}");
                    assert!(top <= big(1));
                }
            }
        }
    }
}

fn partition_strategy(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lr_symmetric(lam in partition_strategy(3, 3), mu in partition_strategy(3, 3), nu in partition_strategy(4, 5)) {
        prop_assert_eq!(lr_coefficient(&lam, &mu, &nu), lr_coefficient(&mu, &lam, &nu));
    }

    #[test]
    fn lr_conjugation_invariant(lam in partition_strategy(3, 3), mu in partition_strategy(3, 3), nu in partition_strategy(4, 5)) {
        prop_assert_eq!(
            lr_coefficient(&lam, &mu, &nu),
            lr_coefficient(&lam.conjugate(), &mu.conjugate(), &nu.conjugate())
        );
    }

    #[test]
    fn cache_does_not_change_results(lam in partition_strategy(3, 3), mu in partition_strategy(3, 3), nu in partition_strategy(4, 5)) {
        prop_assert_eq!(lr_coefficient(&lam, &mu, &nu), lr_coefficient_uncached(&lam, &mu, &nu));
    }

    #[test]
    fn stripping_preserves_coefficients(lam in partition_strategy(3, 3), mu in partition_strategy(3, 3), tail in partition_strategy(3, 3)) {
        // Build ν with ν₁ = λ₁ + μ₁ and weight |λ| + |μ|.
        let head = lam.part(0) + mu.part(0);
        let rest = lam.weight() + mu.weight() - head;
        prop_assume!(tail.weight() == rest && tail.part(0) <= head);
        let mut nu = vec![head];
        nu.extend_from_slice(tail.parts());
        let nu = Partition::new(nu).unwrap();
        let (a, b, c) = strip_first_rows(&lam, &mu, &nu).unwrap();
        prop_assert_eq!(lr_coefficient(&lam, &mu, &nu), lr_coefficient(&a, &b, &c));
    }

    #[test]
    fn products_are_associative(
        a in partition_strategy(3, 3),
        b in partition_strategy(3, 3),
        c in partition_strategy(3, 3),
        rows in 1usize..4,
        cols in 0usize..4,
    ) {
        let bound = BoxBound::new(rows, cols);
        prop_assume!(bound.fits(&a) && bound.fits(&b) && bound.fits(&c));
        let sa = SchubertExpansion::single(a.clone(), bound).unwrap();
        let sb = SchubertExpansion::single(b.clone(), bound).unwrap();
        let sc = SchubertExpansion::single(c.clone(), bound).unwrap();
        let left = sa.mul(&sb).unwrap().mul(&sc).unwrap();
        let right = sa.mul(&sb.mul(&sc).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let swapped = multi_product(&[c, a, b], bound).unwrap();
        prop_assert_eq!(&left, &swapped);
        let degree = sa.codimension().unwrap_or(0) + sb.codimension().unwrap_or(0) + sc.codimension().unwrap_or(0);
        for key in left.terms().keys() {
            prop_assert_eq!(key.weight(), degree);
        }
        if degree as usize > rows * cols {
            prop_assert!(left.is_zero());
        }
    }

    #[test]
    fn tensor_multiplicity_matches_untruncated_product(a in partition_strategy(2, 3), b in partition_strategy(2, 3), nu in partition_strategy(4, 6)) {
        prop_assert_eq!(tensor_multiplicity(&[a.clone(), b.clone()], &nu), lr_coefficient(&a, &b, &nu));
    }
}

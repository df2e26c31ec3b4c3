//! Property tests over random inputs.

use kron_core::bounds::{identity_b, kron_factorial_bound, n_only_bound, tally_product};
use kron_core::engine::KronEngine;
use kron_core::partition::{Partition, PartitionTriple};
use kron_core::permutation::{lex_permutations, Permutation};
use kron_core::stability::{build_additive_tableau, is_stable_face_member, stable_mu_nu};
use kron_core::vanishing::{check_atomic_vanishing, check_vanishing};
use kron_core::vpf::{brute_force_vpf, vpf, DenseTable, MemoTable};
use kron_core::{build_matrix, parse_partition, VpfMatrix};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn partition_strategy(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, max_len).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v, max_len).unwrap()
    })
}

/// A uniformly scattered partition of `size` with at most `len` parts.
fn random_partition(rng: &mut StdRng, size: u64, len: usize) -> Partition {
    let mut bins = vec![0u32; len];
    for _ in 0..size {
        bins[rng.gen_range(0..len)] += 1;
    }
    bins.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(&bins, len).unwrap()
}

fn random_triple(rng: &mut StdRng, m: usize, n: usize, max_size: u64) -> PartitionTriple {
    let size = rng.gen_range(0..=max_size);
    PartitionTriple::new(
        m,
        n,
        &random_partition(rng, size, m * n),
        &random_partition(rng, size, m),
        &random_partition(rng, size, n),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_text_round_trip(p in partition_strategy(6, 20)) {
        let back = parse_partition(&p.to_string(), 6).unwrap();
        prop_assert_eq!(&back, &p);
        let conj = Partition::from_parts(&p.conjugate()).unwrap();
        let twice = conj.conjugate();
        prop_assert_eq!(&twice[..], p.nonzero());
    }

    #[test]
    fn inverse_has_same_sign(images in Just((0u8..6).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        prop_assert_eq!(p.sign(), p.inverse().sign());
        prop_assert_eq!(Permutation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn evaluators_agree_two_by_three(b in prop::collection::vec(0i64..=7, 3)) {
        let a = build_matrix(2, 3).unwrap();
        let memo = MemoTable::<BigUint>::new(&a);
        let brute = brute_force_vpf(&a, &b).unwrap();
        prop_assert_eq!(vpf(&a, &b, &memo).unwrap(), brute.clone());
        let dense = DenseTable::<u64>::build(&a, &b, 1 << 24).unwrap();
        prop_assert_eq!(BigUint::from(dense.get(&b)), brute);
    }

    #[test]
    fn evaluators_agree_two_by_four(b in prop::collection::vec(0i64..=4, 4)) {
        let a = build_matrix(2, 4).unwrap();
        let memo = MemoTable::<u128>::new(&a);
        let brute = brute_force_vpf(&a, &b).unwrap();
        prop_assert_eq!(BigUint::from(vpf(&a, &b, &memo).unwrap()), brute);
    }

    #[test]
    fn column_replacement_never_decreases(
        col in 0usize..11,
        pick in 0usize..3,
        b in prop::collection::vec(0i64..=5, 3),
    ) {
        let a = build_matrix(2, 3).unwrap();
        let entries = &a.columns()[col].entries;
        let legal: Vec<usize> = (0..3).filter(|&k| entries[k] > 0).collect();
        let k = legal[pick % legal.len()];
        let mut e = vec![0u32; 3];
        e[k] = 1;
        let replaced = a.with_column_replaced(col, e).unwrap();
        prop_assert!(brute_force_vpf(&replaced, &b).unwrap() >= brute_force_vpf(&a, &b).unwrap());
    }

    #[test]
    fn basis_matrices_are_products_of_binomials(
        tally in prop::collection::vec(1u64..=3, 3),
        b in prop::collection::vec(0u64..=5, 3),
    ) {
        let mut cols = Vec::new();
        for (k, &t) in tally.iter().enumerate() {
            for _ in 0..t {
                let mut e = vec![0u32; 3];
                e[k] = 1;
                cols.push(e);
            }
        }
        let a = VpfMatrix::from_columns(3, cols).unwrap();
        let bi: Vec<i64> = b.iter().map(|&x| x as i64).collect();
        prop_assert_eq!(brute_force_vpf(&a, &bi).unwrap(), tally_product(&tally, &b));
    }

    #[test]
    fn stable_face_from_random_lambda(lambda in partition_strategy(6, 15)) {
        let (mu, nu) = stable_mu_nu(&lambda, 2, 3).unwrap();
        let t = PartitionTriple::new(2, 3, &lambda, &mu, &nu).unwrap();
        prop_assert!(identity_b(&t).iter().all(|&x| x == 0));
        prop_assert!(is_stable_face_member(&t));
        let tab = build_additive_tableau(2, 3);
        prop_assert_eq!(tab.a_t(&lambda), mu.parts().iter().map(|&x| x as u64).collect::<Vec<_>>());
        prop_assert_eq!(tab.b_t(&lambda), nu.parts().iter().map(|&x| x as u64).collect::<Vec<_>>());
    }

    #[test]
    fn three_by_three_tableau_matches_equations(lambda in partition_strategy(9, 12)) {
        let (mu, nu) = stable_mu_nu(&lambda, 3, 3).unwrap();
        let tab = build_additive_tableau(3, 3);
        prop_assert_eq!(tab.a_t(&lambda), mu.parts().iter().map(|&x| x as u64).collect::<Vec<_>>());
        prop_assert_eq!(tab.b_t(&lambda), nu.parts().iter().map(|&x| x as u64).collect::<Vec<_>>());
    }
}

#[test]
fn lex_signs_match_inversion_count() {
    for (p, s) in lex_permutations(6) {
        assert_eq!(s, p.sign());
    }
}

#[test]
fn additivity_up_to_five() {
    for m in 1..=5 {
        for n in 1..=5 {
            let t = build_additive_tableau(m, n);
            assert!(t.is_bijection() && t.is_additive(), "({m},{n})");
        }
    }
}

#[test]
fn vanishing_formulations_agree() {
    let mut rng = StdRng::seed_from_u64(11);
    for (m, n) in [(2, 3), (3, 2), (3, 3), (2, 4), (4, 3)] {
        for _ in 0..400 {
            let t = random_triple(&mut rng, m, n, 12);
            assert_eq!(
                check_vanishing(&t).forced_zero(),
                check_atomic_vanishing(&t),
                "{t}"
            );
        }
    }
}

#[test]
fn vanishing_formulations_agree_exhaustively() {
    use kron_core::partition::partitions_of;
    for size in 0..=8u32 {
        for l in partitions_of(size, 6) {
            for mu in partitions_of(size, 2) {
                for nu in partitions_of(size, 3) {
                    let t = PartitionTriple::new(2, 3, &l, &mu, &nu).unwrap();
                    assert_eq!(check_vanishing(&t).forced_zero(), check_atomic_vanishing(&t));
                }
            }
        }
    }
}

/// The a-family with the upper summation limit `m + (a+1)(n-1)` and lower
/// limit `m + n`, which only matches `b(Id) >= 0` when `m = 2`.
fn literal_a_family_fails(t: &PartitionTriple) -> bool {
    let (m, n) = (t.m, t.n);
    let l = |k: usize| t.lambda.part(k) as i128;
    (1..m).any(|a| {
        let left: i128 = (1..=a).map(l).sum::<i128>() - (m + n..=m + (a + 1) * (n - 1)).map(l).sum::<i128>();
        let right = t.nu.part(1) as i128 - (a + 1..=m).map(|k| t.mu.part(k) as i128).sum::<i128>();
        left < right
    })
}

#[test]
fn literal_a_range_differs_for_three_rows() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut differ = 0;
    for _ in 0..2000 {
        let t = random_triple(&mut rng, 3, 3, 12);
        let first_ok = (1..=3).map(|k| t.lambda.part(k) as u64).sum::<u64>() >= t.nu.part(1) as u64;
        let literal = !first_ok || literal_a_family_fails(&t) || {
            let r = check_vanishing(&t);
            r.inequalities.iter().filter(|q| q.label.starts_with('b')).any(|q| !q.holds)
        };
        if literal != check_atomic_vanishing(&t) {
            differ += 1;
        }
    }
    assert!(differ > 0);
}

#[test]
fn stable_faces_have_coefficient_one() {
    let mut rng = StdRng::seed_from_u64(3);
    for (m, n) in [(2, 2), (2, 3), (2, 4)] {
        let engine = KronEngine::new(m, n).unwrap();
        for _ in 0..30 {
            let size = rng.gen_range(0..=30);
            let lambda = random_partition(&mut rng, size, m * n);
            let (mu, nu) = stable_mu_nu(&lambda, m, n).unwrap();
            let t = PartitionTriple::new(m, n, &lambda, &mu, &nu).unwrap();
            let r = engine.kronecker(&t).unwrap();
            assert_eq!((r.g.clone(), r.atomic.clone()), (BigUint::from(1u8), BigUint::from(1u8)), "{t}");
        }
    }
}

#[test]
fn size_only_bound_dominates() {
    let mut rng = StdRng::seed_from_u64(9);
    for (m, n) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        for _ in 0..50 {
            let t = random_triple(&mut rng, m, n, 20);
            assert!(n_only_bound(&t).unwrap() >= kron_factorial_bound(&t).unwrap(), "{t}");
        }
    }
}

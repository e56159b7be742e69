use brieskorn::classify::{bp_order, diffeo_offset};
use brieskorn::link_model::{build_family, link_from_unsigned, FamilySpec};
use brieskorn::monodromy::{cover_homology, link_homology, link_rank, milnor_lattice};
use brieskorn::signature::{signature_dp, signature_lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn small_vector(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=7, 2..=max_len).prop_filter("small Milnor number", |e| {
        e.iter().map(|a| a - 1).product::<u64>() <= 400
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_matches_homology(exps in small_vector(5)) {
        let h = link_homology(&exps).unwrap();
        prop_assert_eq!(u128::from(h.rank), link_rank(&exps).unwrap());
    }

    #[test]
    fn cover_period(branch in small_vector(4), k in 1u64..12) {
        // periodic only when 1 is not an eigenvalue of the monodromy
        prop_assume!(link_rank(&branch).unwrap() == 0);
        let d = milnor_lattice(&branch).unwrap().period();
        prop_assert_eq!(cover_homology(&branch, k).unwrap(), cover_homology(&branch, k + d).unwrap());
    }

    #[test]
    fn lattice_matches_dp(base in small_vector(5), extra in 0usize..2) {
        let mut exps = base;
        if exps.len() % 2 == 0 {
            exps.push(2 + extra as u64);
        }
        prop_assert_eq!(signature_lattice(&exps).unwrap(), signature_dp(&exps).unwrap());
    }
}

#[test]
fn offsets_are_antisymmetric() {
    let order = bp_order(2).unwrap().order;
    for k in 1..=6 {
        let a = build_family(&FamilySpec::sphere_product(2, k, 2)).unwrap();
        let b = build_family(&FamilySpec::sphere_product(2, k, 1)).unwrap();
        let ab = diffeo_offset(&a, &b, 2).unwrap();
        let ba = diffeo_offset(&b, &a, 2).unwrap();
        assert_eq!((ab + ba).mod_floor(&order), BigInt::from(0), "k={k}");
    }
}

#[test]
fn offsets_compose() {
    let links: Vec<_> = [[6u64, 3, 2, 2, 2], [12, 3, 2, 2, 2], [18, 3, 2, 2, 2]]
        .iter()
        .map(|e| link_from_unsigned(e).unwrap())
        .collect();
    let off = |i: usize, j: usize| diffeo_offset(&links[i], &links[j], 2).unwrap();
    assert_eq!(
        (off(2, 1) + off(1, 0)).mod_floor(&BigInt::from(28)),
        off(2, 0)
    );
}

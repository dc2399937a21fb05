use std::collections::BTreeSet;

use lcmlab_core::arith::lcm;
use lcmlab_core::constructors::{
    cyclic, direct_product, elementary_abelian, family_group, pc_group, presentation_from_group,
    product_id, symmetric, Family,
};
use lcmlab_core::invariants::{exponent, is_nilpotent, order_sequence, psi};
use lcmlab_core::iso::are_isomorphic;
use lcmlab_core::lcm::{is_lcm_group, lcm_set, product_membership};
use lcmlab_core::{Elem, GroupTable};
use proptest::prelude::*;
use proptest::sample::select;

fn naive_order(g: &GroupTable, x: Elem) -> u64 {
    let mut y = x;
    let mut m = 1;
    while y != 0 {
        y = g.mul(y, x);
        m += 1;
    }
    m
}

fn naive_pow(g: &GroupTable, x: Elem, e: u64) -> Elem {
    (0..e).fold(0, |acc, _| g.mul(acc, x))
}

/// x with o(x^n y) | lcm(o(x^n), o(y)) for every y and n, straight from
/// the definition.
fn lcm_set_oracle(g: &GroupTable) -> Vec<Elem> {
    let n = g.order() as Elem;
    (0..n)
        .filter(|&x| {
            (0..n).all(|y| {
                (1..=naive_order(g, x)).all(|e| {
                    let xe = naive_pow(g, x, e);
                    let l = lcm(naive_order(g, xe), naive_order(g, y));
                    l.is_multiple_of(naive_order(g, g.mul(xe, y)))
                })
            })
        })
        .collect()
}

/// Relabels element ids through `perm` (which must fix 0).
fn relabel(g: &GroupTable, perm: &[Elem]) -> GroupTable {
    let n = g.order();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[perm[a] as usize * n + perm[b] as usize] = perm[g.mul(a as Elem, b as Elem) as usize];
        }
    }
    GroupTable::new(n, table, "relabelled").unwrap()
}

fn small_group() -> impl Strategy<Value = GroupTable> {
    let specs = vec![
        (Family::Cyclic, 1),
        (Family::Cyclic, 6),
        (Family::Cyclic, 12),
        (Family::Dihedral, 6),
        (Family::Dihedral, 8),
        (Family::Dihedral, 12),
        (Family::Quaternion, 8),
        (Family::Quaternion, 16),
        (Family::QuasiDihedral, 16),
        (Family::Modular, 16),
        (Family::Elementary, 8),
        (Family::Symmetric, 4),
        (Family::Alternating, 4),
        (Family::Heisenberg, 3),
    ];
    select(specs).prop_map(|(f, n)| family_group(f, n).unwrap())
}

fn group_with_perm() -> impl Strategy<Value = (GroupTable, Vec<Elem>)> {
    small_group().prop_flat_map(|g| {
        let rest: Vec<Elem> = (1..g.order() as Elem).collect();
        (Just(g), Just(rest).prop_shuffle()).prop_map(|(g, rest)| {
            let mut perm = vec![0];
            perm.extend(rest);
            (g, perm)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lcm_set_matches_definition(g in small_group()) {
        prop_assert_eq!(lcm_set(&g), lcm_set_oracle(&g));
    }

    #[test]
    fn invariants_survive_relabelling((g, perm) in group_with_perm()) {
        let h = relabel(&g, &perm);
        prop_assert_eq!(psi(&g), psi(&h));
        prop_assert_eq!(order_sequence(&g), order_sequence(&h));
        prop_assert_eq!(exponent(&g), exponent(&h));
        prop_assert_eq!(lcm_set(&g).len(), lcm_set(&h).len());
        prop_assert_eq!(is_nilpotent(&g), is_nilpotent(&h));
        let lcm_h: BTreeSet<Elem> = lcm_set(&h).into_iter().collect();
        let mapped: BTreeSet<Elem> = lcm_set(&g).into_iter().map(|x| perm[x as usize]).collect();
        prop_assert_eq!(lcm_h, mapped);
    }

    #[test]
    fn isomorphism_found_for_relabelling((g, perm) in group_with_perm()) {
        let h = relabel(&g, &perm);
        let map = are_isomorphic(&g, &h).unwrap().expect("relabelled copy is isomorphic");
        let image: BTreeSet<Elem> = map.iter().copied().collect();
        prop_assert_eq!(image.len(), g.order());
        for a in g.elements() {
            for b in g.elements() {
                prop_assert_eq!(map[g.mul(a, b) as usize], h.mul(map[a as usize], map[b as usize]));
            }
        }
    }

    #[test]
    fn psi_is_sum_of_orders(g in small_group()) {
        let direct: u64 = g.elements().map(|x| naive_order(&g, x)).sum();
        prop_assert_eq!(psi(&g), direct);
        prop_assert_eq!(order_sequence(&g).total(), g.order() as u64);
    }

    #[test]
    fn product_is_lcm_iff_factors_are(g in small_group(), k in 1u64..=4) {
        let c = cyclic(k).unwrap();
        let gc = direct_product(&g, &c).unwrap();
        prop_assert_eq!(is_lcm_group(&gc), is_lcm_group(&g));
        prop_assert_eq!(psi(&gc) >= psi(&g), true);
    }

    #[test]
    fn product_membership_matches_product(g in small_group(), h in select(vec![1u64, 2, 3, 4])) {
        let h = cyclic(h).unwrap();
        let gh = direct_product(&g, &h).unwrap();
        let good: BTreeSet<Elem> = lcm_set(&gh).into_iter().collect();
        for x in g.elements() {
            for y in h.elements() {
                let member = good.contains(&product_id(x, y, h.order()));
                prop_assert_eq!(product_membership(&g, &h, x, y).unwrap(), member);
            }
        }
    }

    #[test]
    fn p_groups_have_consistent_presentations(
        spec in select(vec![
            (Family::Dihedral, 8),
            (Family::Quaternion, 16),
            (Family::Modular, 27),
            (Family::Heisenberg, 3),
            (Family::Elementary, 16),
        ])
    ) {
        let g = family_group(spec.0, spec.1).unwrap();
        let pres = presentation_from_group(&g).expect("p-groups are polycyclic");
        let h = pc_group(&pres).unwrap();
        prop_assert!(are_isomorphic(&g, &h).unwrap().is_some());
    }
}

#[test]
fn s3_is_not_lcm_and_c2_cubed_is() {
    assert!(!is_lcm_group(&symmetric(3).unwrap()));
    assert!(is_lcm_group(&elementary_abelian(2, 3).unwrap()));
}

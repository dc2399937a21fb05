//! Brute-force oracles shared by the unit tests.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::table::{Elem, GroupTable};

/// Every subset containing the identity and closed under products, found
/// by enumerating all subsets. Only for tiny groups.
pub fn brute_force_subgroups(g: &GroupTable) -> BTreeSet<Vec<Elem>> {
    let n = g.order();
    assert!(n <= 16, "brute force is exponential in the order");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<Elem> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i as Elem).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
        if closed {
            out.insert(members);
        }
    }
    out
}

/// Order of `g` by repeated multiplication, independent of the cache.
pub fn naive_order(g: &GroupTable, x: Elem) -> u32 {
    let mut y = x;
    let mut m = 1;
    while y != 0 {
        y = g.mul(y, x);
        m += 1;
    }
    m
}

//! Element-order invariants: ψ, order sequences, exponent, prime divisors,
//! nilpotency, the Schmidt property and the Fitting subgroup.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::error::Result;
use crate::subgroup::Subgroup;
use crate::table::GroupTable;

/// Element orders as `(order, multiplicity)` pairs, orders increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderSequence {
    entries: Vec<(u32, u32)>,
}

impl OrderSequence {
    pub fn from_orders(orders: impl IntoIterator<Item = u32>) -> Self {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for o in orders {
            *counts.entry(o).or_default() += 1;
        }
        OrderSequence {
            entries: counts.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    /// Number of elements of order `d` (0 when absent).
    pub fn multiplicity(&self, d: u32) -> u32 {
        self.entries
            .binary_search_by_key(&d, |&(o, _)| o)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Total number of elements counted.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Σ order·multiplicity.
    pub fn psi(&self) -> u64 {
        self.entries.iter().map(|&(o, m)| o as u64 * m as u64).sum()
    }

    /// The expanded non-decreasing list of orders.
    pub fn expand(&self) -> Vec<u32> {
        self.entries
            .iter()
            .flat_map(|&(o, m)| core::iter::repeat_n(o, m as usize))
            .collect()
    }
}

impl fmt::Display for OrderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (o, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({o},{m})")?;
        }
        f.write_str(")")
    }
}

/// Sum of the element orders.
pub fn psi(g: &GroupTable) -> u64 {
    let bound = (g.order() as u64).checked_mul(g.max_element_order() as u64);
    assert!(
        bound.is_some_and(|b| b < 1 << 63),
        "psi would overflow 64-bit accumulation"
    );
    g.orders().iter().map(|&o| o as u64).sum()
}

pub fn order_sequence(g: &GroupTable) -> OrderSequence {
    OrderSequence::from_orders(g.orders().iter().copied())
}

/// Order sequence of a subgroup, using the parent's element orders.
pub fn subgroup_order_sequence(g: &GroupTable, h: &Subgroup) -> OrderSequence {
    OrderSequence::from_orders(h.elements().iter().map(|&x| g.order_of(x)))
}

/// Least common multiple of the element orders.
pub fn exponent(g: &GroupTable) -> u64 {
    g.orders().iter().fold(1u64, |acc, &o| arith::lcm(acc, o as u64))
}

pub fn prime_divisors(g: &GroupTable) -> Vec<u64> {
    arith::factorize(g.order() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// The prime `p` when `|G| = p^k` with `k >= 1`.
pub fn p_group_prime(g: &GroupTable) -> Option<u64> {
    arith::prime_power(g.order() as u64).map(|(p, _)| p)
}

/// Whether the lower central series of `h` reaches the identity.
pub fn subgroup_is_nilpotent(g: &GroupTable, h: &Subgroup) -> bool {
    let mut term = h.clone();
    loop {
        if term.is_trivial() {
            return true;
        }
        let next = g.commutator_subgroup(h, &term);
        if next.order() == term.order() {
            return false;
        }
        term = next;
    }
}

/// Nilpotency via the lower central series.
pub fn is_nilpotent(g: &GroupTable) -> bool {
    subgroup_is_nilpotent(g, &g.whole())
}

/// Nilpotency via normality of every Sylow subgroup.
pub fn is_nilpotent_by_sylow(g: &GroupTable) -> bool {
    prime_divisors(g).into_iter().all(|p| {
        let s = g.sylow_subgroup(p).expect("p divides |G|");
        g.is_normal(&s)
    })
}

/// Non-nilpotent with every maximal subgroup nilpotent.
pub fn is_schmidt(g: &GroupTable) -> Result<bool> {
    if is_nilpotent(g) {
        return Ok(false);
    }
    Ok(g.maximal_subgroups()?
        .iter()
        .all(|m| subgroup_is_nilpotent(g, m)))
}

/// The largest nilpotent normal subgroup, as the join of all nilpotent
/// normal subgroups.
pub fn fitting_subgroup(g: &GroupTable) -> Result<Subgroup> {
    let mut fit = g.trivial_subgroup();
    for n in g.normal_subgroups()? {
        if !n.is_subset(&fit) && subgroup_is_nilpotent(g, &n) {
            fit = g.closure_from(&fit, n.generators());
        }
    }
    Ok(fit)
}

/// `O_p(G)`: the intersection of the conjugates of a Sylow `p`-subgroup.
pub fn p_core(g: &GroupTable, p: u64) -> Result<Subgroup> {
    let s = g.sylow_subgroup(p)?;
    let mut members: Vec<_> = s.elements().to_vec();
    for x in g.elements() {
        let c = g.conjugate_subgroup(&s, x);
        members.retain(|&y| c.contains(y));
    }
    g.subgroup_from_elements(&members)
}

/// The Fitting subgroup as the product of the `p`-cores.
pub fn fitting_by_cores(g: &GroupTable) -> Result<Subgroup> {
    let mut fit = g.trivial_subgroup();
    for p in prime_divisors(g) {
        let core = p_core(g, p)?;
        fit = g.closure_from(&fit, core.elements());
    }
    Ok(fit)
}

pub fn euler_phi(n: u64) -> u64 {
    arith::factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

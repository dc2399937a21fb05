//! LCM(G), CP₂(G), Ω_k, P₂ᵏ, LC(G), the lcm and lcm* ratios, sections and
//! the minimal non-LCM test.

use alloc::format;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::invariants::p_group_prime;
use crate::iso::IsoCache;
use crate::section::SectionDescriptor;
use crate::subgroup::Subgroup;
use crate::table::{Elem, GroupTable};
use crate::Rational;

fn divides_lcm(o: u32, a: u32, b: u32) -> bool {
    arith::lcm(a as u64, b as u64).is_multiple_of(o as u64)
}

/// Elements `z` with `o(zy) | lcm(o(z), o(y))` for every `y`.
pub fn pairwise_good(g: &GroupTable) -> FixedBitSet {
    let orders = g.orders();
    let mut good = FixedBitSet::with_capacity(g.order());
    for z in g.elements() {
        let oz = orders[z as usize];
        let row = g.row(z);
        let ok = g
            .elements()
            .all(|y| divides_lcm(orders[row[y as usize] as usize], oz, orders[y as usize]));
        good.set(z as usize, ok);
    }
    good
}

/// LCM(G), sorted: the elements whose whole cyclic subgroup is pairwise
/// good.
pub fn lcm_set(g: &GroupTable) -> Vec<Elem> {
    let good = pairwise_good(g);
    g.elements()
        .filter(|&x| good.contains(x as usize) && g.powers(x).iter().all(|&p| good.contains(p as usize)))
        .collect()
}

/// LCM(G) straight from the definition: `o(xⁿy) | lcm(o(xⁿ), o(y))` for
/// `n = 1..o(x)` and all `y`.
pub fn lcm_set_naive(g: &GroupTable) -> Vec<Elem> {
    g.elements()
        .filter(|&x| {
            let mut xn = x;
            (1..=g.order_of(x)).all(|_| {
                let ok = g.elements().all(|y| {
                    divides_lcm(g.order_of(g.mul(xn, y)), g.order_of(xn), g.order_of(y))
                });
                xn = g.mul(xn, x);
                ok
            })
        })
        .collect()
}

/// CP₂(G): elements `x` with `o(xy) <= max(o(x), o(y))` for every `y`.
pub fn cp2_set(g: &GroupTable) -> Vec<Elem> {
    let orders = g.orders();
    g.elements()
        .filter(|&x| {
            let ox = orders[x as usize];
            let row = g.row(x);
            g.elements()
                .all(|y| orders[row[y as usize] as usize] <= ox.max(orders[y as usize]))
        })
        .collect()
}

fn require_p_group(g: &GroupTable) -> Result<u64> {
    if g.order() == 1 {
        return Ok(1);
    }
    p_group_prime(g).ok_or_else(|| {
        GroupError::Precondition(format!("group of order {} is not a p-group", g.order()))
    })
}

/// `{x : x^(p^k) = 1}` for a `p`-group, sorted.
pub fn exponent_set(g: &GroupTable, k: u32) -> Result<Vec<Elem>> {
    let p = require_p_group(g)?;
    let bound = p.saturating_pow(k);
    Ok(g.elements()
        .filter(|&x| bound % g.order_of(x) as u64 == 0)
        .collect())
}

/// Ω_k(G) = ⟨x : x^(p^k) = 1⟩.
pub fn omega(g: &GroupTable, k: u32) -> Result<Subgroup> {
    let gens = exponent_set(g, k)?;
    Ok(g.closure_from(&g.trivial_subgroup(), &gens))
}

/// P₂ᵏ(G) = `{x ∈ Ω_k(G) : o(x) <= p^k}`.
pub fn p2k_set(g: &GroupTable, k: u32) -> Result<Vec<Elem>> {
    let p = require_p_group(g)?;
    let bound = p.saturating_pow(k);
    Ok(omega(g, k)?
        .elements()
        .iter()
        .copied()
        .filter(|&x| g.order_of(x) as u64 <= bound)
        .collect())
}

/// `log_p exp(G)` for a `p`-group.
fn exponent_log(g: &GroupTable, p: u64) -> u32 {
    let e = g.max_element_order() as u64;
    let mut k = 0;
    let mut q = 1;
    while q < e {
        q *= p;
        k += 1;
    }
    k
}

/// Whether P₂ᵏ(G) = Ω_k(G) for every `k` up to `log_p exp(G)`.
pub fn is_p2_star(g: &GroupTable) -> Result<bool> {
    let p = require_p_group(g)?;
    for k in 1..=exponent_log(g, p) {
        if p2k_set(g, k)?.len() != omega(g, k)?.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether Ω_k(G) = `{x : x^(p^k) = 1}` for every `k`.
pub fn omega_matches_exponent_set(g: &GroupTable) -> Result<bool> {
    let p = require_p_group(g)?;
    for k in 1..=exponent_log(g, p) {
        if omega(g, k)?.elements() != &exponent_set(g, k)?[..] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every section of the `p`-group is a P₂*-group.
pub fn is_p2(g: &GroupTable) -> Result<bool> {
    require_p_group(g)?;
    for s in sections(g)? {
        if !is_p2_star(&s.quotient)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// LC(G): the subgroup generated by LCM(G).
pub fn lc_subgroup(g: &GroupTable) -> Subgroup {
    let set = lcm_set(g);
    g.closure_from(&g.trivial_subgroup(), &set)
}

/// |LCM(G)| / |G|.
pub fn lcm_ratio(g: &GroupTable) -> Rational {
    Rational::new(lcm_set(g).len() as u64, g.order() as u64)
}

pub fn is_lcm_group(g: &GroupTable) -> bool {
    let good = pairwise_good(g);
    good.count_ones(..) == g.order()
}

/// Sections `H/N`, one per isomorphism class, with `H` running over
/// subgroups up to conjugacy (including `G`) and `N` over normal subgroups
/// of `H`.
pub fn sections(g: &GroupTable) -> Result<Vec<SectionDescriptor>> {
    let mut cache: IsoCache<()> = IsoCache::new();
    let mut out = Vec::new();
    for h in g.enumerate_subgroups(true)? {
        let (hg, local) = g.induced_group(&h)?;
        for n in hg.normal_subgroups()? {
            let lifted: Vec<Elem> = n.elements().iter().map(|&x| local[x as usize]).collect();
            let n = g.subgroup_from_elements(&lifted)?;
            let s = g.section(&h, &n)?;
            let (_, fresh) = cache.insert_with(&s.quotient, || Ok(()))?;
            if fresh {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// lcm*(G): the least lcm ratio over all sections.
pub fn lcm_star(g: &GroupTable) -> Result<Rational> {
    lcm_star_cached(g, &mut IsoCache::new())
}

/// [`lcm_star`] reusing lcm ratios across calls, keyed by isomorphism
/// class.
pub fn lcm_star_cached(g: &GroupTable, cache: &mut IsoCache<Rational>) -> Result<Rational> {
    let mut best = Rational::from_integer(1);
    for s in sections(g)? {
        let (i, _) = cache.insert_with(&s.quotient, || Ok(lcm_ratio(&s.quotient)))?;
        best = best.min(*cache.value(i));
    }
    Ok(best)
}

/// Not LCM, while every maximal subgroup is.
pub fn is_minimal_non_lcm(g: &GroupTable) -> Result<bool> {
    if is_lcm_group(g) {
        return Ok(false);
    }
    for m in g.maximal_subgroups()? {
        let (mg, _) = g.induced_group(&m)?;
        if !is_lcm_group(&mg) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of `(x, y)` in LCM(G×H) for an LCM-group `H`, decided by
/// `o(xⁿg') | lcm(o(xⁿ), o(g'), o(yⁿ), o(h'))` over all `n`, `g'`, `h'`.
pub fn product_membership(g: &GroupTable, h: &GroupTable, x: Elem, y: Elem) -> Result<bool> {
    g.check_elem(x as usize)?;
    h.check_elem(y as usize)?;
    if !is_lcm_group(h) {
        return Err(GroupError::Precondition(
            "second factor is not an LCM-group".into(),
        ));
    }
    let mut h_orders: Vec<u32> = h.orders().to_vec();
    h_orders.sort_unstable();
    h_orders.dedup();
    let period = arith::lcm(g.order_of(x) as u64, h.order_of(y) as u64);
    let mut xn = x;
    let mut yn = y;
    for _ in 0..period {
        let a = arith::lcm(g.order_of(xn) as u64, h.order_of(yn) as u64);
        for gp in g.elements() {
            let b = arith::lcm(a, g.order_of(gp) as u64);
            let o = g.order_of(g.mul(xn, gp)) as u64;
            if h_orders
                .iter()
                .any(|&d| !arith::lcm(b, d as u64).is_multiple_of(o))
            {
                return Ok(false);
            }
        }
        xn = g.mul(xn, x);
        yn = h.mul(yn, y);
    }
    Ok(true)
}

/// Everything the lcm analysis computes for one group.
#[derive(Clone, Debug)]
pub struct LcmReport {
    pub lcm_set: Vec<Elem>,
    pub cp2_set: Vec<Elem>,
    pub lc_subgroup: Subgroup,
    pub lcm_ratio: Rational,
    pub is_lcm_group: bool,
    pub lcm_star: Option<Rational>,
    pub minimal_non_lcm: Option<bool>,
}

/// Builds an [`LcmReport`]; the section-based fields are filled only when
/// `with_sections` is set.
pub fn lcm_report(g: &GroupTable, with_sections: bool) -> Result<LcmReport> {
    let set = lcm_set(g);
    let lc = g.closure_from(&g.trivial_subgroup(), &set);
    let ratio = Rational::new(set.len() as u64, g.order() as u64);
    let (star, minimal) = if with_sections {
        (Some(lcm_star(g)?), Some(is_minimal_non_lcm(g)?))
    } else {
        (None, None)
    };
    Ok(LcmReport {
        is_lcm_group: set.len() == g.order(),
        lcm_set: set,
        cp2_set: cp2_set(g),
        lc_subgroup: lc,
        lcm_ratio: ratio,
        lcm_star: star,
        minimal_non_lcm: minimal,
    })
}

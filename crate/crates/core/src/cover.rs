//! Minimum 𝓕-cover search over a finite universe of catalogued groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::constructors::direct_product;
use crate::error::{GroupError, Result};
use crate::invariants::p_group_prime;
use crate::iso::is_cover;
use crate::table::GroupTable;

/// Position of a group in a catalog: its order and its local index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalogId {
    pub order: u32,
    pub index: u32,
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.order, self.index)
    }
}

/// Groups to search, with per-order completeness flags.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    groups: Vec<(CatalogId, GroupTable)>,
    complete: BTreeMap<u32, bool>,
}

impl Universe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: CatalogId, group: GroupTable) {
        self.groups.push((id, group));
        self.complete.entry(id.order).or_insert(false);
    }

    /// Marks whether the universe holds every group of `order` up to
    /// isomorphism.
    pub fn set_complete(&mut self, order: u32, complete: bool) {
        self.complete.insert(order, complete);
    }

    pub fn is_complete(&self, order: u32) -> bool {
        order == 1 && self.groups.iter().any(|(id, _)| id.order == 1)
            || self.complete.get(&order).copied().unwrap_or(false)
    }

    pub fn groups(&self) -> &[(CatalogId, GroupTable)] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// The family 𝓕 to cover, with an optional bound on candidate orders.
#[derive(Clone, Debug)]
pub struct CoverQuery {
    pub family: Vec<GroupTable>,
    pub max_order: Option<usize>,
    /// Restrict candidates to `p`-groups when every member is a `p`-group
    /// for the same `p`; a minimum cover of such a family is a `p`-group.
    pub p_group_prefilter: bool,
}

impl CoverQuery {
    pub fn new(family: Vec<GroupTable>) -> Self {
        CoverQuery {
            family,
            max_order: None,
            p_group_prefilter: true,
        }
    }
}

/// Outcome of a cover search. The answer is always relative to the
/// universe; `exhaustive` is set when every order that could host a
/// smaller or equal cover was complete in it.
#[derive(Clone, Debug)]
pub struct CoverResult {
    /// Order of the minimum covers found, if any.
    pub order: Option<usize>,
    pub covers: Vec<(CatalogId, GroupTable)>,
    pub exhaustive: bool,
    /// Order of the direct product of the family, always a cover.
    pub product_order: u64,
    /// The direct product itself, when it fits the table cap.
    pub product: Option<GroupTable>,
}

fn family_prime(family: &[GroupTable]) -> Option<u64> {
    let mut prime = None;
    for f in family {
        if f.order() == 1 {
            continue;
        }
        let p = p_group_prime(f)?;
        if prime.is_some_and(|q| q != p) {
            return None;
        }
        prime = Some(p);
    }
    prime
}

/// Orders a cover could have: multiples of every member's order, and
/// powers of `p` under the prefilter.
fn admissible(order: u64, base: u64, prime: Option<u64>) -> bool {
    order.is_multiple_of(base) && prime.is_none_or(|p| arith::prime_power(order).is_some_and(|(q, _)| q == p) || order == 1)
}

/// All universe groups of the least order covering the family.
pub fn minimum_covers(query: &CoverQuery, universe: &Universe) -> Result<CoverResult> {
    if query.family.is_empty() {
        return Err(GroupError::Parameter("cover family is empty".into()));
    }
    if universe.is_empty() {
        return Err(GroupError::Precondition("universe is empty".into()));
    }
    let base = query
        .family
        .iter()
        .fold(1u64, |acc, f| arith::lcm(acc, f.order() as u64));
    let prime = if query.p_group_prefilter {
        family_prime(&query.family)
    } else {
        None
    };
    let product_order = query
        .family
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.order() as u64))
        .ok_or_else(|| GroupError::Parameter("family product order overflows".into()))?;
    let product = query.family[1..]
        .iter()
        .try_fold(query.family[0].clone(), |acc, f| direct_product(&acc, f))
        .ok();

    let mut candidates: Vec<&(CatalogId, GroupTable)> = universe
        .groups
        .iter()
        .filter(|(id, _)| {
            admissible(id.order as u64, base, prime)
                && query.max_order.is_none_or(|m| id.order as usize <= m)
        })
        .collect();
    candidates.sort_by_key(|(id, _)| *id);

    let mut found: Vec<(CatalogId, GroupTable)> = Vec::new();
    for (id, g) in candidates {
        if let Some((first, _)) = found.first() {
            if first.order != id.order {
                break;
            }
        }
        if g.order() != id.order as usize {
            return Err(GroupError::Precondition(format!(
                "catalog entry {id} has order {}",
                g.order()
            )));
        }
        if is_cover(g, &query.family)? {
            found.push((*id, g.clone()));
        }
    }

    let order = found.first().map(|(id, _)| id.order as usize);
    let limit = order
        .map(|o| o as u64)
        .or(query.max_order.map(|m| m as u64))
        .unwrap_or(product_order)
        .min(product_order);
    let exhaustive = (1..=limit)
        .filter(|&m| admissible(m, base, prime))
        .all(|m| u32::try_from(m).is_ok_and(|m| universe.is_complete(m)));
    Ok(CoverResult {
        order,
        covers: found,
        exhaustive,
        product_order,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{
        alternating, cyclic, elementary_abelian, family_group, symmetric, Family,
    };
    use alloc::vec;

    fn id(order: u32, index: u32) -> CatalogId {
        CatalogId { order, index }
    }

    fn order16_universe() -> Universe {
        let mut u = Universe::new();
        let groups = [
            cyclic(16).unwrap(),
            family_group(Family::Dihedral, 16).unwrap(),
            family_group(Family::Quaternion, 16).unwrap(),
            family_group(Family::QuasiDihedral, 16).unwrap(),
            family_group(Family::Modular, 16).unwrap(),
        ];
        for (i, g) in groups.into_iter().enumerate() {
            u.push(id(16, i as u32 + 1), g);
        }
        u.push(id(8, 1), cyclic(8).unwrap());
        u.push(id(8, 2), family_group(Family::Quaternion, 8).unwrap());
        u
    }

    #[test]
    fn quaternion_cyclic_family() {
        let u = order16_universe();
        let q = CoverQuery::new(vec![
            family_group(Family::Quaternion, 8).unwrap(),
            cyclic(8).unwrap(),
        ]);
        let res = minimum_covers(&q, &u).unwrap();
        assert_eq!(res.order, Some(16));
        let ids: Vec<u32> = res.covers.iter().map(|(i, _)| i.index).collect();
        assert_eq!(ids, vec![3, 4]);
        assert!(!res.exhaustive);
        assert_eq!(res.product_order, 64);
    }

    #[test]
    fn single_member() {
        let mut u = Universe::new();
        u.push(id(1, 1), GroupTable::trivial());
        u.push(id(2, 1), cyclic(2).unwrap());
        u.set_complete(2, true);
        let res = minimum_covers(&CoverQuery::new(vec![cyclic(2).unwrap()]), &u).unwrap();
        assert_eq!(res.covers.len(), 1);
        assert_eq!(res.covers[0].0, id(2, 1));
        assert!(res.exhaustive);
    }

    #[test]
    fn a5_covers_a4_and_d10() {
        let mut u = Universe::new();
        u.push(id(12, 1), alternating(4).unwrap());
        u.push(id(24, 1), symmetric(4).unwrap());
        u.push(id(60, 1), alternating(5).unwrap());
        u.push(id(120, 1), symmetric(5).unwrap());
        let q = CoverQuery::new(vec![
            alternating(4).unwrap(),
            family_group(Family::Dihedral, 10).unwrap(),
        ]);
        let res = minimum_covers(&q, &u).unwrap();
        assert_eq!(res.order, Some(60));
        assert_eq!(res.covers.len(), 1);
    }

    #[test]
    fn errors_and_prefilter() {
        let u = Universe::new();
        assert!(minimum_covers(&CoverQuery::new(vec![cyclic(2).unwrap()]), &u).is_err());
        assert!(minimum_covers(&CoverQuery::new(vec![]), &order16_universe()).is_err());
        assert_eq!(family_prime(&[cyclic(4).unwrap(), elementary_abelian(2, 3).unwrap()]), Some(2));
        assert_eq!(family_prime(&[cyclic(4).unwrap(), cyclic(3).unwrap()]), None);
        assert!(admissible(16, 8, Some(2)));
        assert!(!admissible(24, 8, Some(2)));
    }
}

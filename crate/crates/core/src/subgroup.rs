//! Subgroups of a [`GroupTable`] and the lattice machinery around them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::limits;
use crate::table::{Elem, GroupTable, IDENTITY};

/// A subgroup, stored as a sorted element list plus a membership mask over
/// the parent's ids. The parent group is not referenced; every operation
/// takes it explicitly.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: FixedBitSet,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Smaller subgroups first, then lexicographic by sorted ids.
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    fn from_mask(mask: FixedBitSet, generators: Vec<Elem>) -> Self {
        let elements = mask.ones().map(|g| g as Elem).collect();
        Subgroup {
            elements,
            mask,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sorted element ids.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.mask.contains(g as usize)
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    /// A generating set (not necessarily minimal).
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

impl GroupTable {
    /// Smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[Elem]) -> Result<Subgroup> {
        for &g in gens {
            self.check_elem(g as usize)?;
        }
        Ok(self.closure_from(&self.trivial_subgroup(), gens))
    }

    /// `<base, extra>`, saturating from the elements of `base`.
    pub fn closure_from(&self, base: &Subgroup, extra: &[Elem]) -> Subgroup {
        let mut gens = base.generators.clone();
        for &g in extra {
            if g != IDENTITY && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut mask = base.mask.clone();
        let mut list: Vec<Elem> = base.elements.clone();
        // Elements of `base` are already closed under its own generators.
        let base_len = list.len();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            let pool = if i < base_len { extra } else { &gens[..] };
            for &s in pool {
                let y = self.mul(x, s);
                if !mask.put(y as usize) {
                    list.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_mask(mask, gens)
    }

    /// Subgroup from an explicit element set, which must already be closed.
    pub fn subgroup_from_elements(&self, elements: &[Elem]) -> Result<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(self.order());
        for &g in elements {
            self.check_elem(g as usize)?;
            mask.insert(g as usize);
        }
        let sub = Subgroup::from_mask(mask, elements.iter().copied().filter(|&g| g != 0).collect());
        if !self.is_closed(&sub) {
            return Err(GroupError::Precondition(
                "element set is not a subgroup".into(),
            ));
        }
        Ok(sub)
    }

    /// Closure check: identity, products and inverses stay inside.
    pub fn is_closed(&self, h: &Subgroup) -> bool {
        h.contains(IDENTITY)
            && h.elements
                .iter()
                .all(|&a| h.contains(self.inv(a)) && h.elements.iter().all(|&b| h.contains(self.mul(a, b))))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        Subgroup::from_mask(mask, Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert_range(..);
        Subgroup::from_mask(mask, self.elements().skip(1).collect())
    }

    /// Generating set grown greedily: each step adds the element giving the
    /// largest subgroup, ties broken by least id.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let mut current = self.trivial_subgroup();
        while current.order() < self.order() {
            let mut best: Option<(usize, Elem)> = None;
            let mut tried = FixedBitSet::with_capacity(self.order());
            for g in self.elements() {
                if current.contains(g) || tried.contains(g as usize) {
                    continue;
                }
                // Generators of the same cyclic subgroup give the same join.
                for x in self.powers(g) {
                    tried.insert(x as usize);
                }
                let size = self.closure_from(&current, &[g]).order();
                if best.is_none_or(|(s, _)| size > s) {
                    best = Some((size, g));
                }
                if size == self.order() {
                    break;
                }
            }
            let (_, g) = best.unwrap();
            current = self.closure_from(&current, &[g]);
        }
        current.generators
    }

    /// All subgroups, or one per conjugacy class when `up_to_conjugacy` is
    /// set. Built from the cyclic subgroups by repeatedly joining with
    /// cyclic subgroups until nothing new appears. Sorted by order, then by
    /// element ids.
    pub fn enumerate_subgroups(&self, up_to_conjugacy: bool) -> Result<Vec<Subgroup>> {
        self.check_subgroup_bound()?;
        let cyclic = self.cyclic_subgroups();
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let mut all: Vec<Subgroup> = Vec::new();
        for c in &cyclic {
            if seen.insert(c.elements.clone()) {
                all.push(c.clone());
            }
        }
        let mut frontier: Vec<Subgroup> = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let g = c.generators.first().copied().unwrap_or(IDENTITY);
                    if h.contains(g) {
                        continue;
                    }
                    let j = self.closure_from(h, &[g]);
                    if seen.insert(j.elements.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        if up_to_conjugacy {
            Ok(self.conjugacy_representatives(all))
        } else {
            Ok(all)
        }
    }

    fn check_subgroup_bound(&self) -> Result<()> {
        let bound = limits::subgroup_bound();
        if self.order() > bound {
            return Err(GroupError::ResourceLimit {
                what: "subgroup enumeration order",
                limit: bound as u64,
            });
        }
        Ok(())
    }

    /// Distinct cyclic subgroups, each generated by its least generator.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut covered = FixedBitSet::with_capacity(self.order());
        let mut out = Vec::new();
        for g in self.elements() {
            if covered.contains(g as usize) {
                continue;
            }
            let o = self.order_of(g) as u64;
            let powers = self.powers(g);
            for (e, &x) in powers.iter().enumerate() {
                if arith::gcd(e as u64, o) == 1 {
                    covered.insert(x as usize);
                }
            }
            let mut mask = FixedBitSet::with_capacity(self.order());
            for &x in &powers {
                mask.insert(x as usize);
            }
            let gens = if g == IDENTITY { vec![] } else { vec![g] };
            out.push(Subgroup::from_mask(mask, gens));
        }
        out
    }

    /// Keeps the first subgroup (in input order) of each conjugacy class.
    fn conjugacy_representatives(&self, subgroups: Vec<Subgroup>) -> Vec<Subgroup> {
        let mut assigned: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let mut reps = Vec::new();
        for h in subgroups {
            if assigned.contains(&h.elements) {
                continue;
            }
            for g in self.elements() {
                let mut conj: Vec<Elem> = h
                    .elements
                    .iter()
                    .map(|&x| self.conjugate_elem(x, g))
                    .collect();
                conj.sort_unstable();
                assigned.insert(conj);
            }
            reps.push(h);
        }
        reps
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let all = self.enumerate_subgroups(false)?;
        let proper: Vec<&Subgroup> = all.iter().filter(|h| h.order() < self.order()).collect();
        Ok(proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subset(k))
            })
            .map(|h| (*h).clone())
            .collect())
    }

    /// Conjugacy classes, each sorted, classes ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x as usize) {
                continue;
            }
            let mut class = Vec::new();
            for g in self.elements() {
                let y = self.conjugate_elem(x, g);
                if !seen.put(y as usize) {
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Size of the conjugacy class of each element.
    pub fn class_sizes_by_element(&self) -> Vec<u32> {
        let mut sizes = vec![0u32; self.order()];
        for class in self.conjugacy_classes() {
            for &x in &class {
                sizes[x as usize] = class.len() as u32;
            }
        }
        sizes
    }

    /// Every normal subgroup, trivial and improper included. Each normal
    /// subgroup is a join of normal closures of single classes, so those
    /// closures are joined pairwise until nothing new appears.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.check_subgroup_bound()?;
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let mut closures: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            let n = self.closure_from(&self.trivial_subgroup(), &class);
            if seen.insert(n.elements.clone()) {
                closures.push(n);
            }
        }
        let mut all = closures.clone();
        let mut frontier = closures.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for n in &frontier {
                for m in &closures {
                    if m.is_subset(n) {
                        continue;
                    }
                    let j = self.closure_from(n, &m.generators);
                    if seen.insert(j.elements.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    /// Whether `h` is invariant under conjugation by every element.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizes(&self.whole_generators(), h)
    }

    fn whole_generators(&self) -> Vec<Elem> {
        self.elements().collect()
    }

    /// Whether conjugation by each of `by` maps `h` into itself.
    pub fn normalizes(&self, by: &[Elem], h: &Subgroup) -> bool {
        by.iter().all(|&g| {
            h.generators
                .iter()
                .all(|&x| h.contains(self.conjugate_elem(x, g)))
        })
    }

    /// `{g : g^-1 H g = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&g| self.normalizes(&[g], h))
            .collect();
        self.closure_from(&self.trivial_subgroup(), &members)
    }

    /// `g^-1 H g` as a subgroup.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        for &x in &h.elements {
            mask.insert(self.conjugate_elem(x, g) as usize);
        }
        let gens = h
            .generators
            .iter()
            .map(|&x| self.conjugate_elem(x, g))
            .collect();
        Subgroup::from_mask(mask, gens)
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect();
        let mut mask = FixedBitSet::with_capacity(self.order());
        for &g in &members {
            mask.insert(g as usize);
        }
        Subgroup::from_mask(mask, members.into_iter().filter(|&g| g != 0).collect())
    }

    /// `[A, B]`: the subgroup generated by all `a^-1 b^-1 a b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms = FixedBitSet::with_capacity(self.order());
        for &x in &a.elements {
            for &y in &b.elements {
                comms.insert(self.commutator(x, y) as usize);
            }
        }
        let gens: Vec<Elem> = comms.ones().map(|g| g as Elem).collect();
        self.closure_from(&self.trivial_subgroup(), &gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// A Sylow `p`-subgroup: grown from a `p`-element by adjoining
    /// `p`-elements from the normalizer until the full `p`-part is reached.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        let n = self.order() as u64;
        if !arith::is_prime(p) || !n.is_multiple_of(p) {
            return Err(GroupError::Precondition(format!(
                "{p} is not a prime divisor of {n}"
            )));
        }
        let target = p_part(n, p) as usize;
        let is_p_elem = |g: Elem| arith::prime_power(self.order_of(g) as u64).is_some_and(|(q, _)| q == p);
        let mut current = self.trivial_subgroup();
        while current.order() < target {
            let norm = self.normalizer(&current);
            let next = norm
                .elements
                .iter()
                .copied()
                .find(|&g| !current.contains(g) && is_p_elem(g))
                .expect("normalizer of a non-Sylow p-subgroup has a p-element outside it");
            current = self.closure_from(&current, &[next]);
        }
        debug_assert_eq!(current.order(), target);
        Ok(current)
    }

    /// The subgroup `h` as a group in its own right. Local id `i` is the
    /// `i`-th smallest parent id, so the identity stays at 0. Returns the
    /// group and the local-to-parent id map.
    pub fn induced_group(&self, h: &Subgroup) -> Result<(GroupTable, Vec<Elem>)> {
        let m = h.order();
        let mut local = vec![Elem::MAX; self.order()];
        for (i, &g) in h.elements.iter().enumerate() {
            local[g as usize] = i as Elem;
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &h.elements {
            for &b in &h.elements {
                let c = local[self.mul(a, b) as usize];
                if c == Elem::MAX {
                    return Err(GroupError::Precondition("not closed under products".into()));
                }
                table.push(c);
            }
        }
        let group = GroupTable::new(m, table, format!("{}[{}]", self.label(), m))?;
        Ok((group, h.elements.clone()))
    }
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut acc = 1;
    while n.is_multiple_of(p) {
        n /= p;
        acc *= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cyclic, family_group, Family};
    use crate::testing::brute_force_subgroups;

    fn d8() -> GroupTable {
        family_group(Family::Dihedral, 8).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = d8();
        // a = 1, b = 4 in the a^i b^j numbering (id = i + 4j).
        let a2 = g.mul(1, 1);
        assert_eq!(g.subgroup_closure(&[a2, 4]).unwrap().order(), 4);
        assert_eq!(g.subgroup_closure(&[]).unwrap().elements(), &[0]);
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.subgroup_closure(&[3, 2]).unwrap().order(), 6);
        assert!(c6.subgroup_closure(&[6]).is_err());
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for (fam, n, expected) in [
            (Family::Quaternion, 8, 6),
            (Family::Symmetric, 3, 6),
            (Family::Cyclic, 7, 2),
            (Family::Dihedral, 8, 10),
            (Family::Alternating, 4, 10),
        ] {
            let g = family_group(fam, n).unwrap();
            let subs = g.enumerate_subgroups(false).unwrap();
            assert_eq!(subs.len(), expected, "{fam:?} {n}");
            let brute = brute_force_subgroups(&g);
            let ours: BTreeSet<Vec<Elem>> = subs.iter().map(|h| h.elements().to_vec()).collect();
            assert_eq!(ours, brute);
            for h in &subs {
                assert_eq!(g.order() % h.order(), 0);
                assert!(g.is_closed(h));
            }
        }
    }

    #[test]
    fn conjugacy_mode() {
        // S3: 1, three conjugate C2, C3, S3.
        let s3 = family_group(Family::Symmetric, 3).unwrap();
        assert_eq!(s3.enumerate_subgroups(true).unwrap().len(), 4);
        // D8: 1, Z, {b}-type, {ab}-type, C4, two V4, D8.
        assert_eq!(d8().enumerate_subgroups(true).unwrap().len(), 8);
    }

    #[test]
    fn maximal_subgroup_examples() {
        let maxes = d8().maximal_subgroups().unwrap();
        assert_eq!(maxes.len(), 3);
        let cyclic4 = maxes.iter().filter(|h| h.elements().iter().any(|&x| d8().order_of(x) == 4)).count();
        assert_eq!(cyclic4, 1);
        let c12 = cyclic(12).unwrap();
        let orders: Vec<usize> = c12.maximal_subgroups().unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, [4, 6]);
        let c5 = cyclic(5).unwrap();
        let m = c5.maximal_subgroups().unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].is_trivial());
    }

    #[test]
    fn normal_subgroup_examples() {
        let s3 = family_group(Family::Symmetric, 3).unwrap();
        let orders: Vec<usize> = s3.normal_subgroups().unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 3, 6]);
        let q8 = family_group(Family::Quaternion, 8).unwrap();
        assert_eq!(q8.normal_subgroups().unwrap().len(), 6);
        let c2c4 = crate::constructors::direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap();
        assert_eq!(
            c2c4.normal_subgroups().unwrap(),
            c2c4.enumerate_subgroups(false).unwrap()
        );
    }

    #[test]
    fn class_examples() {
        let sizes = |g: &GroupTable| {
            let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(&family_group(Family::Symmetric, 3).unwrap()), [1, 2, 3]);
        assert_eq!(sizes(&family_group(Family::Quaternion, 8).unwrap()), [1, 1, 2, 2, 2]);
        assert_eq!(sizes(&cyclic(5).unwrap()), [1; 5]);
    }

    #[test]
    fn center_and_commutators() {
        assert_eq!(d8().center().order(), 2);
        assert_eq!(family_group(Family::Quaternion, 8).unwrap().center().order(), 2);
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.center().order(), 6);
        assert!(c6.derived_subgroup().is_trivial());
        let s3 = family_group(Family::Symmetric, 3).unwrap();
        assert_eq!(s3.derived_subgroup().order(), 3);
        let d = d8().derived_subgroup();
        assert_eq!(d.order(), 2);
        assert!(d.contains(d8().mul(1, 1)));
    }

    #[test]
    fn sylow_examples() {
        let s3 = family_group(Family::Symmetric, 3).unwrap();
        assert_eq!(s3.sylow_subgroup(3).unwrap().order(), 3);
        let a4 = family_group(Family::Alternating, 4).unwrap();
        assert_eq!(a4.sylow_subgroup(2).unwrap().order(), 4);
        assert_eq!(cyclic(12).unwrap().sylow_subgroup(2).unwrap().order(), 4);
        assert!(s3.sylow_subgroup(5).is_err());
        let s4 = family_group(Family::Symmetric, 4).unwrap();
        assert_eq!(s4.sylow_subgroup(2).unwrap().order(), 8);
    }

    #[test]
    fn induced_group_keeps_identity() {
        let g = d8();
        let h = g.subgroup_closure(&[1]).unwrap();
        let (sub, map) = g.induced_group(&h).unwrap();
        assert_eq!(sub.order(), 4);
        assert_eq!(map[0], 0);
        assert_eq!(sub.max_element_order(), 4);
    }
}

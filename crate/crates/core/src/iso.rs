//! Isomorphism and embedding tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GroupError, Result};
use crate::invariants::{order_sequence, subgroup_order_sequence, OrderSequence};
use crate::limits;
use crate::table::{Elem, GroupTable, IDENTITY};

/// Cheap isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoFingerprint {
    pub order: usize,
    pub order_sequence: OrderSequence,
    pub abelian: bool,
    pub center: OrderSequence,
    pub derived: OrderSequence,
    /// Sorted class sizes with multiplicities.
    pub class_sizes: Vec<(u32, u32)>,
}

pub fn fingerprint(g: &GroupTable) -> IsoFingerprint {
    let classes = g.conjugacy_classes();
    let class_sizes = OrderSequence::from_orders(classes.iter().map(|c| c.len() as u32));
    IsoFingerprint {
        order: g.order(),
        order_sequence: order_sequence(g),
        abelian: classes.len() == g.order(),
        center: subgroup_order_sequence(g, &g.center()),
        derived: subgroup_order_sequence(g, &g.derived_subgroup()),
        class_sizes: class_sizes.entries().to_vec(),
    }
}

/// Per-element invariants preserved by isomorphisms: order, class size and
/// number of square roots.
fn element_signatures(g: &GroupTable) -> Vec<(u32, u32, u32)> {
    let sizes = g.class_sizes_by_element();
    let mut roots = vec![0u32; g.order()];
    for x in g.elements() {
        roots[g.mul(x, x) as usize] += 1;
    }
    g.elements()
        .map(|x| (g.order_of(x), sizes[x as usize], roots[x as usize]))
        .collect()
}

/// Backtracking search for an injective homomorphism `from -> to` that
/// sends the generators of `from` to candidates with matching keys.
struct MonoSearch<'a> {
    from: &'a GroupTable,
    to: &'a GroupTable,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    map: Vec<Elem>,
    used: Vec<bool>,
    steps: u64,
}

impl<'a> MonoSearch<'a> {
    fn new(from: &'a GroupTable, to: &'a GroupTable, from_keys: &[u64], to_keys: &[u64]) -> Self {
        let gens = from.small_generating_set();
        let candidates = gens
            .iter()
            .map(|&s| {
                to.elements()
                    .filter(|&t| to_keys[t as usize] == from_keys[s as usize])
                    .collect()
            })
            .collect();
        let mut map = vec![Elem::MAX; from.order()];
        map[IDENTITY as usize] = IDENTITY;
        let mut used = vec![false; to.order()];
        used[IDENTITY as usize] = true;
        MonoSearch {
            from,
            to,
            gens,
            candidates,
            map,
            used,
            steps: 0,
        }
    }

    /// Assigns `gens[level] -> t` and closes the map under right
    /// multiplication by the first `level + 1` generators. Returns the
    /// newly assigned elements, or `None` after undoing on a conflict.
    fn extend(&mut self, level: usize, t: Elem) -> Result<Option<Vec<Elem>>> {
        let active: Vec<Elem> = self.gens[..=level].to_vec();
        let mut assigned: Vec<Elem> = Vec::new();
        let mut queue: Vec<Elem> = Vec::new();
        // Everything already mapped must be re-multiplied by the new
        // generator; new elements by all active generators.
        let mut ok = true;
        let old: Vec<Elem> = self
            .from
            .elements()
            .filter(|&x| self.map[x as usize] != Elem::MAX)
            .collect();
        let mut pending: Vec<(Elem, usize)> = old.iter().map(|&x| (x, level)).collect();
        let images: Vec<Elem> = active
            .iter()
            .enumerate()
            .map(|(i, &g)| if i == level { t } else { self.map[g as usize] })
            .collect();
        loop {
            while let Some((x, gi)) = pending.pop() {
                self.steps += 1;
                if self.steps > limits::ISO_SEARCH_BUDGET {
                    self.undo(&assigned);
                    return Err(GroupError::ResourceLimit {
                        what: "isomorphism search extensions",
                        limit: limits::ISO_SEARCH_BUDGET,
                    });
                }
                let y = self.from.mul(x, active[gi]);
                let img = self.to.mul(self.map[x as usize], images[gi]);
                let cur = self.map[y as usize];
                if cur == Elem::MAX {
                    if self.used[img as usize] {
                        ok = false;
                        break;
                    }
                    self.map[y as usize] = img;
                    self.used[img as usize] = true;
                    assigned.push(y);
                    queue.push(y);
                } else if cur != img {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
            match queue.pop() {
                Some(y) => pending.extend((0..=level).map(|gi| (y, gi))),
                None => break,
            }
        }
        if ok {
            Ok(Some(assigned))
        } else {
            self.undo(&assigned);
            Ok(None)
        }
    }

    fn undo(&mut self, assigned: &[Elem]) {
        for &y in assigned {
            let img = self.map[y as usize];
            self.used[img as usize] = false;
            self.map[y as usize] = Elem::MAX;
        }
    }

    fn search(&mut self, level: usize) -> Result<bool> {
        if level == self.gens.len() {
            return Ok(true);
        }
        let s = self.gens[level];
        for ci in 0..self.candidates[level].len() {
            let t = self.candidates[level][ci];
            if self.used[t as usize] {
                continue;
            }
            // gens[level] is outside the subgroup generated so far, so it
            // is unassigned before extending.
            debug_assert_eq!(self.map[s as usize], Elem::MAX);
            if let Some(assigned) = self.extend(level, t)? {
                if self.search(level + 1)? {
                    return Ok(true);
                }
                self.undo(&assigned);
            }
        }
        Ok(false)
    }

    fn run(mut self) -> Result<Option<Vec<Elem>>> {
        if self.search(0)? {
            debug_assert!(self.map.iter().all(|&x| x != Elem::MAX));
            let ok = self.from.elements().all(|a| {
                self.from.elements().all(|b| {
                    self.map[self.from.mul(a, b) as usize]
                        == self.to.mul(self.map[a as usize], self.map[b as usize])
                })
            });
            assert!(ok, "monomorphism search produced a non-homomorphism");
            Ok(Some(self.map))
        } else {
            Ok(None)
        }
    }
}

fn keys_from(sigs: &[(u32, u32, u32)]) -> Vec<u64> {
    sigs.iter()
        .map(|&(o, c, r)| (o as u64) << 40 | (c as u64) << 20 | r as u64)
        .collect()
}

/// An explicit isomorphism `g -> h` (as the image of each id of `g`), or
/// `None` when the groups are not isomorphic.
pub fn are_isomorphic(g: &GroupTable, h: &GroupTable) -> Result<Option<Vec<Elem>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    isomorphism_unscreened(g, h)
}

/// [`are_isomorphic`] for groups already known to share a fingerprint.
pub fn isomorphism_unscreened(g: &GroupTable, h: &GroupTable) -> Result<Option<Vec<Elem>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let gs = element_signatures(g);
    let hs = element_signatures(h);
    let mut a = gs.clone();
    let mut b = hs.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }
    MonoSearch::new(g, h, &keys_from(&gs), &keys_from(&hs)).run()
}

/// An injective homomorphism `f -> g`, if `g` has a subgroup isomorphic
/// to `f`.
pub fn find_embedding(f: &GroupTable, g: &GroupTable) -> Result<Option<Vec<Elem>>> {
    if !g.order().is_multiple_of(f.order()) {
        return Ok(None);
    }
    if f.order() == g.order() {
        return are_isomorphic(f, g);
    }
    let mut need = order_sequence(f).entries().to_vec();
    need.retain(|&(o, m)| order_sequence(g).multiplicity(o) < m);
    if !need.is_empty() {
        return Ok(None);
    }
    let fk: Vec<u64> = f.orders().iter().map(|&o| o as u64).collect();
    let gk: Vec<u64> = g.orders().iter().map(|&o| o as u64).collect();
    MonoSearch::new(f, g, &fk, &gk).run()
}

/// Whether `g` has a subgroup isomorphic to `f`.
pub fn embeds(f: &GroupTable, g: &GroupTable) -> Result<bool> {
    Ok(find_embedding(f, g)?.is_some())
}

/// Whether `g` embeds every member of `family`.
pub fn is_cover(g: &GroupTable, family: &[GroupTable]) -> Result<bool> {
    for f in family {
        if !embeds(f, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The homomorphism `from -> to` sending `gens[i]` to `images[i]`, if
/// one exists and `gens` generates `from`.
pub fn hom_from_generators(
    from: &GroupTable,
    gens: &[Elem],
    to: &GroupTable,
    images: &[Elem],
) -> Option<Vec<Elem>> {
    assert_eq!(gens.len(), images.len());
    let mut map = vec![Elem::MAX; from.order()];
    map[IDENTITY as usize] = IDENTITY;
    let mut queue = vec![IDENTITY];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = from.mul(x, s);
            let img = to.mul(map[x as usize], t);
            match map[y as usize] {
                Elem::MAX => {
                    map[y as usize] = img;
                    queue.push(y);
                }
                cur if cur != img => return None,
                _ => {}
            }
        }
    }
    if map.contains(&Elem::MAX) {
        return None;
    }
    Some(map)
}

/// Groups bucketed up to isomorphism, each class carrying a value.
#[derive(Clone, Debug, Default)]
pub struct IsoCache<V> {
    classes: Vec<(IsoFingerprint, GroupTable, V)>,
}

impl<V> IsoCache<V> {
    pub fn new() -> Self {
        IsoCache {
            classes: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class isomorphic to `g`, if present.
    pub fn find(&self, g: &GroupTable, fp: &IsoFingerprint) -> Result<Option<usize>> {
        for (i, (f, rep, _)) in self.classes.iter().enumerate() {
            if f == fp && isomorphism_unscreened(g, rep)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn get(&self, g: &GroupTable) -> Result<Option<&V>> {
        let fp = fingerprint(g);
        Ok(self.find(g, &fp)?.map(|i| &self.classes[i].2))
    }

    /// Returns the class index for `g`, inserting `make()` for a new
    /// class. The flag is true when the class is new.
    pub fn insert_with(
        &mut self,
        g: &GroupTable,
        make: impl FnOnce() -> Result<V>,
    ) -> Result<(usize, bool)> {
        let fp = fingerprint(g);
        if let Some(i) = self.find(g, &fp)? {
            return Ok((i, false));
        }
        self.classes.push((fp, g.clone(), make()?));
        Ok((self.classes.len() - 1, true))
    }

    pub fn value(&self, i: usize) -> &V {
        &self.classes[i].2
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupTable, &V)> {
        self.classes.iter().map(|(_, g, v)| (g, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{
        alternating, cyclic, direct_product, elementary_abelian, family_group, symmetric, Family,
    };

    fn check_iso(g: &GroupTable, h: &GroupTable, map: &[Elem]) {
        let mut seen = vec![false; h.order()];
        for &x in map {
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
        }
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(map[g.mul(a, b) as usize], h.mul(map[a as usize], map[b as usize]));
            }
        }
    }

    #[test]
    fn examples() {
        let c6 = cyclic(6).unwrap();
        let c2c3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let map = are_isomorphic(&c6, &c2c3).unwrap().unwrap();
        check_iso(&c6, &c2c3, &map);
        let d8 = family_group(Family::Dihedral, 8).unwrap();
        let q8 = family_group(Family::Quaternion, 8).unwrap();
        assert!(are_isomorphic(&d8, &q8).unwrap().is_none());
        assert!(are_isomorphic(&cyclic(4).unwrap(), &elementary_abelian(2, 2).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn reflexive_and_relabelled() {
        let groups = [
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
            family_group(Family::QuasiDihedral, 16).unwrap(),
            family_group(Family::Heisenberg, 3).unwrap(),
            direct_product(&family_group(Family::Dihedral, 8).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ];
        for g in &groups {
            let map = are_isomorphic(g, g).unwrap().unwrap();
            check_iso(g, g, &map);
            // Relabel by a fixed permutation keeping 0 in place.
            let n = g.order();
            let perm: Vec<usize> = (0..n).map(|i| if i == 0 { 0 } else { (i * 7919) % (n - 1) + 1 }).collect();
            let mut seen = vec![false; n];
            if perm.iter().all(|&p| !core::mem::replace(&mut seen[p], true)) {
                let mut inv = vec![0; n];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                let h = GroupTable::from_fn(n, "relabelled", |a, b| {
                    perm[g.mul(inv[a] as Elem, inv[b] as Elem) as usize]
                })
                .unwrap();
                let map = are_isomorphic(g, &h).unwrap().unwrap();
                check_iso(g, &h, &map);
            }
        }
    }

    #[test]
    fn family_embeddings() {
        let q8 = family_group(Family::Quaternion, 8).unwrap();
        let q16 = family_group(Family::Quaternion, 16).unwrap();
        let d16 = family_group(Family::Dihedral, 16).unwrap();
        let m16 = family_group(Family::Modular, 16).unwrap();
        let c8 = cyclic(8).unwrap();
        assert!(embeds(&q8, &q16).unwrap());
        assert!(!embeds(&q8, &d16).unwrap());
        assert!(embeds(&c8, &q16).unwrap());
        assert!(is_cover(&q16, &[q8.clone(), c8.clone()]).unwrap());
        assert!(!is_cover(&m16, &[q8.clone(), c8.clone()]).unwrap());
        assert!(is_cover(&q16, core::slice::from_ref(&q16)).unwrap());
        assert!(!embeds(&cyclic(3).unwrap(), &q16).unwrap());
    }

    #[test]
    fn embeds_matches_subgroup_scan() {
        let fam = [
            cyclic(2).unwrap(),
            cyclic(4).unwrap(),
            elementary_abelian(2, 2).unwrap(),
            symmetric(3).unwrap(),
            family_group(Family::Dihedral, 8).unwrap(),
            family_group(Family::Quaternion, 8).unwrap(),
        ];
        for g in [symmetric(4).unwrap(), family_group(Family::QuasiDihedral, 16).unwrap()] {
            let subs = g.enumerate_subgroups(false).unwrap();
            for f in &fam {
                let by_scan = subs.iter().any(|h| {
                    h.order() == f.order() && {
                        let (hg, _) = g.induced_group(h).unwrap();
                        are_isomorphic(&hg, f).unwrap().is_some()
                    }
                });
                assert_eq!(embeds(f, &g).unwrap(), by_scan, "{} in {}", f.label(), g.label());
            }
        }
    }

    #[test]
    fn homomorphisms_from_generators() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        assert_eq!(hom_from_generators(&c4, &[1], &c2, &[1]).unwrap(), vec![0, 1, 0, 1]);
        assert!(hom_from_generators(&c2, &[1], &c4, &[1]).is_none());
        assert!(hom_from_generators(&c4, &[2], &c4, &[2]).is_none());
    }

    #[test]
    fn iso_cache_classes() {
        let mut cache = IsoCache::new();
        for g in [
            cyclic(6).unwrap(),
            direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap(),
            symmetric(3).unwrap(),
            family_group(Family::Dihedral, 6).unwrap(),
        ] {
            cache.insert_with(&g, || Ok(())).unwrap();
        }
        assert_eq!(cache.len(), 2);
    }
}

//! The dense Cayley-table representation every other module builds on.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{GroupError, Result};
use crate::limits;

/// Element id. The identity is always 0.
pub type Elem = u16;

pub const IDENTITY: Elem = 0;

const SAMPLE_SEED: u64 = 0x5eed_1c3a_7ab1_e000;

/// A finite group stored as its full multiplication table.
///
/// Instances are immutable once built and always satisfy the group axioms:
/// construction validates the Latin-square property, the identity row and
/// column, inverses and associativity, then caches inverses and element
/// orders.
#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    label: String,
}

impl PartialEq for GroupTable {
    /// Equality of tables (same ids, same products); labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Validates `table` (row-major, `table[g * n + h] = g * h`) and builds
    /// the group.
    pub fn new(n: usize, table: Vec<Elem>, label: impl Into<String>) -> Result<Self> {
        Self::build(n, table, label.into(), &[])
    }

    /// Like [`GroupTable::new`], with a known generating set used by the
    /// sampled associativity check on large tables.
    pub fn with_generators(
        n: usize,
        table: Vec<Elem>,
        label: impl Into<String>,
        generators: &[Elem],
    ) -> Result<Self> {
        Self::build(n, table, label.into(), generators)
    }

    /// Builds a table from a product closure over `0..n`.
    pub fn from_fn(
        n: usize,
        label: impl Into<String>,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        check_cap(n)?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(GroupError::InvalidTable(format!(
                        "product {a}*{b} = {c} is not an element id"
                    )));
                }
                table.push(c as Elem);
            }
        }
        Self::new(n, table, label)
    }

    /// Builds a table already known to be a group (for example a direct
    /// product of validated tables); only inverses and orders are computed.
    pub(crate) fn from_group_table(n: usize, table: Vec<Elem>, label: String) -> Result<Self> {
        check_cap(n)?;
        debug_assert_eq!(table.len(), n * n);
        let mut inverses = vec![0 as Elem; n];
        for (g, inv) in inverses.iter_mut().enumerate() {
            let row = &table[g * n..(g + 1) * n];
            *inv = row.iter().position(|&x| x == IDENTITY).expect("group row") as Elem;
        }
        let mut group = GroupTable {
            n,
            table,
            inverses,
            orders: Vec::new(),
            label,
        };
        group.orders = (0..n).map(|g| group.compute_order(g as Elem)).collect();
        Ok(group)
    }

    pub fn trivial() -> Self {
        GroupTable {
            n: 1,
            table: vec![0],
            inverses: vec![0],
            orders: vec![1],
            label: String::from("C:1"),
        }
    }

    fn build(n: usize, table: Vec<Elem>, label: String, generators: &[Elem]) -> Result<Self> {
        check_cap(n)?;
        if n == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if table.len() != n * n {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= n) {
            return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
        }
        for g in 0..n {
            if table[g] as usize != g || table[g * n] as usize != g {
                return Err(GroupError::InvalidTable(format!(
                    "id 0 does not act as identity on {g}"
                )));
            }
        }
        check_latin(n, &table)?;

        let mut inverses = vec![0 as Elem; n];
        for g in 0..n {
            let row = &table[g * n..(g + 1) * n];
            let h = row.iter().position(|&x| x == IDENTITY).unwrap();
            if table[h * n + g] != IDENTITY {
                return Err(GroupError::InvalidTable(format!(
                    "right inverse of {g} is not a left inverse"
                )));
            }
            inverses[g] = h as Elem;
        }

        let mut group = GroupTable {
            n,
            table,
            inverses,
            orders: Vec::new(),
            label,
        };
        group.check_associativity(generators)?;
        group.orders = (0..n).map(|g| group.compute_order(g as Elem)).collect();
        if let Some(g) = (0..n).find(|&g| !n.is_multiple_of(group.orders[g] as usize)) {
            return Err(GroupError::InvalidTable(format!(
                "order of {g} does not divide {n}"
            )));
        }
        Ok(group)
    }

    fn check_associativity(&self, generators: &[Elem]) -> Result<()> {
        let n = self.n;
        let t = &self.table;
        let fail = |a: usize, b: usize, c: usize| {
            Err(GroupError::InvalidTable(format!(
                "associativity fails on ({a}, {b}, {c})"
            )))
        };
        if n <= limits::FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                let ra = &t[a * n..(a + 1) * n];
                for b in 0..n {
                    let rab = &t[ra[b] as usize * n..(ra[b] as usize + 1) * n];
                    let rb = &t[b * n..(b + 1) * n];
                    for c in 0..n {
                        if rab[c] != ra[rb[c] as usize] {
                            return fail(a, b, c);
                        }
                    }
                }
            }
            return Ok(());
        }

        // Large tables: every (a, b, s) with s in a generating set, plus a
        // seeded random sample of arbitrary triples.
        let gens = self.greedy_generators(generators);
        for &s in &gens {
            let s = s as usize;
            for a in 0..n {
                for b in 0..n {
                    let ab = t[a * n + b] as usize;
                    let bs = t[b * n + s] as usize;
                    if t[ab * n + s] != t[a * n + bs] {
                        return fail(a, b, s);
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..limits::ASSOCIATIVITY_SAMPLES {
            let a = rng.next_u32() as usize % n;
            let b = rng.next_u32() as usize % n;
            let c = rng.next_u32() as usize % n;
            let ab = t[a * n + b] as usize;
            let bc = t[b * n + c] as usize;
            if t[ab * n + c] != t[a * n + bc] {
                return fail(a, b, c);
            }
        }
        Ok(())
    }

    /// Generating set grown by right-multiplication closure from the
    /// identity; valid before associativity is known.
    fn greedy_generators(&self, seed: &[Elem]) -> Vec<Elem> {
        let n = self.n;
        let mut reached = FixedBitSet::with_capacity(n);
        reached.insert(0);
        let mut reached_list = vec![0usize];
        let mut gens = Vec::new();
        let mut seed = seed.iter().copied().filter(|&g| (g as usize) < n);
        while reached_list.len() < n {
            let s = seed
                .next()
                .unwrap_or_else(|| (0..n).find(|&x| !reached.contains(x)).unwrap() as Elem);
            gens.push(s);
            // Rescan from the start: old elements have not seen `s` yet.
            let mut i = 0;
            while i < reached_list.len() {
                let x = reached_list[i];
                for &g in &gens {
                    let y = self.table[x * n + g as usize] as usize;
                    if !reached.put(y) {
                        reached_list.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    fn compute_order(&self, g: Elem) -> u32 {
        let mut x = g;
        let mut m = 1;
        while x != IDENTITY {
            x = self.mul(x, g);
            m += 1;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    /// Cached order of `g`; panics when `g` is out of range.
    #[inline]
    pub fn order_of(&self, g: Elem) -> u32 {
        self.orders[g as usize]
    }

    /// Order of element `g`, with a domain error for ids out of range.
    pub fn element_order(&self, g: usize) -> Result<u32> {
        self.check_elem(g)?;
        Ok(self.orders[g])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a as usize * self.n..(a as usize + 1) * self.n]
    }

    pub fn raw_table(&self) -> &[Elem] {
        &self.table
    }

    pub fn check_elem(&self, g: usize) -> Result<()> {
        if g < self.n {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange {
                id: g,
                order: self.n,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.n).map(|g| g as Elem)
    }

    pub fn pow(&self, g: Elem, e: u64) -> Elem {
        let e = e % self.order_of(g) as u64;
        let mut acc = IDENTITY;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// `g^-1 h^-1 g h`.
    pub fn commutator(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    /// `g^-1 x g`.
    pub fn conjugate_elem(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Powers `g^0, g^1, ..., g^(o(g)-1)` in exponent order.
    pub fn powers(&self, g: Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.order_of(g) as usize);
        let mut x = IDENTITY;
        loop {
            out.push(x);
            x = self.mul(x, g);
            if x == IDENTITY {
                return out;
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    /// Largest element order.
    pub fn max_element_order(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }
}

fn check_cap(n: usize) -> Result<()> {
    let cap = limits::max_table_order();
    if n > cap {
        return Err(GroupError::ResourceLimit {
            what: "table order",
            limit: cap as u64,
        });
    }
    Ok(())
}

fn check_latin(n: usize, table: &[Elem]) -> Result<()> {
    let mut seen = FixedBitSet::with_capacity(n);
    for g in 0..n {
        seen.clear();
        for &x in &table[g * n..(g + 1) * n] {
            if seen.put(x as usize) {
                return Err(GroupError::InvalidTable(format!("row {g} repeats {x}")));
            }
        }
    }
    for h in 0..n {
        seen.clear();
        for g in 0..n {
            let x = table[g * n + h];
            if seen.put(x as usize) {
                return Err(GroupError::InvalidTable(format!("column {h} repeats {x}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{family_group, Family};

    fn cyclic_table(n: usize) -> Vec<Elem> {
        (0..n * n).map(|i| ((i / n + i % n) % n) as Elem).collect()
    }

    #[test]
    fn cached_orders_match_repeated_multiplication() {
        for (kind, param) in [(Family::Dihedral, 12), (Family::QuasiDihedral, 32), (Family::Symmetric, 4)] {
            let g = family_group(kind, param).unwrap();
            for x in g.elements() {
                assert_eq!(g.order_of(x), crate::testing::naive_order(&g, x));
            }
        }
    }

    #[test]
    fn cyclic_orders() {
        let c6 = GroupTable::new(6, cyclic_table(6), "C:6").unwrap();
        assert_eq!(c6.element_order(1).unwrap(), 6);
        assert_eq!(c6.orders(), &[1, 6, 3, 2, 3, 6]);
        assert_eq!(c6.inv(1), 5);
        assert!(c6.is_abelian());
        assert_eq!(c6.powers(2), [0, 2, 4]);
    }

    #[test]
    fn named_element_orders() {
        // a = id 1, b = id k in the a^i b^j numbering.
        let d8 = family_group(Family::Dihedral, 8).unwrap();
        assert_eq!(d8.element_order(4).unwrap(), 2);
        let q8 = family_group(Family::Quaternion, 8).unwrap();
        assert_eq!(q8.element_order(1).unwrap(), 4);
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let c6 = GroupTable::new(6, cyclic_table(6), "C:6").unwrap();
        assert_eq!(
            c6.element_order(6),
            Err(GroupError::ElementOutOfRange { id: 6, order: 6 })
        );
    }

    #[test]
    fn rejects_bad_tables() {
        // Not a Latin square.
        let mut t = cyclic_table(4);
        t[5] = 1;
        assert!(matches!(
            GroupTable::new(4, t, "bad"),
            Err(GroupError::InvalidTable(_))
        ));
        // Identity not at 0.
        let t: Vec<Elem> = (0..9).map(|i| ((i / 3 + i % 3 + 1) % 3) as Elem).collect();
        assert!(GroupTable::new(3, t, "bad").is_err());
        // Latin square with identity 0 that is not associative (order-5 loop).
        let loop5: [[Elem; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let t: Vec<Elem> = loop5.iter().flatten().copied().collect();
        let err = GroupTable::new(5, t, "loop").unwrap_err();
        assert!(matches!(err, GroupError::InvalidTable(ref m) if m.contains("associativity")));
    }

    #[test]
    fn cap_is_enforced() {
        let err = GroupTable::from_fn(5000, "big", |a, b| (a + b) % 5000).unwrap_err();
        assert!(matches!(err, GroupError::ResourceLimit { .. }));
    }

    #[test]
    fn large_tables_use_sampled_check() {
        let c = GroupTable::from_fn(2000, "C:2000", |a, b| (a + b) % 2000).unwrap();
        assert_eq!(c.max_element_order(), 2000);
    }
}

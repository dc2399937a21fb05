//! Polycyclic presentations and collection.
//!
//! Generators are indexed from 0 here; the text format in the companion
//! crate numbers them from 1.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::limits;
use crate::subgroup::Subgroup;
use crate::table::{Elem, GroupTable, IDENTITY};

/// A normal word: `(generator, exponent)` pairs with strictly increasing
/// generators and exponents in `1..relative_order`. Empty means identity.
pub type Word = Vec<(usize, u32)>;

/// Generators `g_0, ..., g_{n-1}` with prime relative orders `m_i`,
/// power relations `g_i^{m_i} = w_i` and conjugation relations
/// `g_i^-1 g_j g_i = w_ij` (`i < j`), all right-hand sides being words in
/// generators after `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PcPresentation {
    relative_orders: Vec<u32>,
    powers: Vec<Word>,
    conjugates: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    pub fn new(relative_orders: Vec<u32>) -> Result<Self> {
        if let Some(&m) = relative_orders.iter().find(|&&m| !arith::is_prime(m as u64)) {
            return Err(GroupError::InconsistentPresentation(format!(
                "relative order {m} is not prime"
            )));
        }
        let n = relative_orders.len();
        Ok(PcPresentation {
            relative_orders,
            powers: vec![Vec::new(); n],
            conjugates: BTreeMap::new(),
        })
    }

    pub fn ngens(&self) -> usize {
        self.relative_orders.len()
    }

    pub fn relative_orders(&self) -> &[u32] {
        &self.relative_orders
    }

    /// Product of the relative orders: the order of a consistent
    /// presentation.
    pub fn order(&self) -> u64 {
        self.relative_orders.iter().map(|&m| m as u64).product()
    }

    fn check_word(&self, base: usize, word: &[(usize, u32)]) -> Result<()> {
        let mut last = base;
        for (pos, &(g, e)) in word.iter().enumerate() {
            if g >= self.ngens() {
                return Err(GroupError::InconsistentPresentation(format!(
                    "generator {} does not exist",
                    g + 1
                )));
            }
            if g <= last && !(pos == 0 && g > base) {
                return Err(GroupError::InconsistentPresentation(format!(
                    "word for relation at generator {} is not triangular/increasing",
                    base + 1
                )));
            }
            if e == 0 || e >= self.relative_orders[g] {
                return Err(GroupError::InconsistentPresentation(format!(
                    "exponent {e} out of range for generator {}",
                    g + 1
                )));
            }
            last = g;
        }
        Ok(())
    }

    /// Sets `g_i^{m_i} = word`.
    pub fn set_power(&mut self, i: usize, word: Word) -> Result<()> {
        if i >= self.ngens() {
            return Err(GroupError::InconsistentPresentation(format!(
                "generator {} does not exist",
                i + 1
            )));
        }
        self.check_word(i, &word)?;
        self.powers[i] = word;
        Ok(())
    }

    /// Sets `g_i^-1 g_j g_i = word` for `i < j`.
    pub fn set_conjugate(&mut self, j: usize, i: usize, word: Word) -> Result<()> {
        if i >= j || j >= self.ngens() {
            return Err(GroupError::InconsistentPresentation(format!(
                "conjugation relation ({}, {}) needs i < j <= ngens",
                j + 1,
                i + 1
            )));
        }
        self.check_word(i, &word)?;
        if word == [(j, 1)] {
            self.conjugates.remove(&(j, i));
        } else {
            self.conjugates.insert((j, i), word);
        }
        Ok(())
    }

    pub fn power(&self, i: usize) -> &Word {
        &self.powers[i]
    }

    /// The word for `g_j^{g_i}`, or `None` when the two commute.
    pub fn conjugate(&self, j: usize, i: usize) -> Option<&Word> {
        self.conjugates.get(&(j, i))
    }

    /// Non-trivial conjugation relations keyed by `(j, i)`.
    pub fn conjugates(&self) -> &BTreeMap<(usize, usize), Word> {
        &self.conjugates
    }

    /// Id of the normal word with the given exponent vector: mixed radix
    /// with `g_0` most significant, so the identity is id 0.
    pub fn encode(&self, exponents: &[u32]) -> usize {
        exponents
            .iter()
            .zip(&self.relative_orders)
            .fold(0usize, |acc, (&e, &m)| acc * m as usize + e as usize)
    }

    pub fn decode(&self, mut id: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.ngens()];
        for (slot, &m) in out.iter_mut().zip(&self.relative_orders).rev() {
            *slot = (id % m as usize) as u32;
            id /= m as usize;
        }
        out
    }
}

fn letters(word: &[(usize, u32)]) -> Vec<usize> {
    word.iter()
        .flat_map(|&(g, e)| core::iter::repeat_n(g, e as usize))
        .collect()
}

/// Collection from the left on exponent vectors.
struct Collector {
    orders: Vec<u32>,
    power_letters: Vec<Vec<usize>>,
    /// conj_letters[i][j] = letters of g_j^{g_i} for j > i
    conj_letters: Vec<Vec<Vec<usize>>>,
    budget: u64,
}

impl Collector {
    fn new(p: &PcPresentation) -> Self {
        let n = p.ngens();
        let conj_letters = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match p.conjugate(j, i) {
                        Some(w) if j > i => letters(w),
                        _ => vec![j],
                    })
                    .collect()
            })
            .collect();
        Collector {
            orders: p.relative_orders.clone(),
            power_letters: p.powers.iter().map(|w| letters(w)).collect(),
            conj_letters,
            budget: limits::COLLECTION_BUDGET,
        }
    }

    /// Multiplies the normal word `state` on the right by `word`'s letters.
    fn multiply(&self, state: &mut [u32], word: &[usize]) -> Result<()> {
        let n = self.orders.len();
        let mut stack: Vec<usize> = word.iter().rev().copied().collect();
        let mut steps = 0u64;
        let mut tail: Vec<(usize, u32)> = Vec::with_capacity(n);
        while let Some(k) = stack.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(GroupError::ResourceLimit {
                    what: "collection steps",
                    limit: self.budget,
                });
            }
            // state = prefix * g_k^{e_k} * tail, with tail in generators > k;
            // state * g_k = prefix * g_k^{e_k + 1} * tail^{g_k}.
            tail.clear();
            for (j, e) in state.iter_mut().enumerate().skip(k + 1) {
                if *e > 0 {
                    tail.push((j, *e));
                    *e = 0;
                }
            }
            state[k] += 1;
            let overflow = state[k] == self.orders[k];
            if overflow {
                state[k] = 0;
            }
            for &(j, e) in tail.iter().rev() {
                let image = &self.conj_letters[k][j];
                for _ in 0..e {
                    stack.extend(image.iter().rev());
                }
            }
            if overflow {
                stack.extend(self.power_letters[k].iter().rev());
            }
        }
        Ok(())
    }
}

/// Compiles a presentation into a validated table. Element ids are the
/// mixed-radix encodings of normal words (see [`PcPresentation::encode`]).
pub fn pc_group(p: &PcPresentation) -> Result<GroupTable> {
    let order = p.order();
    let cap = limits::max_table_order() as u64;
    if order > cap {
        return Err(GroupError::ResourceLimit {
            what: "table order",
            limit: cap,
        });
    }
    let n = order as usize;
    let ngens = p.ngens();
    let collector = Collector::new(p);

    // Right multiplication by each generator.
    let mut right: Vec<Vec<Elem>> = vec![vec![0; n]; ngens];
    for x in 0..n {
        for (k, row) in right.iter_mut().enumerate() {
            let mut state = p.decode(x);
            collector.multiply(&mut state, &[k])?;
            row[x] = p.encode(&state) as Elem;
        }
    }
    let words: Vec<Vec<u32>> = (0..n).map(|y| p.decode(y)).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for w in &words {
            let mut cur = x as Elem;
            for (k, &e) in w.iter().enumerate() {
                for _ in 0..e {
                    cur = right[k][cur as usize];
                }
            }
            table.push(cur);
        }
    }
    let gens: Vec<Elem> = (0..ngens)
        .map(|k| {
            let mut e = vec![0u32; ngens];
            e[k] = 1;
            p.encode(&e) as Elem
        })
        .collect();
    GroupTable::with_generators(n, table, "pc", &gens).map_err(|e| match e {
        GroupError::InvalidTable(msg) => GroupError::InconsistentPresentation(msg),
        other => other,
    })
}

/// A polycyclic presentation of a solvable group, refining its derived
/// series into steps of prime index. Returns `None` for non-solvable
/// groups.
pub fn presentation_from_group(g: &GroupTable) -> Option<PcPresentation> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = g.commutator_subgroup(last, last);
        if next.order() == last.order() {
            return None;
        }
        series.push(next);
    }

    // Bottom-up: chain[i] = <pcgs_rev[0..i]>.
    let mut pcgs_rev: Vec<Elem> = Vec::new();
    let mut primes_rev: Vec<u32> = Vec::new();
    let mut chain_rev: Vec<Subgroup> = vec![g.trivial_subgroup()];
    for level in (0..series.len() - 1).rev() {
        let top = &series[level];
        while chain_rev.last().unwrap().order() < top.order() {
            let u = chain_rev.last().unwrap();
            let y = *top.elements().iter().find(|&&y| !u.contains(y)).unwrap();
            let mut m = 1u64;
            let mut z = y;
            while !u.contains(z) {
                z = g.mul(z, y);
                m += 1;
            }
            let p = arith::factorize(m)[0].0;
            let x = g.pow(y, m / p);
            let next = g.closure_from(u, &[x]);
            debug_assert_eq!(next.order(), u.order() * p as usize);
            pcgs_rev.push(x);
            primes_rev.push(p as u32);
            chain_rev.push(next);
        }
    }
    let pcgs: Vec<Elem> = pcgs_rev.into_iter().rev().collect();
    let orders: Vec<u32> = primes_rev.into_iter().rev().collect();
    // chain[i] = <g_i, ..., g_{n-1}>
    let chain: Vec<Subgroup> = chain_rev.into_iter().rev().collect();
    let n = pcgs.len();

    let exponents = |x: Elem| -> Vec<u32> {
        let mut cur = x;
        let mut out = vec![0u32; n];
        for i in 0..n {
            let inv = g.inv(pcgs[i]);
            while !chain[i + 1].contains(cur) {
                cur = g.mul(inv, cur);
                out[i] += 1;
            }
        }
        debug_assert_eq!(cur, IDENTITY);
        out
    };
    let to_word = |e: Vec<u32>| -> Word {
        e.into_iter()
            .enumerate()
            .filter(|&(_, x)| x > 0)
            .collect()
    };

    let mut pres = PcPresentation::new(orders.clone()).ok()?;
    for i in 0..n {
        let w = to_word(exponents(g.pow(pcgs[i], orders[i] as u64)));
        pres.set_power(i, w).ok()?;
        for j in i + 1..n {
            let w = to_word(exponents(g.conjugate_elem(pcgs[j], pcgs[i])));
            pres.set_conjugate(j, i, w).ok()?;
        }
    }
    Some(pres)
}

/// Display helper used in diagnostics: `g1^2 g3` style, 1-based.
pub fn word_string(word: &[(usize, u32)]) -> String {
    if word.is_empty() {
        return String::from("1");
    }
    let parts: Vec<String> = word
        .iter()
        .map(|&(g, e)| format!("g{}^{}", g + 1, e))
        .collect();
    parts.join(" ")
}

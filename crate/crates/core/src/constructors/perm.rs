use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::table::GroupTable;

type Perm = [u8; 8];

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Perm> {
    let mut current: Perm = [0; 8];
    for (i, slot) in current.iter_mut().enumerate().take(n) {
        *slot = i as u8;
    }
    let mut out = Vec::new();
    loop {
        out.push(current);
        // next permutation of current[..n]
        let p = &mut current[..n];
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn is_even(p: &Perm, n: usize) -> bool {
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Group of the given permutations (lexicographic ids, identity first)
/// under composition "apply the left factor first".
fn permutation_group(perms: Vec<Perm>, n: usize, label: alloc::string::String) -> Result<GroupTable> {
    GroupTable::from_fn(perms.len(), label, |a, b| {
        let (pa, pb) = (&perms[a], &perms[b]);
        let mut c: Perm = [0; 8];
        for x in 0..n {
            c[x] = pb[pa[x] as usize];
        }
        perms.binary_search(&c).expect("closed under composition")
    })
}

pub fn symmetric(n: usize) -> Result<GroupTable> {
    permutation_group(permutations(n), n, format!("S:{n}"))
}

pub fn alternating(n: usize) -> Result<GroupTable> {
    let perms = permutations(n).into_iter().filter(|p| is_even(p, n)).collect();
    permutation_group(perms, n, format!("A:{n}"))
}

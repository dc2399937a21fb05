use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::limits;
use crate::table::{Elem, GroupTable};

use super::families::{cyclic, elementary_abelian};

fn check_product_cap(a: usize, b: usize) -> Result<usize> {
    let cap = limits::max_table_order();
    match a.checked_mul(b) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(GroupError::ResourceLimit {
            what: "table order",
            limit: cap as u64,
        }),
    }
}

/// Id of the pair `(g, h)` in a product whose right factor has order
/// `right_order`.
#[inline]
pub fn product_id(g: Elem, h: Elem, right_order: usize) -> Elem {
    (g as usize * right_order + h as usize) as Elem
}

/// Inverse of [`product_id`]: the component ids of a product element.
#[inline]
pub fn product_parts(id: Elem, right_order: usize) -> (Elem, Elem) {
    ((id as usize / right_order) as Elem, (id as usize % right_order) as Elem)
}

/// `G x H` with componentwise product; `(g, h)` has id `g * |H| + h`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    let m = h.order();
    let n = check_product_cap(g.order(), m)?;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (g1, h1) = product_parts(x as Elem, m);
        let grow = g.row(g1);
        let hrow = h.row(h1);
        for &g2 in grow {
            for &h2 in hrow {
                table.push(product_id(g2, h2, m));
            }
        }
    }
    GroupTable::from_group_table(n, table, format!("{} x {}", g.label(), h.label()))
}

/// `G x G x ... x G` (`k` factors, left-associated); `G^0` is trivial.
pub fn direct_power(g: &GroupTable, k: usize) -> Result<GroupTable> {
    let mut acc = GroupTable::trivial();
    for i in 0..k {
        acc = if i == 0 { g.clone() } else { direct_product(&acc, g)? };
    }
    Ok(acc)
}

/// `K : H` where `action[h]` is the automorphism of `K` induced by `h`.
/// Element `(k, h)` has id `k * |H| + h` and
/// `(k1, h1)(k2, h2) = (k1 * action[h1](k2), h1 h2)`.
pub fn semidirect_product(k: &GroupTable, h: &GroupTable, action: &[Vec<Elem>]) -> Result<GroupTable> {
    let (nk, nh) = (k.order(), h.order());
    if action.len() != nh {
        return Err(GroupError::Precondition(format!(
            "action has {} entries, acting group has order {nh}",
            action.len()
        )));
    }
    for (x, perm) in action.iter().enumerate() {
        if perm.len() != nk {
            return Err(GroupError::Precondition(format!(
                "action of {x} is not a map on {nk} points"
            )));
        }
        let mut seen = vec![false; nk];
        for &y in perm {
            if (y as usize) >= nk || core::mem::replace(&mut seen[y as usize], true) {
                return Err(GroupError::Precondition(format!("action of {x} is not a permutation")));
            }
        }
        for a in k.elements() {
            for b in k.elements() {
                if perm[k.mul(a, b) as usize] != k.mul(perm[a as usize], perm[b as usize]) {
                    return Err(GroupError::Precondition(format!(
                        "action of {x} is not an automorphism: fails on ({a}, {b})"
                    )));
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let composed = &action[h.mul(h1, h2) as usize];
            let (p1, p2) = (&action[h1 as usize], &action[h2 as usize]);
            if k.elements().any(|x| composed[x as usize] != p1[p2[x as usize] as usize]) {
                return Err(GroupError::Precondition(format!(
                    "action is not a homomorphism: fails on ({h1}, {h2})"
                )));
            }
        }
    }
    let n = check_product_cap(nk, nh)?;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (k1, h1) = product_parts(x as Elem, nh);
        let phi = &action[h1 as usize];
        for y in 0..n {
            let (k2, h2) = product_parts(y as Elem, nh);
            table.push(product_id(k.mul(k1, phi[k2 as usize]), h.mul(h1, h2), nh));
        }
    }
    let gens: Vec<Elem> = k
        .small_generating_set()
        .into_iter()
        .map(|x| product_id(x, 0, nh))
        .chain(h.small_generating_set().into_iter().map(|y| product_id(0, y, nh)))
        .collect();
    GroupTable::with_generators(n, table, format!("{} : {}", k.label(), h.label()), &gens)
}

/// Action of a cyclic group `C_q` (ids = exponents) by powers of one
/// automorphism.
pub fn power_action(automorphism: &[Elem], q: usize) -> Vec<Vec<Elem>> {
    let identity: Vec<Elem> = (0..automorphism.len()).map(|x| x as Elem).collect();
    let mut out = vec![identity];
    for i in 1..q {
        let prev = &out[i - 1];
        out.push(prev.iter().map(|&x| automorphism[x as usize]).collect());
    }
    out
}

/// The map `v -> M v` on `(Z/modulus)^d`, as a permutation of the ids of
/// `C_modulus^d` built by [`direct_power`] (first coordinate most
/// significant).
pub fn matrix_automorphism(modulus: u64, matrix: &[Vec<u64>]) -> Result<Vec<Elem>> {
    let d = matrix.len();
    if matrix.iter().any(|row| row.len() != d) {
        return Err(GroupError::Parameter("matrix must be square".into()));
    }
    let size = check_product_cap(1, (modulus as usize).pow(d as u32))?;
    let decode = |mut id: usize| {
        let mut v = vec![0u64; d];
        for slot in v.iter_mut().rev() {
            *slot = (id % modulus as usize) as u64;
            id /= modulus as usize;
        }
        v
    };
    let encode = |v: &[u64]| v.iter().fold(0usize, |acc, &x| acc * modulus as usize + x as usize);
    let perm = (0..size)
        .map(|id| {
            let v = decode(id);
            let image: Vec<u64> = matrix
                .iter()
                .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % modulus)
                .collect();
            encode(&image) as Elem
        })
        .collect();
    Ok(perm)
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p).collect())
        .collect()
}

fn is_invertible_mod_p(m: &[Vec<u64>], p: u64) -> bool {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let d = a.len();
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&r| !a[r][col].is_multiple_of(p)) else {
            return false;
        };
        a.swap(col, pivot);
        let inv = arith::pow_mod(a[col][col], p - 2, p);
        for r in 0..d {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] * inv % p;
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
    }
    true
}

/// `C_p^r : C_q` with `r` the multiplicative order of `p` mod `q`, where
/// `C_q` acts by a companion matrix of order `q` without fixed points.
/// The result is a Frobenius group with kernel `C_p^r` and a Schmidt group.
pub fn frobenius_schmidt(p: u64, q: u64) -> Result<GroupTable> {
    if !arith::is_prime(p) || !arith::is_prime(q) || p == q {
        return Err(GroupError::Parameter(format!(
            "frobenius_schmidt needs distinct primes, got ({p}, {q})"
        )));
    }
    let r = arith::multiplicative_order(p, q).unwrap() as usize;
    let kernel_order = (p as usize)
        .checked_pow(r as u32)
        .ok_or(GroupError::ResourceLimit {
            what: "table order",
            limit: limits::max_table_order() as u64,
        })?;
    check_product_cap(kernel_order, q as usize)?;

    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let companion = |coeffs: &[u64]| -> Vec<Vec<u64>> {
        let mut c = vec![vec![0u64; r]; r];
        for i in 1..r {
            c[i][i - 1] = 1;
        }
        for (i, &a) in coeffs.iter().enumerate() {
            c[i][r - 1] = (p - a % p) % p;
        }
        c
    };
    let mut coeffs = vec![0u64; r];
    let matrix = loop {
        let c = companion(&coeffs);
        let mut power = c.clone();
        for _ in 1..q {
            power = mat_mul(&power, &c, p);
        }
        let minus_one: Vec<Vec<u64>> = c
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| (x + p - identity[i][j]) % p).collect())
            .collect();
        if power == identity && c != identity && is_invertible_mod_p(&minus_one, p) {
            break c;
        }
        // next coefficient vector in base p
        let mut i = 0;
        loop {
            if i == r {
                return Err(GroupError::Parameter(format!(
                    "no fixed-point-free element of order {q} over GF({p})^{r}"
                )));
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    };
    let kernel = if r == 1 { cyclic(p)? } else { elementary_abelian(p, r as u32)? };
    let complement = cyclic(q)?;
    let action = power_action(&matrix_automorphism(p, &matrix)?, q as usize);
    Ok(semidirect_product(&kernel, &complement, &action)?
        .with_label(format!("FS({p},{q})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{family_group, Family};

    #[test]
    fn direct_product_examples() {
        let c2 = cyclic(2).unwrap();
        let c3 = cyclic(3).unwrap();
        let c6 = direct_product(&c2, &c3).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.max_element_order(), 6);
        let d8 = family_group(Family::Dihedral, 8).unwrap();
        let d8c2 = direct_product(&d8, &c2).unwrap();
        assert_eq!(d8c2.order(), 16);
        // projections are homomorphisms
        for x in d8c2.elements() {
            for y in d8c2.elements() {
                let (a, b) = product_parts(x, 2);
                let (c, d) = product_parts(y, 2);
                assert_eq!(product_parts(d8c2.mul(x, y), 2), (d8.mul(a, c), c2.mul(b, d)));
            }
        }
    }

    #[test]
    fn cap_exceeded() {
        let big = cyclic(100).unwrap();
        assert!(matches!(
            direct_product(&big, &big),
            Err(GroupError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let k = cyclic(4).unwrap();
        let h = cyclic(3).unwrap();
        let id: Vec<Elem> = k.elements().collect();
        let action = vec![id; 3];
        assert_eq!(
            semidirect_product(&k, &h, &action).unwrap(),
            direct_product(&k, &h).unwrap()
        );
    }

    #[test]
    fn bad_actions_rejected() {
        let k = cyclic(4).unwrap();
        let h = cyclic(2).unwrap();
        // x -> x + 1 is a permutation but not an automorphism
        let shift: Vec<Elem> = (0..4).map(|x| ((x + 1) % 4) as Elem).collect();
        let id: Vec<Elem> = k.elements().collect();
        let err = semidirect_product(&k, &h, &[id.clone(), shift]).unwrap_err();
        assert!(matches!(err, GroupError::Precondition(ref m) if m.contains("automorphism")));
        // inversion on C_4 assigned to the identity of C_2: not a homomorphism
        let inv: Vec<Elem> = (0..4).map(|x| ((4 - x) % 4) as Elem).collect();
        let err = semidirect_product(&k, &h, &[inv, id]).unwrap_err();
        assert!(matches!(err, GroupError::Precondition(ref m) if m.contains("homomorphism")));
    }

    #[test]
    fn a4_as_semidirect() {
        // C2^2 : C3 with the 3-cycle (1 0; 1 1) action
        let v4 = elementary_abelian(2, 2).unwrap();
        let m = vec![vec![0, 1], vec![1, 1]];
        let action = power_action(&matrix_automorphism(2, &m).unwrap(), 3);
        let a4 = semidirect_product(&v4, &cyclic(3).unwrap(), &action).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        assert!(a4.orders().iter().all(|&o| o != 6));
    }

    #[test]
    fn matrix_action_mod_9() {
        let k = direct_power(&cyclic(9).unwrap(), 2).unwrap();
        let m = vec![vec![1, 3], vec![0, 1]];
        let action = power_action(&matrix_automorphism(9, &m).unwrap(), 3);
        let g = semidirect_product(&k, &cyclic(3).unwrap(), &action).unwrap();
        assert_eq!(g.order(), 243);
    }

    #[test]
    fn frobenius_schmidt_orders() {
        assert_eq!(frobenius_schmidt(3, 2).unwrap().order(), 6);
        assert_eq!(frobenius_schmidt(2, 3).unwrap().order(), 12);
        assert_eq!(frobenius_schmidt(2, 7).unwrap().order(), 56);
        assert_eq!(frobenius_schmidt(5, 2).unwrap().order(), 10);
        assert!(frobenius_schmidt(3, 3).is_err());
        assert!(matches!(
            frobenius_schmidt(2, 13),
            Err(GroupError::ResourceLimit { .. })
        ));
    }
}

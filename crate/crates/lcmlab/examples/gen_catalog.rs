//! Regenerates the bundled catalog.
//!
//! Prime-power orders are enumerated from pc presentations refining a
//! central series (`g_i^p` and `[g_j, g_i]` lie in later generators), then
//! reduced up to isomorphism. Other orders come from explicit
//! constructions. Every order is checked against its known number of
//! groups and for pairwise non-isomorphism before anything is written.
//!
//! ```text
//! cargo run --release -p lcmlab --example gen_catalog -- crates/lcmlab/catalog
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use lcmlab::pcfile::{write_pc, PcFile};
use lcmlab_core::arith;
use lcmlab_core::constructors::{
    alternating, cyclic, direct_power, direct_product, elementary_abelian, family_group,
    frobenius_schmidt, heisenberg, matrix_automorphism, metacyclic, pc_group, power_action,
    presentation_from_group, semidirect_product, symmetric, Family, PcPresentation,
};
use lcmlab_core::iso::{are_isomorphic, fingerprint, hom_from_generators, isomorphism_unscreened, IsoFingerprint};
use lcmlab_core::{Elem, GroupTable};

/// Number of groups of each order in the catalog.
const KNOWN_COUNTS: &[(u32, usize)] = &[
    (1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (7, 1), (8, 5), (9, 2), (10, 2),
    (11, 1), (12, 5), (13, 1), (14, 2), (15, 1), (16, 14), (17, 1), (18, 5), (19, 1),
    (20, 5), (21, 2), (22, 2), (23, 1), (24, 15), (25, 2), (26, 2), (27, 5), (28, 4),
    (29, 1), (30, 4), (31, 1), (32, 51), (81, 15),
];

/// Every assignment of exponents to generators `from..n`, as words.
fn words_after(orders: &[u32], from: usize) -> Vec<Vec<(usize, u32)>> {
    let mut out = vec![Vec::new()];
    for (g, &m) in orders.iter().enumerate().skip(from) {
        let mut next = Vec::with_capacity(out.len() * m as usize);
        for w in &out {
            for e in 0..m {
                let mut w2 = w.clone();
                if e > 0 {
                    w2.push((g, e));
                }
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// Calls `f` on every central-series presentation of order `p^n`.
fn for_each_central_presentation(p: u32, n: usize, mut f: impl FnMut(&PcPresentation)) {
    let orders = vec![p; n];
    let power_choices: Vec<Vec<Vec<(usize, u32)>>> = (0..n).map(|i| words_after(&orders, i + 1)).collect();
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for j in 1..n {
        for i in 0..j {
            slots.push((j, i));
        }
    }
    let conj_choices: Vec<Vec<Vec<(usize, u32)>>> = slots
        .iter()
        .map(|&(j, _)| {
            words_after(&orders, j + 1)
                .into_iter()
                .map(|w| {
                    let mut full = vec![(j, 1)];
                    full.extend(w);
                    full
                })
                .collect()
        })
        .collect();
    let radices: Vec<usize> = power_choices
        .iter()
        .map(Vec::len)
        .chain(conj_choices.iter().map(Vec::len))
        .collect();
    let total: usize = radices.iter().product();
    let mut pres = PcPresentation::new(orders.clone()).unwrap();
    for code in 0..total {
        let mut c = code;
        for (k, &r) in radices.iter().enumerate().rev() {
            let d = c % r;
            c /= r;
            if k < n {
                pres.set_power(k, power_choices[k][d].clone()).unwrap();
            } else {
                let (j, i) = slots[k - n];
                pres.set_conjugate(j, i, conj_choices[k - n][d].clone()).unwrap();
            }
        }
        f(&pres);
    }
}

struct Classified {
    fp: IsoFingerprint,
    group: GroupTable,
    pres: PcPresentation,
    name: Option<String>,
}

/// Adds `g` unless an isomorphic group is already present.
fn add_class(classes: &mut Vec<Classified>, g: GroupTable, pres: PcPresentation, name: Option<String>) -> bool {
    let fp = fingerprint(&g);
    for c in classes.iter() {
        if c.fp == fp && isomorphism_unscreened(&g, &c.group).unwrap().is_some() {
            return false;
        }
    }
    classes.push(Classified { fp, group: g, pres, name });
    true
}

fn p_groups(p: u32, n: usize) -> Vec<Classified> {
    let mut classes = Vec::new();
    let mut seen = 0usize;
    let mut consistent = 0usize;
    for_each_central_presentation(p, n, |pres| {
        seen += 1;
        if let Ok(g) = pc_group(pres) {
            consistent += 1;
            add_class(&mut classes, g, pres.clone(), None);
        }
    });
    eprintln!(
        "order {}: {seen} presentations, {consistent} consistent, {} classes",
        (p as u64).pow(n as u32),
        classes.len()
    );
    classes
}

/// `Q_8 : C_3` with the order-3 automorphism `a -> b, b -> ab`.
fn sl23() -> GroupTable {
    let q8 = family_group(Family::Quaternion, 8).unwrap();
    let (a, b) = (1, 4);
    let auto = hom_from_generators(&q8, &[a, b], &q8, &[b, q8.mul(a, b)]).unwrap();
    semidirect_product(&q8, &cyclic(3).unwrap(), &power_action(&auto, 3)).unwrap()
}

/// `C_3 : D_8` with `D_8` acting through the quotient by `<a^2, b>`.
fn c3_semi_d8() -> GroupTable {
    let c3 = cyclic(3).unwrap();
    let d8 = family_group(Family::Dihedral, 8).unwrap();
    let inversion: Vec<Elem> = vec![0, 2, 1];
    let identity: Vec<Elem> = vec![0, 1, 2];
    // d8 ids are a^i b^j = i + 4 j; the kernel <a^2, b> holds the even i.
    let action: Vec<Vec<Elem>> = d8
        .elements()
        .map(|x| if (x % 4) % 2 == 0 { identity.clone() } else { inversion.clone() })
        .collect();
    semidirect_product(&c3, &d8, &action).unwrap()
}

/// `C_3^2 : C_2` with inversion.
fn generalized_dihedral_9() -> GroupTable {
    let k = elementary_abelian(3, 2).unwrap();
    let inv: Vec<Elem> = k.elements().map(|x| k.inv(x)).collect();
    semidirect_product(&k, &cyclic(2).unwrap(), &power_action(&inv, 2)).unwrap()
}

fn dp(a: GroupTable, b: GroupTable) -> GroupTable {
    direct_product(&a, &b).unwrap()
}

fn c(n: u64) -> GroupTable {
    cyclic(n).unwrap()
}

fn fam(kind: Family, n: u64) -> GroupTable {
    family_group(kind, n).unwrap()
}

/// Named constructions for the orders below 32 that are not prime powers.
fn constructed(order: u32) -> Vec<(&'static str, GroupTable)> {
    use Family::*;
    let s3 = || symmetric(3).unwrap();
    match order {
        6 => vec![("C6", c(6)), ("S3", s3())],
        10 => vec![("C10", c(10)), ("D10", fam(Dihedral, 10))],
        12 => vec![
            ("Dic12", metacyclic(3, 4, 2, 0, "").unwrap()),
            ("C12", c(12)),
            ("A4", alternating(4).unwrap()),
            ("D12", fam(Dihedral, 12)),
            ("C2xC6", dp(c(2), c(6))),
        ],
        14 => vec![("C14", c(14)), ("D14", fam(Dihedral, 14))],
        15 => vec![("C15", c(15))],
        18 => vec![
            ("D18", fam(Dihedral, 18)),
            ("C18", c(18)),
            ("C3xS3", dp(c(3), s3())),
            ("C3^2:C2", generalized_dihedral_9()),
            ("C3xC6", dp(c(3), c(6))),
        ],
        20 => vec![
            ("Dic20", metacyclic(5, 4, 4, 0, "").unwrap()),
            ("C20", c(20)),
            ("F20", metacyclic(5, 4, 2, 0, "").unwrap()),
            ("D20", fam(Dihedral, 20)),
            ("C2xC10", dp(c(2), c(10))),
        ],
        21 => vec![("C7:C3", frobenius_schmidt(7, 3).unwrap()), ("C21", c(21))],
        22 => vec![("D22", fam(Dihedral, 22)), ("C22", c(22))],
        24 => vec![
            ("C3:C8", metacyclic(3, 8, 2, 0, "").unwrap()),
            ("C24", c(24)),
            ("SL(2,3)", sl23()),
            ("Dic24", metacyclic(12, 2, 11, 6, "").unwrap()),
            ("C4xS3", dp(c(4), s3())),
            ("D24", fam(Dihedral, 24)),
            ("C2xDic12", dp(c(2), metacyclic(3, 4, 2, 0, "").unwrap())),
            ("C3:D8", c3_semi_d8()),
            ("C2xC12", dp(c(2), c(12))),
            ("C3xD8", dp(c(3), fam(Dihedral, 8))),
            ("C3xQ8", dp(c(3), fam(Quaternion, 8))),
            ("S4", symmetric(4).unwrap()),
            ("C2xA4", dp(c(2), alternating(4).unwrap())),
            ("C2xD12", dp(c(2), fam(Dihedral, 12))),
            ("C2^2xC6", dp(elementary_abelian(2, 2).unwrap(), c(6))),
        ],
        26 => vec![("D26", fam(Dihedral, 26)), ("C26", c(26))],
        28 => vec![
            ("Dic28", metacyclic(14, 2, 13, 7, "").unwrap()),
            ("C28", c(28)),
            ("D28", fam(Dihedral, 28)),
            ("C2xC14", dp(c(2), c(14))),
        ],
        30 => vec![
            ("C5xS3", dp(c(5), s3())),
            ("C3xD10", dp(c(3), fam(Dihedral, 10))),
            ("D30", fam(Dihedral, 30)),
            ("C30", c(30)),
        ],
        _ => vec![],
    }
}

/// Named groups used to annotate enumerated p-groups.
fn named_p_groups(order: u64) -> Vec<(String, GroupTable)> {
    use Family::*;
    let mut out: Vec<(String, GroupTable)> = vec![(format!("C{order}"), c(order))];
    let (p, k) = arith::prime_power(order).unwrap();
    if k >= 2 {
        out.push((format!("C{p}^{k}"), elementary_abelian(p, k).unwrap()));
    }
    if p == 2 && k >= 3 {
        out.push((format!("D{order}"), fam(Dihedral, order)));
        out.push((format!("Q{order}"), fam(Quaternion, order)));
    }
    if p == 2 && k >= 4 {
        out.push((format!("QD{order}"), fam(QuasiDihedral, order)));
        out.push((format!("M{order}"), fam(Modular, order)));
    }
    if p != 2 && k >= 3 {
        out.push((format!("M{order}"), fam(Modular, order)));
    }
    if p != 2 && k == 3 {
        out.push((format!("Heis{p}"), heisenberg(p).unwrap()));
    }
    if order == 16 || order == 32 {
        for base in [8u64, 16] {
            if base * 2 > order {
                continue;
            }
            let rest = order / base;
            for (name, g) in [
                (format!("D{base}"), fam(Dihedral, base)),
                (format!("Q{base}"), fam(Quaternion, base)),
            ] {
                out.push((format!("{name}xC{rest}"), dp(g, c(rest))));
            }
        }
    }
    if order == 81 {
        let mut p = PcPresentation::new(vec![3; 4]).unwrap();
        p.set_conjugate(1, 0, vec![(1, 1), (2, 1)]).unwrap();
        p.set_conjugate(2, 0, vec![(2, 1), (3, 1)]).unwrap();
        out.push(("G81".into(), pc_group(&p).unwrap()));
    }
    out
}

fn annotate(classes: &mut [Classified], order: u64) {
    for (name, g) in named_p_groups(order) {
        for cl in classes.iter_mut() {
            if cl.name.is_none() && are_isomorphic(&g, &cl.group).unwrap().is_some() {
                cl.name = Some(name.clone());
                break;
            }
        }
    }
}

/// Split extensions `C_9^2 : C_3` by matrices of order 3 over `Z/9`.
fn c9_squared_by_c3() -> Vec<Classified> {
    let k = direct_power(&c(9), 2).unwrap();
    let c3 = c(3);
    let mut classes = Vec::new();
    let id = vec![vec![1u64, 0], vec![0, 1]];
    let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        (0..2)
            .map(|i| (0..2).map(|j| (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 9).collect())
            .collect()
    };
    for code in 0..9u64.pow(4) {
        let m = vec![vec![code % 9, code / 9 % 9], vec![code / 81 % 9, code / 729]];
        if mul(&mul(&m, &m), &m) != id {
            continue;
        }
        let auto = matrix_automorphism(9, &m).unwrap();
        let g = semidirect_product(&k, &c3, &power_action(&auto, 3)).unwrap();
        let pres = presentation_from_group(&g).unwrap();
        let name = if m == id { "C9^2xC3".to_string() } else { format!("C9^2:C3[{:?}]", m) };
        add_class(&mut classes, g, pres, Some(name));
    }
    eprintln!("order 243: {} split extensions C9^2 : C3", classes.len());
    classes
}

fn check_pairwise(order: u32, classes: &[Classified]) {
    for (i, a) in classes.iter().enumerate() {
        assert_eq!(a.group.order(), order as usize);
        for b in &classes[i + 1..] {
            assert!(
                are_isomorphic(&a.group, &b.group).unwrap().is_none(),
                "order {order}: duplicate classes"
            );
        }
    }
}

fn write_order(root: &Path, order: u32, classes: &[Classified], complete: bool) {
    let dir = root.join(order.to_string());
    std::fs::create_dir_all(&dir).unwrap();
    for old in std::fs::read_dir(&dir).unwrap() {
        std::fs::remove_file(old.unwrap().path()).unwrap();
    }
    for (i, cl) in classes.iter().enumerate() {
        // Round trip through the presentation actually written.
        let rebuilt = pc_group(&cl.pres).unwrap();
        assert!(are_isomorphic(&rebuilt, &cl.group).unwrap().is_some());
        let mut file = PcFile::new(cl.pres.clone());
        if let Some(name) = &cl.name {
            file.meta.push(("name".into(), name.clone()));
        }
        write_pc(&dir.join(format!("{}.pc", i + 1)), &file).unwrap();
    }
    let manifest = format!(
        "count {}\ncomplete {}\n",
        classes.len(),
        if complete { "yes" } else { "no" }
    );
    std::fs::write(dir.join("manifest"), manifest).unwrap();
}

fn from_constructions(order: u32) -> Vec<Classified> {
    let mut classes = Vec::new();
    if order == 1 {
        classes.push(Classified {
            fp: fingerprint(&GroupTable::trivial()),
            group: GroupTable::trivial(),
            pres: PcPresentation::new(vec![]).unwrap(),
            name: Some("C1".into()),
        });
        return classes;
    }
    let list = if arith::is_prime(order as u64) {
        vec![("", c(order as u64))]
    } else {
        constructed(order)
    };
    for (name, g) in list {
        let pres = presentation_from_group(&g).expect("solvable");
        let name = if name.is_empty() { format!("C{order}") } else { name.to_string() };
        assert!(add_class(&mut classes, g, pres, Some(name.clone())), "order {order}: {name} repeats a class");
    }
    classes
}

fn main() {
    let root: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(lcmlab::catalog::bundled_catalog_dir);
    let known: BTreeMap<u32, usize> = KNOWN_COUNTS.iter().copied().collect();
    for (&order, &count) in &known {
        let mut classes = match arith::prime_power(order as u64) {
            Some((p, k)) if k >= 2 => {
                let mut cl = p_groups(p as u32, k as usize);
                cl.sort_by(|a, b| a.fp.cmp(&b.fp));
                annotate(&mut cl, order as u64);
                cl
            }
            _ => from_constructions(order),
        };
        assert_eq!(classes.len(), count, "order {order}: expected {count} groups");
        check_pairwise(order, &classes);
        for cl in &mut classes {
            cl.group = cl.group.clone().with_label(order.to_string());
        }
        write_order(&root, order, &classes, true);
        eprintln!("wrote order {order} ({count} groups)");
    }
    let extra = c9_squared_by_c3();
    check_pairwise(243, &extra);
    write_order(&root, 243, &extra, false);
}

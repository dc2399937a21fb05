//! Named verification suites. Each check reports pass/fail with a short
//! detail line; the CLI exits 1 when any check fails.

use std::fmt;
use std::sync::Mutex;

use lcmlab_core::constructors::{
    cyclic, direct_product, family_group, frobenius_schmidt, product_id, Family,
};
use lcmlab_core::invariants::{
    exponent, is_nilpotent, is_schmidt, order_sequence, p_group_prime, prime_divisors, psi,
    subgroup_is_nilpotent,
};
use lcmlab_core::iso::{are_isomorphic, IsoCache};
use lcmlab_core::lcm::{
    cp2_set, is_lcm_group, is_minimal_non_lcm, is_p2_star, lc_subgroup, lcm_ratio, lcm_set,
    lcm_set_naive, lcm_star_cached, omega_matches_exponent_set, product_membership, sections,
};
use lcmlab_core::{arith, GroupTable, Rational};
use rayon::prelude::*;

use crate::catalog::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::named::g81;
use crate::scan::{scan_minimal, search_order, PairKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn violations_check(name: &str, checked: usize, violations: Vec<String>) -> Check {
    if violations.is_empty() {
        Check::new(name, true, format!("{checked} checked, 0 violations"))
    } else {
        let shown: Vec<&str> = violations.iter().take(5).map(String::as_str).collect();
        Check::new(
            name,
            false,
            format!("{} violations of {checked}: {}", violations.len(), shown.join("; ")),
        )
    }
}

fn group_err(id: impl fmt::Display) -> impl Fn(lcmlab_core::GroupError) -> Error {
    move |e| Error::group(id.to_string(), e)
}

/// Fails with a data error unless every order in `orders` is complete.
pub fn require_complete(catalog: &Catalog, orders: impl IntoIterator<Item = u32>) -> Result<()> {
    let missing: Vec<String> = orders
        .into_iter()
        .filter(|&o| !catalog.is_complete(o))
        .map(|o| o.to_string())
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::Catalog(format!(
            "complete catalogs required for orders {}",
            missing.join(", ")
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcmFamilyCase {
    /// `D8 x C_{2^k}`, where `|LCM| = |G| - 8`.
    Dihedral,
    /// `G81 x C_{3^k}`, where `|LCM| = |G| - 108`.
    G81,
}

/// `|LCM(D8 x C_{2^k})| = 8·2^k - 8` and `|LCM(G81 x C_{3^k})| = 81·3^k - 108`.
pub fn lcm_family_check(case: LcmFamilyCase, k: u32) -> Result<Check> {
    let (base, prime, defect, tag) = match case {
        LcmFamilyCase::Dihedral => (family_group(Family::Dihedral, 8)?, 2u64, 8u64, "D8"),
        LcmFamilyCase::G81 => (g81(), 3, 108, "G81"),
    };
    let c = cyclic(prime.pow(k))?;
    let g = direct_product(&base, &c)?;
    let size = lcm_set(&g).len() as u64;
    let expected = g.order() as u64 - defect;
    Ok(Check::new(
        format!("|LCM({tag} x C{})|", prime.pow(k)),
        size == expected,
        format!("{size} (expected {} - {defect} = {expected})", g.order()),
    ))
}

/// The `lemma35` suite. Without `case`, both families run over their
/// default ranges (k = 1..5 and k = 1..2).
pub fn lemma35(case: Option<LcmFamilyCase>, k: Option<u32>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases = match case {
        Some(c) => vec![c],
        None => vec![LcmFamilyCase::Dihedral, LcmFamilyCase::G81],
    };
    for c in cases {
        let ks: Vec<u32> = match (k, c) {
            (Some(k), _) => vec![k],
            (None, LcmFamilyCase::Dihedral) => (1..=5).collect(),
            (None, LcmFamilyCase::G81) => (1..=2).collect(),
        };
        if c == LcmFamilyCase::G81 {
            let e = exponent(&g81());
            out.push(Check::new("exp(G81)", e == 9, format!("{e} (expected 9)")));
        }
        for k in ks {
            if k == 0 {
                return Err(Error::Usage("--k must be at least 1".into()));
            }
            out.push(lcm_family_check(c, k)?);
        }
    }
    Ok(out)
}

/// Minimum covers of `{Q8, C_{2^(k-1)}}` are exactly `Q_{2^k}` and
/// `QD_{2^k}`, both non-LCM, over complete catalogs up to `2^k`.
pub fn cover_check(catalog: &Catalog, k: u32) -> Result<Vec<Check>> {
    if !(4..=12).contains(&k) {
        return Err(Error::Usage("cover check needs k >= 4".into()));
    }
    let top = 1u32 << k;
    require_complete(catalog, 1..=top)?;
    let family = vec![
        family_group(Family::Quaternion, 8)?,
        cyclic(1 << (k - 1))?,
    ];
    let res = crate::scan::covers(catalog, family, Some(top as usize))?;
    let q = family_group(Family::Quaternion, top as u64)?;
    let qd = family_group(Family::QuasiDihedral, top as u64)?;
    let mut found_q = false;
    let mut found_qd = false;
    let mut all_non_lcm = true;
    for (_, g) in &res.covers {
        found_q |= are_isomorphic(g, &q)?.is_some();
        found_qd |= are_isomorphic(g, &qd)?.is_some();
        all_non_lcm &= !is_lcm_group(g);
    }
    let ids: Vec<String> = res.covers.iter().map(|(id, _)| id.to_string()).collect();
    Ok(vec![
        Check::new(
            format!("minimum covers of {{Q8, C{}}}", top / 2),
            res.order == Some(top as usize) && res.covers.len() == 2 && found_q && found_qd,
            format!(
                "order {:?}, covers [{}] (expected Q{top} and QD{top})",
                res.order,
                ids.join(", ")
            ),
        ),
        Check::new(
            format!("covers of order {top} are non-LCM"),
            all_non_lcm && !res.covers.is_empty(),
            format!("{} covers checked", res.covers.len()),
        ),
        Check::new(
            format!("cover search through order {top} exhaustive"),
            res.exhaustive,
            if res.exhaustive { "every admissible order complete" } else { "catalog-relative only" },
        ),
    ])
}

/// The `thm44` suite: `k = 4`, plus `k = 5` when order 32 is complete.
pub fn thm44(catalog: &Catalog, k: Option<u32>) -> Result<Vec<Check>> {
    let ks = match k {
        Some(k) => vec![k],
        None if (1..=32).all(|o| catalog.is_complete(o)) => vec![4, 5],
        None => vec![4],
    };
    let mut out = Vec::new();
    for k in ks {
        out.extend(cover_check(catalog, k)?);
    }
    Ok(out)
}

type TableRow = (u32, usize, Option<(Family, u64)>);

/// Expected minimal non-LCM counts per order, with the group it must be
/// isomorphic to when unique.
fn table_rows() -> Vec<TableRow> {
    vec![
        (8, 1, Some((Family::Dihedral, 8))),
        (16, 1, Some((Family::Quaternion, 16))),
        (27, 0, None),
        (32, 3, None),
        (81, 2, None),
    ]
}

/// Minimal non-LCM count at one order, checked against the table.
pub fn minimal_count_check(catalog: &Catalog, order: u32) -> Result<Check> {
    let (_, expected, iso) = table_rows()
        .into_iter()
        .find(|r| r.0 == order)
        .ok_or_else(|| Error::Usage(format!("no table row for order {order}")))?;
    require_complete(catalog, [order])?;
    let rows = scan_minimal(catalog, order)?;
    let mut passed = rows.len() == expected;
    let mut detail = format!("{} found (expected {expected})", rows.len());
    if let (Some((fam, n)), true) = (iso, passed) {
        let want = family_group(fam, n)?;
        let entry = catalog
            .entries()
            .find(|e| e.id.to_string() == rows[0].id)
            .expect("row comes from the catalog");
        let same = are_isomorphic(&entry.group, &want)?.is_some();
        passed &= same;
        detail.push_str(&format!(", {} is {}{}", rows[0].id, if same { "" } else { "not " }, want.label()));
    }
    Ok(Check::new(format!("minimal non-LCM groups of order {order}"), passed, detail))
}

/// The `tables` suite: minimal non-LCM counts at orders 8, 16, 27, 81
/// (and 32 when present), then the q53/q54 pair searches.
pub fn tables(catalog: &Catalog) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (order, _, _) in table_rows() {
        if order == 32 && !catalog.is_complete(32) {
            continue;
        }
        out.push(minimal_count_check(catalog, order)?);
    }
    out.extend(pair_search_checks(catalog)?);
    Ok(out)
}

/// A group checked by the property suites, labelled by catalog id or spec.
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub id: String,
    pub group: GroupTable,
}

impl From<&CatalogEntry> for CorpusGroup {
    fn from(e: &CatalogEntry) -> Self {
        CorpusGroup {
            id: e.id.to_string(),
            group: e.group.clone(),
        }
    }
}

/// Constructed groups at orders the catalog does not cover.
pub fn constructed_corpus() -> Result<Vec<CorpusGroup>> {
    let specs = [
        "A:5", "S:5", "Heis:5", "D:8 x C:8", "Q:8 x C:8", "D:8 x D:8", "S:4 x C:2", "S:3 x S:3",
        "A:4 x C:3", "Q:16 x C:4", "E:2^6", "C:5 x C:25",
    ];
    let ctx = crate::spec::BuildContext::default();
    let mut out = Vec::new();
    for s in specs {
        let g = crate::spec::build(&s.parse()?, &ctx)?;
        out.push(CorpusGroup {
            id: s.to_string(),
            group: g,
        });
    }
    for (p, q) in [(2, 7), (2, 5)] {
        out.push(CorpusGroup {
            id: format!("FS({p},{q})"),
            group: frobenius_schmidt(p, q)?,
        });
    }
    Ok(out)
}

/// Catalog groups up to `max`, followed by the constructed groups up to `max`.
pub fn corpus(catalog: &Catalog, max: usize) -> Result<Vec<CorpusGroup>> {
    let mut out: Vec<CorpusGroup> = catalog
        .entries()
        .filter(|e| e.group.order() <= max)
        .map(CorpusGroup::from)
        .collect();
    out.extend(constructed_corpus()?.into_iter().filter(|c| c.group.order() <= max));
    Ok(out)
}

/// LCM ⟺ CP₂ ⟺ Ω_k-set equality ⟺ P₂* on every `p`-group.
pub fn p_group_equivalence(entries: &[CorpusGroup]) -> Result<Check> {
    let p_groups: Vec<&CorpusGroup> = entries
        .iter()
        .filter(|e| p_group_prime(&e.group).is_some())
        .collect();
    let results = p_groups
        .par_iter()
        .map(|e| {
            let g = &e.group;
            let err = group_err(&e.id);
            let lcm = is_lcm_group(g);
            let cp2 = cp2_set(g).len() == g.order();
            let omega = omega_matches_exponent_set(g).map_err(&err)?;
            let p2 = is_p2_star(g).map_err(&err)?;
            Ok((lcm == cp2 && cp2 == omega && omega == p2)
                .then_some(())
                .ok_or(format!("{}: lcm={lcm} cp2={cp2} omega={omega} p2*={p2}", e.id)))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = results.into_iter().filter_map(|r| r.err()).collect();
    Ok(violations_check("p-group LCM/CP2/Omega/P2* equivalence", p_groups.len(), violations))
}

/// For LCM-groups of equal order: ψ(G) = ψ(H) ⟺ os(G) = os(H).
pub fn psi_os_equivalence(entries: &[CorpusGroup]) -> Check {
    let lcm: Vec<(&CorpusGroup, u64, _)> = entries
        .par_iter()
        .filter(|e| is_lcm_group(&e.group))
        .map(|e| (e, psi(&e.group), order_sequence(&e.group)))
        .collect();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (i, (a, pa, oa)) in lcm.iter().enumerate() {
        for (b, pb, ob) in &lcm[i + 1..] {
            if a.group.order() != b.group.order() {
                continue;
            }
            pairs += 1;
            if (pa == pb) != (oa == ob) {
                violations.push(format!("{} / {}", a.id, b.id));
            }
        }
    }
    violations_check("psi equal iff os equal for LCM pairs", pairs, violations)
}

/// Optimized LCM(G) equals the triple-loop definition.
pub fn lcm_oracle(entries: &[CorpusGroup]) -> Check {
    let violations: Vec<String> = entries
        .par_iter()
        .filter(|e| lcm_set(&e.group) != lcm_set_naive(&e.group))
        .map(|e| e.id.to_string())
        .collect();
    violations_check("lcm_set equals the naive definition", entries.len(), violations)
}

/// Product-membership criterion agrees with LCM(G×H) for every pair with
/// `H` an LCM-group.
pub fn product_membership_oracle(entries: &[CorpusGroup]) -> Result<Check> {
    let lcm: Vec<&CorpusGroup> = entries.iter().filter(|e| is_lcm_group(&e.group)).collect();
    let pairs: Vec<(&CorpusGroup, &CorpusGroup)> = entries
        .iter()
        .flat_map(|g| lcm.iter().map(move |h| (g, *h)))
        .collect();
    let results = pairs
        .par_iter()
        .map(|(ge, he)| {
            let (g, h) = (&ge.group, &he.group);
            let gh = direct_product(g, h).map_err(group_err(&ge.id))?;
            let good = lcm_set(&gh);
            for x in g.elements() {
                for y in h.elements() {
                    let member = good.binary_search(&product_id(x, y, h.order())).is_ok();
                    if product_membership(g, h, x, y).map_err(group_err(&he.id))? != member {
                        return Ok(Some(format!("{} x {} at ({x}, {y})", ge.id, he.id)));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = results.into_iter().flatten().collect();
    Ok(violations_check("product membership matches LCM(G x H)", pairs.len(), violations))
}

/// LC(G) is nilpotent and LCM(G) is closed under powers.
pub fn lc_structure(entries: &[CorpusGroup]) -> Check {
    let violations: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let g = &e.group;
            let set = lcm_set(g);
            if !subgroup_is_nilpotent(g, &lc_subgroup(g)) {
                return Some(format!("{}: LC(G) not nilpotent", e.id));
            }
            let closed = set
                .iter()
                .all(|&x| g.powers(x).iter().all(|p| set.binary_search(p).is_ok()));
            (!closed).then(|| format!("{}: LCM(G) not power closed", e.id))
        })
        .collect();
    violations_check("LC(G) nilpotent and LCM(G) power closed", entries.len(), violations)
}

/// Subgroups of LCM-groups are LCM; products of sampled LCM pairs are LCM.
pub fn lcm_closure(entries: &[CorpusGroup], product_bound: usize) -> Result<Check> {
    let lcm: Vec<&CorpusGroup> = entries.iter().filter(|e| is_lcm_group(&e.group)).collect();
    let sub = lcm
        .par_iter()
        .map(|e| {
            let g = &e.group;
            for h in g.enumerate_subgroups(true).map_err(group_err(&e.id))? {
                let (hg, _) = g.induced_group(&h).map_err(group_err(&e.id))?;
                if !is_lcm_group(&hg) {
                    return Ok(Some(format!("{}: subgroup of order {} not LCM", e.id, h.order())));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..lcm.len())
        .flat_map(|i| (i..lcm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| lcm[i].group.order() * lcm[j].group.order() <= product_bound)
        .collect();
    let prod = pairs
        .par_iter()
        .map(|&(i, j)| {
            let gh = direct_product(&lcm[i].group, &lcm[j].group).map_err(group_err(&lcm[i].id))?;
            Ok((!is_lcm_group(&gh)).then(|| format!("{} x {} not LCM", lcm[i].id, lcm[j].id)))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = sub.into_iter().chain(prod).flatten().collect();
    Ok(violations_check(
        "LCM closed under subgroups and direct products",
        lcm.len() + pairs.len(),
        violations,
    ))
}

/// lcm*(S) >= lcm*(G) for every section, plus the lcm/lcm* thresholds:
/// non-nilpotent ⟹ lcm <= 1/2; lcm* > 1/2 ⟹ nilpotent; a 2-group or a
/// group with two or more prime divisors with lcm* > 1/2 is LCM.
pub fn section_ratios(entries: &[CorpusGroup]) -> Result<Check> {
    let ratio_cache: Mutex<IsoCache<Rational>> = Mutex::new(IsoCache::new());
    let star_cache: Mutex<IsoCache<Rational>> = Mutex::new(IsoCache::new());
    let star = |g: &GroupTable| -> Result<Rational> {
        if let Some(v) = star_cache.lock().unwrap().get(g)? {
            return Ok(*v);
        }
        let mut local = std::mem::take(&mut *ratio_cache.lock().unwrap());
        let v = lcm_star_cached(g, &mut local);
        {
            let mut shared = ratio_cache.lock().unwrap();
            if shared.len() < local.len() {
                *shared = local;
            }
        }
        let v = v?;
        star_cache.lock().unwrap().insert_with(g, || Ok(v))?;
        Ok(v)
    };
    let mut violations = Vec::new();
    let mut checked = 0;
    for e in entries {
        let g = &e.group;
        let err = group_err(&e.id);
        let star_g = star(g)?;
        let ratio = lcm_ratio(g);
        let nilpotent = is_nilpotent(g);
        checked += 1;
        if star_g > ratio {
            violations.push(format!("{}: lcm* above lcm", e.id));
        }
        if !nilpotent && ratio > half() {
            violations.push(format!("{}: non-nilpotent with lcm > 1/2", e.id));
        }
        if star_g > half() {
            let two_group = p_group_prime(g) == Some(2);
            let several_primes = prime_divisors(g).len() >= 2;
            if !nilpotent || ((two_group || several_primes) && !is_lcm_group(g)) {
                violations.push(format!("{}: lcm* > 1/2 but conclusion fails", e.id));
            }
        }
        for s in sections(g).map_err(&err)? {
            if star(&s.quotient)? < star_g {
                violations.push(format!("{}: section of order {} has smaller lcm*", e.id, s.quotient.order()));
            }
        }
    }
    Ok(violations_check("section lcm* monotone and lcm thresholds", checked, violations))
}

/// Minimal non-LCM ⟺ minimal non-LCM p-group, or Schmidt `P : Q` with `P`
/// an LCM-group.
pub fn minimal_dichotomy(entries: &[CorpusGroup]) -> Result<Check> {
    let results = entries
        .par_iter()
        .map(|e| {
            let g = &e.group;
            let err = group_err(&e.id);
            let minimal = is_minimal_non_lcm(g).map_err(&err)?;
            let p_case = minimal && p_group_prime(g).is_some();
            let schmidt_case = if is_schmidt(g).map_err(&err)? {
                let normal_sylow = prime_divisors(g)
                    .into_iter()
                    .map(|p| g.sylow_subgroup(p))
                    .collect::<lcmlab_core::Result<Vec<_>>>()
                    .map_err(&err)?
                    .into_iter()
                    .find(|s| g.is_normal(s))
                    .expect("a Schmidt group has a normal Sylow subgroup");
                let (pg, _) = g.induced_group(&normal_sylow).map_err(&err)?;
                is_lcm_group(&pg)
            } else {
                false
            };
            Ok((minimal != (p_case || schmidt_case)).then(|| {
                format!("{}: minimal={minimal} p-group case={p_case} Schmidt case={schmidt_case}", e.id)
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = results.into_iter().flatten().collect();
    Ok(violations_check("minimal non-LCM dichotomy", entries.len(), violations))
}

/// Every p-group of order p^k with k <= p is an LCM-group.
pub fn regular_orders_lcm(entries: &[CorpusGroup]) -> Check {
    let mut checked = 0;
    let mut violations = Vec::new();
    for e in entries {
        if let Some((p, k)) = arith::prime_power(e.group.order() as u64) {
            if k as u64 <= p {
                checked += 1;
                if !is_lcm_group(&e.group) {
                    violations.push(e.id.to_string());
                }
            }
        }
    }
    violations_check("p-groups of order p^k with k <= p are LCM", checked, violations)
}

/// For the Frobenius/Schmidt groups with abelian kernel, LCM(G) is the
/// kernel.
pub fn frobenius_kernels() -> Result<Check> {
    let mut violations = Vec::new();
    let cases = [(3, 2), (2, 3), (5, 2), (2, 7)];
    for (p, q) in cases {
        let g = frobenius_schmidt(p, q)?;
        let kernel = g.sylow_subgroup(p)?;
        if lcm_set(&g) != kernel.elements() {
            violations.push(format!("FS({p},{q})"));
        }
    }
    Ok(violations_check("LCM of Frobenius groups equals the kernel", cases.len(), violations))
}

/// The q53/q54 searches restated as checks over complete orders.
pub fn pair_search_checks(catalog: &Catalog) -> Result<Vec<Check>> {
    let top = if (1..=32).all(|o| catalog.is_complete(o)) { 32 } else { 16 };
    require_complete(catalog, 1..=16)?;
    let mut q53 = Vec::new();
    let mut q54_small = Vec::new();
    let mut q54_16 = Vec::new();
    let mut q54_32 = Vec::new();
    for order in 1..=top {
        let entries = &catalog.get(order).unwrap().entries;
        q53.extend(search_order(entries, PairKind::Q53));
        let found = search_order(entries, PairKind::Q54);
        match order {
            ..=15 => q54_small.extend(found),
            16 => q54_16 = found,
            32 => q54_32 = found,
            _ => {}
        }
    }
    let mut out = vec![
        Check::new(
            format!("q53 search through order {top}"),
            q53.is_empty(),
            format!("{} pairs", q53.len()),
        ),
        Check::new(
            "q54 search through order 15",
            q54_small.is_empty(),
            format!("{} pairs", q54_small.len()),
        ),
    ];
    let hit47 = q54_16.iter().any(|f| f.psi_g == 47 && f.psi_h == 47);
    out.push(Check::new(
        "q54 at order 16 has a psi = 47 pair",
        hit47,
        format!(
            "{} pairs; the reference table row lists exp 47 / psi 4 for the second group, read here as exp 4 / psi 47",
            q54_16.len()
        ),
    ));
    if top >= 32 {
        let hit175 = q54_32.iter().any(|f| f.psi_g == 175 && f.psi_h == 175);
        let hit95 = q54_32.iter().any(|f| f.psi_g == 95 && f.psi_h == 103);
        out.push(Check::new(
            "q54 at order 32 has psi 175 = 175 and 95 < 103 pairs",
            hit175 && hit95,
            format!("{} pairs, 175/175: {hit175}, 95/103: {hit95}", q54_32.len()),
        ));
    }
    Ok(out)
}

/// The `properties` suite over every catalog group up to order 128.
pub fn properties(catalog: &Catalog) -> Result<Vec<Check>> {
    let all = corpus(catalog, 128)?;
    let small = corpus(catalog, 16)?;
    let mid = corpus(catalog, 64)?;
    Ok(vec![
        p_group_equivalence(&all)?,
        psi_os_equivalence(&all),
        lcm_oracle(&mid),
        product_membership_oracle(&small)?,
        lc_structure(&all),
        lcm_closure(&all, 1024)?,
        section_ratios(&all)?,
        minimal_dichotomy(&all)?,
        regular_orders_lcm(&all),
        frobenius_kernels()?,
    ])
}

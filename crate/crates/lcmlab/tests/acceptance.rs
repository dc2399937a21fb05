//! Acceptance criteria 1-13. Each criterion prints one PASS/FAIL line with
//! its runtime; the test fails if any criterion fails or exceeds its bound.

use std::time::{Duration, Instant};

use lcmlab::catalog::{bundled_catalog_dir, load_catalog_filtered, Catalog};
use lcmlab::verify::{
    self, corpus, lcm_family_check, minimal_count_check, Check, CorpusGroup, LcmFamilyCase,
};
use lcmlab_core::constructors::{alternating, family_group, symmetric, Family};
use lcmlab_core::invariants::{fitting_subgroup, p_group_prime};
use lcmlab_core::lcm::{is_minimal_non_lcm, lcm_ratio, lcm_set, lcm_star};
use lcmlab_core::Rational;

struct Outcome {
    number: u32,
    passed: bool,
    elapsed: Duration,
    bound: Duration,
    detail: String,
}

fn run(number: u32, bound_secs: u64, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = f();
    let elapsed = start.elapsed();
    let bound = Duration::from_secs(bound_secs);
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.to_string())
        .collect();
    let detail = if failed.is_empty() {
        format!("{} checks", checks.len())
    } else {
        failed.join(" | ")
    };
    Outcome {
        number,
        passed: failed.is_empty() && !checks.is_empty() && elapsed < bound,
        elapsed,
        bound,
        detail,
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check::new(name, passed, detail)
}

fn ratio_check(name: &str, got: Rational, want: Rational) -> Check {
    check(name, got == want, format!("{got} (expected {want})"))
}

fn catalog_groups(catalog: &Catalog, orders: &[u32]) -> Vec<CorpusGroup> {
    catalog
        .entries()
        .filter(|e| orders.contains(&e.id.order))
        .map(CorpusGroup::from)
        .collect()
}

fn criteria(catalog: &Catalog) -> Vec<Outcome> {
    let half = Rational::new(1, 2);
    let required: Vec<u32> = catalog.orders.keys().copied().filter(|&o| catalog.is_complete(o)).collect();
    let mut out = Vec::new();

    out.push(run(1, 1, || {
        let s3 = symmetric(3).unwrap();
        vec![
            ratio_check("lcm(S3)", lcm_ratio(&s3), half),
            ratio_check("lcm*(S3)", lcm_star(&s3).unwrap(), half),
        ]
    }));

    out.push(run(2, 1, || {
        let d8 = family_group(Family::Dihedral, 8).unwrap();
        vec![ratio_check("lcm*(D8)", lcm_star(&d8).unwrap(), half)]
    }));

    out.push(run(3, 30, || {
        (1..=5)
            .map(|k| lcm_family_check(LcmFamilyCase::Dihedral, k).unwrap())
            .collect()
    }));

    out.push(run(4, 60, || verify::lemma35(Some(LcmFamilyCase::G81), None).unwrap()));

    out.push(run(5, 60, || {
        [8, 16, 81, 27]
            .into_iter()
            .map(|o| minimal_count_check(catalog, o).unwrap())
            .collect()
    }));

    out.push(run(6, 30, || verify::thm44(catalog, None).unwrap()));

    out.push(run(7, 1, || {
        let a4 = alternating(4).unwrap();
        let klein = a4.sylow_subgroup(2).unwrap();
        vec![
            check("LCM(A4) is the Klein four subgroup", lcm_set(&a4) == klein.elements(), ""),
            ratio_check("lcm(A4)", lcm_ratio(&a4), Rational::new(1, 3)),
            check("A4 minimal non-LCM", is_minimal_non_lcm(&a4).unwrap(), ""),
            check(
                "|Fit(A4)| = 4",
                fitting_subgroup(&a4).unwrap().order() == 4,
                fitting_subgroup(&a4).unwrap().order().to_string(),
            ),
        ]
    }));

    out.push(run(8, 120, || {
        let groups = catalog_groups(catalog, &[8, 16, 27, 81]);
        assert!(groups.iter().all(|g| p_group_prime(&g.group).is_some()));
        vec![verify::p_group_equivalence(&groups).unwrap()]
    }));

    out.push(run(9, 60, || {
        vec![verify::psi_os_equivalence(&catalog_groups(catalog, &required))]
    }));

    let searches = |prefix: &str| -> Vec<Check> {
        verify::pair_search_checks(catalog)
            .unwrap()
            .into_iter()
            .filter(|c| c.name.starts_with(prefix))
            .collect()
    };
    out.push(run(10, 120, || {
        let mut q53 = searches("q53");
        let reached = q53[0].name.ends_with("32");
        q53.push(check("q53 reached order 32", reached, q53[0].name.clone()));
        q53
    }));
    out.push(run(11, 120, || searches("q54")));

    out.push(run(12, 300, || {
        vec![
            verify::lcm_oracle(&corpus(catalog, 64).unwrap()),
            verify::product_membership_oracle(&corpus(catalog, 16).unwrap()).unwrap(),
        ]
    }));

    out.push(run(13, 300, || {
        let all = corpus(catalog, 128).unwrap();
        vec![
            verify::lc_structure(&all),
            verify::lcm_closure(&all, 1024).unwrap(),
            verify::section_ratios(&all).unwrap(),
            verify::minimal_dichotomy(&all).unwrap(),
        ]
    }));
    out
}

#[test]
fn acceptance_criteria() {
    let catalog = load_catalog_filtered(&bundled_catalog_dir(), |o| o <= 128).unwrap();
    let outcomes = criteria(&catalog);
    let mut failed = Vec::new();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {tag} ({:.3}s, bound {}s) {}",
            o.number,
            o.elapsed.as_secs_f64(),
            o.bound.as_secs(),
            o.detail
        );
        if !o.passed {
            failed.push(o.number);
        }
    }
    assert_eq!(outcomes.len(), 13);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

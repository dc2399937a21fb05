//! Per-group analysis reports and their text/JSON renderings.

use lcmlab_core::invariants::{
    exponent, fitting_by_cores, fitting_subgroup, is_nilpotent, is_schmidt, order_sequence,
    prime_divisors, psi,
};
use lcmlab_core::lcm::{is_minimal_non_lcm, lcm_set, lcm_star};
use lcmlab_core::{limits, ratio_string, GroupTable, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub spec: String,
    pub order: u64,
    pub exponent: u64,
    pub primes: Vec<u64>,
    pub nilpotent: bool,
    pub schmidt: bool,
    pub psi: u64,
    pub order_sequence: Vec<[u32; 2]>,
    pub lcm_size: u64,
    pub lcm_ratio: String,
    pub is_lcm: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lcm_star: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_non_lcm: Option<bool>,
    pub fitting_order: u64,
}

/// Computes the report; `with_sections` adds lcm* and minimality.
pub fn analyze(g: &GroupTable, spec: &str, with_sections: bool) -> Result<AnalysisReport> {
    let ctx = |e| Error::group(spec.to_string(), e);
    let nilpotent = is_nilpotent(g);
    let primes = prime_divisors(g);
    // A Schmidt group has exactly two prime divisors.
    let schmidt = !nilpotent && primes.len() == 2 && is_schmidt(g).map_err(ctx)?;
    let fitting = if nilpotent {
        g.order()
    } else if g.order() <= limits::subgroup_bound() {
        fitting_subgroup(g).map_err(ctx)?.order()
    } else {
        fitting_by_cores(g).map_err(ctx)?.order()
    };
    let lcm = lcm_set(g).len() as u64;
    let (star, minimal) = if with_sections {
        (
            Some(ratio_string(&lcm_star(g).map_err(ctx)?)),
            Some(is_minimal_non_lcm(g).map_err(ctx)?),
        )
    } else {
        (None, None)
    };
    Ok(AnalysisReport {
        spec: spec.to_string(),
        order: g.order() as u64,
        exponent: exponent(g),
        primes,
        nilpotent,
        schmidt,
        psi: psi(g),
        order_sequence: order_sequence(g)
            .entries()
            .iter()
            .map(|&(o, m)| [o, m])
            .collect(),
        lcm_size: lcm,
        lcm_ratio: ratio_string(&Rational::new(lcm, g.order() as u64)),
        is_lcm: lcm == g.order() as u64,
        lcm_star: star,
        minimal_non_lcm: minimal,
        fitting_order: fitting as u64,
    })
}

/// `((1,1),(2,5),(4,2))`.
pub fn format_order_sequence(entries: &[[u32; 2]]) -> String {
    let parts: Vec<String> = entries.iter().map(|[o, m]| format!("({o},{m})")).collect();
    format!("({})", parts.join(","))
}

pub fn render_text(r: &AnalysisReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let primes: Vec<String> = r.primes.iter().map(u64::to_string).collect();
    let mut out = String::new();
    out.push_str(&format!("spec:            {}\n", r.spec));
    out.push_str(&format!("order:           {}\n", r.order));
    out.push_str(&format!("exponent:        {}\n", r.exponent));
    out.push_str(&format!("primes:          {{{}}}\n", primes.join(", ")));
    out.push_str(&format!("nilpotent:       {}\n", yes_no(r.nilpotent)));
    out.push_str(&format!("schmidt:         {}\n", yes_no(r.schmidt)));
    out.push_str(&format!("psi:             {}\n", r.psi));
    out.push_str(&format!("order sequence:  {}\n", format_order_sequence(&r.order_sequence)));
    out.push_str(&format!("|LCM(G)|:        {}\n", r.lcm_size));
    out.push_str(&format!("lcm(G):          {}\n", r.lcm_ratio));
    out.push_str(&format!("LCM-group:       {}\n", yes_no(r.is_lcm)));
    if let Some(s) = &r.lcm_star {
        out.push_str(&format!("lcm*(G):         {s}\n"));
    }
    if let Some(m) = r.minimal_non_lcm {
        out.push_str(&format!("minimal non-LCM: {}\n", yes_no(m)));
    }
    out.push_str(&format!("|Fit(G)|:        {}\n", r.fitting_order));
    out
}

/// Pretty JSON with keys in sorted order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    serde_json::to_string_pretty(&v).expect("value serializes")
}

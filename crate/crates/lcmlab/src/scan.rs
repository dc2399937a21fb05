//! Catalog-wide scans: minimal non-LCM groups, the ψ/order-sequence pair
//! searches, and minimum covers.

use std::fmt;

use lcmlab_core::cover::{minimum_covers, CatalogId, CoverQuery, CoverResult};
use lcmlab_core::invariants::{exponent, order_sequence, OrderSequence};
use lcmlab_core::lcm::{is_lcm_group, is_minimal_non_lcm, lcm_ratio};
use lcmlab_core::{ratio_string, GroupTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalRow {
    pub id: String,
    pub index: u32,
    pub name: Option<String>,
    pub order_sequence: String,
    pub lcm_ratio: String,
}

fn order_catalog(catalog: &Catalog, order: u32) -> Result<&[CatalogEntry]> {
    catalog
        .get(order)
        .map(|o| o.entries.as_slice())
        .ok_or_else(|| Error::Catalog(format!("no catalog for order {order}")))
}

/// Minimal non-LCM groups of one order, by catalog index.
pub fn scan_minimal(catalog: &Catalog, order: u32) -> Result<Vec<MinimalRow>> {
    let entries = order_catalog(catalog, order)?;
    let flags = entries
        .par_iter()
        .map(|e| is_minimal_non_lcm(&e.group).map_err(|err| Error::group(e.id.to_string(), err)))
        .collect::<Result<Vec<bool>>>()?;
    Ok(entries
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(e, _)| MinimalRow {
            id: e.id.to_string(),
            index: e.id.index,
            name: e.file.meta("name").map(str::to_string),
            order_sequence: order_sequence(&e.group).to_string(),
            lcm_ratio: ratio_string(&lcm_ratio(&e.group)),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Q53,
    Q54,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Q53 => "q53",
            PairKind::Q54 => "q54",
        })
    }
}

/// A pair `(G, H)` of equal order with `G` an LCM-group and
/// `exp(H) | exp(G)` that answers the corresponding question negatively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairFinding {
    pub g_id: String,
    pub h_id: String,
    pub order: u64,
    pub psi_g: u64,
    pub psi_h: u64,
    pub exp_g: u64,
    pub exp_h: u64,
    pub os_equal: bool,
    pub kind: PairKind,
}

struct Profile {
    id: CatalogId,
    lcm: bool,
    exp: u64,
    psi: u64,
    os: OrderSequence,
}

fn profile(e: &CatalogEntry) -> Profile {
    let os = order_sequence(&e.group);
    Profile {
        id: e.id,
        lcm: is_lcm_group(&e.group),
        exp: exponent(&e.group),
        psi: os.psi(),
        os,
    }
}

/// Pairs at one order, sorted by `(gId, hId)` index.
pub fn search_order(entries: &[CatalogEntry], kind: PairKind) -> Vec<PairFinding> {
    let profiles: Vec<Profile> = entries.par_iter().map(profile).collect();
    let mut out = Vec::new();
    for g in profiles.iter().filter(|p| p.lcm) {
        for h in &profiles {
            if g.id == h.id || g.exp % h.exp != 0 {
                continue;
            }
            let hit = match kind {
                PairKind::Q53 => g.psi == h.psi && g.os != h.os,
                PairKind::Q54 => !h.lcm && h.psi >= g.psi,
            };
            if hit {
                out.push(PairFinding {
                    g_id: g.id.to_string(),
                    h_id: h.id.to_string(),
                    order: g.id.order as u64,
                    psi_g: g.psi,
                    psi_h: h.psi,
                    exp_g: g.exp,
                    exp_h: h.exp,
                    os_equal: g.os == h.os,
                    kind,
                });
            }
        }
    }
    out
}

/// Runs the search over every order up to `max_order`. Every such order
/// must be present in the catalog.
pub fn search(catalog: &Catalog, kind: PairKind, max_order: u32) -> Result<Vec<PairFinding>> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        out.extend(search_order(order_catalog(catalog, order)?, kind));
    }
    Ok(out)
}

/// Orders up to `max_order` whose catalog is missing or marked incomplete.
pub fn incomplete_orders(catalog: &Catalog, max_order: u32) -> Vec<u32> {
    (1..=max_order).filter(|&o| !catalog.is_complete(o)).collect()
}

pub fn covers(catalog: &Catalog, family: Vec<GroupTable>, max_order: Option<usize>) -> Result<CoverResult> {
    let mut query = CoverQuery::new(family);
    query.max_order = max_order;
    minimum_covers(&query, &catalog.universe()).map_err(|e| Error::group("cover search", e))
}

pub const MINIMAL_HEADERS: [&str; 5] = ["id", "index", "name", "orderSequence", "lcmRatio"];
pub const PAIR_HEADERS: [&str; 9] = [
    "gId", "hId", "order", "psiG", "psiH", "expG", "expH", "osEqual", "kind",
];

/// CSV with an explicit header row, written even when there are no rows.
pub fn write_csv<T: Serialize>(headers: &[&str], rows: &[T], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(headers)
        .map_err(|e| Error::Catalog(format!("csv output: {e}")))?;
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Catalog(format!("csv output: {e}")))?;
    }
    w.flush().map_err(|e| Error::io("<stdout>", e))?;
    Ok(())
}

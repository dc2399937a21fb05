//! Process-wide resource bounds.
//!
//! The bounds are plain atomics so that a command-line driver can raise them
//! once at start-up; every algorithm reads them when it starts.

use core::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on the order of any dense table.
pub const DEFAULT_MAX_TABLE_ORDER: usize = 4096;
/// Default cap on the order of a group whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_BOUND: usize = 512;
/// Tables up to this order get a full O(n^3) associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 1024;
/// Random triples sampled for associativity above the full-check limit.
pub const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;
/// Partial-map extensions allowed in a single isomorphism search.
pub const ISO_SEARCH_BUDGET: u64 = 100_000_000;
/// Rewriting steps allowed while collecting a single product.
pub const COLLECTION_BUDGET: u64 = 10_000_000;

// Ids are u16, so no table may exceed this regardless of configuration.
const HARD_TABLE_LIMIT: usize = u16::MAX as usize;

static MAX_TABLE_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TABLE_ORDER);
static SUBGROUP_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_SUBGROUP_BOUND);

pub fn max_table_order() -> usize {
    MAX_TABLE_ORDER.load(Ordering::Relaxed)
}

/// Sets the table cap, clamped to what 16-bit element ids can address.
pub fn set_max_table_order(n: usize) {
    MAX_TABLE_ORDER.store(n.clamp(1, HARD_TABLE_LIMIT), Ordering::Relaxed);
}

pub fn subgroup_bound() -> usize {
    SUBGROUP_BOUND.load(Ordering::Relaxed)
}

pub fn set_subgroup_bound(n: usize) {
    SUBGROUP_BOUND.store(n.max(1), Ordering::Relaxed);
}

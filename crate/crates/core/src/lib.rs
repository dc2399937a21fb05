//! Dense multiplication-table engine for small finite groups.
//!
//! Every group is a validated Cayley table over element ids `0..n` with the
//! identity fixed at id 0. On top of that representation the crate provides
//! subgroup lattices, quotients and sections, the classical element-order
//! invariants, the LCM / CP2 / P2* family of predicates and ratios,
//! isomorphism testing, and minimum-cover search over a supplied universe.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, catalogs and
//! the command-line tool live in the companion `lcmlab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod constructors;
pub mod cover;
pub mod error;
pub mod invariants;
pub mod iso;
pub mod lcm;
pub mod limits;
pub mod section;
pub mod subgroup;
pub mod table;

#[cfg(test)]
mod testing;

pub use error::{GroupError, Result};
pub use num_rational::Ratio;
pub use section::SectionDescriptor;
pub use subgroup::Subgroup;
pub use table::{Elem, GroupTable};

/// Exact non-negative rational used for the lcm ratios.
pub type Rational = Ratio<u64>;

/// Renders a rational as a reduced `a/b` string, keeping the denominator
/// even when it is 1.
pub fn ratio_string(r: &Rational) -> alloc::string::String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

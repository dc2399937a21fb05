//! Groups referred to by name in the verification suites.

use lcmlab_core::constructors::{pc_group, PcPresentation};
use lcmlab_core::GroupTable;

/// `<a, b, c, d | a^3 = b^3 = c^3 = d^3 = 1, b^a = bc, c^a = cd>` with all
/// other generator pairs commuting: order 81, exponent 9.
pub fn g81_presentation() -> PcPresentation {
    let mut p = PcPresentation::new(vec![3; 4]).expect("3 is prime");
    p.set_conjugate(1, 0, vec![(1, 1), (2, 1)]).expect("triangular");
    p.set_conjugate(2, 0, vec![(2, 1), (3, 1)]).expect("triangular");
    p
}

pub fn g81() -> GroupTable {
    pc_group(&g81_presentation())
        .expect("consistent presentation")
        .with_label("G81")
}

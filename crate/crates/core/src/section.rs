//! Quotients `H/N` of subgroups by normal subgroups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GroupError, Result};
use crate::subgroup::Subgroup;
use crate::table::{Elem, GroupTable};

/// A section `H/N` of a parent group: the subgroup `H`, the kernel `N`
/// (normal in `H`), the quotient table and the projection `H -> H/N`.
#[derive(Clone, Debug)]
pub struct SectionDescriptor {
    pub subgroup: Subgroup,
    pub kernel: Subgroup,
    pub quotient: GroupTable,
    /// `projection[i]` is the image of `subgroup.elements()[i]`.
    pub projection: Vec<Elem>,
}

impl SectionDescriptor {
    /// Image of a parent element of `H` in the quotient.
    pub fn project(&self, g: Elem) -> Option<Elem> {
        self.subgroup
            .elements()
            .binary_search(&g)
            .ok()
            .map(|i| self.projection[i])
    }
}

impl GroupTable {
    /// `G/N`. Fails unless `n` is normal in `G`.
    pub fn quotient(&self, n: &Subgroup) -> Result<SectionDescriptor> {
        self.section(&self.whole(), n)
    }

    /// `H/N` for `N` normal in `H`. Quotient ids follow the least coset
    /// representative, so the kernel itself becomes id 0.
    pub fn section(&self, h: &Subgroup, n: &Subgroup) -> Result<SectionDescriptor> {
        if !n.is_subset(h) {
            return Err(GroupError::Precondition(
                "kernel is not contained in the subgroup".into(),
            ));
        }
        if !self.normalizes(h.generators(), n) {
            return Err(GroupError::Precondition(
                "kernel is not normal in the subgroup".into(),
            ));
        }
        let mut coset_of = vec![Elem::MAX; self.order()];
        let mut reps: Vec<Elem> = Vec::with_capacity(h.order() / n.order());
        for &x in h.elements() {
            if coset_of[x as usize] != Elem::MAX {
                continue;
            }
            let id = reps.len() as Elem;
            for &k in n.elements() {
                coset_of[self.mul(x, k) as usize] = id;
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b) as usize]);
            }
        }
        let quotient = GroupTable::new(m, table, format!("{}/{}", h.order(), n.order()))?;
        let projection = h.elements().iter().map(|&x| coset_of[x as usize]).collect();
        Ok(SectionDescriptor {
            subgroup: h.clone(),
            kernel: n.clone(),
            quotient,
            projection,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::constructors::{family_group, symmetric, Family};

    #[test]
    fn small_quotients() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.derived_subgroup();
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.quotient.order(), 2);

        let d8 = family_group(Family::Dihedral, 8).unwrap();
        let q = d8.quotient(&d8.center()).unwrap();
        assert_eq!(q.quotient.order(), 4);
        assert_eq!(q.quotient.max_element_order(), 2);

        let q = d8.quotient(&d8.whole()).unwrap();
        assert_eq!(q.quotient.order(), 1);
    }

    #[test]
    fn non_normal_kernel_rejected() {
        let s3 = symmetric(3).unwrap();
        let involution = s3.elements().find(|&g| s3.order_of(g) == 2).unwrap();
        let c2 = s3.subgroup_closure(&[involution]).unwrap();
        assert!(s3.quotient(&c2).is_err());
    }

    #[test]
    fn projection_is_homomorphism() {
        let g = family_group(Family::QuasiDihedral, 16).unwrap();
        for h in g.enumerate_subgroups(false).unwrap() {
            let (hg, _) = g.induced_group(&h).unwrap();
            for n in hg.normal_subgroups().unwrap() {
                let lifted: alloc::vec::Vec<_> =
                    n.elements().iter().map(|&x| h.elements()[x as usize]).collect();
                let n = g.subgroup_from_elements(&lifted).unwrap();
                let s = g.section(&h, &n).unwrap();
                assert_eq!(s.quotient.order() * n.order(), h.order());
                for &a in h.elements() {
                    for &b in h.elements() {
                        let pa = s.project(a).unwrap();
                        let pb = s.project(b).unwrap();
                        assert_eq!(s.project(g.mul(a, b)).unwrap(), s.quotient.mul(pa, pb));
                    }
                }
            }
        }
    }
}

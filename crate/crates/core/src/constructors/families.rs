use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::table::GroupTable;

use super::perm::{alternating, symmetric};
use super::products::direct_power;

/// Named group families, keyed by their group-spec tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `C:n`, cyclic of order n.
    Cyclic,
    /// `D:2k`, dihedral of order 2k.
    Dihedral,
    /// `Q:2^k`, generalized quaternion.
    Quaternion,
    /// `QD:2^k`, quasidihedral.
    QuasiDihedral,
    /// `M:p^k`, modular p-group.
    Modular,
    /// `E:p^k`, elementary abelian.
    Elementary,
    /// `S:n`, symmetric group on n points.
    Symmetric,
    /// `A:n`, alternating group on n points.
    Alternating,
    /// `Heis:p`, extraspecial of order p^3 and exponent p.
    Heisenberg,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Cyclic,
        Family::Dihedral,
        Family::Quaternion,
        Family::QuasiDihedral,
        Family::Modular,
        Family::Elementary,
        Family::Symmetric,
        Family::Alternating,
        Family::Heisenberg,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Cyclic => "C",
            Family::Dihedral => "D",
            Family::Quaternion => "Q",
            Family::QuasiDihedral => "QD",
            Family::Modular => "M",
            Family::Elementary => "E",
            Family::Symmetric => "S",
            Family::Alternating => "A",
            Family::Heisenberg => "Heis",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == tag)
    }

    /// Checks the family's legal parameter range.
    pub fn check_param(self, param: u64) -> Result<()> {
        let bad = |why: &str| {
            Err(GroupError::Parameter(format!(
                "{}:{param} rejected: {why}",
                self.tag()
            )))
        };
        match self {
            Family::Cyclic if param == 0 => bad("order must be at least 1"),
            Family::Dihedral if !param.is_multiple_of(2) || param < 6 => {
                bad("dihedral order must be 2k with k >= 3")
            }
            Family::Quaternion => match arith::prime_power(param) {
                Some((2, k)) if k >= 3 => Ok(()),
                _ => bad("quaternion order must be 2^k with k >= 3"),
            },
            Family::QuasiDihedral => match arith::prime_power(param) {
                Some((2, k)) if k >= 4 => Ok(()),
                _ => bad("quasidihedral order must be 2^k with k >= 4"),
            },
            Family::Modular => match arith::prime_power(param) {
                Some((2, k)) if k >= 4 => Ok(()),
                Some((p, k)) if p != 2 && k >= 3 => Ok(()),
                _ => bad("modular order must be p^k with k >= 4 for p = 2, k >= 3 for odd p"),
            },
            Family::Elementary if arith::prime_power(param).is_none() => {
                bad("elementary abelian order must be a prime power")
            }
            Family::Symmetric | Family::Alternating if !(1..=7).contains(&param) => {
                bad("degree must be between 1 and 7")
            }
            Family::Heisenberg if !arith::is_prime(param) || param == 2 => {
                bad("parameter must be an odd prime")
            }
            _ => Ok(()),
        }
    }
}

/// Builds the family member with the given parameter.
pub fn family_group(kind: Family, param: u64) -> Result<GroupTable> {
    kind.check_param(param)?;
    let label = format!("{}:{param}", kind.tag());
    let group = match kind {
        Family::Cyclic => cyclic(param)?,
        Family::Dihedral => {
            let k = param / 2;
            metacyclic(k, 2, k - 1, 0, label.clone())?
        }
        Family::Quaternion => {
            let n = param / 2;
            metacyclic(n, 2, n - 1, n / 2, label.clone())?
        }
        Family::QuasiDihedral => {
            let n = param / 2;
            metacyclic(n, 2, n / 2 - 1, 0, label.clone())?
        }
        Family::Modular => {
            let (p, _) = arith::prime_power(param).unwrap();
            let n = param / p;
            metacyclic(n, p, n / p + 1, 0, label.clone())?
        }
        Family::Elementary => {
            let (p, k) = arith::prime_power(param).unwrap();
            elementary_abelian(p, k)?
        }
        Family::Symmetric => symmetric(param as usize)?,
        Family::Alternating => alternating(param as usize)?,
        Family::Heisenberg => heisenberg(param)?,
    };
    Ok(group.with_label(label))
}

pub fn cyclic(n: u64) -> Result<GroupTable> {
    if n == 0 {
        return Err(GroupError::Parameter("C:0 rejected: order must be at least 1".into()));
    }
    let n = n as usize;
    GroupTable::from_fn(n, format!("C:{n}"), |a, b| (a + b) % n)
}

/// `<a, b | a^n = 1, b^m = a^c, b a = a^r b>` on normal forms `a^i b^j`,
/// with element id `i + n * j`.
pub fn metacyclic(n: u64, m: u64, r: u64, c: u64, label: impl Into<String>) -> Result<GroupTable> {
    let order = n.checked_mul(m).ok_or(GroupError::ResourceLimit {
        what: "table order",
        limit: crate::limits::max_table_order() as u64,
    })?;
    // b^j a^s = a^(s r^j) b^j
    let twist: Vec<u64> = (0..m).map(|j| arith::pow_mod(r, j, n)).collect();
    let n_us = n as usize;
    GroupTable::from_fn(order as usize, label, |x, y| {
        let (i, j) = ((x % n_us) as u64, (x / n_us) as u64);
        let (s, t) = ((y % n_us) as u64, (y / n_us) as u64);
        let mut a = i + s * twist[j as usize];
        let mut b = j + t;
        if b >= m {
            b -= m;
            a += c;
        }
        ((a % n) + n * b) as usize
    })
}

pub fn elementary_abelian(p: u64, k: u32) -> Result<GroupTable> {
    if !arith::is_prime(p) {
        return Err(GroupError::Parameter(format!("{p} is not prime")));
    }
    let g = direct_power(&cyclic(p)?, k as usize)?;
    Ok(g.with_label(format!("E:{}", p.pow(k))))
}

/// Upper unitriangular 3x3 matrices over the integers mod `p`, as triples
/// `(x, y, z)` with `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.
pub fn heisenberg(p: u64) -> Result<GroupTable> {
    let p = p as usize;
    let split = |v: usize| (v / (p * p), v / p % p, v % p);
    GroupTable::from_fn(p * p * p, format!("Heis:{p}"), |a, b| {
        let (x, y, z) = split(a);
        let (x2, y2, z2) = split(b);
        ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p
    })
}

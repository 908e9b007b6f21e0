//! Isomorphism type among the finite subgroups of `PGL2(C)`.

use serde::{Deserialize, Serialize};

use super::library::{alternating, symmetric};
use super::{find_embedding, FiniteGroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyhedralType {
    Cyclic(u32),
    /// Dihedral group; the payload is the order `2n`.
    Dihedral(u32),
    A4,
    S4,
    A5,
    NotPolyhedral,
}

impl PolyhedralType {
    pub fn order(&self) -> Option<u32> {
        match *self {
            PolyhedralType::Cyclic(n) | PolyhedralType::Dihedral(n) => Some(n),
            PolyhedralType::A4 => Some(12),
            PolyhedralType::S4 => Some(24),
            PolyhedralType::A5 => Some(60),
            PolyhedralType::NotPolyhedral => None,
        }
    }
}

impl std::fmt::Display for PolyhedralType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolyhedralType::Cyclic(n) => write!(f, "C{n}"),
            PolyhedralType::Dihedral(n) => write!(f, "D{n}"),
            PolyhedralType::A4 => write!(f, "A4"),
            PolyhedralType::S4 => write!(f, "S4"),
            PolyhedralType::A5 => write!(f, "A5"),
            PolyhedralType::NotPolyhedral => write!(f, "not polyhedral"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognition {
    pub kind: PolyhedralType,
    /// Set for `C2` (as `D2`) and `C2 x C2` (reported as `D4`).
    pub is_degenerate_dihedral: bool,
}

pub fn recognize<E: GroupElement>(g: &FiniteGroup<E>) -> Recognition {
    let n = g.order();
    let plain = |kind| Recognition {
        kind,
        is_degenerate_dihedral: false,
    };
    let orders = g.element_orders();
    if g.is_cyclic() {
        return Recognition {
            kind: PolyhedralType::Cyclic(n as u32),
            is_degenerate_dihedral: n == 2,
        };
    }
    if n == 4 {
        // non-cyclic of order 4
        return Recognition {
            kind: PolyhedralType::Dihedral(4),
            is_degenerate_dihedral: true,
        };
    }
    if n % 2 == 0 && n >= 6 && is_dihedral(g, &orders) {
        return plain(PolyhedralType::Dihedral(n as u32));
    }
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    let reference = match n {
        12 if count(2) == 3 && count(3) == 8 => Some((alternating(4), PolyhedralType::A4)),
        24 if count(2) == 9 && count(3) == 8 && count(4) == 6 => {
            Some((symmetric(4), PolyhedralType::S4))
        }
        60 if count(2) == 15 && count(3) == 20 && count(5) == 24 => {
            Some((alternating(5), PolyhedralType::A5))
        }
        _ => None,
    };
    match reference {
        Some((r, kind)) if matches!(find_embedding(&r, g, u64::MAX), Ok(Some(_))) => plain(kind),
        _ => plain(PolyhedralType::NotPolyhedral),
    }
}

fn is_dihedral<E: GroupElement>(g: &FiniteGroup<E>, orders: &[usize]) -> bool {
    let half = g.order() / 2;
    let Some(r) = (0..g.order()).find(|&x| orders[x] == half) else {
        return false;
    };
    let rot = g.membership(&g.generate(&[r]));
    (0..g.order()).all(|s| rot[s] || (orders[s] == 2 && g.conj(s, r) == g.inv(r)))
}

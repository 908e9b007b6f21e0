use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::GroupElement;
use crate::intmat::Mat2;
use crate::qmod1::Qmod1;

/// A torus translation followed by a lattice automorphism, acting on the
/// additive torus `(Q/Z)^2` by `x -> A x + t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialElement {
    pub t: [Qmod1; 2],
    pub a: Mat2,
}

impl MonomialElement {
    pub const IDENTITY: MonomialElement = MonomialElement {
        t: [Qmod1::ZERO; 2],
        a: Mat2::IDENTITY,
    };

    pub fn new(t: [Qmod1; 2], a: Mat2) -> Self {
        assert!(a.is_unimodular(), "matrix part must be unimodular");
        MonomialElement { t, a }
    }

    pub fn torus(t: [Qmod1; 2]) -> Self {
        MonomialElement {
            t,
            a: Mat2::IDENTITY,
        }
    }

    pub fn matrix(a: Mat2) -> Self {
        MonomialElement::new([Qmod1::ZERO; 2], a)
    }

    pub fn is_torus(&self) -> bool {
        self.a == Mat2::IDENTITY
    }

    /// Image of a torus point.
    pub fn act(&self, x: [Qmod1; 2]) -> [Qmod1; 2] {
        let y = self.a.apply_q(x);
        [y[0] + self.t[0], y[1] + self.t[1]]
    }

    /// `c (t, A) c^{-1}`, i.e. the element in coordinates transformed by `c`.
    pub fn change_basis(&self, c: &Mat2) -> Self {
        MonomialElement {
            t: c.apply_q(self.t),
            a: c.conjugate(&self.a),
        }
    }
}

impl GroupElement for MonomialElement {
    fn compose(&self, other: &Self) -> Self {
        let s = self.a.apply_q(other.t);
        MonomialElement {
            t: [self.t[0] + s[0], self.t[1] + s[1]],
            a: self.a.mul(&other.a),
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.a.inverse();
        let s = inv.apply_q(self.t);
        MonomialElement {
            t: [-s[0], -s[1]],
            a: inv,
        }
    }

    fn identity_like(&self) -> Self {
        MonomialElement::IDENTITY
    }

    fn magnitude(&self) -> u64 {
        self.a.magnitude()
    }
}

impl fmt::Debug for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={},{} A={}", self.t[0], self.t[1], self.a)
    }
}

impl FromStr for MonomialElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected `t=p/q,r/s A=[[a,b],[c,d]]`, got `{s}`"));
        let rest = compact.strip_prefix("t=").ok_or_else(bad)?;
        let (t, a) = rest.split_once("A=").ok_or_else(bad)?;
        let (t0, t1) = t.split_once(',').ok_or_else(bad)?;
        let a: Mat2 = a.parse()?;
        if !a.is_unimodular() {
            return Err(Error::Parse(format!("matrix {a} is not in GL2(Z)")));
        }
        Ok(MonomialElement {
            t: [t0.parse()?, t1.parse()?],
            a,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Qmod1 {
        Qmod1::new(n, d)
    }

    #[test]
    fn square_of_twisted_swap() {
        let g = MonomialElement::new([q(1, 2), q(0, 1)], Mat2::new(0, 1, 1, 0));
        let g2 = g.compose(&g);
        assert_eq!(g2, MonomialElement::torus([q(1, 2), q(1, 2)]));
    }

    #[test]
    fn parse_round_trip() {
        let g: MonomialElement = "t=1/3, 2/3  A=[[0,-1],[1,-1]]".parse().unwrap();
        assert_eq!(g.to_string(), "t=1/3,2/3 A=[[0,-1],[1,-1]]");
        assert_eq!(g.to_string().parse::<MonomialElement>().unwrap(), g);
        assert!("t=0,0 A=[[2,0],[0,1]]".parse::<MonomialElement>().is_err());
    }

    fn mats() -> Vec<Mat2> {
        vec![
            Mat2::IDENTITY,
            Mat2::new(0, -1, 1, -1),
            Mat2::new(1, -1, 1, 0),
            Mat2::new(0, 1, 1, 0),
            Mat2::new(-1, 0, 0, 1),
            Mat2::new(1, 1, 0, 1),
            Mat2::new(2, 1, 1, 1),
        ]
    }

    fn arb_elem() -> impl Strategy<Value = MonomialElement> {
        (0i64..12, 0i64..12, 1i64..13, 0usize..7)
            .prop_map(|(a, b, d, m)| MonomialElement::new([q(a, d), q(b, 12)], mats()[m]))
    }

    proptest! {
        #[test]
        fn associative(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        }

        #[test]
        fn inverse_cancels(x in arb_elem()) {
            prop_assert_eq!(x.inverse().compose(&x), MonomialElement::IDENTITY);
            prop_assert_eq!(x.compose(&x.inverse()), MonomialElement::IDENTITY);
        }

        #[test]
        fn action_is_compatible(x in arb_elem(), y in arb_elem(), p in 0i64..30, r in 0i64..30) {
            let pt = [q(p, 30), q(r, 30)];
            prop_assert_eq!(x.compose(&y).act(pt), x.act(y.act(pt)));
        }

        #[test]
        fn change_basis_is_a_homomorphism(x in arb_elem(), y in arb_elem(), c in 0usize..7) {
            let c = mats()[c];
            prop_assert_eq!(x.compose(&y).change_basis(&c), x.change_basis(&c).compose(&y.change_basis(&c)));
        }
    }
}

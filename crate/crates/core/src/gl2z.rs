//! Finite subgroups of `GL2(Z)` up to conjugacy: the twelve labelled classes,
//! explicit conjugators, invariant forms and the containment lattice.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::subgroups::solvable_subgroups;
use crate::group::{closure, recognize, FiniteGroup, PolyhedralType};
use crate::intmat::Mat2;

/// Largest finite subgroup of `GL2(Z)` has order 12.
pub const MAX_FINITE_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
    G11,
    G12,
    #[serde(rename = "trivial")]
    Trivial,
}

impl GroupLabel {
    pub const ALL: [GroupLabel; 13] = [
        GroupLabel::G1,
        GroupLabel::G2,
        GroupLabel::G3,
        GroupLabel::G4,
        GroupLabel::G5,
        GroupLabel::G6,
        GroupLabel::G7,
        GroupLabel::G8,
        GroupLabel::G9,
        GroupLabel::G10,
        GroupLabel::G11,
        GroupLabel::G12,
        GroupLabel::Trivial,
    ];

    /// Position in [`GroupLabel::ALL`].
    pub fn index(self) -> usize {
        GroupLabel::ALL.iter().position(|&l| l == self).unwrap()
    }

    /// The standard generators of the class representative.
    pub fn generators(self) -> Vec<Mat2> {
        let r6 = Mat2::new(1, -1, 1, 0);
        let r4 = Mat2::new(0, -1, 1, 0);
        let r3 = Mat2::new(0, -1, 1, -1);
        let swap = Mat2::new(0, 1, 1, 0);
        let antiswap = Mat2::new(0, -1, -1, 0);
        let flip_x = Mat2::new(-1, 0, 0, 1);
        let flip_y = Mat2::new(1, 0, 0, -1);
        match self {
            GroupLabel::G1 => vec![r6, swap],
            GroupLabel::G2 => vec![flip_x, swap],
            GroupLabel::G3 => vec![r3, antiswap],
            GroupLabel::G4 => vec![r3, swap],
            GroupLabel::G5 => vec![flip_x, flip_y],
            GroupLabel::G6 => vec![swap, antiswap],
            GroupLabel::G7 => vec![r6],
            GroupLabel::G8 => vec![r4],
            GroupLabel::G9 => vec![r3],
            GroupLabel::G10 => vec![Mat2::IDENTITY.neg()],
            GroupLabel::G11 => vec![flip_x],
            GroupLabel::G12 => vec![swap],
            GroupLabel::Trivial => vec![Mat2::IDENTITY],
        }
    }

    pub fn representative(self) -> FiniteGroup<Mat2> {
        closure(&self.generators(), MAX_FINITE_ORDER + 1).expect("representatives are finite")
    }

    pub fn order(self) -> usize {
        match self {
            GroupLabel::G1 => 12,
            GroupLabel::G2 => 8,
            GroupLabel::G3 | GroupLabel::G4 | GroupLabel::G7 => 6,
            GroupLabel::G5 | GroupLabel::G6 | GroupLabel::G8 => 4,
            GroupLabel::G9 => 3,
            GroupLabel::G10 | GroupLabel::G11 | GroupLabel::G12 => 2,
            GroupLabel::Trivial => 1,
        }
    }

    /// Abstract structure, e.g. `D12` or `C2^2`.
    pub fn structure(self) -> &'static str {
        match self {
            GroupLabel::G1 => "D12",
            GroupLabel::G2 => "D8",
            GroupLabel::G3 | GroupLabel::G4 => "D6",
            GroupLabel::G5 | GroupLabel::G6 => "C2^2",
            GroupLabel::G7 => "C6",
            GroupLabel::G8 => "C4",
            GroupLabel::G9 => "C3",
            GroupLabel::G10 | GroupLabel::G11 | GroupLabel::G12 => "C2",
            GroupLabel::Trivial => "1",
        }
    }

    /// Whether the class is a 2-group (or trivial).
    pub fn is_two_group(self) -> bool {
        self.order().is_power_of_two()
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial => write!(f, "trivial"),
            other => write!(f, "G{}", other.index() + 1),
        }
    }
}

impl FromStr for GroupLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("trivial") || s == "1" {
            return Ok(GroupLabel::Trivial);
        }
        s.strip_prefix(['G', 'g'])
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=12).contains(n))
            .map(|n| GroupLabel::ALL[n - 1])
            .ok_or_else(|| Error::Parse(format!("unknown label `{s}`")))
    }
}

/// Describes the abstract structure computed from the group itself.
pub fn structure_of(g: &FiniteGroup<Mat2>) -> String {
    let r = recognize(g);
    match r.kind {
        PolyhedralType::Cyclic(1) => "1".into(),
        PolyhedralType::Dihedral(4) => "C2^2".into(),
        PolyhedralType::Cyclic(n) => format!("C{n}"),
        PolyhedralType::Dihedral(n) => format!("D{n}"),
        other => other.to_string(),
    }
}

/// Binary quadratic form `a x^2 + 2b xy + c y^2`, i.e. the matrix `[[a,b],[b,c]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm2 {
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.b, self.c)
    }

    pub fn value(&self, v: [i64; 2]) -> i64 {
        self.a * v[0] * v[0] + 2 * self.b * v[0] * v[1] + self.c * v[1] * v[1]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.a * self.c - self.b * self.b > 0
    }

    pub fn is_reduced(&self) -> bool {
        0 <= self.b && 2 * self.b.abs() <= self.a && self.a <= self.c
    }

    /// `g^T Q g`.
    pub fn pullback(&self, g: &Mat2) -> QuadForm2 {
        let m = g.transpose().mul(&self.matrix()).mul(g);
        QuadForm2 {
            a: m.0[0][0],
            b: m.0[0][1],
            c: m.0[1][1],
        }
    }

    /// Divides out the content.
    pub fn primitive(&self) -> QuadForm2 {
        let g = self.a.gcd(&self.b).gcd(&self.c).max(1);
        QuadForm2 {
            a: self.a / g,
            b: self.b / g,
            c: self.c / g,
        }
    }

    /// Lagrange reduction: returns the reduced form and unimodular `U` with
    /// `U^T Q U` equal to it.
    pub fn reduce(&self) -> (QuadForm2, Mat2) {
        let mut u = Mat2::IDENTITY;
        let mut q = *self;
        loop {
            if q.a > q.c {
                u = u.mul(&Mat2::new(0, 1, 1, 0));
                q = self.pullback(&u);
                continue;
            }
            if 2 * q.b.abs() > q.a {
                let k = Integer::div_floor(&(2 * q.b + q.a), &(2 * q.a));
                u = u.mul(&Mat2::new(1, -k, 0, 1));
                q = self.pullback(&u);
                continue;
            }
            break;
        }
        if q.b < 0 {
            u = u.mul(&Mat2::new(1, 0, 0, -1));
            q = self.pullback(&u);
        }
        (q, u)
    }
}

/// `sum g^T g` over the group, reduced. Every element preserves the unreduced sum.
pub fn invariant_form(g: &FiniteGroup<Mat2>) -> QuadForm2 {
    averaged_form(g).reduce().0
}

fn averaged_form(g: &FiniteGroup<Mat2>) -> QuadForm2 {
    let id = QuadForm2 { a: 1, b: 0, c: 1 };
    g.elements()
        .iter()
        .fold(QuadForm2 { a: 0, b: 0, c: 0 }, |acc, x| {
            let p = id.pullback(x);
            QuadForm2 {
                a: acc.a + p.a,
                b: acc.b + p.b,
                c: acc.c + p.c,
            }
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: GroupLabel,
    /// `conjugator · representative · conjugator^-1` is the input group.
    pub conjugator: Mat2,
}

impl Classification {
    /// Re-checks the certificate against the group.
    pub fn verify(&self, g: &FiniteGroup<Mat2>) -> bool {
        let c = self.conjugator;
        c.is_unimodular()
            && g.order() == self.label.order()
            && self
                .label
                .generators()
                .iter()
                .all(|x| g.contains(&c.conjugate(x)))
    }
}

/// Classifies a finite matrix group given by generators; rejects infinite groups.
pub fn classify_generators(gens: &[Mat2]) -> Result<Classification> {
    let g = closure(gens, MAX_FINITE_ORDER + 1).map_err(|e| match e {
        Error::CapExceeded { .. } => Error::NotFinite {
            bound: MAX_FINITE_ORDER,
        },
        other => other,
    })?;
    classify(&g)
}

pub fn classify(g: &FiniteGroup<Mat2>) -> Result<Classification> {
    if g.order() > MAX_FINITE_ORDER || g.elements().iter().any(|x| !x.is_unimodular()) {
        return Err(Error::NotFinite {
            bound: MAX_FINITE_ORDER,
        });
    }
    if g.is_trivial() {
        return Ok(Classification {
            label: GroupLabel::Trivial,
            conjugator: Mat2::IDENTITY,
        });
    }
    for label in GroupLabel::ALL
        .into_iter()
        .filter(|l| l.order() == g.order())
    {
        if label.generators().iter().all(|s| g.contains(s)) {
            return Ok(Classification {
                label,
                conjugator: Mat2::IDENTITY,
            });
        }
    }
    // In reduced coordinates the group preserves a reduced form, which bounds its entries.
    let (_, u) = averaged_form(g).reduce();
    let u_inv = u.inverse();
    let reduced: Vec<Mat2> = g.elements().iter().map(|x| u_inv.conjugate(x)).collect();
    for bound in [2, 3] {
        for label in GroupLabel::ALL
            .into_iter()
            .filter(|l| l.order() == g.order())
        {
            let gens = label.generators();
            for x in small_unimodular(bound) {
                if gens.iter().all(|s| reduced.contains(&x.conjugate(s))) {
                    // -I is central, so the sign of the conjugator is free; fix it
                    let c = u.mul(&x);
                    let first = c.0.iter().flatten().copied().find(|&v| v != 0).unwrap();
                    let conjugator = if first < 0 { c.neg() } else { c };
                    return Ok(Classification { label, conjugator });
                }
            }
        }
    }
    unreachable!("every finite subgroup of GL2(Z) is conjugate to a listed representative")
}

/// Unimodular matrices with entries in `[-bound, bound]`, in a fixed order
/// starting with the identity.
fn small_unimodular(bound: i64) -> Vec<Mat2> {
    let r = -bound..=bound;
    let mut out = vec![Mat2::IDENTITY];
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let m = Mat2::new(a, b, c, d);
                    if m.is_unimodular() && m != Mat2::IDENTITY {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Whether `big` contains a subgroup conjugate to the class `small`.
pub fn contains_class(big: GroupLabel, small: GroupLabel) -> bool {
    subgroup_labels(&big.representative()).contains(&small)
}

/// Labels of all subgroups of a finite matrix group.
pub fn subgroup_labels(g: &FiniteGroup<Mat2>) -> Vec<GroupLabel> {
    let mut labels: Vec<GroupLabel> = solvable_subgroups(g)
        .into_iter()
        .map(|s| {
            classify(&g.subgroup(&s.members, &s.gens))
                .expect("subgroups are finite")
                .label
        })
        .collect();
    labels.sort();
    labels.dedup();
    labels
}

/// Covering relations of the subgroup lattice: `(bigger, smaller)`.
pub const LATTICE_ARROWS: [(GroupLabel, GroupLabel); 18] = {
    use GroupLabel::*;
    [
        (G1, G3),
        (G1, G4),
        (G1, G7),
        (G1, G6),
        (G2, G6),
        (G2, G8),
        (G2, G5),
        (G3, G9),
        (G3, G12),
        (G4, G9),
        (G4, G12),
        (G7, G9),
        (G7, G10),
        (G6, G12),
        (G6, G10),
        (G8, G10),
        (G5, G10),
        (G5, G11),
    ]
};

/// The expected containment relation: reflexive-transitive closure of the
/// arrows, with the trivial group below everything.
pub fn expected_containment() -> [[bool; 13]; 13] {
    let mut r = [[false; 13]; 13];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
        row[GroupLabel::Trivial.index()] = true;
    }
    for (a, b) in LATTICE_ARROWS {
        r[a.index()][b.index()] = true;
    }
    for k in 0..13 {
        for i in 0..13 {
            for j in 0..13 {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Containment computed by enumerating subgroups of each representative.
pub fn computed_containment() -> [[bool; 13]; 13] {
    let mut r = [[false; 13]; 13];
    for big in GroupLabel::ALL {
        for small in subgroup_labels(&big.representative()) {
            r[big.index()][small.index()] = true;
        }
    }
    r
}

/// Full isometry groups of the square and hexagonal lattices.
pub fn maximal_finite_groups() -> [FiniteGroup<Mat2>; 2] {
    [
        GroupLabel::G2.representative(),
        GroupLabel::G1.representative(),
    ]
}

/// Checks `g^T Q g = Q` for every element.
pub fn preserves(g: &FiniteGroup<Mat2>, q: &QuadForm2) -> bool {
    g.elements().iter().all(|x| q.pullback(x) == *q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(gens: &[Mat2]) -> FiniteGroup<Mat2> {
        closure(gens, 100).unwrap()
    }

    #[test]
    fn representatives_classify_to_themselves() {
        for label in GroupLabel::ALL {
            let c = classify(&label.representative()).unwrap();
            assert_eq!(c.label, label);
            assert_eq!(c.conjugator, Mat2::IDENTITY);
            assert_eq!(structure_of(&label.representative()), label.structure());
        }
    }

    #[test]
    fn conjugated_rotation_of_order_three() {
        let b = Mat2::new(1, 1, 0, 1);
        let g = group(&[b.conjugate(&Mat2::new(0, -1, 1, -1))]);
        let c = classify(&g).unwrap();
        assert_eq!(c.label, GroupLabel::G9);
        assert!(c.verify(&g));
        assert_eq!(c.conjugator, b);
    }

    #[test]
    fn infinite_input_rejected() {
        assert_eq!(
            classify_generators(&[Mat2::new(1, 1, 0, 1)]),
            Err(Error::NotFinite {
                bound: MAX_FINITE_ORDER
            })
        );
        assert_eq!(
            classify_generators(&[Mat2::new(0, 1, 1, 0)]).unwrap().label,
            GroupLabel::G12
        );
    }

    #[test]
    fn invariant_forms_of_maximal_groups() {
        let [square, hex] = maximal_finite_groups();
        assert_eq!(
            invariant_form(&square).primitive(),
            QuadForm2 { a: 1, b: 0, c: 1 }
        );
        assert_eq!(
            invariant_form(&hex).primitive(),
            QuadForm2 { a: 2, b: 1, c: 2 }
        );
        assert_eq!(
            invariant_form(&GroupLabel::Trivial.representative()),
            QuadForm2 { a: 1, b: 0, c: 1 }
        );
        for label in GroupLabel::ALL {
            let g = label.representative();
            assert!(preserves(&g, &averaged_form(&g)));
            let q = invariant_form(&g);
            assert!(q.is_reduced() && q.is_positive_definite());
        }
    }

    // Pairs with equal abstract structure are told apart by lattice data.
    #[test]
    fn same_structure_pairs_are_separated() {
        use GroupLabel::*;
        for (x, y) in [(G3, G4), (G5, G6), (G10, G11), (G10, G12), (G11, G12)] {
            assert_eq!(x.structure(), y.structure());
            assert_eq!(classify(&x.representative()).unwrap().label, x);
            assert_eq!(classify(&y.representative()).unwrap().label, y);
        }
        // reflections: fixed lattice has a complement (G11) or not (G12)
        assert_eq!(reflection_content(&Mat2::new(-1, 0, 0, 1)), 2);
        assert_eq!(reflection_content(&Mat2::new(0, 1, 1, 0)), 1);
    }

    fn reflection_content(r: &Mat2) -> i64 {
        let m = r.0;
        let s = [m[0][0] + 1, m[0][1], m[1][0], m[1][1] + 1];
        s.iter().fold(0i64, |g, x| g.gcd(x))
    }

    #[test]
    fn every_subgroup_of_the_maximal_groups_is_labelled() {
        let mut all = Vec::new();
        for g in maximal_finite_groups() {
            for s in solvable_subgroups(&g) {
                let h = g.subgroup(&s.members, &s.gens);
                let c = classify(&h).unwrap();
                assert!(c.verify(&h));
                assert_eq!(structure_of(&h), c.label.structure());
                all.push(c.label);
            }
        }
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 13);
    }

    #[test]
    fn lattice_matches_arrows() {
        assert_eq!(computed_containment(), expected_containment());
        assert!(contains_class(GroupLabel::G1, GroupLabel::G9));
        assert!(!contains_class(GroupLabel::G2, GroupLabel::G9));
        assert!(!contains_class(GroupLabel::G5, GroupLabel::G12));
    }

    #[test]
    fn label_strings() {
        for l in GroupLabel::ALL {
            assert_eq!(l.to_string().parse::<GroupLabel>().unwrap(), l);
            let json = serde_json::to_string(&l).unwrap();
            assert_eq!(json, format!("\"{l}\""));
        }
    }

    fn unimodular() -> impl Strategy<Value = Mat2> {
        (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
            .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
            .prop_filter("unimodular", |m| m.is_unimodular())
    }

    proptest! {
        #[test]
        fn classification_is_conjugation_invariant(b in unimodular(), l in 0usize..13) {
            let label = GroupLabel::ALL[l];
            let gens: Vec<Mat2> = label.generators().iter().map(|x| b.conjugate(x)).collect();
            let g = group(&gens);
            let c = classify(&g).unwrap();
            prop_assert_eq!(c.label, label);
            prop_assert!(c.verify(&g));
        }
    }
}

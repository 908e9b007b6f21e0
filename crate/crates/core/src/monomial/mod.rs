//! Finite groups of monomial transformations `T ⋊ GL2(Z)` of toric surfaces.

mod cox;
mod element;
mod fixed;

pub use cox::{cox_extension, splits, ExtensionData, Section, SplitResult};
pub use element::MonomialElement;
pub use fixed::{fixed_points, ConeFixedPoints, FixedPointReport, TorusCoset};

use crate::error::{Error, Result};
use crate::gl2z::{classify, Classification, GroupLabel};
use crate::group::{closure, FiniteGroup, DEFAULT_CLOSURE_CAP};
use crate::intmat::Mat2;
use crate::qmod1::Qmod1;
use crate::toric::{Fan, StandardSurface};

/// A finite monomial group together with the surface it acts on.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    group: FiniteGroup<MonomialElement>,
    fan: Fan,
}

impl MonomialGroup {
    pub fn new(gens: &[MonomialElement], fan: Fan) -> Result<Self> {
        MonomialGroup::with_cap(gens, fan, DEFAULT_CLOSURE_CAP)
    }

    pub fn with_cap(gens: &[MonomialElement], fan: Fan, cap: usize) -> Result<Self> {
        let gens = if gens.is_empty() {
            vec![MonomialElement::IDENTITY]
        } else {
            gens.to_vec()
        };
        if gens.iter().any(|g| !fan.preserves(&g.a)) {
            return Err(Error::NotFanPreserving);
        }
        Ok(MonomialGroup {
            group: closure(&gens, cap)?,
            fan,
        })
    }

    /// Wraps an already closed group; every matrix part must preserve the fan.
    pub fn from_group(group: FiniteGroup<MonomialElement>, fan: Fan) -> Result<Self> {
        if group
            .generator_elements()
            .iter()
            .any(|g| !fan.preserves(&g.a))
        {
            return Err(Error::NotFanPreserving);
        }
        Ok(MonomialGroup { group, fan })
    }

    pub fn group(&self) -> &FiniteGroup<MonomialElement> {
        &self.group
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn generators(&self) -> Vec<MonomialElement> {
        self.group.generator_elements()
    }

    /// The subgroup on the given element indices, acting on the same surface.
    pub fn subgroup(&self, members: &[usize], gens: &[usize]) -> MonomialGroup {
        MonomialGroup {
            group: self.group.subgroup(members, gens),
            fan: self.fan.clone(),
        }
    }

    /// The group in coordinates changed by `c`, acting on `fan`.
    pub fn change_basis(&self, c: &Mat2, fan: Fan) -> Result<MonomialGroup> {
        let gens: Vec<MonomialElement> = self
            .generators()
            .iter()
            .map(|g| g.change_basis(c))
            .collect();
        MonomialGroup::with_cap(&gens, fan, self.order() + 1)
    }

    /// Elements lying in the torus, i.e. the kernel of [`omega`].
    pub fn torus_part(&self) -> Vec<[Qmod1; 2]> {
        self.group
            .elements()
            .iter()
            .filter(|g| g.is_torus())
            .map(|g| g.t)
            .collect()
    }

    pub fn torus_order(&self) -> usize {
        self.group
            .elements()
            .iter()
            .filter(|g| g.is_torus())
            .count()
    }
}

/// The matrix parts.
pub fn omega(g: &MonomialGroup) -> FiniteGroup<Mat2> {
    let mats: Vec<Mat2> = g.generators().iter().map(|x| x.a).collect();
    closure(&mats, crate::gl2z::MAX_FINITE_ORDER + 1)
        .expect("matrix parts of a finite group are finite")
}

/// The surface whose automorphisms contain the standard representative of `label`.
pub fn standard_surface_for(label: GroupLabel) -> Option<StandardSurface> {
    match label {
        GroupLabel::Trivial => None,
        GroupLabel::G9 => Some(StandardSurface::P2),
        l if l.is_two_group() => Some(StandardSurface::P1xP1),
        _ => Some(StandardSurface::DP6),
    }
}

#[derive(Clone, Debug)]
pub struct Standardized {
    pub group: MonomialGroup,
    /// The group was conjugated by this matrix.
    pub base_change: Mat2,
    pub label: GroupLabel,
}

/// Conjugates the group so that its matrix parts are literally the standard
/// representative of their class, and moves it to the matching standard surface.
pub fn to_standard(g: &MonomialGroup) -> Standardized {
    let om = omega(g);
    let Classification { label, conjugator } = classify(&om).expect("matrix image is finite");
    let c = conjugator.inverse();
    let fan = standard_surface_for(label)
        .map(|s| s.fan())
        .unwrap_or_else(|| g.fan().clone());
    let group = g
        .change_basis(&c, fan)
        .expect("standard surfaces carry the representative");
    Standardized {
        group,
        base_change: c,
        label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn q(n: i64, d: i64) -> Qmod1 {
        Qmod1::new(n, d)
    }

    #[test]
    fn omega_and_torus_part() {
        let p2 = StandardSurface::P2.fan();
        let g =
            MonomialGroup::new(&[MonomialElement::torus([q(1, 3), q(0, 1)])], p2.clone()).unwrap();
        assert!(omega(&g).is_trivial());
        assert_eq!(g.torus_order(), 3);

        let r3 = MonomialElement::matrix(Mat2::new(0, -1, 1, -1));
        let g = MonomialGroup::new(&[r3], p2).unwrap();
        assert_eq!(classify(&omega(&g)).unwrap().label, GroupLabel::G9);

        let q1 = StandardSurface::P1xP1.fan();
        let twisted = MonomialElement::new([q(1, 2), q(0, 1)], Mat2::new(0, 1, 1, 0));
        let g = MonomialGroup::new(&[twisted], q1).unwrap();
        assert_eq!(classify(&omega(&g)).unwrap().label, GroupLabel::G12);
        assert_eq!(g.torus_part(), vec![[q(0, 1), q(0, 1)], [q(1, 2), q(1, 2)]]);
    }

    #[test]
    fn fan_must_be_preserved() {
        let r4 = MonomialElement::matrix(Mat2::new(0, -1, 1, 0));
        assert!(matches!(
            MonomialGroup::new(&[r4], StandardSurface::P2.fan()),
            Err(Error::NotFanPreserving)
        ));
    }

    #[test]
    fn standardizing_a_conjugated_rotation() {
        let b = Mat2::new(1, 1, 0, 1);
        let r3 = Mat2::new(0, -1, 1, -1);
        let fan = Fan::new(
            StandardSurface::P2
                .fan()
                .rays()
                .iter()
                .map(|&v| b.apply(v))
                .collect(),
            StandardSurface::P2.fan().max_cones().to_vec(),
        )
        .unwrap();
        let g = MonomialGroup::new(
            &[MonomialElement::new([q(1, 3), q(0, 1)], b.conjugate(&r3))],
            fan,
        )
        .unwrap();
        let s = to_standard(&g);
        assert_eq!(s.label, GroupLabel::G9);
        assert_eq!(s.base_change, b.inverse());
        assert_eq!(
            omega(&s.group).elements(),
            GroupLabel::G9.representative().elements()
        );
        assert_eq!(s.group.fan(), &StandardSurface::P2.fan());
    }

    #[test]
    fn standardizing_is_identity_on_standard_input() {
        let g2 = GroupLabel::G2.generators();
        let gens: Vec<MonomialElement> = g2.iter().map(|&a| MonomialElement::matrix(a)).collect();
        let g = MonomialGroup::new(&gens, StandardSurface::P1xP1.fan()).unwrap();
        let s = to_standard(&g);
        assert_eq!(s.base_change, Mat2::IDENTITY);

        let t = MonomialGroup::new(
            &[MonomialElement::torus([q(1, 5), q(2, 5)])],
            StandardSurface::DP6.fan(),
        )
        .unwrap();
        let s = to_standard(&t);
        assert_eq!(s.base_change, Mat2::IDENTITY);
        assert_eq!(s.group.fan(), &StandardSurface::DP6.fan());
        assert_eq!(s.group.order(), 5);
        assert!(s
            .group
            .group()
            .elements()
            .iter()
            .all(|x| x.compose(x).is_torus()));
    }
}

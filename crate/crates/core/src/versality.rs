//! Versality of finite monomial actions on toric surfaces.
//!
//! A group acting on a complete smooth toric surface is versal exactly when
//! every Sylow subgroup is. Sylow subgroups for primes `p >= 5` lie in the
//! torus (GL2(Z) has no such torsion) and are always versal. For `p = 3` and
//! `p = 2` the group is conjugated onto P2 or P1xP1, where versality reduces
//! to an explicit condition on the matrix image and the torus part; the same
//! condition is equivalent to the existence of a fixed point there.
//!
//! Non-versal verdicts carry an abelian subgroup with no fixed point on the
//! input surface. For abelian groups, having a fixed point on a smooth
//! projective model is a birational invariant, so such a subgroup rules out
//! versality on its own.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl2z::GroupLabel;
use crate::group::subgroups::{sylow, two_generated_abelian, Subgroup};
use crate::group::{p_part, prime_factors};
use crate::intmat::Mat2;
use crate::monomial::{
    cox_extension, fixed_points, omega, splits, to_standard, MonomialElement, MonomialGroup,
    Section, Standardized, TorusCoset,
};
use crate::qmod1::Qmod1;
use crate::toric::{Fan, Vec2};

/// Which branch of the p-group conditions decided the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaCase {
    /// Matrix image trivial: the group sits in the torus.
    TorusOnly,
    /// 3-group whose matrix image is the order-three rotation group.
    RotationOfOrderThree,
    /// 2-group whose matrix image is conjugate to the coordinate swap.
    Swap,
    /// 2-group whose matrix image is conjugate to a single reflection.
    Reflection,
    /// Any other 2-group: the torus part must be trivial.
    RemainingTwoGroup,
    /// Matrix parts preserve the fan and translations vanish.
    Multiplicative,
    /// Verdict assembled from one Sylow subgroup per prime.
    SylowReduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPath {
    TorusAction,
    MultiplicativeAction,
}

/// An abelian subgroup of the input group with no fixed point on the input surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub generators: Vec<MonomialElement>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    pub prime: u64,
    pub sylow_order: usize,
    pub verdict: VersalityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A fixed point of the group after conjugating by `base_change` and moving
    /// to `fan`; `rays` span the cone whose orbit contains the point.
    FixedPoint {
        base_change: Mat2,
        fan: Fan,
        rays: Vec<Vec2>,
        coset: TorusCoset,
    },
    /// A splitting of the Cox extension of the group moved by `base_change` to `fan`.
    SplittingSection {
        base_change: Mat2,
        fan: Fan,
        section: Section,
    },
    FastPath {
        path: FastPath,
    },
    PerPrime {
        primes: Vec<PrimeVerdict>,
    },
    ConditionViolated {
        case: LemmaCase,
        witness: Option<Witness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersalityVerdict {
    pub versal: bool,
    pub lemma_case: LemmaCase,
    pub certificate: Certificate,
}

/// The condition on `|G ∩ T|` attached to a class of matrix images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusCondition {
    CoprimeTo(Vec<u64>),
    /// Decided by the coordinates of the torus part, not by its order.
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionValue {
    Holds(bool),
    Special,
}

/// The primes `|G ∩ T|` must avoid for a group with matrix image of class `label`.
pub fn torus_condition(label: GroupLabel) -> TorusCondition {
    use GroupLabel::*;
    match label {
        G1 | G7 => TorusCondition::CoprimeTo(vec![2, 3]),
        G2 | G5 | G6 | G8 | G10 => TorusCondition::CoprimeTo(vec![2]),
        G3 | G4 | G9 => TorusCondition::CoprimeTo(vec![3]),
        G11 => TorusCondition::Special,
        G12 | Trivial => TorusCondition::CoprimeTo(vec![]),
    }
}

/// Evaluates the coprimality condition for a matrix image class and torus order.
pub fn versality_condition(label: GroupLabel, torus_order: u64) -> ConditionValue {
    match torus_condition(label) {
        TorusCondition::Special => ConditionValue::Special,
        TorusCondition::CoprimeTo(ps) => {
            ConditionValue::Holds(ps.iter().all(|p| torus_order % p != 0))
        }
    }
}

fn check_p_group(g: &MonomialGroup, p: u64) -> Result<()> {
    let n = g.order() as u64;
    if p_part(n, p) != n {
        return Err(Error::NotAPGroup {
            prime: p,
            order: g.order(),
        });
    }
    Ok(())
}

/// The explicit rule for a 3-group, evaluated after standardization.
fn three_group_rule(s: &Standardized) -> (bool, LemmaCase) {
    match s.label {
        GroupLabel::Trivial => (true, LemmaCase::TorusOnly),
        GroupLabel::G9 => (s.group.torus_order() == 1, LemmaCase::RotationOfOrderThree),
        l => unreachable!("a 3-group has matrix image {l}"),
    }
}

/// The explicit rule for a 2-group, evaluated after standardization. For a
/// reflection the standard representative is `diag(-1, 1)` and the torus part
/// must lie on the line `t_0 = 0`; the only other conjugators fixing the
/// representative are diagonal, which preserve that line.
///
/// In the remaining cases a trivial torus part is necessary but not enough:
/// with matrix image `{±1, ±diag(-1, 1)}`, the group generated by `-I` and
/// `(t = (0, 1/2), diag(-1, 1))` meets the torus trivially yet acts on the
/// second factor of P1xP1 as a Klein four group, without fixed points. The
/// translations must also be removable by a change of torus origin, i.e.
/// `t_g = (I - A_g) x` for one `x`. With `strict` unset that second
/// requirement is dropped, giving the torus-order rule alone.
fn two_group_rule(s: &Standardized, strict: bool) -> (bool, LemmaCase) {
    match s.label {
        GroupLabel::Trivial => (true, LemmaCase::TorusOnly),
        GroupLabel::G12 => (true, LemmaCase::Swap),
        GroupLabel::G11 => (
            s.group.torus_part().iter().all(|t| t[0].is_zero()),
            LemmaCase::Reflection,
        ),
        _ => {
            let ok = s.group.torus_order() == 1 && (!strict || translations_removable(&s.group));
            (ok, LemmaCase::RemainingTwoGroup)
        }
    }
}

/// Whether some `x` satisfies `(A - I) x = -t` for every generator `(t, A)`,
/// i.e. conjugating by the torus element `x` turns the group into matrices.
fn translations_removable(g: &MonomialGroup) -> bool {
    let mut m = Vec::new();
    let mut b = Vec::new();
    for x in g.generators() {
        let a = x.a.0;
        m.push(vec![a[0][0] - 1, a[0][1]]);
        m.push(vec![a[1][0], a[1][1] - 1]);
        b.push(-x.t[0]);
        b.push(-x.t[1]);
    }
    !TorusCoset::solve(m, b, 2).is_empty()
}

/// The condition-based verdict alone, without certificates.
pub fn p_group_rule(g: &MonomialGroup, p: u64) -> Result<(bool, LemmaCase)> {
    rule(g, p, true)
}

/// The rule in which every 2-group outside the swap and reflection cases only
/// needs `G ∩ T = 1`. It misjudges some groups with Klein four matrix image;
/// see [`p_group_rule`] for the corrected form used by the verdicts.
pub fn torus_order_rule(g: &MonomialGroup, p: u64) -> Result<(bool, LemmaCase)> {
    rule(g, p, false)
}

fn rule(g: &MonomialGroup, p: u64, strict: bool) -> Result<(bool, LemmaCase)> {
    check_p_group(g, p)?;
    let s = to_standard(g);
    Ok(match p {
        2 => two_group_rule(&s, strict),
        3 => three_group_rule(&s),
        _ => (true, LemmaCase::TorusOnly),
    })
}

pub fn versal_3group(g: &MonomialGroup) -> Result<VersalityVerdict> {
    check_p_group(g, 3)?;
    let s = to_standard(g);
    let (versal, case) = three_group_rule(&s);
    Ok(p_group_verdict(g, &s, versal, case))
}

pub fn versal_2group(g: &MonomialGroup) -> Result<VersalityVerdict> {
    check_p_group(g, 2)?;
    let s = to_standard(g);
    let (versal, case) = two_group_rule(&s, true);
    Ok(p_group_verdict(g, &s, versal, case))
}

fn p_group_verdict(
    g: &MonomialGroup,
    s: &Standardized,
    versal: bool,
    case: LemmaCase,
) -> VersalityVerdict {
    let certificate = if versal {
        positive_certificate(s)
    } else {
        Certificate::ConditionViolated {
            case,
            witness: find_witness(g),
        }
    };
    VersalityVerdict {
        versal,
        lemma_case: case,
        certificate,
    }
}

fn positive_certificate(s: &Standardized) -> Certificate {
    let fan = s.group.fan().clone();
    if let Some(c) = fixed_points(&s.group).witness() {
        return Certificate::FixedPoint {
            base_change: s.base_change,
            fan,
            rays: c.rays.clone(),
            coset: c.coset.clone(),
        };
    }
    // The conditions imply a fixed point on the standard surface; a splitting
    // is the fallback certificate should that ever fail to be found.
    let ext = cox_extension(&s.group).expect("standard surfaces admit a Cox lift");
    let section = splits(&ext)
        .section
        .expect("versal groups have a split Cox extension");
    Certificate::SplittingSection {
        base_change: s.base_change,
        fan,
        section,
    }
}

fn is_multiplicative(g: &MonomialGroup) -> bool {
    g.generators()
        .iter()
        .all(|x| x.t.iter().all(Qmod1::is_zero))
}

/// Versality of an arbitrary finite monomial group, one Sylow subgroup at a time.
pub fn versal_monomial(g: &MonomialGroup) -> VersalityVerdict {
    if omega(g).is_trivial() {
        return fast(LemmaCase::TorusOnly, FastPath::TorusAction);
    }
    if is_multiplicative(g) {
        return fast(LemmaCase::Multiplicative, FastPath::MultiplicativeAction);
    }
    let mut primes = Vec::new();
    for p in prime_factors(g.order() as u64) {
        let sub = sylow(g.group(), p);
        let gp = g.subgroup(&sub.members, &sub.gens);
        let verdict = match p {
            2 => versal_2group(&gp).expect("Sylow subgroups are p-groups"),
            3 => versal_3group(&gp).expect("Sylow subgroups are p-groups"),
            _ => {
                debug_assert!(omega(&gp).is_trivial());
                fast(LemmaCase::TorusOnly, FastPath::TorusAction)
            }
        };
        primes.push(PrimeVerdict {
            prime: p,
            sylow_order: sub.order(),
            verdict,
        });
    }
    match primes.iter().find(|v| !v.verdict.versal) {
        Some(bad) => bad.verdict.clone(),
        None => VersalityVerdict {
            versal: true,
            lemma_case: LemmaCase::SylowReduction,
            certificate: Certificate::PerPrime { primes },
        },
    }
}

fn fast(case: LemmaCase, path: FastPath) -> VersalityVerdict {
    VersalityVerdict {
        versal: true,
        lemma_case: case,
        certificate: Certificate::FastPath { path },
    }
}

fn witness_of(g: &MonomialGroup, sub: &Subgroup) -> Option<Witness> {
    let a = g.subgroup(&sub.members, &sub.gens);
    (!fixed_points(&a).has_fixed_point).then(|| Witness {
        generators: sub
            .gens
            .iter()
            .map(|&i| g.group().element(i).clone())
            .collect(),
        order: sub.order(),
    })
}

/// Smallest abelian subgroup without a fixed point on the group's own surface.
///
/// Subgroups generated by a torus element and one more element are tried
/// first, in ascending order; the obstructions for p-groups always have this
/// shape. The full search over two-generated abelian subgroups follows.
pub fn find_witness(g: &MonomialGroup) -> Option<Witness> {
    let group = g.group();
    let in_torus = |i: usize| group.element(i).is_torus();
    two_generated_abelian(group, in_torus)
        .iter()
        .find_map(|s| witness_of(g, s))
        .or_else(|| {
            two_generated_abelian(group, |_| true)
                .iter()
                .find_map(|s| witness_of(g, s))
        })
}

impl VersalityVerdict {
    /// Re-checks the certificate against the group it was issued for.
    pub fn verify(&self, g: &MonomialGroup) -> bool {
        self.versal == self.certificate.is_positive() && self.certificate.verify(g)
    }
}

impl Certificate {
    fn is_positive(&self) -> bool {
        !matches!(self, Certificate::ConditionViolated { .. })
    }

    pub fn verify(&self, g: &MonomialGroup) -> bool {
        match self {
            Certificate::FixedPoint {
                base_change,
                fan,
                rays,
                coset,
            } => {
                let Ok(h) = g.change_basis(base_change, fan.clone()) else {
                    return false;
                };
                verify_fixed_point(&h, rays, coset)
            }
            Certificate::SplittingSection {
                base_change,
                fan,
                section,
            } => {
                let Ok(h) = g.change_basis(base_change, fan.clone()) else {
                    return false;
                };
                cox_extension(&h)
                    .map(|e| section.verify(&e))
                    .unwrap_or(false)
            }
            Certificate::FastPath {
                path: FastPath::TorusAction,
            } => omega(g).is_trivial(),
            Certificate::FastPath {
                path: FastPath::MultiplicativeAction,
            } => is_multiplicative(g),
            Certificate::PerPrime { primes } => {
                let mut covered = 1usize;
                for v in primes {
                    let sub = sylow(g.group(), v.prime);
                    if sub.order() != v.sylow_order || !v.verdict.versal {
                        return false;
                    }
                    if !v.verdict.verify(&g.subgroup(&sub.members, &sub.gens)) {
                        return false;
                    }
                    covered *= sub.order();
                }
                covered == g.order()
            }
            Certificate::ConditionViolated { witness, .. } => {
                witness.as_ref().is_some_and(|w| w.verify(g))
            }
        }
    }
}

fn verify_fixed_point(h: &MonomialGroup, rays: &[Vec2], coset: &TorusCoset) -> bool {
    let Some(x) = &coset.point else { return false };
    if !coset.verify() {
        return false;
    }
    let report = fixed_points(h);
    let Some(c) = report.cones.iter().find(|c| c.rays == rays) else {
        return false;
    };
    if c.coset.matrix != coset.matrix || c.coset.rhs != coset.rhs {
        return false;
    }
    // On the open orbit the point can be checked directly.
    !rays.is_empty()
        || h.group()
            .elements()
            .iter()
            .all(|e| e.act([x[0], x[1]]) == [x[0], x[1]])
}

impl Witness {
    /// The witness is an abelian subgroup of `g` with no fixed point on `g`'s surface.
    pub fn verify(&self, g: &MonomialGroup) -> bool {
        if !self.generators.iter().all(|x| g.group().contains(x)) {
            return false;
        }
        let Ok(a) = MonomialGroup::with_cap(&self.generators, g.fan().clone(), g.order() + 1)
        else {
            return false;
        };
        a.order() == self.order && a.group().is_abelian() && !fixed_points(&a).has_fixed_point
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::toric::StandardSurface;

    fn q(n: i64, d: i64) -> Qmod1 {
        Qmod1::new(n, d)
    }

    fn group(gens: &[MonomialElement], s: StandardSurface) -> MonomialGroup {
        MonomialGroup::new(gens, s.fan()).unwrap()
    }

    fn r3() -> MonomialElement {
        MonomialElement::matrix(Mat2::new(0, -1, 1, -1))
    }

    fn flip() -> MonomialElement {
        MonomialElement::matrix(Mat2::new(-1, 0, 0, 1))
    }

    #[test]
    fn condition_rows() {
        assert_eq!(
            versality_condition(GroupLabel::G3, 5),
            ConditionValue::Holds(true)
        );
        assert_eq!(
            versality_condition(GroupLabel::G7, 6),
            ConditionValue::Holds(false)
        );
        assert_eq!(
            versality_condition(GroupLabel::G12, 64),
            ConditionValue::Holds(true)
        );
        assert_eq!(
            versality_condition(GroupLabel::G11, 3),
            ConditionValue::Special
        );
        assert_eq!(
            versality_condition(GroupLabel::G1, 25),
            ConditionValue::Holds(true)
        );
        assert_eq!(
            versality_condition(GroupLabel::G1, 4),
            ConditionValue::Holds(false)
        );
    }

    #[test]
    fn torus_three_group_is_versal() {
        let g = group(
            &[MonomialElement::torus([q(1, 3), q(0, 1)])],
            StandardSurface::P2,
        );
        let v = versal_3group(&g).unwrap();
        assert!(v.versal && v.lemma_case == LemmaCase::TorusOnly);
        assert!(v.verify(&g));
    }

    #[test]
    fn rotation_alone_is_versal_with_a_fixed_point() {
        let g = group(&[r3()], StandardSurface::P2);
        let v = versal_3group(&g).unwrap();
        assert!(v.versal && v.lemma_case == LemmaCase::RotationOfOrderThree);
        assert!(matches!(v.certificate, Certificate::FixedPoint { .. }));
        assert!(v.verify(&g));
    }

    #[test]
    fn rotation_with_torus_is_not_versal() {
        let g = group(
            &[MonomialElement::torus([q(1, 3), q(0, 1)]), r3()],
            StandardSurface::P2,
        );
        assert_eq!(g.order(), 27);
        let v = versal_3group(&g).unwrap();
        assert!(!v.versal);
        let Certificate::ConditionViolated {
            witness: Some(w), ..
        } = &v.certificate
        else {
            panic!()
        };
        assert_eq!(w.order, 9);
        assert!(v.verify(&g));
    }

    #[test]
    fn reflection_cases() {
        let g = group(
            &[
                MonomialElement::new([q(0, 1), q(1, 2)], Mat2::new(-1, 0, 0, 1)),
                MonomialElement::torus([q(0, 1), q(1, 4)]),
            ],
            StandardSurface::P1xP1,
        );
        let v = versal_2group(&g).unwrap();
        assert!(v.versal && v.lemma_case == LemmaCase::Reflection && v.verify(&g));

        let g = group(
            &[MonomialElement::torus([q(1, 2), q(0, 1)]), flip()],
            StandardSurface::P1xP1,
        );
        let v = versal_2group(&g).unwrap();
        assert!(!v.versal && v.lemma_case == LemmaCase::Reflection && v.verify(&g));
        let Certificate::ConditionViolated {
            witness: Some(w), ..
        } = &v.certificate
        else {
            panic!()
        };
        assert_eq!(w.order, 4);
    }

    #[test]
    fn minus_identity_with_torus_is_not_versal() {
        let g = group(
            &[
                MonomialElement::matrix(Mat2::IDENTITY.neg()),
                MonomialElement::torus([q(1, 2), q(1, 2)]),
            ],
            StandardSurface::P1xP1,
        );
        let v = versal_2group(&g).unwrap();
        assert!(!v.versal && v.lemma_case == LemmaCase::RemainingTwoGroup && v.verify(&g));
    }

    #[test]
    fn klein_four_image_needs_removable_translations() {
        let g = group(
            &[
                MonomialElement::matrix(Mat2::IDENTITY.neg()),
                MonomialElement::new([q(0, 1), q(1, 2)], Mat2::new(-1, 0, 0, 1)),
            ],
            StandardSurface::P1xP1,
        );
        assert_eq!(g.order(), 4);
        assert_eq!(g.torus_order(), 1);
        assert_eq!(
            torus_order_rule(&g, 2).unwrap(),
            (true, LemmaCase::RemainingTwoGroup)
        );
        let v = versal_2group(&g).unwrap();
        assert!(!v.versal && v.verify(&g));
        assert!(!fixed_points(&g).has_fixed_point);

        // the same image with translations that a torus element removes
        let x = [q(1, 8), q(3, 8)];
        let h = MonomialGroup::new(
            &[
                MonomialElement::matrix(Mat2::IDENTITY.neg()),
                MonomialElement::matrix(Mat2::new(-1, 0, 0, 1)),
            ]
            .map(|e| {
                MonomialElement::torus(x)
                    .compose(&e)
                    .compose(&MonomialElement::torus([-x[0], -x[1]]))
            }),
            StandardSurface::P1xP1.fan(),
        )
        .unwrap();
        assert!(h.generators().iter().any(|e| !e.t[0].is_zero()));
        assert!(versal_2group(&h).unwrap().versal);
    }

    #[test]
    fn wrong_prime_is_rejected() {
        let g = group(&[r3()], StandardSurface::P2);
        assert!(matches!(
            versal_2group(&g),
            Err(Error::NotAPGroup { prime: 2, order: 3 })
        ));
    }

    fn full_group(label: GroupLabel, k: i64) -> MonomialGroup {
        let mut gens: Vec<MonomialElement> = label
            .generators()
            .into_iter()
            .map(MonomialElement::matrix)
            .collect();
        gens.push(MonomialElement::torus([q(1, k), q(0, 1)]));
        gens.push(MonomialElement::torus([q(0, 1), q(1, k)]));
        MonomialGroup::new(&gens, StandardSurface::DP6.fan()).unwrap()
    }

    #[test]
    fn hexagonal_group_over_five_torsion_is_versal() {
        let g = full_group(GroupLabel::G1, 5);
        assert_eq!(g.order(), 300);
        let v = versal_monomial(&g);
        assert!(v.versal && v.verify(&g));
    }

    #[test]
    fn hexagonal_group_with_two_torsion_is_not_versal() {
        let gens: Vec<MonomialElement> = GroupLabel::G1
            .generators()
            .into_iter()
            .map(MonomialElement::matrix)
            .chain([MonomialElement::torus([q(1, 2), q(1, 2)])])
            .collect();
        let g = MonomialGroup::new(&gens, StandardSurface::DP6.fan()).unwrap();
        let v = versal_monomial(&g);
        assert!(!v.versal && v.verify(&g));
    }

    #[test]
    fn torus_groups_take_the_fast_path() {
        let g = group(
            &[MonomialElement::torus([q(1, 6), q(1, 4)])],
            StandardSurface::P2,
        );
        let v = versal_monomial(&g);
        assert_eq!(
            v.certificate,
            Certificate::FastPath {
                path: FastPath::TorusAction
            }
        );
        let g = group(
            &GroupLabel::G2
                .generators()
                .into_iter()
                .map(MonomialElement::matrix)
                .collect::<Vec<_>>(),
            StandardSurface::P1xP1,
        );
        assert_eq!(versal_monomial(&g).lemma_case, LemmaCase::Multiplicative);
    }
}

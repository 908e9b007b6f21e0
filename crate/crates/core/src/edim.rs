//! Essential dimension of small abstract finite groups. Values 0 and 1 come
//! from the cyclic / odd dihedral characterization; value 2 means the group
//! sits inside one of seven ambient groups, and "more than 2" is reported
//! only when every one of them is ruled out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl2z::GroupLabel;
use crate::group::library::{psl27, symmetric};
use crate::group::subgroups::{normal_subgroups, quotient, rank_three_elementary_abelian, sylow};
use crate::group::{
    closure, find_embedding, find_embedding_with, prime_factors, recognize, Embedding,
};
use crate::group::{FiniteGroup, GroupElement, Perm, PolyhedralType};
use crate::monomial::MonomialElement;
use crate::qmod1::Qmod1;
use crate::reptheory::{embeds_in_gl2, Gl2Embedding};

/// Search limits. The torus moduli tried are `exp(G), 2 exp(G), ..` up to
/// `modulus_factors` multiples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdBudget {
    pub nodes: u64,
    pub closure_cap: usize,
    pub modulus_factors: u32,
}

impl Default for EdBudget {
    fn default() -> Self {
        EdBudget {
            nodes: 1_000_000,
            closure_cap: 10_000,
            modulus_factors: 3,
        }
    }
}

/// The seven ambient groups, numbered as in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    Gl2,
    TorusG1,
    TorusG2,
    TorusG3,
    TorusG4,
    Psl27,
    S5,
}

impl Form {
    pub const ALL: [Form; 7] = [
        Form::Gl2,
        Form::TorusG1,
        Form::TorusG2,
        Form::TorusG3,
        Form::TorusG4,
        Form::Psl27,
        Form::S5,
    ];

    pub fn id(self) -> u8 {
        Form::ALL.iter().position(|&f| f == self).unwrap() as u8 + 1
    }

    pub fn from_id(id: u8) -> Option<Form> {
        Form::ALL.get((id as usize).checked_sub(1)?).copied()
    }

    /// The matrix group of a torus form.
    pub fn torus_label(self) -> Option<GroupLabel> {
        match self {
            Form::TorusG1 => Some(GroupLabel::G1),
            Form::TorusG2 => Some(GroupLabel::G2),
            Form::TorusG3 => Some(GroupLabel::G3),
            Form::TorusG4 => Some(GroupLabel::G4),
            _ => None,
        }
    }

    /// Primes that may not divide `|G ∩ T|`.
    pub fn excluded_primes(self) -> &'static [u64] {
        match self {
            Form::TorusG1 => &[2, 3],
            Form::TorusG2 => &[2],
            Form::TorusG3 | Form::TorusG4 => &[3],
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdCertificate {
    /// Faithful two-dimensional representation, from the character table.
    Character(Gl2Embedding),
    /// Injective map into `T[modulus] ⋊ G_i`, given on every element of `G`.
    TorusForm {
        modulus: i64,
        generators: Vec<usize>,
        generator_images: Vec<MonomialElement>,
        images: Vec<usize>,
    },
    /// Injective map into the permutation realization of `PSL2(F7)` or `S5`.
    Permutation {
        generators: Vec<usize>,
        generator_images: Vec<Perm>,
        images: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// Contains `(Z/p)^3`.
    RankThreeAbelian,
    /// A Sylow subgroup for an odd prime is not abelian.
    NonAbelianOddSylow,
    /// Every form was ruled out by a complete search.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum EdVerdict {
    Zero,
    One {
        structure: String,
    },
    Two {
        form: u8,
        certificate: EdCertificate,
    },
    MoreThan2 {
        obstruction: Obstruction,
        witness: Vec<usize>,
    },
    UnknownAtBound {
        forms: Vec<u8>,
    },
}

impl EdVerdict {
    /// The value as a number, when known and at most 2.
    pub fn value(&self) -> Option<u8> {
        match self {
            EdVerdict::Zero => Some(0),
            EdVerdict::One { .. } => Some(1),
            EdVerdict::Two { .. } => Some(2),
            _ => None,
        }
    }

    pub fn is_more_than_two(&self) -> bool {
        matches!(self, EdVerdict::MoreThan2 { .. })
    }

    /// Re-checks the payload against `g` from scratch.
    pub fn verify<E: GroupElement>(&self, g: &FiniteGroup<E>, budget: &EdBudget) -> bool {
        match self {
            EdVerdict::Zero => g.is_trivial(),
            EdVerdict::One { .. } => !g.is_trivial() && is_cyclic_or_odd_dihedral(g),
            EdVerdict::Two { form, certificate } => {
                Form::from_id(*form).is_some_and(|f| verify_certificate(g, f, certificate, budget))
            }
            EdVerdict::MoreThan2 {
                obstruction: Obstruction::RankThreeAbelian,
                witness,
            } => {
                witness.len() == 3 && witness.iter().all(|&x| x < g.order()) && {
                    let h = g.generate(witness);
                    let p = g.element_order(witness[0]);
                    h.len() == p * p * p
                        && witness.iter().all(|&x| g.element_order(x) == p)
                        && witness
                            .iter()
                            .all(|&a| witness.iter().all(|&b| g.commute(a, b)))
                }
            }
            EdVerdict::MoreThan2 {
                obstruction: Obstruction::NonAbelianOddSylow,
                witness,
            } => {
                witness.len() == 2
                    && witness.iter().all(|&x| x < g.order())
                    && !g.commute(witness[0], witness[1])
                    && {
                        let h = g.generate(witness);
                        let p = h.len() as u64;
                        let q = prime_factors(p);
                        q.len() == 1 && q[0] % 2 == 1
                    }
            }
            // not independently checkable beyond rerunning the search
            EdVerdict::MoreThan2 {
                obstruction: Obstruction::Exhausted,
                ..
            } => true,
            EdVerdict::UnknownAtBound { .. } => true,
        }
    }
}

pub fn is_cyclic_or_odd_dihedral<E: GroupElement>(g: &FiniteGroup<E>) -> bool {
    match recognize(g).kind {
        PolyhedralType::Cyclic(_) => true,
        PolyhedralType::Dihedral(order) => (order / 2) % 2 == 1,
        _ => false,
    }
}

/// `T[n] ⋊ G_i` as a group of monomial maps.
pub fn torus_form_group(
    label: GroupLabel,
    n: i64,
    cap: usize,
) -> Result<FiniteGroup<MonomialElement>> {
    let mut gens: Vec<MonomialElement> = label
        .generators()
        .into_iter()
        .map(MonomialElement::matrix)
        .collect();
    gens.push(MonomialElement::torus([Qmod1::new(1, n), Qmod1::ZERO]));
    gens.push(MonomialElement::torus([Qmod1::ZERO, Qmod1::new(1, n)]));
    closure(&gens, cap)
}

/// Outcome of one form's membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormResult {
    Member(EdCertificate),
    /// Ruled out by a complete argument or search.
    Excluded,
    /// Some search hit its limit.
    Unknown,
}

fn coprime_to(n: usize, primes: &[u64]) -> bool {
    primes.iter().all(|&p| n as u64 % p != 0)
}

/// Whether some normal subgroup `K` could play the role of `G ∩ T` in
/// `T ⋊ G_i`. `K` must be abelian of rank at most 2 with order coprime to the
/// excluded primes, and `G/K` must embed in `G_i`.
fn torus_intersection_candidates<E: GroupElement>(g: &FiniteGroup<E>, form: Form) -> Result<bool> {
    let label = form.torus_label().expect("torus form");
    let rep = label.representative();
    for k in normal_subgroups(g) {
        if g.order() / k.order() > rep.order() || !coprime_to(k.order(), form.excluded_primes()) {
            continue;
        }
        let sub = g.subgroup(&k.members, &k.gens);
        if !sub.abelian_rank().is_some_and(|r| r <= 2) {
            continue;
        }
        if find_embedding(&quotient(g, &k.members), &rep, u64::MAX)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An injective homomorphism `G -> T[n] ⋊ G_i` whose image meets `T[n]` in a
/// subgroup of order coprime to the form's excluded primes, if one exists.
pub fn embed_in_torus_form<E: GroupElement>(
    g: &FiniteGroup<E>,
    form: Form,
    n: i64,
    budget: &EdBudget,
) -> Result<Option<EdCertificate>> {
    let label = form.torus_label().expect("torus form");
    let target = torus_form_group(label, n, budget.closure_cap)?;
    let in_torus: Vec<bool> = target.elements().iter().map(|x| x.is_torus()).collect();
    let primes = form.excluded_primes();
    let (found, _) = find_embedding_with(g, &target, budget.nodes, |images| {
        coprime_to(images.iter().filter(|&&y| in_torus[y]).count(), primes)
    })?;
    Ok(found.map(|e| EdCertificate::TorusForm {
        modulus: n,
        generator_images: e
            .generators
            .iter()
            .map(|&x| target.element(e.images[x]).clone())
            .collect(),
        generators: e.generators,
        images: e.images,
    }))
}

fn permutation_target(form: Form) -> FiniteGroup<Perm> {
    match form {
        Form::Psl27 => psl27(),
        Form::S5 => symmetric(5),
        _ => unreachable!("not a permutation form"),
    }
}

fn budget_to_unknown(r: Result<FormResult>) -> Result<FormResult> {
    match r {
        Err(
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::BoundExceeded { .. },
        ) => Ok(FormResult::Unknown),
        other => other,
    }
}

/// Membership test for a single form.
pub fn test_form<E: GroupElement>(
    g: &FiniteGroup<E>,
    form: Form,
    budget: &EdBudget,
) -> Result<FormResult> {
    budget_to_unknown(test_form_inner(g, form, budget))
}

fn test_form_inner<E: GroupElement>(
    g: &FiniteGroup<E>,
    form: Form,
    budget: &EdBudget,
) -> Result<FormResult> {
    match form {
        Form::Gl2 => {
            let e = embeds_in_gl2(g)?;
            Ok(if e.embeds {
                FormResult::Member(EdCertificate::Character(e))
            } else {
                FormResult::Excluded
            })
        }
        Form::Psl27 | Form::S5 => {
            let target = permutation_target(form);
            Ok(match find_embedding(g, &target, budget.nodes)? {
                Some(e) => FormResult::Member(EdCertificate::Permutation {
                    generator_images: e
                        .generators
                        .iter()
                        .map(|&x| target.element(e.images[x]).clone())
                        .collect(),
                    generators: e.generators,
                    images: e.images,
                }),
                None => FormResult::Excluded,
            })
        }
        _ => {
            if !torus_intersection_candidates(g, form)? {
                return Ok(FormResult::Excluded);
            }
            let exp = g.exponent() as i64;
            for k in 1..=budget.modulus_factors as i64 {
                if let Some(c) = embed_in_torus_form(g, form, k * exp, budget)? {
                    return Ok(FormResult::Member(c));
                }
            }
            Ok(FormResult::Unknown)
        }
    }
}

/// Independent check of a value-2 certificate.
pub fn verify_certificate<E: GroupElement>(
    g: &FiniteGroup<E>,
    form: Form,
    cert: &EdCertificate,
    budget: &EdBudget,
) -> bool {
    match (form, cert) {
        (Form::Gl2, EdCertificate::Character(e)) => {
            e.embeds && embeds_in_gl2(g).is_ok_and(|fresh| fresh.embeds && fresh == *e)
        }
        (
            Form::Psl27 | Form::S5,
            EdCertificate::Permutation {
                generators,
                generator_images,
                images,
            },
        ) => {
            let target = permutation_target(form);
            let e = Embedding {
                images: images.clone(),
                generators: generators.clone(),
            };
            e.verify(g, &target)
                && generators.len() == generator_images.len()
                && generators
                    .iter()
                    .zip(generator_images)
                    .all(|(&x, y)| target.element(images[x]) == y)
        }
        (
            _,
            EdCertificate::TorusForm {
                modulus,
                generators,
                generator_images,
                images,
            },
        ) => {
            let Some(label) = form.torus_label() else {
                return false;
            };
            let Ok(target) = torus_form_group(
                label,
                *modulus,
                budget
                    .closure_cap
                    .max(12 * (*modulus * *modulus) as usize + 1),
            ) else {
                return false;
            };
            let e = Embedding {
                images: images.clone(),
                generators: generators.clone(),
            };
            let torus = images
                .iter()
                .filter(|&&y| y < target.order() && target.element(y).is_torus())
                .count();
            e.verify(g, &target)
                && coprime_to(torus, form.excluded_primes())
                && generators.len() == generator_images.len()
                && generators
                    .iter()
                    .zip(generator_images)
                    .all(|(&x, y)| target.element(images[x]) == y)
        }
        _ => false,
    }
}

/// A pair of non-commuting elements generating a subgroup of a non-abelian
/// Sylow subgroup for an odd prime.
fn non_abelian_odd_sylow<E: GroupElement>(g: &FiniteGroup<E>) -> Option<[usize; 2]> {
    for p in prime_factors(g.order() as u64)
        .into_iter()
        .filter(|&p| p % 2 == 1)
    {
        let s = sylow(g, p);
        for (i, &a) in s.members.iter().enumerate() {
            if let Some(&b) = s.members[i + 1..].iter().find(|&&b| !g.commute(a, b)) {
                return Some([a, b]);
            }
        }
    }
    None
}

pub fn essential_dimension<E: GroupElement>(g: &FiniteGroup<E>, budget: &EdBudget) -> EdVerdict {
    if g.is_trivial() {
        return EdVerdict::Zero;
    }
    if is_cyclic_or_odd_dihedral(g) {
        return EdVerdict::One {
            structure: recognize(g).kind.to_string(),
        };
    }
    if let Some(w) = rank_three_elementary_abelian(g) {
        return EdVerdict::MoreThan2 {
            obstruction: Obstruction::RankThreeAbelian,
            witness: w.to_vec(),
        };
    }
    if let Some(w) = non_abelian_odd_sylow(g) {
        return EdVerdict::MoreThan2 {
            obstruction: Obstruction::NonAbelianOddSylow,
            witness: w.to_vec(),
        };
    }
    let mut unknown = Vec::new();
    for form in Form::ALL {
        match test_form(g, form, budget) {
            Ok(FormResult::Member(certificate)) => {
                return EdVerdict::Two {
                    form: form.id(),
                    certificate,
                }
            }
            Ok(FormResult::Excluded) => {}
            Ok(FormResult::Unknown) | Err(_) => unknown.push(form.id()),
        }
    }
    if unknown.is_empty() {
        EdVerdict::MoreThan2 {
            obstruction: Obstruction::Exhausted,
            witness: vec![],
        }
    } else {
        EdVerdict::UnknownAtBound { forms: unknown }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;

    fn ed(g: &FiniteGroup<Perm>) -> EdVerdict {
        essential_dimension(g, &EdBudget::default())
    }

    fn form_of(v: &EdVerdict) -> Option<u8> {
        match v {
            EdVerdict::Two { form, .. } => Some(*form),
            _ => None,
        }
    }

    #[test]
    fn values_zero_and_one() {
        assert_eq!(ed(&trivial_perm_group()), EdVerdict::Zero);
        assert_eq!(ed(&cyclic(6)).value(), Some(1));
        assert_eq!(ed(&dihedral(5)).value(), Some(1));
        assert_eq!(ed(&cyclic(2)).value(), Some(1));
    }

    #[test]
    fn value_two_forms() {
        let b = EdBudget::default();
        for (g, form) in [
            (dihedral(4), 1),
            (quaternion(), 1),
            (alternating(4), 4),
            (symmetric(4), 4),
            (alternating(5), 7),
            (symmetric(5), 7),
            (psl27(), 6),
            (c7_c3(), 2),
        ] {
            let v = essential_dimension(&g, &b);
            assert_eq!(form_of(&v), Some(form), "order {}: {v:?}", g.order());
            assert!(v.verify(&g, &b));
        }
    }

    #[test]
    fn more_than_two() {
        let v = ed(&elementary_abelian(2, 3));
        assert!(matches!(
            v,
            EdVerdict::MoreThan2 {
                obstruction: Obstruction::RankThreeAbelian,
                ..
            }
        ));
        assert!(v.verify(&elementary_abelian(2, 3), &EdBudget::default()));
        assert!(matches!(
            ed(&alternating(6)),
            EdVerdict::MoreThan2 {
                obstruction: Obstruction::Exhausted,
                ..
            }
        ));
        assert!(ed(&symmetric(6)).is_more_than_two());
        // Heisenberg group mod 3 on F3^2: (x, y) -> (x + 1, y) and (x, y) -> (x, x + y)
        let map = |f: fn(u32, u32) -> (u32, u32)| {
            Perm(
                (0..9)
                    .map(|i| {
                        let (x, y) = f(i / 3, i % 3);
                        3 * x + y
                    })
                    .collect(),
            )
        };
        let h = closure(
            &[map(|x, y| ((x + 1) % 3, y)), map(|x, y| (x, (x + y) % 3))],
            usize::MAX,
        )
        .unwrap();
        assert_eq!(h.order(), 27);
        let v = ed(&h);
        assert!(
            matches!(
                v,
                EdVerdict::MoreThan2 {
                    obstruction: Obstruction::NonAbelianOddSylow,
                    ..
                }
            ),
            "{v:?}"
        );
        assert!(v.verify(&h, &EdBudget::default()));
    }

    #[test]
    fn torus_form_search() {
        let b = EdBudget::default();
        // C5 x C5 sits in the torus, coprime to 6
        let c55 = elementary_abelian(5, 2);
        assert!(embed_in_torus_form(&c55, Form::TorusG1, 5, &b)
            .unwrap()
            .is_some());
        // C3 inside T[3] is forbidden for G3, but the rotation of order 3 works
        let c3 = cyclic(3);
        let cert = embed_in_torus_form(&c3, Form::TorusG3, 3, &b)
            .unwrap()
            .expect("rotation");
        let EdCertificate::TorusForm {
            generator_images, ..
        } = &cert
        else {
            panic!()
        };
        assert!(!generator_images[0].is_torus());
        assert!(verify_certificate(&c3, Form::TorusG3, &cert, &b));
        // C2^3 never fits
        let c222 = elementary_abelian(2, 3);
        for form in [Form::TorusG1, Form::TorusG2, Form::TorusG3, Form::TorusG4] {
            for n in 1..=4 {
                assert!(
                    embed_in_torus_form(&c222, form, n, &b).unwrap().is_none(),
                    "{form:?} {n}"
                );
            }
        }
    }

    #[test]
    fn tiny_budget_is_unknown_not_false() {
        let b = EdBudget {
            nodes: 3,
            ..EdBudget::default()
        };
        let v = essential_dimension(&symmetric(5), &b);
        assert!(matches!(v, EdVerdict::UnknownAtBound { .. }), "{v:?}");
    }

    #[test]
    fn form_ids_round_trip() {
        for f in Form::ALL {
            assert_eq!(Form::from_id(f.id()), Some(f));
        }
        assert_eq!(Form::from_id(0), None);
        assert_eq!(Form::from_id(8), None);
    }
}

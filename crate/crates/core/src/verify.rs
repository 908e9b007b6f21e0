//! Self-checks reproducing the classification results end to end. Each check
//! recomputes its facts from scratch and compares them against independent
//! expectations; the CLI `verify` command and the acceptance tests share them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::edim::{essential_dimension, EdBudget, EdVerdict};
use crate::gl2z::{
    classify, computed_containment, expected_containment, maximal_finite_groups, structure_of,
    GroupLabel,
};
use crate::group::library::{
    alternating, c7_c3, cyclic, dihedral, direct_product, elementary_abelian, psl27, quaternion,
    sl2f3, symmetric, trivial_perm_group,
};
use crate::group::subgroups::{normal_subgroups, quotient, solvable_subgroups, sylow};
use crate::group::{prime_factors, recognize, FiniteGroup, Perm, PolyhedralType};
use crate::monomial::{cox_extension, fixed_points, splits, MonomialElement, MonomialGroup};
use crate::qmod1::Qmod1;
use crate::reptheory::{
    character_table, pgl2_lift_by_characters, pgl2_lift_exists, CharacterTable,
};
use crate::toric::{fan_automorphisms, StandardSurface};
use crate::versality::{
    p_group_rule, torus_order_rule, versal_monomial, versality_condition, ConditionValue,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual cases compared.
    pub cases: usize,
    /// Human-readable descriptions of the first few mismatches.
    pub failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 10;

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        for x in &self.failures {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

/// Every finite subgroup of the two maximal finite groups is classified; the
/// twelve non-trivial classes appear, each with its listed structure.
pub fn gl2z_classes() -> CheckReport {
    let mut r = CheckReport::new("finite subgroups of GL2(Z)");
    let mut found: BTreeMap<GroupLabel, String> = BTreeMap::new();
    for big in maximal_finite_groups() {
        for s in solvable_subgroups(&big) {
            let sub = big.subgroup(&s.members, &s.gens);
            let c = classify(&sub).expect("subgroups of finite groups are finite");
            let structure = structure_of(&sub);
            r.case(c.verify(&sub) && structure == c.label.structure(), || {
                format!(
                    "{:?} classified {} with structure {structure}",
                    s.gens, c.label
                )
            });
            found.insert(c.label, structure);
        }
    }
    let nontrivial: Vec<&String> = found
        .iter()
        .filter(|(l, _)| **l != GroupLabel::Trivial)
        .map(|(_, s)| s)
        .collect();
    let expected = [
        "D12", "D8", "D6", "D6", "C2^2", "C2^2", "C6", "C4", "C3", "C2", "C2", "C2",
    ];
    r.case(nontrivial.iter().map(|s| s.as_str()).eq(expected), || {
        format!("structures {nontrivial:?}")
    });
    r
}

/// The contains-a-conjugate relation equals the closure of the lattice arrows.
pub fn gl2z_lattice() -> CheckReport {
    let mut r = CheckReport::new("containment lattice of GL2(Z) classes");
    let (got, want) = (computed_containment(), expected_containment());
    for (i, a) in GroupLabel::ALL.iter().enumerate() {
        for (j, b) in GroupLabel::ALL.iter().enumerate() {
            r.case(got[i][j] == want[i][j], || {
                format!("{a} contains {b}: computed {}", got[i][j])
            });
        }
    }
    r
}

/// The automorphism groups of the standard fans are literally the
/// representatives of the expected classes.
pub fn standard_fan_automorphisms() -> CheckReport {
    let mut r = CheckReport::new("automorphisms of the standard fans");
    let expected = [GroupLabel::G4, GroupLabel::G2, GroupLabel::G1];
    for (s, want) in StandardSurface::ALL.into_iter().zip(expected) {
        let aut = fan_automorphisms(&s.fan()).expect("standard fans span the plane");
        let c = classify(&aut).expect("automorphisms of a complete fan are finite");
        r.case(
            c.label == want && c.conjugator == crate::intmat::Mat2::IDENTITY,
            || format!("{s}: {} via {:?}", c.label, c.conjugator),
        );
    }
    r
}

/// `T[n] ⋊ label` acting on `surface`, where `T[n]` is the n-torsion of the torus.
pub fn torsion_extension(label: GroupLabel, n: i64, surface: StandardSurface) -> MonomialGroup {
    let mut gens: Vec<MonomialElement> = label
        .generators()
        .into_iter()
        .map(MonomialElement::matrix)
        .collect();
    gens.push(MonomialElement::torus([Qmod1::new(1, n), Qmod1::ZERO]));
    gens.push(MonomialElement::torus([Qmod1::ZERO, Qmod1::new(1, n)]));
    MonomialGroup::new(&gens, surface.fan()).expect("the representative preserves its standard fan")
}

type RuleFn = fn(&MonomialGroup, u64) -> crate::Result<(bool, crate::versality::LemmaCase)>;

/// For each p-subgroup of the family, the explicit condition, the fixed-point
/// oracle on the surface itself and the Cox splitting oracle must agree.
fn p_group_equivalence(name: &str, family: &MonomialGroup, p: u64, rule_fn: RuleFn) -> CheckReport {
    let mut r = CheckReport::new(name);
    for s in solvable_subgroups(family.group()) {
        if crate::group::p_part(s.order() as u64, p) != s.order() as u64 {
            continue;
        }
        let g = family.subgroup(&s.members, &s.gens);
        let (rule, case) = rule_fn(&g, p).expect("p-subgroup");
        let fixed = fixed_points(&g).has_fixed_point;
        let split = splits(&cox_extension(&g).expect("standard surface")).splits;
        r.case(rule == fixed && fixed == split, || {
            let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
            format!(
                "order {} {:?} ({case:?}): rule {rule}, fixed point {fixed}, splits {split}",
                g.order(),
                gens
            )
        });
    }
    r
}

pub fn three_group_equivalence() -> CheckReport {
    let family = torsion_extension(GroupLabel::G9, 9, StandardSurface::P2);
    p_group_equivalence("3-subgroups of T[9] x| G9 on P2", &family, 3, p_group_rule)
}

/// Uses the rule that only asks for `G ∩ T = 1` outside the swap and
/// reflection cases. This fails on groups whose matrix image contains the
/// Klein four group of diagonal signs and whose translations cannot be
/// removed; both oracles agree those have no fixed point and do not split.
pub fn two_group_equivalence() -> CheckReport {
    let family = torsion_extension(GroupLabel::G2, 8, StandardSurface::P1xP1);
    p_group_equivalence(
        "2-subgroups of T[8] x| G2 on P1xP1",
        &family,
        2,
        torus_order_rule,
    )
}

/// The same family against the corrected rule used for verdicts.
pub fn two_group_equivalence_corrected() -> CheckReport {
    let family = torsion_extension(GroupLabel::G2, 8, StandardSurface::P1xP1);
    p_group_equivalence(
        "2-subgroups of T[8] x| G2 on P1xP1, corrected rule",
        &family,
        2,
        p_group_rule,
    )
}

fn surface_for(label: GroupLabel) -> StandardSurface {
    crate::monomial::standard_surface_for(label).unwrap_or(StandardSurface::DP6)
}

/// Groups `<T[k], representative>` for every class and `k = 2..=6` get the
/// verdict predicted by the coprimality condition on `|G ∩ T| = k^2`. For a
/// single reflection, torus parts off the reflection axis break versality
/// exactly when their order is even, and torus parts on the axis never do.
pub fn versality_conditions() -> CheckReport {
    let mut r = CheckReport::new("versality conditions by class");
    for label in GroupLabel::ALL {
        for k in 2..=6i64 {
            let g = torsion_extension(label, k, surface_for(label));
            let torus = g.torus_order() as u64;
            let expected = match versality_condition(label, torus) {
                ConditionValue::Holds(b) => b,
                ConditionValue::Special => k % 2 == 1,
            };
            let v = versal_monomial(&g);
            r.case(torus == (k * k) as u64 && v.versal == expected, || {
                format!(
                    "{label} with T[{k}]: versal {}, expected {expected}",
                    v.versal
                )
            });
        }
    }
    for k in 2..=6i64 {
        let gens = [
            MonomialElement::matrix(GroupLabel::G11.generators()[0]),
            MonomialElement::torus([Qmod1::ZERO, Qmod1::new(1, k)]),
        ];
        let g = MonomialGroup::new(&gens, StandardSurface::P1xP1.fan())
            .expect("reflection preserves P1xP1");
        let v = versal_monomial(&g);
        r.case(v.versal, || {
            format!("G11 with torus on the axis, order {k}: not versal")
        });
    }
    r
}

/// Random subgroups of `T[6] ⋊ G1` on DP6: the Sylow-by-Sylow verdict, the
/// splitting of the whole group's Cox extension and the conjunction of the
/// per-Sylow splittings must agree.
pub fn sylow_reduction(samples: usize, seed: u64) -> CheckReport {
    let mut r = CheckReport::new("versality is decided by Sylow subgroups");
    let family = torsion_extension(GroupLabel::G1, 6, StandardSurface::DP6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (1..family.order()).collect();
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while r.cases < samples && attempts < 100 * samples {
        attempts += 1;
        let k = rng.gen_range(1..=3);
        let gens: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
        let members = family.group().generate(&gens);
        let n = members.len() as u64;
        // mixed order: at least two primes
        if prime_factors(n).len() < 2 || !seen.insert(members.clone()) {
            continue;
        }
        let g = family.subgroup(&members, &gens);
        let whole = splits(&cox_extension(&g).expect("standard surface")).splits;
        let per_prime = prime_factors(n).into_iter().all(|p| {
            let s = sylow(g.group(), p);
            splits(&cox_extension(&g.subgroup(&s.members, &s.gens)).expect("standard surface"))
                .splits
        });
        let verdict = versal_monomial(&g);
        r.case(
            whole == per_prime && per_prime == verdict.versal && verdict.verify(&g),
            || {
                format!(
                    "order {n} gens {gens:?}: whole {whole}, per prime {per_prime}, verdict {}",
                    verdict.versal
                )
            },
        );
    }
    r
}

/// Isomorphism type up to the identifications `D2 = C2`.
fn kind<E: crate::group::GroupElement>(g: &FiniteGroup<E>) -> PolyhedralType {
    match recognize(g).kind {
        PolyhedralType::Dihedral(2) => PolyhedralType::Cyclic(2),
        k => k,
    }
}

fn dihedral_type(order: u32) -> PolyhedralType {
    match order {
        2 => PolyhedralType::Cyclic(2),
        n => PolyhedralType::Dihedral(n),
    }
}

/// The pairs `(N, P/N)` predicted for each polyhedral type.
fn predicted_normal_structure(p: PolyhedralType) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    let mut add = |a: PolyhedralType, b: PolyhedralType| {
        out.insert((a.to_string(), b.to_string()));
    };
    match p {
        PolyhedralType::S4 => {
            add(PolyhedralType::A4, PolyhedralType::Cyclic(2));
            add(PolyhedralType::Dihedral(4), PolyhedralType::Dihedral(6));
        }
        PolyhedralType::A4 => add(PolyhedralType::Dihedral(4), PolyhedralType::Cyclic(3)),
        PolyhedralType::Dihedral(order) => {
            let n = order / 2;
            for m in (1..=n).filter(|m| n % m == 0) {
                if m > 1 {
                    add(PolyhedralType::Cyclic(m), dihedral_type(order / m));
                }
            }
            if n % 2 == 0 {
                add(dihedral_type(n), PolyhedralType::Cyclic(2));
            }
        }
        PolyhedralType::Cyclic(n) => {
            for m in (2..n).filter(|m| n % m == 0) {
                add(PolyhedralType::Cyclic(m), PolyhedralType::Cyclic(n / m));
            }
        }
        PolyhedralType::A5 | PolyhedralType::NotPolyhedral => {}
    }
    out
}

fn polyhedral_groups_up_to(order: u32) -> Vec<FiniteGroup<Perm>> {
    let mut out: Vec<FiniteGroup<Perm>> = (2..=order).map(cyclic).collect();
    out.extend((2..=order / 2).map(dihedral));
    out.extend([alternating(4), symmetric(4), alternating(5)]);
    out
}

/// Non-trivial proper normal subgroups of polyhedral groups and their quotients
/// fall into the predicted families, and every predicted pair occurs.
pub fn polyhedral_normal_structure() -> CheckReport {
    let mut r = CheckReport::new("normal subgroups of polyhedral groups");
    for p in polyhedral_groups_up_to(60) {
        let pk = kind(&p);
        let mut got = BTreeSet::new();
        for n in normal_subgroups(&p) {
            if n.order() == 1 || n.order() == p.order() {
                continue;
            }
            let nk = kind(&p.subgroup(&n.members, &n.gens));
            let qk = kind(&quotient(&p, &n.members));
            got.insert((nk.to_string(), qk.to_string()));
        }
        let want = predicted_normal_structure(pk);
        r.case(got == want, || {
            format!("{pk}: computed {got:?}, predicted {want:?}")
        });
    }
    r
}

/// Cyclic groups always lift from `PGL2` to `GL2`, dihedral `D_{2n}` exactly
/// for odd `n`; the character-table derivation must say the same.
pub fn pgl2_lifts() -> CheckReport {
    let mut r = CheckReport::new("PGL2 lifts of cyclic and dihedral groups");
    for n in 1..=15u32 {
        for (g, expected, name) in [
            (cyclic(n), true, format!("C{n}")),
            (dihedral(n), n % 2 == 1, format!("D{}", 2 * n)),
        ] {
            let stated = pgl2_lift_exists(&g);
            let derived = pgl2_lift_by_characters(&g);
            r.case(stated == Ok(expected) && derived == Ok(expected), || {
                format!(
                    "{name}: expected {expected}, recognized {stated:?}, characters {derived:?}"
                )
            });
        }
    }
    r
}

/// What a regression case expects.
enum EdExpect {
    Value(u8),
    Form(u8),
    TorusForm,
    MoreThan2,
}

pub fn essential_dimension_regression() -> CheckReport {
    let mut r = CheckReport::new("essential dimension regression");
    let budget = EdBudget::default();
    let cases: Vec<(&str, FiniteGroup<Perm>, EdExpect)> = vec![
        ("1", trivial_perm_group(), EdExpect::Value(0)),
        ("C6", cyclic(6), EdExpect::Value(1)),
        ("D10", dihedral(5), EdExpect::Value(1)),
        ("D8", dihedral(4), EdExpect::Value(2)),
        ("S4", symmetric(4), EdExpect::Value(2)),
        ("A4", alternating(4), EdExpect::Value(2)),
        ("A5", alternating(5), EdExpect::Value(2)),
        ("S5", symmetric(5), EdExpect::Form(7)),
        ("PSL2(F7)", psl27(), EdExpect::Form(6)),
        ("C7:C3", c7_c3(), EdExpect::TorusForm),
        ("C2^3", elementary_abelian(2, 3), EdExpect::MoreThan2),
        ("A6", alternating(6), EdExpect::MoreThan2),
        ("S6", symmetric(6), EdExpect::MoreThan2),
    ];
    for (name, g, expect) in cases {
        let v = essential_dimension(&g, &budget);
        let form = match &v {
            EdVerdict::Two { form, .. } => Some(*form),
            _ => None,
        };
        let ok = match expect {
            EdExpect::Value(k) => v.value() == Some(k),
            EdExpect::Form(f) => form == Some(f),
            EdExpect::TorusForm => form.is_some_and(|f| (2..=5).contains(&f)),
            EdExpect::MoreThan2 => v.is_more_than_two(),
        };
        r.case(ok && v.verify(&g, &budget), || format!("{name}: got {v:?}"));
    }
    r
}

/// Groups of order at most 200 with varied character fields: permutation
/// groups from the library and a few monomial groups.
fn character_table_corpus() -> Vec<(String, Result<CharacterTable, crate::Error>, bool)> {
    let mut perms: Vec<(String, FiniteGroup<Perm>)> = vec![
        ("Q8".into(), quaternion()),
        ("SL2(F3)".into(), sl2f3()),
        ("A4".into(), alternating(4)),
        ("S4".into(), symmetric(4)),
        ("A5".into(), alternating(5)),
        ("S5".into(), symmetric(5)),
        ("PSL2(F7)".into(), psl27()),
        ("C7:C3".into(), c7_c3()),
        ("C2^3".into(), elementary_abelian(2, 3)),
        ("C3^3".into(), elementary_abelian(3, 3)),
        ("S3xS3".into(), direct_product(&symmetric(3), &symmetric(3))),
        ("A4xC3".into(), direct_product(&alternating(4), &cyclic(3))),
        ("Q8xC3".into(), direct_product(&quaternion(), &cyclic(3))),
        ("D10xC5".into(), direct_product(&dihedral(5), &cyclic(5))),
    ];
    perms.extend([1, 2, 5, 12, 30, 97].map(|n| (format!("C{n}"), cyclic(n))));
    perms.extend([3, 4, 9, 15, 50, 100].map(|n| (format!("D{}", 2 * n), dihedral(n))));
    let mut out: Vec<_> = perms
        .into_iter()
        .map(|(n, g)| {
            let t = character_table(&g);
            let ok = t.as_ref().is_ok_and(|t| t.second_prime_agrees(&g));
            (n, t, ok)
        })
        .collect();
    for (label, n, surface) in [
        (GroupLabel::G1, 3, StandardSurface::DP6),
        (GroupLabel::G2, 4, StandardSurface::P1xP1),
        (GroupLabel::G3, 5, StandardSurface::DP6),
    ] {
        let g = torsion_extension(label, n, surface);
        let t = character_table(g.group());
        let ok = t.as_ref().is_ok_and(|t| t.second_prime_agrees(g.group()));
        out.push((format!("T[{n}]:{label}"), t, ok));
    }
    out
}

/// Orthogonality and the degree-sum identity for every group in the corpus,
/// plus agreement with an independent computation modulo a second prime.
pub fn character_tables() -> CheckReport {
    let mut r = CheckReport::new("character tables");
    for (name, t, second_prime) in character_table_corpus() {
        match t {
            Ok(t) => {
                let rows = t.row_orthogonality();
                let cols = t.column_orthogonality();
                let sum = t.degree_sum_identity();
                r.case(rows && cols && sum && second_prime, || {
                    format!("{name}: rows {rows}, columns {cols}, degree sum {sum}, second prime {second_prime}")
                });
            }
            Err(e) => r.case(false, || format!("{name}: {e}")),
        }
    }
    r
}

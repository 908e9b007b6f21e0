//! Lifting a monomial group to the Cox coordinates of its surface and
//! deciding whether the resulting extension by `K` splits.
//!
//! A lift of `(t, A)` is `(s, π)`: `π` permutes the rays as `A` does and
//! `s ∈ (Q/Z)^rays` scales the Cox coordinates, with `Σ s_ρ ρ = t`. Lifts
//! compose as `(s, π)(s', π') = (s + π·s', ππ')` where `(π·s')_{π(i)} = s'_i`.
//! `K` is the set of scalings with `Σ s_ρ ρ = 0`.
//!
//! Splitting is decided over the divisible group `Q/Z`. With `K ≅ L ⊗ C^*`
//! for a lattice `L` and `C^* ≅ Q/Z ⊕ V`, `V` uniquely divisible, the part of
//! the obstruction living in `L ⊗ V` always vanishes, so a section exists iff
//! one exists with torsion values. The unknowns are the corrections on the
//! generators, propagated along a spanning tree of the Cayley graph; every
//! other edge gives a linear equation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{MonomialElement, MonomialGroup};
use crate::error::{Error, Result};
use crate::intmat::EchelonSystem;
use crate::qmod1::Qmod1;
use crate::toric::Vec2;

type Scaling = Vec<Qmod1>;

fn add(a: &[Qmod1], b: &[Qmod1]) -> Scaling {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

fn sub(a: &[Qmod1], b: &[Qmod1]) -> Scaling {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

/// `(π·s)_{π(i)} = s_i`.
fn permute(perm: &[usize], s: &[Qmod1]) -> Scaling {
    let mut out = vec![Qmod1::ZERO; s.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = s[i];
    }
    out
}

/// `Σ s_ρ ρ`.
fn weight(rays: &[Vec2], s: &[Qmod1]) -> [Qmod1; 2] {
    rays.iter().zip(s).fold([Qmod1::ZERO; 2], |acc, (r, x)| {
        [acc[0] + x.scale(r[0]), acc[1] + x.scale(r[1])]
    })
}

/// The group with one chosen lift per element.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    group: MonomialGroup,
    rays: Vec<Vec2>,
    perms: Vec<Vec<usize>>,
    lifts: Vec<Scaling>,
}

/// Canonical lift: solve `Σ s_ρ ρ = t` using only the first two rays, which
/// must form a lattice basis.
pub fn cox_extension(g: &MonomialGroup) -> Result<ExtensionData> {
    let fan = g.fan();
    let rays = fan.rays().to_vec();
    if rays.len() < 2 || (rays[0][0] * rays[1][1] - rays[0][1] * rays[1][0]).abs() != 1 {
        return Err(Error::InvalidFan(
            "the first two rays must form a lattice basis".into(),
        ));
    }
    if !fan.is_complete() || !fan.is_smooth() {
        return Err(Error::InvalidFan(
            "Cox lifts need a complete smooth fan".into(),
        ));
    }
    let basis = crate::intmat::Mat2::from_columns(rays[0], rays[1]).inverse();
    let mut perms = Vec::new();
    let mut lifts = Vec::new();
    for x in g.group().elements() {
        perms.push(fan.ray_permutation(&x.a).ok_or(Error::NotFanPreserving)?);
        let c = basis.apply_q(x.t);
        let mut s = vec![Qmod1::ZERO; rays.len()];
        s[0] = c[0];
        s[1] = c[1];
        lifts.push(s);
    }
    Ok(ExtensionData {
        group: g.clone(),
        rays,
        perms,
        lifts,
    })
}

impl ExtensionData {
    pub fn group(&self) -> &MonomialGroup {
        &self.group
    }

    pub fn rays(&self) -> &[Vec2] {
        &self.rays
    }

    pub fn lift(&self, g: usize) -> (&[Qmod1], &[usize]) {
        (&self.lifts[g], &self.perms[g])
    }

    /// `κ(g, h) = s_g + π_g s_h - s_{gh}`, an element of `K`.
    pub fn cocycle(&self, g: usize, h: usize) -> Scaling {
        let gh = self.group.group().mul(g, h);
        sub(
            &add(&self.lifts[g], &permute(&self.perms[g], &self.lifts[h])),
            &self.lifts[gh],
        )
    }

    pub fn in_k(&self, s: &[Qmod1]) -> bool {
        weight(&self.rays, s) == [Qmod1::ZERO; 2]
    }

    /// The same extension with lifts changed by a `K`-valued 1-cochain.
    pub fn perturbed(&self, cochain: &[Scaling]) -> ExtensionData {
        assert!(
            cochain.iter().all(|b| self.in_k(b)),
            "perturbation must take values in K"
        );
        let mut e = self.clone();
        for (s, b) in e.lifts.iter_mut().zip(cochain) {
            *s = add(s, b);
        }
        e
    }

    pub fn is_zero_cocycle(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|g| (0..n).all(|h| self.cocycle(g, h).iter().all(Qmod1::is_zero)))
    }

    /// Nonzero cocycle values as (g, h, κ(g,h)) with elements written out.
    pub fn to_json(&self) -> serde_json::Value {
        let g = self.group.group();
        let n = g.order();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let k = self.cocycle(a, b);
                if k.iter().any(|x| !x.is_zero()) {
                    entries.push(serde_json::json!({
                        "g": g.element(a).to_string(),
                        "h": g.element(b).to_string(),
                        "value": k,
                    }));
                }
            }
        }
        serde_json::json!({
            "rays": self.rays,
            "order": n,
            "lifts": (0..n).map(|a| serde_json::json!({
                "element": g.element(a).to_string(),
                "scaling": self.lifts[a],
                "ray_permutation": self.perms[a],
            })).collect::<Vec<_>>(),
            "cocycle": entries,
        })
    }
}

/// A homomorphic choice of lifts: `scalings[g]` together with the ray
/// permutation of `g` for every element `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub elements: Vec<MonomialElement>,
    pub scalings: Vec<Scaling>,
}

impl Section {
    /// Checks that the section lifts every element and is multiplicative.
    pub fn verify(&self, e: &ExtensionData) -> bool {
        let g = e.group.group();
        let n = g.order();
        if self.scalings.len() != n || self.elements.as_slice() != g.elements() {
            return false;
        }
        let lifts_ok = (0..n).all(|x| weight(&e.rays, &self.scalings[x]) == g.element(x).t);
        lifts_ok
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let xy = g.mul(x, y);
                    add(&self.scalings[x], &permute(&e.perms[x], &self.scalings[y]))
                        == self.scalings[xy]
                })
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    pub splits: bool,
    pub section: Option<Section>,
    pub equations: usize,
    pub unknowns: usize,
}

/// An affine expression `constant + coeffs · X` in the unknown generator corrections.
#[derive(Clone)]
struct Affine {
    constant: Scaling,
    // one row per ray, one column per unknown
    coeffs: Vec<Vec<i64>>,
}

impl Affine {
    fn permuted(&self, perm: &[usize]) -> Affine {
        let mut coeffs = vec![Vec::new(); self.coeffs.len()];
        for (i, &p) in perm.iter().enumerate() {
            coeffs[p] = self.coeffs[i].clone();
        }
        Affine {
            constant: permute(perm, &self.constant),
            coeffs,
        }
    }

    fn plus(&self, other: &Affine) -> Affine {
        Affine {
            constant: add(&self.constant, &other.constant),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    fn shifted(&self, c: &[Qmod1]) -> Affine {
        Affine {
            constant: add(&self.constant, c),
            coeffs: self.coeffs.clone(),
        }
    }
}

pub fn splits(e: &ExtensionData) -> SplitResult {
    let g = e.group.group();
    let n = g.order();
    let r = e.rays.len();
    let gens = g.generators().to_vec();
    let unknowns = r * gens.len();
    let mut system = EchelonSystem::new(unknowns);
    let mut equations = 0;

    // correction c_g ∈ K on each generator: unknown block k
    let unknown_block = |k: usize| Affine {
        constant: vec![Qmod1::ZERO; r],
        coeffs: (0..r)
            .map(|i| {
                let mut row = vec![0; unknowns];
                row[k * r + i] = 1;
                row
            })
            .collect(),
    };
    for k in 0..gens.len() {
        for axis in 0..2 {
            let mut row = vec![0; unknowns];
            for (i, ray) in e.rays.iter().enumerate() {
                row[k * r + i] = ray[axis];
            }
            system.add_row(&row, Qmod1::ZERO);
            equations += 1;
        }
    }

    // c_1 = -s_1, and c_{xg} = κ(x, g) + c_x + π_x c_g along a BFS tree
    let zero = Affine {
        constant: vec![Qmod1::ZERO; r],
        coeffs: vec![vec![0; unknowns]; r],
    };
    let mut corr: Vec<Option<Affine>> = vec![None; n];
    corr[0] = Some(zero.shifted(&e.lifts[0].iter().map(|x| -*x).collect::<Vec<_>>()));
    let blocks: Vec<Affine> = (0..gens.len()).map(unknown_block).collect();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let cx = corr[x].clone().unwrap();
        for (k, &gk) in gens.iter().enumerate() {
            let y = g.mul(x, gk);
            let candidate = cx
                .plus(&blocks[k].permuted(&e.perms[x]))
                .shifted(&e.cocycle(x, gk));
            match &corr[y] {
                None => {
                    corr[y] = Some(candidate);
                    queue.push_back(y);
                }
                Some(cy) => {
                    for i in 0..r {
                        let row: Vec<i64> = candidate.coeffs[i]
                            .iter()
                            .zip(&cy.coeffs[i])
                            .map(|(a, b)| a - b)
                            .collect();
                        system.add_row(&row, cy.constant[i] - candidate.constant[i]);
                        equations += 1;
                    }
                }
            }
        }
    }

    let section = system.solve().map(|x| {
        let scalings = (0..n)
            .map(|a| {
                let c = corr[a].as_ref().unwrap();
                let value: Scaling = (0..r)
                    .map(|i| {
                        c.coeffs[i]
                            .iter()
                            .zip(&x)
                            .fold(c.constant[i], |acc, (&k, v)| acc + v.scale(k))
                    })
                    .collect();
                add(&e.lifts[a], &value)
            })
            .collect();
        Section {
            elements: g.elements().to_vec(),
            scalings,
        }
    });
    SplitResult {
        splits: section.is_some(),
        section,
        equations,
        unknowns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::Mat2;
    use crate::toric::StandardSurface;

    fn q(n: i64, d: i64) -> Qmod1 {
        Qmod1::new(n, d)
    }

    fn ext(gens: &[MonomialElement], s: StandardSurface) -> ExtensionData {
        cox_extension(&MonomialGroup::new(gens, s.fan()).unwrap()).unwrap()
    }

    #[test]
    fn pure_lattice_action_has_zero_cocycle() {
        let gens: Vec<MonomialElement> = crate::gl2z::GroupLabel::G1
            .generators()
            .into_iter()
            .map(MonomialElement::matrix)
            .collect();
        let e = ext(&gens, StandardSurface::DP6);
        assert!(e.is_zero_cocycle());
        let r = splits(&e);
        assert!(r.splits && r.section.unwrap().verify(&e));
    }

    #[test]
    fn cocycle_values_lie_in_k() {
        let e = ext(
            &[
                MonomialElement::new([q(1, 4), q(1, 2)], Mat2::new(-1, 0, 0, 1)),
                MonomialElement::torus([q(1, 2), q(0, 1)]),
            ],
            StandardSurface::P1xP1,
        );
        let n = e.group().order();
        for a in 0..n {
            for b in 0..n {
                assert!(e.in_k(&e.cocycle(a, b)));
            }
        }
    }

    #[test]
    fn torus_involution_on_the_plane_splits() {
        let e = ext(
            &[MonomialElement::torus([q(1, 2), q(0, 1)])],
            StandardSurface::P2,
        );
        let r = splits(&e);
        assert!(r.splits && r.section.unwrap().verify(&e));
        let e = ext(
            &[
                MonomialElement::torus([q(1, 2), q(0, 1)]),
                MonomialElement::torus([q(0, 1), q(1, 2)]),
            ],
            StandardSurface::P2,
        );
        assert!(splits(&e).splits);
    }

    #[test]
    fn order_three_rotation_with_torus_part_does_not_split() {
        let e = ext(
            &[
                MonomialElement::torus([q(1, 3), q(0, 1)]),
                MonomialElement::matrix(Mat2::new(0, -1, 1, -1)),
            ],
            StandardSurface::P2,
        );
        let r = splits(&e);
        assert!(!r.splits && r.section.is_none());
    }

    #[test]
    fn splitting_ignores_the_choice_of_lifts() {
        let e = ext(
            &[
                MonomialElement::new([q(1, 4), q(0, 1)], Mat2::new(0, 1, 1, 0)),
                MonomialElement::torus([q(1, 2), q(1, 2)]),
            ],
            StandardSurface::P1xP1,
        );
        let base = splits(&e).splits;
        let n = e.group().order();
        for seed in 1..6i64 {
            // K on P1xP1 is {(a, b, a, b)}
            let cochain: Vec<Scaling> = (0..n as i64)
                .map(|i| {
                    let a = q(i * seed, 7);
                    let b = q(i * i + seed, 5);
                    vec![a, b, a, b]
                })
                .collect();
            let p = e.perturbed(&cochain);
            let r = splits(&p);
            assert_eq!(r.splits, base);
            if let Some(s) = r.section {
                assert!(s.verify(&p));
            }
        }
    }

    #[test]
    fn serializes() {
        let e = ext(
            &[MonomialElement::new(
                [q(1, 2), q(0, 1)],
                Mat2::new(0, 1, 1, 0),
            )],
            StandardSurface::P1xP1,
        );
        let j = e.to_json();
        assert_eq!(j["order"], 4);
        assert!(j["cocycle"].as_array().is_some());
    }
}

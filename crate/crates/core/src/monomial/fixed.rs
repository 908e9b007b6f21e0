//! Fixed points of monomial groups, orbit by orbit.
//!
//! A point of the orbit of a cone is a point of the quotient torus
//! `(N / span(cone)) ⊗ C^*`. Writing it additively, an element `(t, A)` that
//! maps the cone to itself acts there by `x -> A x + t`, so the fixed points
//! solve `(A - I) x = -t`. Only torsion constants occur, so the solution set
//! is decided by Smith normal form over a divisible group.

use serde::{Deserialize, Serialize};

use super::{MonomialElement, MonomialGroup};
use crate::intmat::{apply_to_torsion, solve_divisible, IntMatrix};
use crate::qmod1::Qmod1;
use crate::toric::{cones_fixed_by, Cone, Vec2};

/// Solutions of `M x = b` with `x` in `(C^*)^k`, written additively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCoset {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<Qmod1>,
    pub unknowns: usize,
    /// A torsion solution, present exactly when the system is solvable.
    pub point: Option<Vec<Qmod1>>,
    /// Dimension of the solution set when non-empty.
    pub dim: usize,
}

impl TorusCoset {
    pub fn solve(matrix: Vec<Vec<i64>>, rhs: Vec<Qmod1>, unknowns: usize) -> TorusCoset {
        if matrix.is_empty() {
            return TorusCoset {
                matrix,
                rhs,
                unknowns,
                point: Some(vec![Qmod1::ZERO; unknowns]),
                dim: unknowns,
            };
        }
        let m = IntMatrix::from_rows(&matrix);
        let sol = solve_divisible(&m, &rhs);
        TorusCoset {
            matrix,
            rhs,
            unknowns,
            point: sol.particular,
            dim: sol.free_dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.point.is_none()
    }

    /// Independent check that the stored point solves the system.
    pub fn verify(&self) -> bool {
        match &self.point {
            None => true,
            Some(x) if self.matrix.is_empty() => x.len() == self.unknowns,
            Some(x) => apply_to_torsion(&IntMatrix::from_rows(&self.matrix), x) == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFixedPoints {
    pub cone: Cone,
    pub rays: Vec<Vec2>,
    pub coset: TorusCoset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    /// One entry per cone mapped to itself by the whole group, in fan cone order.
    pub cones: Vec<ConeFixedPoints>,
    pub has_fixed_point: bool,
}

impl FixedPointReport {
    /// The first cone whose orbit contains a fixed point.
    pub fn witness(&self) -> Option<&ConeFixedPoints> {
        self.cones.iter().find(|c| !c.coset.is_empty())
    }
}

fn det(u: Vec2, v: Vec2) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// `det[v, t]` for a torus point `t`: the image of `t` in `N / Zv`.
fn across(v: Vec2, t: [Qmod1; 2]) -> Qmod1 {
    t[1].scale(v[0]) - t[0].scale(v[1])
}

fn orbit_system(rays: &[Vec2], gens: &[MonomialElement]) -> TorusCoset {
    match rays {
        [] => {
            let mut m = Vec::new();
            let mut b = Vec::new();
            for g in gens {
                let a = g.a.0;
                m.push(vec![a[0][0] - 1, a[0][1]]);
                m.push(vec![a[1][0], a[1][1] - 1]);
                b.push(-g.t[0]);
                b.push(-g.t[1]);
            }
            TorusCoset::solve(m, b, 2)
        }
        [v] => {
            // det[v, A x] = det(A) det[v, x] because A v = v
            let m = gens.iter().map(|g| vec![g.a.det() - 1]).collect();
            let b = gens.iter().map(|g| -across(*v, g.t)).collect();
            TorusCoset::solve(m, b, 1)
        }
        _ => {
            debug_assert!(det(rays[0], rays[1]) != 0);
            TorusCoset::solve(vec![], vec![], 0)
        }
    }
}

pub fn fixed_points(g: &MonomialGroup) -> FixedPointReport {
    let om = super::omega(g);
    let fan = g.fan();
    let gens = g.generators();
    let cones: Vec<ConeFixedPoints> = cones_fixed_by(fan, &om)
        .expect("monomial groups preserve their fan")
        .into_iter()
        .map(|cone| {
            let rays = fan.cone_rays(&cone);
            let coset = orbit_system(&rays, &gens);
            ConeFixedPoints { cone, rays, coset }
        })
        .collect();
    let has_fixed_point = cones.iter().any(|c| !c.coset.is_empty());
    FixedPointReport {
        cones,
        has_fixed_point,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::Mat2;
    use crate::monomial::to_standard;
    use crate::toric::StandardSurface;

    fn q(n: i64, d: i64) -> Qmod1 {
        Qmod1::new(n, d)
    }

    fn group(gens: &[MonomialElement], s: StandardSurface) -> MonomialGroup {
        MonomialGroup::new(gens, s.fan()).unwrap()
    }

    #[test]
    fn torus_subgroup_fixes_the_vertices() {
        let g = group(
            &[MonomialElement::torus([q(1, 3), q(0, 1)])],
            StandardSurface::P2,
        );
        let r = fixed_points(&g);
        assert!(r.has_fixed_point);
        let fixed_vertices = r
            .cones
            .iter()
            .filter(|c| c.cone.dim() == 2 && !c.coset.is_empty())
            .count();
        assert_eq!(fixed_vertices, 3);
        assert!(r.cones[0].coset.is_empty());
    }

    #[test]
    fn rotation_with_translation_has_no_fixed_point() {
        let g = group(
            &[
                MonomialElement::torus([q(1, 3), q(0, 1)]),
                MonomialElement::matrix(Mat2::new(0, -1, 1, -1)),
            ],
            StandardSurface::P2,
        );
        let r = fixed_points(&g);
        assert_eq!(r.cones.len(), 1);
        assert!(!r.has_fixed_point);
    }

    #[test]
    fn rotation_alone_fixes_torus_points() {
        let g = group(
            &[MonomialElement::matrix(Mat2::new(0, -1, 1, -1))],
            StandardSurface::P2,
        );
        let r = fixed_points(&g);
        let c = &r.cones[0];
        assert!(r.has_fixed_point && c.coset.dim == 0 && c.coset.verify());
        let x = c.coset.point.as_ref().unwrap();
        let pt = [x[0], x[1]];
        assert_eq!(g.generators()[0].act(pt), pt);
    }

    #[test]
    fn swap_fixes_a_vertex() {
        let g = group(
            &[MonomialElement::matrix(Mat2::new(0, 1, 1, 0))],
            StandardSurface::P1xP1,
        );
        let r = fixed_points(&g);
        let fixed: Vec<Vec<Vec2>> = r
            .cones
            .iter()
            .filter(|c| !c.coset.is_empty())
            .map(|c| c.rays.clone())
            .collect();
        assert!(fixed.contains(&vec![[1, 0], [0, 1]]));
    }

    #[test]
    fn reflection_with_torus_half_on_first_coordinate_has_no_fixed_point() {
        let g = group(
            &[
                MonomialElement::torus([q(1, 2), q(0, 1)]),
                MonomialElement::matrix(Mat2::new(-1, 0, 0, 1)),
            ],
            StandardSurface::P1xP1,
        );
        assert!(!fixed_points(&g).has_fixed_point);
        let g = group(
            &[
                MonomialElement::torus([q(0, 1), q(1, 2)]),
                MonomialElement::matrix(Mat2::new(-1, 0, 0, 1)),
            ],
            StandardSurface::P1xP1,
        );
        assert!(fixed_points(&g).has_fixed_point);
    }

    #[test]
    fn fixed_points_survive_standardization() {
        let b = Mat2::new(2, 1, 1, 1);
        let p2 = StandardSurface::P2.fan();
        let fan = crate::toric::Fan::new(
            p2.rays().iter().map(|&v| b.apply(v)).collect(),
            p2.max_cones().to_vec(),
        )
        .unwrap();
        for t in [[q(0, 1), q(0, 1)], [q(1, 3), q(2, 3)], [q(1, 9), q(0, 1)]] {
            let gens = [
                MonomialElement::new(t, b.conjugate(&Mat2::new(0, -1, 1, -1))),
                MonomialElement::torus([q(1, 3), q(1, 3)]).change_basis(&b),
            ];
            let g = MonomialGroup::new(&gens, fan.clone()).unwrap();
            let s = to_standard(&g);
            assert_eq!(
                fixed_points(&g).has_fixed_point,
                fixed_points(&s.group).has_fixed_point
            );
        }
    }

    #[test]
    fn witnesses_verify() {
        let g = group(
            &[MonomialElement::new(
                [q(1, 4), q(1, 2)],
                Mat2::new(-1, 0, 0, 1),
            )],
            StandardSurface::P1xP1,
        );
        for c in fixed_points(&g).cones {
            assert!(c.coset.verify());
            if let Some(x) = &c.coset.point {
                if c.cone.dim() == 0 {
                    let pt = [x[0], x[1]];
                    assert!(g.group().elements().iter().all(|e| e.act(pt) == pt));
                }
            }
        }
    }
}

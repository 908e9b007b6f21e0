//! Complete and incomplete fans in `Z^2`, the standard surface fans, fan
//! automorphisms and cones fixed by a matrix group.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{closure, FiniteGroup};
use crate::intmat::Mat2;

pub type Vec2 = [i64; 2];

fn det(u: Vec2, v: Vec2) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// A cone of the fan, by sorted ray indices: `[]` is the zero cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone(pub Vec<usize>);

impl Cone {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    rays: Vec<Vec2>,
    /// Two-dimensional cones, each stored counterclockwise.
    max_cones: Vec<[usize; 2]>,
}

impl Fan {
    /// Validates primitivity, strict convexity and that cones meet along faces.
    pub fn new(rays: Vec<Vec2>, cones: Vec<[usize; 2]>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r[0].gcd(&r[1]) != 1 {
                return Err(Error::InvalidFan(format!(
                    "ray ({},{}) is not primitive",
                    r[0], r[1]
                )));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!(
                    "ray ({},{}) repeated",
                    r[0], r[1]
                )));
            }
        }
        let mut max_cones = Vec::new();
        for [i, j] in cones {
            if i >= rays.len() || j >= rays.len() {
                return Err(Error::InvalidFan(format!(
                    "cone [{i},{j}] names a missing ray"
                )));
            }
            let d = det(rays[i], rays[j]);
            if d == 0 {
                return Err(Error::InvalidFan(format!(
                    "cone [{i},{j}] is not strictly convex"
                )));
            }
            let c = if d > 0 { [i, j] } else { [j, i] };
            if max_cones.contains(&c) {
                return Err(Error::InvalidFan(format!("cone [{i},{j}] repeated")));
            }
            max_cones.push(c);
        }
        let fan = Fan { rays, max_cones };
        for c in &fan.max_cones {
            if let Some(k) = (0..fan.rays.len()).find(|&k| fan.strictly_inside(*c, fan.rays[k])) {
                return Err(Error::InvalidFan(format!(
                    "ray {k} lies inside cone [{},{}]",
                    c[0], c[1]
                )));
            }
        }
        for (x, a) in fan.max_cones.iter().enumerate() {
            for b in &fan.max_cones[x + 1..] {
                if a[0] == b[0] || a[1] == b[1] {
                    // same starting (or ending) ray: the two cones overlap near it
                    return Err(Error::InvalidFan("two cones overlap".into()));
                }
            }
        }
        Ok(fan)
    }

    fn strictly_inside(&self, [i, j]: [usize; 2], w: Vec2) -> bool {
        det(self.rays[i], w) > 0 && det(w, self.rays[j]) > 0
    }

    pub fn rays(&self) -> &[Vec2] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[[usize; 2]] {
        &self.max_cones
    }

    pub fn ray_index(&self, v: Vec2) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    /// Every cone: the zero cone, then rays, then two-dimensional cones.
    pub fn cones(&self) -> Vec<Cone> {
        let mut out = vec![Cone(vec![])];
        out.extend((0..self.rays.len()).map(|i| Cone(vec![i])));
        out.extend(self.max_cones.iter().map(|&[i, j]| {
            let mut c = vec![i, j];
            c.sort_unstable();
            Cone(c)
        }));
        out
    }

    pub fn cone_rays(&self, c: &Cone) -> Vec<Vec2> {
        c.0.iter().map(|&i| self.rays[i]).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones
            .iter()
            .all(|&[i, j]| det(self.rays[i], self.rays[j]).abs() == 1)
    }

    /// The cones cover the plane: every ray starts exactly one cone and ends exactly one.
    pub fn is_complete(&self) -> bool {
        !self.max_cones.is_empty()
            && (0..self.rays.len()).all(|k| {
                self.max_cones.iter().filter(|c| c[0] == k).count() == 1
                    && self.max_cones.iter().filter(|c| c[1] == k).count() == 1
            })
    }

    /// Image of a ray index under `a`, if it is a ray.
    pub fn map_ray(&self, a: &Mat2, i: usize) -> Option<usize> {
        self.ray_index(a.apply(self.rays[i]))
    }

    /// The permutation of ray indices induced by `a`, if it preserves the fan.
    pub fn ray_permutation(&self, a: &Mat2) -> Option<Vec<usize>> {
        let perm: Vec<usize> = (0..self.rays.len())
            .map(|i| self.map_ray(a, i))
            .collect::<Option<_>>()?;
        let cones_ok = self.max_cones.iter().all(|&[i, j]| {
            let image = if a.det() > 0 {
                [perm[i], perm[j]]
            } else {
                [perm[j], perm[i]]
            };
            self.max_cones.contains(&image)
        });
        cones_ok.then_some(perm)
    }

    pub fn preserves(&self, a: &Mat2) -> bool {
        a.is_unimodular() && self.ray_permutation(a).is_some()
    }

    pub fn image_of_cone(&self, a: &Mat2, c: &Cone) -> Option<Cone> {
        let mut img: Vec<usize> =
            c.0.iter()
                .map(|&i| self.map_ray(a, i))
                .collect::<Option<_>>()?;
        img.sort_unstable();
        Some(Cone(img))
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| format!("({},{})", r[0], r[1]))
            .collect();
        let cones: Vec<String> = self
            .max_cones
            .iter()
            .map(|c| format!("[{},{}]", c[0], c[1]))
            .collect();
        write!(f, "rays: {}; maxcones: {}", rays.join(" "), cones.join(" "))
    }
}

impl FromStr for Fan {
    type Err = Error;

    /// `rays: (1,0) (0,1) (-1,-1); maxcones: [0,1] [1,2] [2,0]`
    fn from_str(s: &str) -> Result<Fan> {
        let bad = |m: &str| Error::Parse(format!("fan: {m}"));
        let (rays_part, cones_part) = s.split_once(';').unwrap_or((s, "maxcones:"));
        let rays_body = rays_part
            .trim()
            .strip_prefix("rays:")
            .ok_or_else(|| bad("expected `rays:`"))?;
        let cones_body = cones_part
            .trim()
            .strip_prefix("maxcones:")
            .ok_or_else(|| bad("expected `maxcones:`"))?;
        let rays = bracketed(rays_body, '(', ')')?
            .into_iter()
            .map(|v| <[i64; 2]>::try_from(v).map_err(|_| bad("rays have two coordinates")))
            .collect::<Result<Vec<_>>>()?;
        let mut cones = Vec::new();
        for c in bracketed(cones_body, '[', ']')? {
            match c.as_slice() {
                // a single index names a ray, which is already part of the fan
                [i] if *i >= 0 && (*i as usize) < rays.len() => {}
                [i, j] if *i >= 0 && *j >= 0 => cones.push([*i as usize, *j as usize]),
                _ => return Err(bad("cones are one or two ray indices")),
            }
        }
        Fan::new(rays, cones)
    }
}

fn bracketed(body: &str, open: char, close: char) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix(open)
            .and_then(|r| r.split_once(close))
            .ok_or_else(|| Error::Parse(format!("fan: malformed `{rest}`")))?;
        let nums = inner
            .0
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("fan: bad integer `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(nums);
        rest = inner.1.trim_start();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StandardSurface {
    P2,
    P1xP1,
    DP6,
}

impl StandardSurface {
    pub const ALL: [StandardSurface; 3] = [
        StandardSurface::P2,
        StandardSurface::P1xP1,
        StandardSurface::DP6,
    ];

    pub fn fan(self) -> Fan {
        let rays: Vec<Vec2> = match self {
            StandardSurface::P2 => vec![[1, 0], [0, 1], [-1, -1]],
            StandardSurface::P1xP1 => vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
            StandardSurface::DP6 => vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        };
        let n = rays.len();
        Fan::new(rays, (0..n).map(|i| [i, (i + 1) % n]).collect()).expect("standard fans are valid")
    }

    /// Identifies a fan equal (as ray and cone sets) to a standard one.
    pub fn recognize(fan: &Fan) -> Option<StandardSurface> {
        StandardSurface::ALL
            .into_iter()
            .find(|s| same_fan(&s.fan(), fan))
    }
}

impl fmt::Display for StandardSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StandardSurface::P2 => "P2",
            StandardSurface::P1xP1 => "P1xP1",
            StandardSurface::DP6 => "DP6",
        })
    }
}

impl FromStr for StandardSurface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "P2" => Ok(StandardSurface::P2),
            "P1xP1" => Ok(StandardSurface::P1xP1),
            "DP6" => Ok(StandardSurface::DP6),
            other => Err(Error::Parse(format!("unknown surface `{other}`"))),
        }
    }
}

fn same_fan(a: &Fan, b: &Fan) -> bool {
    let cone_set = |f: &Fan| {
        let mut v: Vec<[Vec2; 2]> = f
            .max_cones
            .iter()
            .map(|&[i, j]| [f.rays[i], f.rays[j]])
            .collect();
        v.sort();
        v
    };
    let mut ra = a.rays.clone();
    let mut rb = b.rays.clone();
    ra.sort();
    rb.sort();
    ra == rb && cone_set(a) == cone_set(b)
}

/// All unimodular matrices permuting the cones of the fan. The rays must span
/// the plane, otherwise the group is infinite.
pub fn fan_automorphisms(fan: &Fan) -> Result<FiniteGroup<Mat2>> {
    let rays = fan.rays();
    let basis = (0..rays.len())
        .flat_map(|i| (0..rays.len()).map(move |j| (i, j)))
        .find(|&(i, j)| det(rays[i], rays[j]) != 0)
        .ok_or_else(|| Error::InvalidFan("rays do not span the plane".into()))?;
    let b = Mat2::from_columns(rays[basis.0], rays[basis.1]);
    let d = b.det();
    let adj = Mat2::new(b.0[1][1], -b.0[0][1], -b.0[1][0], b.0[0][0]);
    let mut found = Vec::new();
    for (i, &u) in rays.iter().enumerate() {
        for (j, &v) in rays.iter().enumerate() {
            if i == j {
                continue;
            }
            // A with A b = [u v], i.e. A = [u v] adj(b) / det(b)
            let m = Mat2::from_columns(u, v).mul(&adj);
            if m.0.iter().flatten().any(|x| x % d != 0) {
                continue;
            }
            let a = Mat2::new(m.0[0][0] / d, m.0[0][1] / d, m.0[1][0] / d, m.0[1][1] / d);
            if fan.preserves(&a) {
                found.push(a);
            }
        }
    }
    closure(&found, found.len().max(1) + 1)
}

/// Cones mapped to themselves by every element of `g`.
pub fn cones_fixed_by(fan: &Fan, g: &FiniteGroup<Mat2>) -> Result<Vec<Cone>> {
    if let Some(_bad) = g.elements().iter().find(|a| !fan.preserves(a)) {
        return Err(Error::NotFanPreserving);
    }
    Ok(fan
        .cones()
        .into_iter()
        .filter(|c| {
            g.generator_elements()
                .iter()
                .all(|a| fan.image_of_cone(a, c).as_ref() == Some(c))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2z::{classify, GroupLabel};

    #[test]
    fn predicates() {
        let p2 = StandardSurface::P2.fan();
        assert!(p2.is_complete() && p2.is_smooth());
        let single: Fan = "rays: (1,0); maxcones:".parse().unwrap();
        assert!(!single.is_complete() && single.is_smooth());
        let sing = Fan::new(vec![[1, 0], [1, 2]], vec![[0, 1]]).unwrap();
        assert!(!sing.is_smooth() && !sing.is_complete());
        for s in StandardSurface::ALL {
            let f = s.fan();
            assert!(f.is_complete() && f.is_smooth(), "{s}");
            assert_eq!(f.to_string().parse::<Fan>().unwrap(), f);
        }
    }

    #[test]
    fn invalid_fans() {
        assert!(Fan::new(vec![[2, 0]], vec![]).is_err());
        assert!(Fan::new(vec![[1, 0], [-1, 0]], vec![[0, 1]]).is_err());
        // (1,1) inside the cone spanned by (1,0),(0,1)
        assert!(Fan::new(vec![[1, 0], [0, 1], [1, 1]], vec![[0, 1]]).is_err());
        assert!(Fan::new(vec![[1, 0], [0, 1], [-1, 1]], vec![[0, 1], [0, 2]]).is_err());
        assert!("rays: (1,0) (0,1); maxcones: [0,5]".parse::<Fan>().is_err());
        assert!("rays (1,0)".parse::<Fan>().is_err());
    }

    #[test]
    fn standard_automorphism_groups_are_literal_representatives() {
        for (s, label) in [
            (StandardSurface::P2, GroupLabel::G4),
            (StandardSurface::P1xP1, GroupLabel::G2),
            (StandardSurface::DP6, GroupLabel::G1),
        ] {
            let g = fan_automorphisms(&s.fan()).unwrap();
            let c = classify(&g).unwrap();
            assert_eq!(c.label, label);
            assert_eq!(c.conjugator, Mat2::IDENTITY);
            let mut a = g.elements().to_vec();
            let mut b = label.representative().elements().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn automorphisms_of_a_singular_fan() {
        // weighted projective plane P(1,1,2): rays (1,0), (0,1), (-1,-2)
        let f = Fan::new(vec![[1, 0], [0, 1], [-1, -2]], vec![[0, 1], [1, 2], [2, 0]]).unwrap();
        assert!(f.is_complete() && !f.is_smooth());
        let g = fan_automorphisms(&f).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn fixed_cones() {
        let p2 = StandardSurface::P2.fan();
        let g9 = GroupLabel::G9.representative();
        assert_eq!(cones_fixed_by(&p2, &g9).unwrap(), vec![Cone(vec![])]);

        let q = StandardSurface::P1xP1.fan();
        let g11 = GroupLabel::G11.representative();
        let fixed = cones_fixed_by(&q, &g11).unwrap();
        let as_rays: Vec<Vec<Vec2>> = fixed.iter().map(|c| q.cone_rays(c)).collect();
        assert_eq!(as_rays, vec![vec![], vec![[0, 1]], vec![[0, -1]]]);

        let g12 = GroupLabel::G12.representative();
        let fixed = cones_fixed_by(&q, &g12).unwrap();
        assert!(fixed.iter().any(|c| q.cone_rays(c) == vec![[1, 0], [0, 1]]));

        let trivial = GroupLabel::Trivial.representative();
        assert_eq!(cones_fixed_by(&q, &trivial).unwrap(), q.cones());

        assert_eq!(cones_fixed_by(&p2, &g11), Err(Error::NotFanPreserving));
    }

    #[test]
    fn automorphisms_preserve_predicates() {
        for s in StandardSurface::ALL {
            let f = s.fan();
            let g = fan_automorphisms(&f).unwrap();
            for a in g.elements() {
                let rays: Vec<Vec2> = f.rays().iter().map(|&r| a.apply(r)).collect();
                let image = Fan::new(rays, f.max_cones().to_vec()).unwrap();
                assert_eq!(image.is_smooth(), f.is_smooth());
                assert_eq!(image.is_complete(), f.is_complete());
                assert_eq!(StandardSurface::recognize(&image), Some(s));
            }
        }
    }
}

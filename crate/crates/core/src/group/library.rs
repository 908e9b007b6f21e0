//! Small permutation groups used as references and test inputs.

use super::{closure, FiniteGroup, Perm};

fn build(n: usize, gens: &[Vec<Vec<u32>>]) -> FiniteGroup<Perm> {
    let gens: Vec<Perm> = if gens.is_empty() {
        vec![Perm::identity(n)]
    } else {
        gens.iter().map(|c| Perm::from_cycles(n, c)).collect()
    };
    closure(&gens, usize::MAX).expect("library groups are finite")
}

pub fn trivial_perm_group() -> FiniteGroup<Perm> {
    build(1, &[])
}

pub fn cyclic(n: u32) -> FiniteGroup<Perm> {
    assert!(n >= 1);
    if n == 1 {
        return trivial_perm_group();
    }
    build(n as usize, &[vec![(0..n).collect()]])
}

/// Dihedral group of order `2n`. For `n = 1` this is `C2`, for `n = 2` the Klein group.
pub fn dihedral(n: u32) -> FiniteGroup<Perm> {
    assert!(n >= 1);
    match n {
        1 => cyclic(2),
        2 => build(
            4,
            &[vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]],
        ),
        _ => {
            let refl: Vec<Vec<u32>> = (1..n)
                .map(|i| vec![i, n - i])
                .filter(|c| c[0] < c[1])
                .collect();
            build(n as usize, &[vec![(0..n).collect()], refl])
        }
    }
}

pub fn symmetric(n: u32) -> FiniteGroup<Perm> {
    assert!(n >= 1);
    if n == 1 {
        return trivial_perm_group();
    }
    if n == 2 {
        return cyclic(2);
    }
    build(n as usize, &[vec![vec![0, 1]], vec![(0..n).collect()]])
}

pub fn alternating(n: u32) -> FiniteGroup<Perm> {
    assert!(n >= 3);
    let gens: Vec<Vec<Vec<u32>>> = (2..n).map(|k| vec![vec![0, 1, k]]).collect();
    build(n as usize, &gens)
}

/// Quaternion group of order 8, acting regularly.
pub fn quaternion() -> FiniteGroup<Perm> {
    // points: 1,i,j,k,-1,-i,-j,-k = 0..8; left multiplication by i and j
    build(
        8,
        &[
            vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7]],
            vec![vec![0, 2, 4, 6], vec![1, 7, 5, 3]],
        ],
    )
}

/// `SL2(F3)` acting on the eight nonzero vectors of `F3^2`.
pub fn sl2f3() -> FiniteGroup<Perm> {
    let pts: Vec<(i64, i64)> = (0..9)
        .map(|i| (i / 3, i % 3))
        .filter(|&p| p != (0, 0))
        .collect();
    let idx = |p: (i64, i64)| {
        pts.iter()
            .position(|&q| q == (p.0.rem_euclid(3), p.1.rem_euclid(3)))
            .unwrap() as u32
    };
    let mat = |a: i64, b: i64, c: i64, d: i64| {
        Perm(
            pts.iter()
                .map(|&(x, y)| idx((a * x + b * y, c * x + d * y)))
                .collect(),
        )
    };
    closure(&[mat(1, 1, 0, 1), mat(1, 0, 1, 1)], usize::MAX).unwrap()
}

/// `PSL2(F7)` on the projective line `{0..6, inf=7}`, generated by
/// `x+1`, `2x` and `-1/x`.
pub fn psl27() -> FiniteGroup<Perm> {
    let inv7 = |x: u32| (1..7).find(|y| (x * y) % 7 == 1).unwrap();
    let t = Perm(
        (0..8)
            .map(|x| if x == 7 { 7 } else { (x + 1) % 7 })
            .collect(),
    );
    let d = Perm(
        (0..8)
            .map(|x| if x == 7 { 7 } else { (2 * x) % 7 })
            .collect(),
    );
    let s = Perm(
        (0..8)
            .map(|x| match x {
                0 => 7,
                7 => 0,
                _ => (7 - inv7(x)) % 7,
            })
            .collect(),
    );
    closure(&[t, d, s], usize::MAX).unwrap()
}

/// The non-abelian group of order 21.
pub fn c7_c3() -> FiniteGroup<Perm> {
    let t = Perm((0..7).map(|x| (x + 1) % 7).collect());
    let m = Perm((0..7).map(|x| (2 * x) % 7).collect());
    closure(&[t, m], usize::MAX).unwrap()
}

/// `(Z/p)^k` acting regularly on `p^k` points.
pub fn elementary_abelian(p: u32, k: u32) -> FiniteGroup<Perm> {
    let n = p.pow(k);
    if n == 1 {
        return trivial_perm_group();
    }
    let gens: Vec<Perm> = (0..k)
        .map(|i| {
            let step = p.pow(i);
            Perm(
                (0..n)
                    .map(|x| {
                        let digit = (x / step) % p;
                        x - digit * step + ((digit + 1) % p) * step
                    })
                    .collect(),
            )
        })
        .collect();
    closure(&gens, usize::MAX).unwrap()
}

/// Direct product of two permutation groups acting on disjoint points.
pub fn direct_product(a: &FiniteGroup<Perm>, b: &FiniteGroup<Perm>) -> FiniteGroup<Perm> {
    let (na, nb) = (a.element(0).degree() as u32, b.element(0).degree() as u32);
    let lift_a = |p: &Perm| Perm(p.0.iter().copied().chain(na..na + nb).collect());
    let lift_b = |p: &Perm| Perm((0..na).chain(p.0.iter().map(|&x| x + na)).collect());
    let gens: Vec<Perm> = a
        .generator_elements()
        .iter()
        .map(lift_a)
        .chain(b.generator_elements().iter().map(lift_b))
        .collect();
    closure(&gens, usize::MAX).unwrap()
}

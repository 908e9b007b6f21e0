//! Exact integer linear algebra: 2×2 integer matrices, Smith normal form, and
//! solving integer systems whose unknowns live in a divisible group (ℂ^× written
//! additively) with torsion right-hand sides.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qmod1::Qmod1;

/// A 2×2 integer matrix, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| {
            a[i][0]
                .saturating_mul(b[0][j])
                .saturating_add(a[i][1].saturating_mul(b[1][j]))
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse of a unimodular matrix. Panics otherwise.
    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix {self} is not unimodular");
        let m = &self.0;
        Mat2([[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]])
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn neg(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]])
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn apply_q(&self, v: [Qmod1; 2]) -> [Qmod1; 2] {
        let m = &self.0;
        [
            v[0].scale(m[0][0]) + v[1].scale(m[0][1]),
            v[0].scale(m[1][0]) + v[1].scale(m[1][1]),
        ]
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Mat2) -> Mat2 {
        self.mul(other).mul(&self.inverse())
    }

    pub fn magnitude(&self) -> u64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Matrix with the given columns.
    pub fn from_columns(c0: [i64; 2], c1: [i64; 2]) -> Mat2 {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    pub fn column(&self, j: usize) -> [i64; 2] {
        [self.0[0][j], self.0[1][j]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl FromStr for Mat2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let nums: Vec<i64> = s
            .split(|c: char| c == '[' || c == ']' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad matrix `{s}`")))?;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if nums.len() != 4 || !compact.starts_with("[[") || !compact.ends_with("]]") {
            return Err(Error::Parse(format!("expected [[a,b],[c,d]], got `{s}`")));
        }
        if nums.iter().any(|x| x.unsigned_abs() > 1 << 31) {
            return Err(Error::Parse(format!("matrix entries too large in `{s}`")));
        }
        Ok(Mat2::new(nums[0], nums[1], nums[2], nums[3]))
    }
}

/// Dense integer matrix used by the Smith-normal-form routines.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x as i128;
            }
        }
        m
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    r[(i, j)] += a * o[(k, j)];
                }
            }
        }
        r
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// rows (a, b) <- (x·a + y·b, z·a + w·b)
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [i128; 4]) {
        for j in 0..self.cols {
            let (u, v) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = x * u + y * v;
            self[(b, j)] = z * u + w * v;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [i128; 4]) {
        for i in 0..self.rows {
            let (u, v) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = x * u + y * v;
            self[(i, b)] = z * u + w * v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `left · A · right = diag`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<i128> {
        (0..self.rank).map(|i| self.diag[(i, i)]).collect()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // prefer plain elimination when a divides b, so pivots never swap back and forth
    if a != 0 && b % a == 0 {
        return (a, 1, 0);
    }
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Smith normal form with unimodular transforms. Invariant factors are
/// positive and each divides the next.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)] != 0 && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d[(i, t)] != 0 {
                    let (g, x, y) = ext_gcd(d[(t, t)], d[(i, t)]);
                    let (p, q) = (d[(t, t)] / g, d[(i, t)] / g);
                    let op = [x, y, -q, p];
                    d.combine_rows(t, i, op);
                    left.combine_rows(t, i, op);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)] != 0 {
                    let (g, x, y) = ext_gcd(d[(t, t)], d[(t, j)]);
                    let (p, q) = (d[(t, t)] / g, d[(t, j)] / g);
                    let op = [x, y, -q, p];
                    d.combine_cols(t, j, op);
                    right.combine_cols(t, j, op);
                    changed = true;
                }
            }
            if !changed {
                // enforce divisibility of the rest of the block by the pivot
                let p = d[(t, t)];
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
                match bad {
                    Some(i) => {
                        d.combine_rows(t, i, [1, 1, 0, 1]);
                        left.combine_rows(t, i, [1, 1, 0, 1]);
                    }
                    None => break,
                }
            }
        }
        if d[(t, t)] < 0 {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)];
            }
            for j in 0..m {
                left[(t, j)] = -left[(t, j)];
            }
        }
        t += 1;
    }
    Smith {
        left,
        diag: d,
        right,
        rank: t,
    }
}

/// Solution data for `A·x = b` over a divisible group with torsion `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibleSolution {
    /// A torsion solution, when the system is consistent.
    pub particular: Option<Vec<Qmod1>>,
    /// Dimension of the solution set (number of free torus coordinates).
    pub free_dim: usize,
}

impl DivisibleSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `A·x ≡ b` with unknowns in ℂ^× (additively; only the torsion part
/// matters since `b` is torsion) via Smith normal form.
pub fn solve_divisible(a: &IntMatrix, b: &[Qmod1]) -> DivisibleSolution {
    assert_eq!(a.rows, b.len());
    let s = smith_normal_form(a);
    let free_dim = a.cols - s.rank;
    // c = left · b
    let c: Vec<Qmod1> = (0..a.rows)
        .map(|i| {
            (0..a.rows).fold(Qmod1::ZERO, |acc, k| {
                acc + b[k].scale(s.left[(i, k)] as i64)
            })
        })
        .collect();
    if c[s.rank..].iter().any(|x| !x.is_zero()) {
        return DivisibleSolution {
            particular: None,
            free_dim,
        };
    }
    let y: Vec<Qmod1> = (0..a.cols)
        .map(|j| {
            if j < s.rank {
                c[j].div_int(s.diag[(j, j)] as i64)
            } else {
                Qmod1::ZERO
            }
        })
        .collect();
    let x = (0..a.cols)
        .map(|i| {
            (0..a.cols).fold(Qmod1::ZERO, |acc, k| {
                acc + y[k].scale(s.right[(i, k)] as i64)
            })
        })
        .collect();
    DivisibleSolution {
        particular: Some(x),
        free_dim,
    }
}

/// Evaluates `A·x` for torsion `x`.
pub fn apply_to_torsion(a: &IntMatrix, x: &[Qmod1]) -> Vec<Qmod1> {
    (0..a.rows)
        .map(|i| (0..a.cols).fold(Qmod1::ZERO, |acc, j| acc + x[j].scale(a[(i, j)] as i64)))
        .collect()
}

/// Incremental row-echelon reduction of a large system `A·x = b` with few
/// unknowns, unknowns in a divisible group. Rows are reduced on insertion, so
/// memory stays proportional to the number of unknowns.
#[derive(Clone, Debug)]
pub struct EchelonSystem {
    cols: usize,
    // (pivot column, row, rhs), sorted by pivot column
    pivots: Vec<(usize, Vec<i128>, Qmod1)>,
    inconsistent: bool,
}

impl EchelonSystem {
    pub fn new(cols: usize) -> Self {
        EchelonSystem {
            cols,
            pivots: Vec::new(),
            inconsistent: false,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn add_row(&mut self, row: &[i64], rhs: Qmod1) {
        assert_eq!(row.len(), self.cols);
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        let mut c = rhs;
        loop {
            let Some(col) = v.iter().position(|&x| x != 0) else {
                if !c.is_zero() {
                    self.inconsistent = true;
                }
                return;
            };
            let slot = self.pivots.binary_search_by_key(&col, |p| p.0);
            match slot {
                Err(pos) => {
                    self.pivots.insert(pos, (col, v, c));
                    return;
                }
                Ok(pos) => {
                    let (_, prow, pc) = &mut self.pivots[pos];
                    let p = prow[col];
                    let q = v[col];
                    if q % p == 0 {
                        let f = q / p;
                        for (x, y) in v.iter_mut().zip(prow.iter()) {
                            *x -= f * y;
                        }
                        c = c - pc.scale(f as i64);
                    } else {
                        let (g, x, y) = ext_gcd(p, q);
                        let (pg, qg) = (p / g, q / g);
                        let new_p: Vec<i128> = prow
                            .iter()
                            .zip(v.iter())
                            .map(|(a, b)| x * a + y * b)
                            .collect();
                        let new_v: Vec<i128> = prow
                            .iter()
                            .zip(v.iter())
                            .map(|(a, b)| qg * a - pg * b)
                            .collect();
                        let new_pc = pc.scale(x as i64) + c.scale(y as i64);
                        c = pc.scale(qg as i64) - c.scale(pg as i64);
                        *prow = new_p;
                        *pc = new_pc;
                        v = new_v;
                    }
                }
            }
        }
    }

    /// Back-substitutes a torsion solution (free unknowns set to zero).
    pub fn solve(&self) -> Option<Vec<Qmod1>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Qmod1::ZERO; self.cols];
        for (col, row, rhs) in self.pivots.iter().rev() {
            let mut acc = *rhs;
            for j in col + 1..self.cols {
                if row[j] != 0 {
                    acc = acc - x[j].scale(row[j] as i64);
                }
            }
            x[*col] = acc.div_int(row[*col] as i64);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mat2_basics() {
        let a: Mat2 = "[[1,-1],[1,0]]".parse().unwrap();
        assert_eq!(a.det(), 1);
        assert_eq!(a.mul(&a.inverse()), Mat2::IDENTITY);
        assert_eq!(a.to_string(), "[[1,-1],[1,0]]");
        assert!("[[1,2],[3]]".parse::<Mat2>().is_err());
        assert!("1,2,3,4".parse::<Mat2>().is_err());
        let b = Mat2::new(1, 1, 0, 1);
        assert_eq!(b.conjugate(&Mat2::IDENTITY), Mat2::IDENTITY);
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diag);
    }

    #[test]
    fn inconsistent_torsion_system() {
        // 0·x = 1/3 has no solution
        let a = IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]);
        let sol = solve_divisible(&a, &[Qmod1::new(1, 3), Qmod1::ZERO]);
        assert!(!sol.is_consistent());
        assert_eq!(sol.free_dim, 2);
        // 2x = 1/2 is solvable (x = 1/4)
        let a = IntMatrix::from_rows(&[vec![2]]);
        let sol = solve_divisible(&a, &[Qmod1::new(1, 2)]);
        assert_eq!(
            apply_to_torsion(&a, sol.particular.as_ref().unwrap()),
            vec![Qmod1::new(1, 2)]
        );
        assert_eq!(sol.free_dim, 0);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn smith_transforms_are_exact(rows in small_matrix()) {
            let a = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&a);
            prop_assert_eq!(s.left.mul(&a).mul(&s.right), s.diag.clone());
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }

        // Two independent routes (Smith form, incremental echelon) must agree
        // on consistency, and every returned solution must check out.
        #[test]
        fn echelon_agrees_with_smith(rows in small_matrix(), nums in proptest::collection::vec(0i64..12, 6)) {
            let a = IntMatrix::from_rows(&rows);
            let b: Vec<Qmod1> = (0..a.rows).map(|i| Qmod1::new(nums[i], 12)).collect();
            let smith = solve_divisible(&a, &b);
            let mut ech = EchelonSystem::new(a.cols);
            for (r, &rhs) in rows.iter().zip(&b) {
                ech.add_row(r, rhs);
            }
            prop_assert_eq!(smith.is_consistent(), ech.is_consistent());
            prop_assert_eq!(smith.free_dim, a.cols - ech.rank());
            if let Some(x) = ech.solve() {
                prop_assert_eq!(apply_to_torsion(&a, &x), b.clone());
            }
            if let Some(x) = smith.particular {
                prop_assert_eq!(apply_to_torsion(&a, &x), b);
            }
        }
    }
}

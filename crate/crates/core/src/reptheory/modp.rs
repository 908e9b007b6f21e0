//! Arithmetic and linear algebra over a prime field `F_p` with `p < 2^31`.

use crate::group::{is_prime, prime_factors};

pub type Mat = Vec<Vec<u64>>;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

/// The smallest prime `p ≡ 1 (mod e)` with `p > lower`.
pub fn prime_congruent_one(e: u64, lower: u64) -> u64 {
    let mut p = (lower / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

/// A generator of `F_p^×`.
pub fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Reduced row echelon form of the non-zero rows, with the pivot column of each row.
pub fn rref(mut a: Mat, p: u64) -> (Mat, Vec<usize>) {
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..a.len()).find(|&r| a[r][col] % p != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = inv_mod(a[row][col] % p, p);
        for x in a[row].iter_mut() {
            *x = *x % p * inv % p;
        }
        for r in 0..a.len() {
            if r != row && a[r][col] % p != 0 {
                let f = a[r][col] % p;
                for c in 0..cols {
                    a[r][c] = (a[r][c] % p + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    a.truncate(row);
    (a, pivots)
}

/// Basis of the null space of `m` (rows are equations), each vector of length `cols`.
pub fn null_space(m: &Mat, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Mat = m
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = inv_mod(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..cols {
                    a[r][c] = (a[r][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x I - m)`, lowest degree first, via
/// reduction to upper Hessenberg form.
pub fn char_poly(m: &Mat, p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Mat = m
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let u = h[i][j] * inv % p;
            if u == 0 {
                continue;
            }
            // row_i -= u row_{j+1}; col_{j+1} += u col_i
            for c in 0..n {
                h[i][c] = (h[i][c] + p - u * h[j + 1][c] % p) % p;
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[i]) % p;
            }
        }
    }
    // polys[k] = char poly of the leading k x k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let m1 = k - 1;
        // (x - h[m1][m1]) * polys[k-1]
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - h[m1][m1] * c % p) % p;
        }
        let mut t = 1u64;
        for i in 1..=m1 {
            t = t * h[m1 - i + 1][m1 - i] % p;
            let coef = t * h[m1 - i][m1] % p;
            for (d, &c) in polys[k - 1 - i].iter().enumerate() {
                next[d] = (next[d] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

pub fn eval_poly(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

pub fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + x * b[t][j]) % p;
            }
        }
    }
    out
}

/// `a^{1/2}` in `{0, .., bound}` if it exists there.
pub fn small_sqrt(a: u64, bound: u64, p: u64) -> Option<u64> {
    (0..=bound).find(|&d| d * d % p == a % p)
}

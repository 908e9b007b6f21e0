//! Exact arithmetic in `Z[ζ_e]`, kept reduced modulo the cyclotomic
//! polynomial so that equal numbers have equal coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

/// `Φ_e` as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&e) {
        return v.clone();
    }
    let v = compute_cyclotomic(e);
    cache.lock().expect("cache lock").insert(e, v.clone());
    v
}

fn compute_cyclotomic(e: u32) -> Vec<i64> {
    // x^e - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in (1..e).filter(|d| e % d == 0) {
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Division by a monic polynomial that is known to be exact.
fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// An element of `Z[ζ_e]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cyclo {
    e: u32,
    /// Coefficients of `1, ζ, ζ^2, ...` below `deg Φ_e`.
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn zero(e: u32) -> Self {
        Cyclo::from_powers(e, &[])
    }

    pub fn integer(e: u32, n: i64) -> Self {
        Cyclo::from_powers(e, &[n])
    }

    /// `Σ m_k ζ^k` for the given multiplicities.
    pub fn from_powers(e: u32, mults: &[i64]) -> Self {
        assert!(e >= 1);
        let mut full = vec![0i64; e as usize];
        for (k, &m) in mults.iter().enumerate() {
            full[k % e as usize] += m;
        }
        Cyclo::reduce(e, full)
    }

    fn reduce(e: u32, mut c: Vec<i64>) -> Self {
        let phi = cyclotomic_polynomial(e);
        let d = phi.len() - 1;
        for i in (d..c.len()).rev() {
            let lead = c[i];
            if lead != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    c[i - d + j] -= lead * pj;
                }
            }
        }
        c.truncate(d);
        c.resize(d, 0);
        Cyclo { e, coeffs: c }
    }

    pub fn modulus(&self) -> u32 {
        self.e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .skip(1)
            .all(|&c| c == 0)
            .then(|| self.coeffs.first().copied().unwrap_or(0))
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.e, o.e);
        Cyclo {
            e: self.e,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Cyclo {
        Cyclo {
            e: self.e,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.e, o.e);
        let mut full = vec![0i64; 2 * self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in o.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        Cyclo::reduce(self.e, full)
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Cyclo {
        let e = self.e as usize;
        let mut full = vec![0i64; e];
        for (k, &c) in self.coeffs.iter().enumerate() {
            full[(e - k) % e] += c;
        }
        Cyclo::reduce(self.e, full)
    }

    /// `|x|^2`.
    pub fn norm_sq(&self) -> Cyclo {
        self.mul(&self.conj())
    }

    /// Image under `ζ -> r`, where `r` is an `e`-th root of unity mod `p`.
    pub fn reduce_mod(&self, root: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        let mut pw = 1u64;
        for &c in &self.coeffs {
            acc = (acc + c.rem_euclid(p as i64) as u64 * pw) % p;
            pw = pw * root % p;
        }
        acc
    }

    /// Numerical value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * k as f64 / self.e as f64;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re, im)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coef = if mag == 1 && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let term = match k {
                0 => String::new(),
                1 => format!("z{}", self.e),
                _ => format!("z{}^{k}", self.e),
            };
            write!(f, "{sign}{coef}{term}")?;
            first = false;
        }
        Ok(())
    }
}

use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::intmat::Mat2;
use crate::monomial::MonomialElement;

/// A value that can be composed, inverted and hashed. `a.compose(b)` applies
/// `b` first, then `a`.
pub trait GroupElement: Clone + Eq + Hash + Ord + Debug {
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// The identity of the group this element lives in.
    fn identity_like(&self) -> Self;
    /// Whether the two values can be composed at all.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    /// Size of the largest integer entry; used to detect runaway closures.
    fn magnitude(&self) -> u64 {
        0
    }
}

/// Permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Builds a permutation of `n` points from disjoint or overlapping cycles,
    /// composed left to right as written (rightmost applied first).
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Self {
        let mut p = Perm::identity(n);
        for c in cycles.iter().rev() {
            let mut cyc = Perm::identity(n);
            for (k, &x) in c.iter().enumerate() {
                cyc.0[x as usize] = c[(k + 1) % c.len()];
            }
            p = cyc.compose(&p);
        }
        p
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = vec![s as u32];
            seen[s] = true;
            let mut x = self.0[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl GroupElement for Perm {
    fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.0.len())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl GroupElement for Mat2 {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inverse(&self) -> Self {
        Mat2::inverse(self)
    }

    fn identity_like(&self) -> Self {
        Mat2::IDENTITY
    }

    fn magnitude(&self) -> u64 {
        Mat2::magnitude(self)
    }
}

/// Dynamically typed element, as produced by the text parser.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Element {
    Perm(Perm),
    Mat(Mat2),
    Mono(MonomialElement),
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Perm(_) => "perm",
            Element::Mat(_) => "mat2",
            Element::Mono(_) => "mono",
        }
    }
}

impl GroupElement for Element {
    fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.compose(b)),
            (Element::Mat(a), Element::Mat(b)) => Element::Mat(a.compose(b)),
            (Element::Mono(a), Element::Mono(b)) => Element::Mono(a.compose(b)),
            _ => panic!("composing elements of different kinds"),
        }
    }

    fn inverse(&self) -> Self {
        match self {
            Element::Perm(a) => Element::Perm(a.inverse()),
            Element::Mat(a) => Element::Mat(GroupElement::inverse(a)),
            Element::Mono(a) => Element::Mono(a.inverse()),
        }
    }

    fn identity_like(&self) -> Self {
        match self {
            Element::Perm(a) => Element::Perm(a.identity_like()),
            Element::Mat(a) => Element::Mat(a.identity_like()),
            Element::Mono(a) => Element::Mono(a.identity_like()),
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => a.compatible(b),
            (Element::Mat(_), Element::Mat(_)) | (Element::Mono(_), Element::Mono(_)) => true,
            _ => false,
        }
    }

    fn magnitude(&self) -> u64 {
        match self {
            Element::Perm(_) => 0,
            Element::Mat(a) => GroupElement::magnitude(a),
            Element::Mono(a) => a.magnitude(),
        }
    }
}

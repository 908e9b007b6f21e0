//! Finite groups given by a closed element set, with elements addressed by
//! index. Index 0 is always the identity; the remaining elements are sorted.

mod element;
pub mod embed;
pub mod library;
pub mod parse;
pub mod recognize;
pub mod subgroups;

use std::collections::{HashMap, HashSet, VecDeque};

pub use element::{Element, GroupElement, Perm};
pub use embed::{find_embedding, find_embedding_with, Embedding, EmbeddingSearch};
pub use recognize::{recognize, PolyhedralType, Recognition};

use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;
const TABLE_LIMIT: usize = 2600;
const MAGNITUDE_LIMIT: u64 = 1 << 31;

#[derive(Clone, Debug)]
pub struct FiniteGroup<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

/// Generates the group spanned by `generators`, failing once more than `cap`
/// elements have been produced.
pub fn closure<E: GroupElement>(generators: &[E], cap: usize) -> Result<FiniteGroup<E>> {
    let Some(first) = generators.first() else {
        return Err(Error::Parse("at least one generator is required".into()));
    };
    if generators.iter().any(|g| !g.compatible(first)) {
        return Err(Error::KindMismatch);
    }
    let id = first.identity_like();
    let gens: Vec<E> = generators.to_vec();
    let mut seen: HashSet<E> = HashSet::new();
    seen.insert(id.clone());
    let mut order = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let y = order[i].compose(g);
            if y.magnitude() > MAGNITUDE_LIMIT {
                return Err(Error::CapExceeded { cap });
            }
            if seen.insert(y.clone()) {
                if order.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(y);
                queue.push_back(order.len() - 1);
            }
        }
    }
    Ok(FiniteGroup::from_closed_set(order, &gens))
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Builds a group from a set already known to be closed; `gens` must lie in it.
    pub fn from_closed_set(mut elements: Vec<E>, gens: &[E]) -> Self {
        let id = elements[0].identity_like();
        elements.sort();
        elements.dedup();
        let pos = elements
            .iter()
            .position(|e| *e == id)
            .expect("identity missing");
        let idv = elements.remove(pos);
        elements.insert(0, idv);
        let index: HashMap<E, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut generators: Vec<usize> =
            gens.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        generators.dedup();
        let n = elements.len();
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        FiniteGroup {
            elements,
            index,
            generators,
            inverses,
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// Indices of the generators (identity excluded).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<E> {
        if self.generators.is_empty() {
            return vec![self.elements[0].clone()];
        }
        self.generators
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let (mut result, mut base, mut k) = (0, a, k);
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `a · b · a⁻¹`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order()).map(|i| self.element_order(i)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, num_integer::lcm)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generating_set();
        g.iter().all(|&a| g.iter().all(|&b| self.commute(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|i| self.element_order(i) == n)
    }

    /// The stored generators, or all non-identity elements if none are stored.
    fn generating_set(&self) -> Vec<usize> {
        if self.generators.is_empty() && self.order() > 1 {
            (1..self.order()).collect()
        } else {
            self.generators.clone()
        }
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Materializes a subgroup (given by sorted indices) as a group of its own.
    pub fn subgroup(&self, members: &[usize], gens: &[usize]) -> FiniteGroup<E> {
        let mut sorted = members.to_vec();
        sorted.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
        if let Some(p) = sorted.iter().position(|&x| x == 0) {
            sorted.remove(p);
            sorted.insert(0, 0);
        }
        let elements: Vec<E> = sorted.iter().map(|&i| self.elements[i].clone()).collect();
        let local: HashMap<usize, usize> =
            sorted.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let n = sorted.len();
        let table = (n <= TABLE_LIMIT && self.table.is_some()).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for &a in &sorted {
                for &b in &sorted {
                    t.push(local[&self.mul(a, b)] as u32);
                }
            }
            t
        });
        let inverses = sorted.iter().map(|&i| local[&self.inv(i)]).collect();
        let mut generators: Vec<usize> =
            gens.iter().map(|g| local[g]).filter(|&i| i != 0).collect();
        generators.dedup();
        let mut sub = FiniteGroup {
            elements,
            index,
            generators,
            inverses,
            table,
        };
        if sub.table.is_none() && n <= TABLE_LIMIT {
            sub = FiniteGroup::from_closed_set(sub.elements.clone(), &sub.generator_elements());
        }
        sub
    }

    /// Subgroup generated by the given elements, materialized.
    pub fn subgroup_generated(&self, gens: &[usize]) -> FiniteGroup<E> {
        self.subgroup(&self.generate(gens), gens)
    }

    pub fn centralizer_of(&self, a: usize) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.commute(a, x)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        let g = self.generating_set();
        (0..self.order())
            .filter(|&x| g.iter().all(|&y| self.commute(x, y)))
            .collect()
    }

    /// Conjugacy classes, each sorted, ordered by smallest member (identity first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let gens = self.generating_set();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut cls = vec![x];
            class_of[x] = id;
            let mut k = 0;
            while k < cls.len() {
                let y = cls[k];
                for &g in &gens {
                    let z = self.conj(g, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        cls.push(z);
                    }
                }
                k += 1;
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        classes
    }

    /// Whether the sorted index set `h` (a subgroup) is normal.
    pub fn is_normal(&self, h: &[usize]) -> bool {
        let gens = self.generating_set();
        let member = self.membership(h);
        h.iter()
            .all(|&x| gens.iter().all(|&g| member[self.conj(g, x)]))
    }

    /// Normalizer of a subgroup given by its sorted members and a generating set.
    pub fn normalizer(&self, h: &[usize], h_gens: &[usize]) -> Vec<usize> {
        let member = self.membership(h);
        (0..self.order())
            .filter(|&g| h_gens.iter().all(|&x| member[self.conj(g, x)]))
            .collect()
    }

    pub fn membership(&self, h: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &x in h {
            m[x] = true;
        }
        m
    }

    /// A small generating set found greedily (each element enlarges the span).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        // prefer elements of large order
        let orders = self.element_orders();
        let mut cand: Vec<usize> = (1..n).collect();
        cand.sort_by_key(|&i| (std::cmp::Reverse(orders[i]), i));
        while span.len() < n {
            let member = self.membership(&span);
            let mut best: Option<(usize, Vec<usize>)> = None;
            for &c in &cand {
                if member[c] {
                    continue;
                }
                let mut g = gens.clone();
                g.push(c);
                let s = self.generate(&g);
                if best.as_ref().is_none_or(|(_, b)| s.len() > b.len()) {
                    let full = s.len() == n;
                    best = Some((c, s));
                    if full {
                        break;
                    }
                }
            }
            let (c, s) = best.expect("some element lies outside a proper subgroup");
            gens.push(c);
            span = s;
        }
        gens
    }

    /// Rank of an abelian group: the largest `dim_{F_p}(G/pG)`. `None` when
    /// the group is not abelian.
    pub fn abelian_rank(&self) -> Option<usize> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order();
        let mut rank = 0;
        for p in prime_factors(n as u64) {
            let mut pth: Vec<usize> = (0..n).map(|x| self.pow(x, p)).collect();
            pth.sort_unstable();
            pth.dedup();
            let mut quotient = n / pth.len();
            let mut r = 0;
            while quotient > 1 {
                quotient /= p as usize;
                r += 1;
            }
            rank = rank.max(r);
        }
        Some(rank)
    }
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::Mat2;
    use library::*;

    #[test]
    fn s3_from_standard_generators() {
        let g = closure(
            &[
                Perm::from_cycles(3, &[vec![0, 1]]),
                Perm::from_cycles(3, &[vec![0, 1, 2]]),
            ],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.abelian_rank(), None);
    }

    #[test]
    fn hexagonal_class_has_order_12() {
        let g = closure(&[Mat2::new(1, -1, 1, 0), Mat2::new(0, 1, 1, 0)], 100).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn unipotent_matrix_exceeds_cap() {
        assert_eq!(
            closure(&[Mat2::new(1, 1, 0, 1)], 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
        // hyperbolic matrix: entries explode before the cap is reached
        assert!(matches!(
            closure(&[Mat2::new(2, 1, 1, 1)], 10_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let a = Element::Perm(Perm::identity(3));
        let b = Element::Mat(Mat2::IDENTITY);
        assert_eq!(closure(&[a, b], 10).unwrap_err(), Error::KindMismatch);
        let c = Element::Perm(Perm::identity(4));
        assert_eq!(
            closure(&[Element::Perm(Perm::identity(3)), c], 10).unwrap_err(),
            Error::KindMismatch
        );
    }

    #[test]
    fn abelian_ranks() {
        assert_eq!(trivial_perm_group().abelian_rank(), Some(0));
        assert_eq!(elementary_abelian(2, 3).abelian_rank(), Some(3));
        assert_eq!(cyclic(12).abelian_rank(), Some(1));
        assert_eq!(symmetric(3).abelian_rank(), None);
    }

    #[test]
    fn closure_is_idempotent() {
        let g = symmetric(4);
        let again = closure(g.elements(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn generators_reach_every_element() {
        for g in [symmetric(4), dihedral(6), psl27()] {
            assert_eq!(g.generate(g.generators()).len(), g.order());
            let small = g.small_generating_set();
            assert_eq!(g.generate(&small).len(), g.order());
            assert!(small.len() <= 2);
        }
    }

    #[test]
    fn associativity_and_inverses_on_triples() {
        let g = psl27();
        for a in (0..g.order()).step_by(7) {
            assert_eq!(g.mul(g.inv(a), a), 0);
            for b in (0..g.order()).step_by(11) {
                for c in (0..g.order()).step_by(13) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn class_equation() {
        let g = symmetric(5);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 120);
        assert_eq!(classes[0], vec![0]);
    }
}

//! Subgroup computations inside a [`FiniteGroup`]. Subgroups are sorted index
//! sets of the parent; the `Subgroup` wrapper also keeps a generating set.

use std::collections::{HashMap, HashSet};

use super::{is_prime, p_part, prime_factors, FiniteGroup, GroupElement, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: Vec<usize>,
    pub gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Sylow `p`-subgroup grown from the trivial group by repeatedly adjoining an
/// element of the normalizer whose image in `N(P)/P` has order `p`.
pub fn sylow<E: GroupElement>(g: &FiniteGroup<E>, p: u64) -> Subgroup {
    assert!(is_prime(p), "{p} is not prime");
    let target = p_part(g.order() as u64, p) as usize;
    let mut sub = Subgroup {
        members: vec![0],
        gens: vec![],
    };
    while sub.order() < target {
        let member = g.membership(&sub.members);
        let norm = g.normalizer(&sub.members, &sub.gens);
        let x = norm
            .into_iter()
            .find(|&x| !member[x] && member[g.pow(x, p)])
            .expect("Sylow's theorem guarantees a p-element in N(P)/P");
        sub.gens.push(x);
        sub.members = g.generate(&sub.gens);
    }
    sub
}

/// Every normal subgroup, sorted by order then members.
pub fn normal_subgroups<E: GroupElement>(g: &FiniteGroup<E>) -> Vec<Subgroup> {
    let classes = g.conjugacy_classes();
    let closures: Vec<Vec<usize>> = classes
        .iter()
        .skip(1)
        .map(|c| g.generate(c))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut found: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut frontier = vec![vec![0usize]];
    while let Some(n) = frontier.pop() {
        for c in &closures {
            let mut gens = n.clone();
            gens.extend_from_slice(c);
            let j = g.generate(&gens);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|m| {
            let sg = g.subgroup(&m, &m);
            let gens = sg
                .small_generating_set()
                .into_iter()
                .map(|i| g.index_of(sg.element(i)).unwrap())
                .collect();
            Subgroup { members: m, gens }
        })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    out
}

/// All solvable subgroups (hence all subgroups when `g` is solvable): each
/// is reached from a normal subgroup of prime index.
pub fn solvable_subgroups<E: GroupElement>(g: &FiniteGroup<E>) -> Vec<Subgroup> {
    let n = g.order();
    let primes = prime_factors(n as u64);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut all = vec![Subgroup {
        members: vec![0],
        gens: vec![],
    }];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &si in &frontier {
            let m = all[si].clone();
            let member = g.membership(&m.members);
            let mut covered = member.clone();
            for x in g.normalizer(&m.members, &m.gens) {
                if covered[x] {
                    continue;
                }
                if !primes.iter().any(|&p| member[g.pow(x, p)]) {
                    continue;
                }
                let mut gens = m.gens.clone();
                gens.push(x);
                let h = g.generate(&gens);
                for &y in &h {
                    covered[y] = true;
                }
                if seen.insert(h.clone()) {
                    all.push(Subgroup { members: h, gens });
                    next.push(all.len() - 1);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    all
}

/// The quotient `G/N` realized as the permutation action of `G` on the cosets of `N`.
pub fn quotient<E: GroupElement>(g: &FiniteGroup<E>, normal: &[usize]) -> FiniteGroup<Perm> {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in normal {
            coset_of[g.mul(x, h)] = id;
        }
    }
    let k = reps.len();
    let act = |x: usize| Perm(reps.iter().map(|&r| coset_of[g.mul(x, r)] as u32).collect());
    let gens: Vec<Perm> = if g.generators().is_empty() {
        vec![Perm::identity(k)]
    } else {
        g.generators().iter().map(|&x| act(x)).collect()
    };
    let elements: Vec<Perm> = reps.iter().map(|&r| act(r)).collect();
    FiniteGroup::from_closed_set(elements, &gens)
}

/// Abelian subgroups generated by at most two elements, deduplicated and
/// ordered by (order, members). `first` restricts the first generator.
pub fn two_generated_abelian<E: GroupElement>(
    g: &FiniteGroup<E>,
    first: impl Fn(usize) -> bool,
) -> Vec<Subgroup> {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for a in (1..g.order()).filter(|&a| first(a)) {
        seen.entry(g.generate(&[a])).or_insert_with(|| vec![a]);
        for b in 1..g.order() {
            if b != a && g.commute(a, b) {
                seen.entry(g.generate(&[a, b]))
                    .or_insert_with(|| vec![a, b]);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|(members, gens)| Subgroup { members, gens })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    out
}

/// An elementary abelian subgroup of rank 3, if any (its three generators).
pub fn rank_three_elementary_abelian<E: GroupElement>(g: &FiniteGroup<E>) -> Option<[usize; 3]> {
    let n = g.order() as u64;
    let orders = g.element_orders();
    for p in prime_factors(n) {
        if n % (p * p * p) != 0 {
            continue;
        }
        let elems: Vec<usize> = (1..g.order()).filter(|&x| orders[x] as u64 == p).collect();
        for (i, &a) in elems.iter().enumerate() {
            let span_a = g.generate(&[a]);
            let in_a = g.membership(&span_a);
            for &b in &elems[i + 1..] {
                if in_a[b] || !g.commute(a, b) {
                    continue;
                }
                let span_ab = g.generate(&[a, b]);
                let in_ab = g.membership(&span_ab);
                for &c in &elems[i + 1..] {
                    if !in_ab[c] && g.commute(a, c) && g.commute(b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;
    use crate::group::library::*;
    use crate::intmat::Mat2;

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        let mut o: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        o.dedup();
        o
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow(&symmetric(3), 2).order(), 2);
        assert_eq!(sylow(&cyclic(10), 5).order(), 5);
        assert_eq!(sylow(&cyclic(10), 3).order(), 1);
        assert_eq!(sylow(&symmetric(5), 2).order(), 8);
        assert_eq!(sylow(&psl27(), 2).order(), 8);
        let g1 = closure(&[Mat2::new(1, -1, 1, 0), Mat2::new(0, 1, 1, 0)], 100).unwrap();
        let s3 = sylow(&g1, 3);
        assert_eq!(s3.order(), 3);
        assert!(s3
            .members
            .iter()
            .any(|&i| *g1.element(i) == Mat2::new(0, -1, 1, -1)));
    }

    #[test]
    fn normal_subgroup_orders() {
        assert_eq!(orders(&normal_subgroups(&symmetric(4))), vec![1, 4, 12, 24]);
        assert_eq!(orders(&normal_subgroups(&cyclic(6))), vec![1, 2, 3, 6]);
        assert_eq!(orders(&normal_subgroups(&alternating(5))), vec![1, 60]);
    }

    #[test]
    fn lagrange_for_all_subgroups() {
        let g = symmetric(4);
        let subs = solvable_subgroups(&g);
        assert_eq!(subs.len(), 30);
        for s in &subs {
            assert_eq!(24 % s.order(), 0);
        }
        // A5 itself is not reached; its 58 proper subgroups are
        assert_eq!(solvable_subgroups(&alternating(5)).len(), 58);
    }

    #[test]
    fn quotient_of_s4_by_klein_is_s3() {
        let g = symmetric(4);
        let v4 = normal_subgroups(&g)
            .into_iter()
            .find(|s| s.order() == 4)
            .unwrap();
        let q = quotient(&g, &v4.members);
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
    }

    #[test]
    fn rank_three_search() {
        assert!(rank_three_elementary_abelian(&elementary_abelian(2, 3)).is_some());
        assert!(rank_three_elementary_abelian(&symmetric(5)).is_none());
        assert!(rank_three_elementary_abelian(&symmetric(6)).is_some());
        assert!(rank_three_elementary_abelian(&alternating(6)).is_none());
    }
}

//! Character tables by the Burnside–Dixon method.
//!
//! The normalized characters `ω_χ(K_i) = |C_i| χ(g_i) / χ(1)` are the common
//! eigenvectors of the class multiplication matrices. They are found over
//! `F_p` with `p ≡ 1 (mod e)` and `p > 2 sqrt|G|`, which makes the degrees and
//! the eigenvalue multiplicities of each `ρ(g)` recoverable from residues.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cyclo::Cyclo;
use super::modp::{
    char_poly, eval_poly, inv_mod, null_space, pow_mod, prime_congruent_one, primitive_root, rref,
    small_sqrt,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};

pub const DEFAULT_ORDER_BOUND: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub exponent: u32,
    pub classes: Vec<ConjugacyClass>,
    /// One row per irreducible character, one entry per class. The trivial
    /// character comes first; rows are sorted by degree.
    pub characters: Vec<Vec<Cyclo>>,
    /// The prime used and the `e`-th root of unity standing for `ζ_e`.
    pub prime: u64,
    pub root: u64,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    /// `power_classes[k][j]` is the class of `g_k^j`, for `j` below the element order.
    power_classes: Vec<Vec<usize>>,
}

struct Classes {
    classes: Vec<ConjugacyClass>,
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    power_classes: Vec<Vec<usize>>,
}

fn class_data<E: GroupElement>(g: &FiniteGroup<E>) -> Classes {
    let members = g.conjugacy_classes();
    let mut class_of = vec![0; g.order()];
    for (k, c) in members.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let classes: Vec<ConjugacyClass> = members
        .iter()
        .map(|c| ConjugacyClass {
            representative: c[0],
            size: c.len(),
            element_order: g.element_order(c[0]),
        })
        .collect();
    let inverse_class = classes
        .iter()
        .map(|c| class_of[g.inv(c.representative)])
        .collect();
    let power_classes = classes
        .iter()
        .map(|c| {
            let mut x = 0;
            (0..c.element_order)
                .map(|_| {
                    let k = class_of[x];
                    x = g.mul(x, c.representative);
                    k
                })
                .collect()
        })
        .collect();
    Classes {
        classes,
        members,
        class_of,
        inverse_class,
        power_classes,
    }
}

/// `(A_i)_{jk}`: the number of `x` in class `i` with `x^{-1} g_k` in class `j`.
fn class_matrix<E: GroupElement>(
    g: &FiniteGroup<E>,
    cd: &Classes,
    i: usize,
    p: u64,
) -> Vec<Vec<u64>> {
    let r = cd.classes.len();
    let mut a = vec![vec![0u64; r]; r];
    for (k, ck) in cd.classes.iter().enumerate() {
        for &x in &cd.members[i] {
            let y = g.mul(g.inv(x), ck.representative);
            a[cd.class_of[y]][k] += 1;
        }
    }
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    a
}

/// Row-reduced basis with its pivot columns.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(vectors: Vec<Vec<u64>>, p: u64) -> Subspace {
        let (basis, pivots) = rref(vectors, p);
        Subspace { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Splits `w` into eigenspaces of `a`, or returns `None` if `a` acts as a scalar.
fn split(w: &Subspace, a: &[Vec<u64>], p: u64) -> Option<Vec<Subspace>> {
    let d = w.dim();
    let r = a.len();
    let images: Vec<Vec<u64>> = w
        .basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|j| (0..r).map(|k| a[j][k] * b[k] % p).sum::<u64>() % p)
                .collect()
        })
        .collect();
    // coordinates in a reduced basis are the entries at the pivots
    let m: Vec<Vec<u64>> = (0..d)
        .map(|row| (0..d).map(|col| images[col][w.pivots[row]]).collect())
        .collect();
    let f = char_poly(&m, p);
    let roots: Vec<u64> = (0..p).filter(|&x| eval_poly(&f, x, p) == 0).collect();
    if roots.len() <= 1 {
        return None;
    }
    let mut parts = Vec::new();
    for lam in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (m[i][j] + if i == j { p - lam } else { 0 }) % p)
                    .collect()
            })
            .collect();
        let coords = null_space(&shifted, d, p);
        let vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                (0..r)
                    .map(|k| (0..d).map(|l| c[l] * w.basis[l][k] % p).sum::<u64>() % p)
                    .collect()
            })
            .collect();
        parts.push(Subspace::new(vectors, p));
    }
    debug_assert_eq!(
        parts.iter().map(Subspace::dim).sum::<usize>(),
        d,
        "class matrices are diagonalizable"
    );
    Some(parts)
}

/// The irreducible characters reduced mod `p`, as values on each class.
fn modular_characters<E: GroupElement>(g: &FiniteGroup<E>, cd: &Classes, p: u64) -> Vec<Vec<u64>> {
    let r = cd.classes.len();
    let n = g.order() as u64;
    let mut done: Vec<Subspace> = Vec::new();
    let mut todo = vec![Subspace {
        basis: identity(r),
        pivots: (0..r).collect(),
    }];
    for i in 1..r {
        if todo.is_empty() {
            break;
        }
        let a = class_matrix(g, cd, i, p);
        let mut next = Vec::new();
        for w in todo {
            match split(&w, &a, p) {
                Some(parts) => next.extend(parts),
                None => next.push(w),
            }
        }
        let (small, big): (Vec<Subspace>, Vec<Subspace>) =
            next.into_iter().partition(|w| w.dim() == 1);
        done.extend(small);
        todo = big;
    }
    done.extend(todo.into_iter().filter(|w| w.dim() == 1));
    let degree_bound = (n as f64).sqrt() as u64 + 1;
    done.iter()
        .map(|w| {
            let v = &w.basis[0];
            let scale = inv_mod(v[0], p);
            let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
            let s = (0..r).fold(0u64, |acc, k| {
                let term = omega[k] * omega[cd.inverse_class[k]] % p
                    * inv_mod(cd.classes[k].size as u64, p)
                    % p;
                (acc + term) % p
            });
            let deg_sq = n % p * inv_mod(s, p) % p;
            let d = small_sqrt(deg_sq, degree_bound, p).expect("degree squared is a small square");
            (0..r)
                .map(|k| omega[k] * d % p * inv_mod(cd.classes[k].size as u64, p) % p)
                .collect()
        })
        .collect()
}

/// Recovers `χ(g_k)` from residues: the multiplicity of `ζ_o^l` among the
/// eigenvalues of `ρ(g_k)` is `(1/o) Σ_j χ(g_k^j) ζ_o^{-lj}`, a small integer.
fn lift(chi: &[u64], cd: &Classes, e: u32, root: u64, p: u64) -> Option<Vec<Cyclo>> {
    let degree = chi[0];
    cd.classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let o = c.element_order as u64;
            let step = e as u64 / o;
            let zo_inv = inv_mod(pow_mod(root, step, p), p);
            let o_inv = inv_mod(o % p, p);
            let mut mults = vec![0i64; e as usize];
            for l in 0..o {
                let mut acc = 0u64;
                for j in 0..o {
                    let val = chi[cd.power_classes[k][j as usize]];
                    acc = (acc + val * pow_mod(zo_inv, l * j, p)) % p;
                }
                let m = acc * o_inv % p;
                if m > degree {
                    return None;
                }
                mults[(l * step) as usize] = m as i64;
            }
            Some(Cyclo::from_powers(e, &mults))
        })
        .collect()
}

fn primitive_eth_root(e: u64, p: u64) -> u64 {
    pow_mod(primitive_root(p), (p - 1) / e, p)
}

pub fn character_table<E: GroupElement>(g: &FiniteGroup<E>) -> Result<CharacterTable> {
    character_table_with_bound(g, DEFAULT_ORDER_BOUND)
}

pub fn character_table_with_bound<E: GroupElement>(
    g: &FiniteGroup<E>,
    bound: usize,
) -> Result<CharacterTable> {
    let n = g.order();
    if n > bound {
        return Err(Error::BoundExceeded { order: n, bound });
    }
    let cd = class_data(g);
    let e = g.exponent() as u32;
    let lower = 2 * ((n as f64).sqrt().ceil() as u64);
    let p = prime_congruent_one(e as u64, lower);
    let root = primitive_eth_root(e as u64, p);
    let mut characters: Vec<Vec<Cyclo>> = modular_characters(g, &cd, p)
        .iter()
        .map(|chi| lift(chi, &cd, e, root, p).expect("multiplicities lift to small integers"))
        .collect();
    let trivial = Cyclo::integer(e, 1);
    characters.sort_by(|a, b| {
        let key = |c: &Vec<Cyclo>| (c[0].as_integer(), !c.iter().all(|x| *x == trivial));
        key(a).cmp(&key(b)).then_with(|| a.cmp(b))
    });
    Ok(CharacterTable {
        group_order: n,
        exponent: e,
        classes: cd.classes,
        characters,
        prime: p,
        root,
        class_of: cd.class_of,
        inverse_class: cd.inverse_class,
        power_classes: cd.power_classes,
    })
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<u64> {
        self.characters
            .iter()
            .map(|c| c[0].as_integer().expect("degrees are integers") as u64)
            .collect()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Classes on which the character takes the value of its degree.
    pub fn kernel_classes(&self, chi: usize) -> Vec<usize> {
        let row = &self.characters[chi];
        (0..row.len()).filter(|&k| row[k] == row[0]).collect()
    }

    pub fn is_faithful(&self, chi: usize) -> bool {
        self.kernel_classes(chi) == [0]
    }

    fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero(self.exponent);
        for (k, c) in self.classes.iter().enumerate() {
            acc = acc.add(&a[k].mul(&b[k].conj()).scale(c.size as i64));
        }
        acc
    }

    /// `Σ_g χ(g) conj(ψ(g)) = |G| δ_{χψ}`, exactly.
    pub fn row_orthogonality(&self) -> bool {
        let n = self.group_order as i64;
        self.characters.iter().enumerate().all(|(i, a)| {
            self.characters
                .iter()
                .enumerate()
                .all(|(j, b)| self.inner(a, b).as_integer() == Some(if i == j { n } else { 0 }))
        })
    }

    /// `Σ_χ χ(g_k) conj(χ(g_l)) = δ_{kl} |C_G(g_k)|`, exactly.
    pub fn column_orthogonality(&self) -> bool {
        let r = self.classes.len();
        (0..r).all(|k| {
            (0..r).all(|l| {
                let mut acc = Cyclo::zero(self.exponent);
                for chi in &self.characters {
                    acc = acc.add(&chi[k].mul(&chi[l].conj()));
                }
                let want = if k == l {
                    (self.group_order / self.classes[k].size) as i64
                } else {
                    0
                };
                acc.as_integer() == Some(want)
            })
        })
    }

    pub fn degree_sum_identity(&self) -> bool {
        self.characters.len() == self.classes.len()
            && self.degrees().iter().map(|d| d * d).sum::<u64>() == self.group_order as u64
            && self
                .degrees()
                .iter()
                .all(|d| self.group_order as u64 % d == 0)
    }

    /// Recomputes the characters modulo the next suitable prime and compares
    /// them with the reduction of this table there. Both sides are sets of
    /// rows, so the choice of root of unity does not matter.
    pub fn second_prime_agrees<E: GroupElement>(&self, g: &FiniteGroup<E>) -> bool {
        let cd = class_data(g);
        if cd.classes != self.classes {
            return false;
        }
        let q = prime_congruent_one(self.exponent as u64, self.prime);
        let root = primitive_eth_root(self.exponent as u64, q);
        let independent: BTreeSet<Vec<u64>> = modular_characters(g, &cd, q).into_iter().collect();
        let reduced: BTreeSet<Vec<u64>> = self
            .characters
            .iter()
            .map(|row| row.iter().map(|x| x.reduce_mod(root, q)).collect())
            .collect();
        independent.len() == self.characters.len() && independent == reduced
    }

    /// Power map consistency: `χ(g^{-1}) = conj(χ(g))`.
    pub fn inverse_classes_conjugate(&self) -> bool {
        self.characters
            .iter()
            .all(|row| (0..row.len()).all(|k| row[self.inverse_class[k]] == row[k].conj()))
    }

    pub fn power_class(&self, class: usize, j: usize) -> usize {
        let pc = &self.power_classes[class];
        pc[j % pc.len()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;

    fn degrees<E: GroupElement>(g: &FiniteGroup<E>) -> Vec<u64> {
        character_table(g).unwrap().degrees()
    }

    #[test]
    fn standard_degrees() {
        assert_eq!(degrees(&symmetric(3)), vec![1, 1, 2]);
        assert_eq!(degrees(&quaternion()), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees(&elementary_abelian(2, 3)), vec![1; 8]);
        assert_eq!(degrees(&alternating(5)), vec![1, 3, 3, 4, 5]);
        assert_eq!(degrees(&symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees(&psl27()), vec![1, 3, 3, 6, 7, 8]);
        assert_eq!(degrees(&sl2f3()), vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn quaternion_two_dimensional_character_is_faithful() {
        let t = character_table(&quaternion()).unwrap();
        let two = t.degrees().iter().position(|&d| d == 2).unwrap();
        assert!(t.is_faithful(two));
        assert!((0..4).all(|i| !t.is_faithful(i)));
    }

    #[test]
    fn irrational_values_appear_for_a5() {
        let t = character_table(&alternating(5)).unwrap();
        assert!(t
            .characters
            .iter()
            .flatten()
            .any(|x| x.as_integer().is_none()));
        assert!(t.row_orthogonality() && t.column_orthogonality() && t.degree_sum_identity());
        assert!(t.second_prime_agrees(&alternating(5)));
    }

    #[test]
    fn tables_are_consistent() {
        for g in [
            cyclic(7),
            dihedral(5),
            c7_c3(),
            symmetric(4),
            sl2f3(),
            direct_product(&cyclic(3), &symmetric(3)),
        ] {
            let t = character_table(&g).unwrap();
            assert!(t.row_orthogonality(), "rows");
            assert!(t.column_orthogonality(), "columns");
            assert!(t.degree_sum_identity());
            assert!(t.inverse_classes_conjugate());
            assert!(t.second_prime_agrees(&g));
            assert_eq!(
                t.characters[0],
                vec![Cyclo::integer(t.exponent, 1); t.classes.len()]
            );
        }
    }

    #[test]
    fn order_bound() {
        assert!(matches!(
            character_table_with_bound(&symmetric(5), 100),
            Err(Error::BoundExceeded {
                order: 120,
                bound: 100
            })
        ));
    }
}

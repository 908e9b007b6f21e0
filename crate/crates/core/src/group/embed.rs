//! Injective homomorphism search `G -> H` by depth-first assignment of
//! generator images with incremental relation checking.

use super::{FiniteGroup, GroupElement};
use crate::error::{Error, Result};

/// An injective homomorphism given by the image index in `H` of every element of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub images: Vec<usize>,
    /// Indices in `G` of the generators used by the search.
    pub generators: Vec<usize>,
}

impl Embedding {
    pub fn image_of(&self, g: usize) -> usize {
        self.images[g]
    }

    /// Independent check: injective and multiplicative on every pair.
    pub fn verify<E: GroupElement, F: GroupElement>(
        &self,
        g: &FiniteGroup<E>,
        h: &FiniteGroup<F>,
    ) -> bool {
        if self.images.len() != g.order() {
            return false;
        }
        let mut used = vec![false; h.order()];
        for &y in &self.images {
            if y >= h.order() || std::mem::replace(&mut used[y], true) {
                return false;
            }
        }
        (0..g.order()).all(|a| {
            (0..g.order())
                .all(|b| self.images[g.mul(a, b)] == h.mul(self.images[a], self.images[b]))
        })
    }
}

/// Search statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingSearch {
    pub nodes: u64,
}

const CENTRALIZER_PRUNE_LIMIT: usize = 2000;

pub fn find_embedding<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    budget: u64,
) -> Result<Option<Embedding>> {
    find_embedding_with(g, h, budget, |_| true).map(|(e, _)| e)
}

/// Like [`find_embedding`], keeping only embeddings whose full image list
/// satisfies `accept`. Candidates are tried in index order, so the first hit
/// is the lexicographically least accepted embedding on the generators.
pub fn find_embedding_with<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    budget: u64,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Result<(Option<Embedding>, EmbeddingSearch)> {
    let mut stats = EmbeddingSearch::default();
    if h.order() % g.order() != 0 {
        return Ok((None, stats));
    }
    let gens = g.small_generating_set();
    if gens.is_empty() {
        let images = vec![0];
        let found = accept(&images).then(|| Embedding {
            images,
            generators: vec![],
        });
        return Ok((found, stats));
    }
    let h_orders = h.element_orders();
    let h_cent: Option<Vec<usize>> = (h.order() <= CENTRALIZER_PRUNE_LIMIT)
        .then(|| (0..h.order()).map(|x| h.centralizer_of(x).len()).collect());
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let ord = g.element_order(x);
            let cg = g.centralizer_of(x).len();
            (0..h.order())
                .filter(|&y| h_orders[y] == ord)
                .filter(|&y| h_cent.as_ref().is_none_or(|c| c[y] % cg == 0))
                .collect()
        })
        .collect();

    let mut search = Search {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        budget,
        stats: &mut stats,
    };
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut used = vec![false; h.order()];
    used[0] = true;
    let found = search.dfs(0, &mut map, &mut used, &mut accept)?;
    Ok((
        found.map(|images| Embedding {
            images,
            generators: gens.clone(),
        }),
        stats,
    ))
}

struct Search<'a, E, F> {
    g: &'a FiniteGroup<E>,
    h: &'a FiniteGroup<F>,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    budget: u64,
    stats: &'a mut EmbeddingSearch,
}

impl<E: GroupElement, F: GroupElement> Search<'_, E, F> {
    fn dfs(
        &mut self,
        level: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        accept: &mut impl FnMut(&[usize]) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        if level == self.gens.len() {
            return Ok(accept(map).then(|| map.clone()));
        }
        for &y in &self.candidates[level] {
            self.stats.nodes += 1;
            if self.stats.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let mut m = map.clone();
            let mut u = used.clone();
            if self.extend(level, y, &mut m, &mut u) {
                if let Some(found) = self.dfs(level + 1, &mut m, &mut u, accept)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }

    /// Extends the partial homomorphism over the subgroup generated by the
    /// first `level + 1` generators; false on a relation clash or collision.
    fn extend(&self, level: usize, y: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let (g, h) = (self.g, self.h);
        let gens = &self.gens[..=level];
        let mut imgs: Vec<usize> = gens.iter().map(|&x| map[x]).collect();
        imgs[level] = y;
        let mut queue: Vec<usize> = (0..g.order()).filter(|&a| map[a] != usize::MAX).collect();
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (j, &x) in gens.iter().enumerate() {
                let b = g.mul(a, x);
                let img = h.mul(map[a], imgs[j]);
                if map[b] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    map[b] = img;
                    used[img] = true;
                    queue.push(b);
                } else if map[b] != img {
                    return false;
                }
            }
        }
        true
    }
}

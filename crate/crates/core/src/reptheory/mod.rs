//! Character tables and two-dimensional representations.

pub mod chartab;
pub mod cyclo;
pub mod modp;

pub use chartab::{
    character_table, character_table_with_bound, CharacterTable, ConjugacyClass,
    DEFAULT_ORDER_BOUND,
};
pub use cyclo::Cyclo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{recognize, FiniteGroup, GroupElement, PolyhedralType};

/// Why a group does or does not embed in `GL2(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gl2Certificate {
    /// Abelian of rank at most two: a sum of two characters is faithful.
    AbelianRank { rank: usize },
    /// An irreducible character of degree 2 with trivial kernel, by row index.
    FaithfulCharacter { index: usize, values: Vec<Cyclo> },
    /// Abelian of rank three or more.
    AbelianRankTooLarge { rank: usize },
    /// Non-abelian and no degree-2 irreducible character is faithful.
    NoFaithfulDegreeTwo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2Embedding {
    pub embeds: bool,
    pub certificate: Gl2Certificate,
}

/// Whether `G` is isomorphic to a subgroup of `GL2(C)`. A non-abelian
/// subgroup acts irreducibly, so it needs a faithful irreducible character of
/// degree 2; an abelian one needs at most two generators.
pub fn embeds_in_gl2<E: GroupElement>(g: &FiniteGroup<E>) -> Result<Gl2Embedding> {
    if let Some(rank) = g.abelian_rank() {
        let embeds = rank <= 2;
        let certificate = if embeds {
            Gl2Certificate::AbelianRank { rank }
        } else {
            Gl2Certificate::AbelianRankTooLarge { rank }
        };
        return Ok(Gl2Embedding {
            embeds,
            certificate,
        });
    }
    let t = character_table(g)?;
    let found = t
        .degrees()
        .iter()
        .enumerate()
        .position(|(i, &d)| d == 2 && t.is_faithful(i));
    Ok(match found {
        Some(index) => Gl2Embedding {
            embeds: true,
            certificate: Gl2Certificate::FaithfulCharacter {
                index,
                values: t.characters[index].clone(),
            },
        },
        None => Gl2Embedding {
            embeds: false,
            certificate: Gl2Certificate::NoFaithfulDegreeTwo,
        },
    })
}

/// Whether a polyhedral group, viewed inside `PGL2(C)`, lifts isomorphically
/// to `GL2(C)`: exactly the cyclic groups and the dihedral groups `D_{2n}`
/// with `n` odd.
pub fn pgl2_lift_exists<E: GroupElement>(g: &FiniteGroup<E>) -> Result<bool> {
    match recognize(g).kind {
        PolyhedralType::NotPolyhedral => Err(Error::NotPolyhedral),
        PolyhedralType::Cyclic(_) => Ok(true),
        PolyhedralType::Dihedral(order) => Ok((order / 2) % 2 == 1),
        PolyhedralType::A4 | PolyhedralType::S4 | PolyhedralType::A5 => Ok(false),
    }
}

/// The same question decided from the character table: a lift is a faithful
/// two-dimensional representation whose image meets the scalars trivially.
/// For an irreducible `χ`, `ρ(g)` is scalar iff `|χ(g)|^2 = 4`; for a sum
/// `λ + μ` of linear characters, iff `λ(g) = μ(g)`.
pub fn pgl2_lift_by_characters<E: GroupElement>(g: &FiniteGroup<E>) -> Result<bool> {
    let t = character_table(g)?;
    let degrees = t.degrees();
    let r = t.classes.len();
    let e = t.exponent;
    let four = Cyclo::integer(e, 4);
    let irreducible = (0..t.characters.len())
        .filter(|&i| degrees[i] == 2)
        .any(|i| {
            let row = &t.characters[i];
            (1..r).all(|k| row[k].norm_sq() != four)
        });
    if irreducible {
        return Ok(true);
    }
    let linear: Vec<usize> = (0..t.characters.len())
        .filter(|&i| degrees[i] == 1)
        .collect();
    Ok(linear.iter().any(|&a| {
        linear
            .iter()
            .any(|&b| (1..r).all(|k| t.characters[a][k] != t.characters[b][k]))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::*;

    #[test]
    fn gl2_membership() {
        assert!(embeds_in_gl2(&dihedral(6)).unwrap().embeds);
        assert!(!embeds_in_gl2(&elementary_abelian(2, 3)).unwrap().embeds);
        let sl = embeds_in_gl2(&sl2f3()).unwrap();
        assert!(sl.embeds && matches!(sl.certificate, Gl2Certificate::FaithfulCharacter { .. }));
        assert!(embeds_in_gl2(&quaternion()).unwrap().embeds);
        assert!(!embeds_in_gl2(&symmetric(4)).unwrap().embeds);
        assert!(!embeds_in_gl2(&alternating(4)).unwrap().embeds);
        assert!(
            embeds_in_gl2(&direct_product(&cyclic(4), &cyclic(6)))
                .unwrap()
                .embeds
        );
    }

    #[test]
    fn lifts_from_pgl2() {
        assert!(pgl2_lift_exists(&cyclic(7)).unwrap());
        assert!(pgl2_lift_exists(&dihedral(3)).unwrap());
        assert!(!pgl2_lift_exists(&dihedral(4)).unwrap());
        assert!(!pgl2_lift_exists(&alternating(5)).unwrap());
        assert!(matches!(
            pgl2_lift_exists(&quaternion()),
            Err(Error::NotPolyhedral)
        ));
        for n in 1..=12 {
            assert_eq!(pgl2_lift_by_characters(&cyclic(n)).unwrap(), true, "C{n}");
            assert_eq!(
                pgl2_lift_by_characters(&dihedral(n)).unwrap(),
                pgl2_lift_exists(&dihedral(n)).unwrap(),
                "D{}",
                2 * n
            );
        }
        for g in [alternating(4), symmetric(4), alternating(5)] {
            assert!(!pgl2_lift_by_characters(&g).unwrap());
        }
    }
}

//! Text input for groups: `perm: (0 1)(2 3), (0 1 2)`,
//! `mat2: [[1,-1],[1,0]]; [[0,1],[1,0]]` or `mono: t=1/3,0 A=[[1,0],[0,1]]; ...`.

use super::{closure, Element, FiniteGroup, Perm};
use crate::error::{Error, Result};
use crate::intmat::Mat2;
use crate::monomial::MonomialElement;

pub fn parse_generators(text: &str) -> Result<Vec<Element>> {
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse("missing `perm:`, `mat2:` or `mono:` prefix".into()))?;
    let body = body.trim();
    match kind.trim() {
        "perm" => parse_perms(body).map(|ps| ps.into_iter().map(Element::Perm).collect()),
        "mat2" => split(body, ';')
            .map(|s| s.parse::<Mat2>().map(Element::Mat))
            .collect(),
        "mono" => split(body, ';')
            .map(|s| s.parse::<MonomialElement>().map(Element::Mono))
            .collect(),
        other => Err(Error::Parse(format!("unknown element kind `{other}`"))),
    }
}

pub fn parse_group(text: &str, cap: usize) -> Result<FiniteGroup<Element>> {
    closure(&parse_generators(text)?, cap)
}

fn split(body: &str, sep: char) -> impl Iterator<Item = &str> {
    body.split(sep).map(str::trim).filter(|s| !s.is_empty())
}

/// Permutations in cycle notation; the degree is one more than the largest point named.
pub fn parse_perms(body: &str) -> Result<Vec<Perm>> {
    let mut cycle_lists = Vec::new();
    let mut max_point = 0u32;
    for item in split(body, ',') {
        let mut cycles = Vec::new();
        let mut rest = item;
        while let Some(open) = rest.find('(') {
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse(format!("unexpected text in `{item}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{item}`")))?;
            let points: Vec<u32> = rest[open + 1..close]
                .split_whitespace()
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point `{p}`")))
                })
                .collect::<Result<_>>()?;
            let mut sorted = points.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != points.len() {
                return Err(Error::Parse(format!("repeated point in `{item}`")));
            }
            max_point = max_point.max(points.iter().copied().max().unwrap_or(0));
            cycles.push(points);
            rest = &rest[close + 1..];
        }
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("unexpected text in `{item}`")));
        }
        cycle_lists.push(cycles);
    }
    if cycle_lists.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    let n = max_point as usize + 1;
    Ok(cycle_lists
        .iter()
        .map(|c| Perm::from_cycles(n, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(parse_group("perm: (0 1), (0 1 2)", 100).unwrap().order(), 6);
        assert_eq!(parse_group("perm: ()", 100).unwrap().order(), 1);
        assert_eq!(
            parse_group("mat2: [[1,-1],[1,0]]; [[0,1],[1,0]]", 100)
                .unwrap()
                .order(),
            12
        );
        assert_eq!(
            parse_group("mono: t=1/3,0 A=[[1,0],[0,1]]", 100)
                .unwrap()
                .order(),
            3
        );
        assert_eq!(
            parse_group(" perm : (0 1)(2 3) , (0 2)(1 3)", 100)
                .unwrap()
                .order(),
            4
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_group("(0 1)", 10), Err(Error::Parse(_))));
        assert!(matches!(
            parse_group("perm: (0 1", 10),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_group("perm: (0 0)", 10),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_group("quat: i", 10), Err(Error::Parse(_))));
        assert!(matches!(
            parse_group("mat2: [[1,1],[0,1]]", 100),
            Err(Error::CapExceeded { .. })
        ));
    }
}

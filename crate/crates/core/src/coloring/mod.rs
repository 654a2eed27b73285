//! Clique-colorings: verification, exact clique-chromatic number, ordinary
//! chromatic number, a greedy upper bound, and the constructive coloring of
//! expansion towers.
//!
//! A coloring is a clique-coloring when no maximal clique with at least two
//! vertices is monochromatic. Colors are 1-based.

mod exact;
mod tower;

pub use exact::{chromatic_number, clique_chromatic_number, CliqueChromatic};
pub use tower::construct_tower_coloring;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliqueColoring {
    colors: Vec<u32>,
}

impl CliqueColoring {
    /// `colors[v]` is the color of vertex `v`; colors start at 1.
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidParameter(format!(
                "vertex index {v} has color 0; colors start at 1"
            )));
        }
        Ok(Self { colors })
    }

    pub fn uniform(n: usize, color: u32) -> Self {
        Self {
            colors: vec![color.max(1); n],
        }
    }

    pub fn from_labels(g: &Graph, colors: &BTreeMap<String, u32>) -> Result<Self> {
        for (label, &c) in colors {
            g.index_of(label)?;
            if c == 0 {
                return Err(Error::InvalidParameter(format!(
                    "vertex {label} has color 0; colors start at 1"
                )));
            }
        }
        let colors = g
            .labels()
            .iter()
            .map(|l| colors.get(l).copied().ok_or_else(|| Error::PartialColoring(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(colors)
    }

    pub fn from_json_str(g: &Graph, s: &str) -> Result<Self> {
        let json: ColoringJson = serde_json::from_str(s)?;
        Self::from_labels(g, &json.colors)
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Relabels colors to `1..=t` in order of first appearance.
    pub fn normalized(&self) -> Self {
        let mut map = BTreeMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = map.len() as u32 + 1;
                *map.entry(c).or_insert(next)
            })
            .collect();
        Self { colors }
    }

    pub fn to_json(&self, g: &Graph) -> ColoringJson {
        ColoringJson {
            colors: g
                .labels()
                .iter()
                .cloned()
                .zip(self.colors.iter().copied())
                .collect(),
        }
    }

    fn check_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() < g.order() {
            return Err(Error::PartialColoring(g.label(self.colors.len()).to_string()));
        }
        if self.colors.len() > g.order() {
            return Err(Error::SizeMismatch {
                expected: g.order(),
                found: self.colors.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub colors: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringVerdict {
    pub valid: bool,
    /// Lexicographically least monochromatic maximal clique, when invalid.
    pub witness: Option<Vec<usize>>,
}

/// Verdict against a precomputed maximal clique list (sorted, as returned by
/// [`maximal_cliques`]).
pub fn verify_against(cliques: &[Vec<usize>], col: &CliqueColoring) -> ColoringVerdict {
    let witness = cliques
        .iter()
        .find(|c| c.len() >= 2 && c.iter().all(|&v| col.color(v) == col.color(c[0])))
        .cloned();
    ColoringVerdict {
        valid: witness.is_none(),
        witness,
    }
}

pub fn verify_clique_coloring(g: &Graph, col: &CliqueColoring) -> Result<ColoringVerdict> {
    col.check_total(g)?;
    Ok(verify_against(&maximal_cliques(g, 2), col))
}

/// Quick valid clique-coloring: one color when there is no edge, the
/// dominating-vertex 2-coloring when possible, a greedy 2-coloring in index
/// order, and otherwise a greedy proper coloring.
pub fn greedy_clique_coloring(g: &Graph) -> CliqueColoring {
    let n = g.order();
    let cliques = maximal_cliques(g, 2);
    if cliques.is_empty() {
        return CliqueColoring::uniform(n, 1);
    }
    let candidates = [
        dominating_coloring(g),
        greedy_two(n, &cliques),
        Some(greedy_proper(g)),
    ];
    for col in candidates.into_iter().flatten() {
        if verify_against(&cliques, &col).valid {
            return col;
        }
    }
    unreachable!("a proper coloring is always a clique-coloring")
}

fn dominating_coloring(g: &Graph) -> Option<CliqueColoring> {
    let n = g.order();
    let d = (0..n).find(|&v| g.degree(v) == n - 1)?;
    let colors = (0..n).map(|v| if v == d { 1 } else { 2 }).collect();
    Some(CliqueColoring { colors })
}

fn greedy_two(n: usize, cliques: &[Vec<usize>]) -> Option<CliqueColoring> {
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, c) in cliques.iter().enumerate() {
        closing[*c.last().unwrap()].push(ci);
    }
    let mut colors = vec![0u32; n];
    for v in 0..n {
        let ok = |c: u32, colors: &[u32]| {
            closing[v]
                .iter()
                .all(|&ci| cliques[ci].iter().any(|&u| u != v && colors[u] != c))
        };
        colors[v] = [1, 2].into_iter().find(|&c| ok(c, &colors))?;
    }
    Some(CliqueColoring { colors })
}

fn greedy_proper(g: &Graph) -> CliqueColoring {
    let n = g.order();
    let mut colors = vec![0u32; n];
    for v in 0..n {
        let used: Vec<u32> = g.neighbors(v).iter().map(|u| colors[u]).collect();
        colors[v] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    CliqueColoring { colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{c9_triangle, complete, cycle, edgeless};

    #[test]
    fn verify_examples() {
        let k3 = complete(3);
        let v = verify_clique_coloring(&k3, &CliqueColoring::new(vec![1, 1, 2]).unwrap()).unwrap();
        assert!(v.valid && v.witness.is_none());
        let e = complete(2);
        let v = verify_clique_coloring(&e, &CliqueColoring::new(vec![1, 1]).unwrap()).unwrap();
        assert!(!v.valid);
        assert_eq!(v.witness, Some(vec![0, 1]));
    }

    #[test]
    fn every_two_coloring_of_c9_triangle_fails() {
        let g = c9_triangle();
        let cl = maximal_cliques(&g, 2);
        for mask in 0u32..1 << 9 {
            let col = CliqueColoring::new((0..9).map(|i| 1 + (mask >> i & 1)).collect()).unwrap();
            let v = verify_against(&cl, &col);
            assert!(!v.valid);
            let w = v.witness.unwrap();
            assert!(w.iter().all(|&u| col.color(u) == col.color(w[0])));
        }
    }

    #[test]
    fn partial_coloring_rejected() {
        let g = complete(3);
        let mut m = BTreeMap::new();
        m.insert("v0".to_string(), 1);
        m.insert("v1".to_string(), 2);
        assert!(matches!(CliqueColoring::from_labels(&g, &m), Err(Error::PartialColoring(l)) if l == "v2"));
        m.insert("zz".to_string(), 2);
        assert!(matches!(CliqueColoring::from_labels(&g, &m), Err(Error::UnknownVertex(_))));
        let short = CliqueColoring::new(vec![1, 2]).unwrap();
        assert!(verify_clique_coloring(&g, &short).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_clique_coloring(&complete(5)).num_colors(), 2);
        assert!(greedy_clique_coloring(&cycle(5)).num_colors() <= 3);
        assert_eq!(greedy_clique_coloring(&edgeless(4)).num_colors(), 1);
        let g = c9_triangle();
        let col = greedy_clique_coloring(&g);
        assert!(verify_clique_coloring(&g, &col).unwrap().valid);
    }

    #[test]
    fn json_roundtrip() {
        let g = complete(3);
        let col = CliqueColoring::new(vec![1, 2, 2]).unwrap();
        let s = serde_json::to_string(&col.to_json(&g)).unwrap();
        assert_eq!(CliqueColoring::from_json_str(&g, &s).unwrap(), col);
        assert_eq!(CliqueColoring::new(vec![3, 3, 7]).unwrap().normalized().colors(), &[1, 1, 2]);
    }
}

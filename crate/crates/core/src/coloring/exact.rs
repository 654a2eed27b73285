use super::CliqueColoring;
use crate::cliques::{clique_number, maximal_cliques};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueChromatic {
    /// `value` colors suffice and no fewer do; `witness` is the
    /// lexicographically least optimal coloring in vertex index order.
    Exact { value: usize, witness: CliqueColoring },
    ExceedsMax { max_colors: usize },
}

impl CliqueChromatic {
    pub fn value(&self) -> Option<usize> {
        match self {
            CliqueChromatic::Exact { value, .. } => Some(*value),
            CliqueChromatic::ExceedsMax { .. } => None,
        }
    }
}

/// Exact clique-chromatic number by iterative deepening on the color count.
///
/// Vertices are assigned in index order and colors in increasing order, with
/// a new color only ever one above the largest used so far (colors are
/// interchangeable). Each maximal clique is checked when its last vertex is
/// assigned, so the first solution found is the lexicographically least one.
pub fn clique_chromatic_number(g: &Graph, max_colors: usize) -> CliqueChromatic {
    let n = g.order();
    let cliques = maximal_cliques(g, 2);
    if cliques.is_empty() {
        return if max_colors >= 1 {
            CliqueChromatic::Exact {
                value: 1,
                witness: CliqueColoring::uniform(n, 1),
            }
        } else {
            CliqueChromatic::ExceedsMax { max_colors }
        };
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, c) in cliques.iter().enumerate() {
        closing[*c.last().unwrap()].push(ci);
    }
    for t in 2..=max_colors {
        let mut colors = vec![0u32; n];
        if search(0, 0, t as u32, &mut colors, &cliques, &closing) {
            return CliqueChromatic::Exact {
                value: t,
                witness: CliqueColoring { colors },
            };
        }
    }
    CliqueChromatic::ExceedsMax { max_colors }
}

fn search(
    v: usize,
    used: u32,
    t: u32,
    colors: &mut [u32],
    cliques: &[Vec<usize>],
    closing: &[Vec<usize>],
) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 1..=(used + 1).min(t) {
        let mono = closing[v]
            .iter()
            .any(|&ci| cliques[ci].iter().all(|&u| u == v || colors[u] == c));
        if mono {
            continue;
        }
        colors[v] = c;
        if search(v + 1, used.max(c), t, colors, cliques, closing) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Exact chromatic number: iterative deepening from ω with backtracking
/// over vertices by decreasing degree.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if g.edge_count() == 0 {
        return 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut t = clique_number(g);
    loop {
        let mut colors = vec![0u32; n];
        if proper(0, 0, t as u32, &order, &mut colors, g) {
            return t;
        }
        t += 1;
    }
}

fn proper(i: usize, used: u32, t: u32, order: &[usize], colors: &mut [u32], g: &Graph) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for c in 1..=(used + 1).min(t) {
        if g.neighbors(v).iter().any(|u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if proper(i + 1, used.max(c), t, order, colors, g) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

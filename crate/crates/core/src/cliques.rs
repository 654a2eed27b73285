//! Maximal clique enumeration and clique number.
//!
//! Maximal cliques are found with Bron–Kerbosch using Tomita pivoting,
//! seeded from a degeneracy ordering (Eppstein–Löffler–Strash). Output order
//! is part of the contract: every clique is a sorted list of vertex indices
//! and the list is sorted lexicographically.

use crate::bitset::BitSet;
use crate::graph::Graph;

/// Vertices in degeneracy order (repeatedly remove a minimum-degree vertex,
/// smallest index first).
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v).iter() {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order
}

/// All maximal cliques with at least `min_size` vertices.
pub fn maximal_cliques(g: &Graph, min_size: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let order = degeneracy_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    for &v in &order {
        let mut p = BitSet::new(n);
        let mut x = BitSet::new(n);
        for w in g.neighbors(v).iter() {
            if pos[w] > pos[v] {
                p.insert(w);
            } else {
                x.insert(w);
            }
        }
        r.push(v);
        expand(g, &mut r, p, x, min_size, &mut out);
        r.pop();
    }
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    min_size: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && r.len() >= min_size {
            out.push(r.clone());
        }
        return;
    }
    if r.len() + p.len() < min_size {
        return;
    }
    // pivot maximizing |P ∩ N(u)| over P ∪ X
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_len(g.neighbors(u)), std::cmp::Reverse(u)))
        .unwrap();
    let candidates = p.difference(g.neighbors(pivot));
    for v in candidates.iter() {
        let nv = g.neighbors(v);
        r.push(v);
        expand(g, r, p.intersection(nv), x.intersection(nv), min_size, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// ω(g): the size of a largest clique.
pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, size: usize, p: BitSet, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + p.len() <= *best {
            return;
        }
        let mut p = p;
        while let Some(v) = p.first() {
            if size + p.len() <= *best {
                return;
            }
            grow(g, size + 1, p.intersection(g.neighbors(v)), best);
            p.remove(v);
        }
    }
    let mut best = 1;
    grow(g, 0, g.vertex_set(), &mut best);
    best
}

/// Every clique (maximal or not) with exactly `size` vertices, each sorted,
/// in lexicographic order.
pub fn cliques_of_size(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, size: usize, cur: &mut Vec<usize>, cand: &BitSet, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        if cur.len() + cand.len() < size {
            return;
        }
        for v in cand.iter() {
            let mut next = cand.intersection(g.neighbors(v));
            // only larger indices, so each clique is produced once in order
            for w in cand.iter().take_while(|&w| w <= v) {
                next.remove(w);
            }
            cur.push(v);
            rec(g, size, cur, &next, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(g, size, &mut Vec::new(), &g.vertex_set(), &mut out);
    out
}

/// Is the clique `s` maximal, i.e. no outside vertex is complete to it?
pub fn is_maximal_clique(g: &Graph, s: &[usize]) -> bool {
    if !g.is_clique(s) {
        return false;
    }
    let mut common = g.vertex_set();
    for &v in s {
        common.intersect_with(g.neighbors(v));
    }
    common.is_empty()
}

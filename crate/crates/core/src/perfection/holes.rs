use crate::bitset::BitSet;
use crate::graph::Graph;

/// An induced odd cycle of length at least 5, in cycle order, or `None`.
/// Shorter cycles are preferred, then lexicographically smaller ones.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    find_odd_hole_min(g, 5)
}

/// An odd antihole: an odd hole of the complement, returned in the
/// complement's cycle order. A 5-antihole is also a 5-hole.
pub fn find_odd_antihole(g: &Graph) -> Option<Vec<usize>> {
    find_odd_hole_min(&g.complement(), 5)
}

/// Odd hole with at least `min_len` vertices.
pub fn find_odd_hole_min(g: &Graph, min_len: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let start = min_len.max(5) | 1;
    (start..=n)
        .step_by(2)
        .find_map(|len| (0..n).find_map(|s| hole_through(g, s, len)))
}

/// Induced cycle of exactly `len` vertices whose smallest vertex is `s`.
fn hole_through(g: &Graph, s: usize, len: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let mut above = BitSet::new(n);
    for v in s + 1..n {
        above.insert(v);
    }
    // the cycle minus s is an induced path in G[above]; every interior
    // vertex avoids N(s)
    let mut path = vec![s];
    let blocked = BitSet::new(n);
    extend(g, s, len, &above, &mut path, blocked)
}

/// `blocked` holds the closed neighborhoods of all path vertices except the
/// first and the last.
fn extend(
    g: &Graph,
    s: usize,
    len: usize,
    above: &BitSet,
    path: &mut Vec<usize>,
    blocked: BitSet,
) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    let mut cand = g.neighbors(last).intersection(above);
    cand.difference_with(&blocked);
    for &p in path.iter() {
        cand.remove(p);
    }
    let closing = path.len() + 1 == len;
    if closing {
        cand.intersect_with(g.neighbors(s));
        if let Some(w) = cand.first() {
            let mut cycle = path.clone();
            cycle.push(w);
            return Some(cycle);
        }
        return None;
    }
    if path.len() > 1 {
        cand.difference_with(g.neighbors(s));
    }
    for w in cand.iter() {
        let mut next_blocked = blocked.clone();
        if path.len() > 1 {
            next_blocked.union_with(g.neighbors(last));
            next_blocked.insert(last);
        }
        path.push(w);
        let found = extend(g, s, len, above, path, next_blocked);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

use std::collections::{BTreeSet, VecDeque};

use crate::bitset::BitSet;
use crate::graph::Graph;

/// Neighborhood of `comp` outside it.
fn boundary(g: &Graph, comp: &BitSet) -> BitSet {
    let mut s = BitSet::new(g.order());
    for v in comp.iter() {
        s.union_with(g.neighbors(v));
    }
    s.difference_with(comp);
    s
}

/// All minimal separators of a connected graph (Berry–Bordat–Cogis), sorted
/// by size and then lexicographically.
pub fn minimal_separators(g: &Graph) -> Vec<Vec<usize>> {
    let all = g.vertex_set();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let push = |s: BitSet, seen: &mut BTreeSet<Vec<usize>>, queue: &mut VecDeque<BitSet>| {
        if !s.is_empty() && seen.insert(s.to_vec()) {
            queue.push_back(s);
        }
    };
    for v in 0..g.order() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        for comp in g.components_within(&all.difference(&closed)) {
            push(boundary(g, &comp), &mut seen, &mut queue);
        }
    }
    while let Some(s) = queue.pop_front() {
        for x in s.iter() {
            let mut removed = s.clone();
            removed.union_with(g.neighbors(x));
            for comp in g.components_within(&all.difference(&removed)) {
                push(boundary(g, &comp), &mut seen, &mut queue);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// An inclusion-minimal clique cutset: `Some(vec![])` for a disconnected
/// graph, otherwise the smallest (then lexicographically least) clique
/// minimal separator, or `None` when no clique cutset exists.
///
/// Every clique cutset contains a minimal separator, which is then also a
/// clique, so a smallest clique minimal separator is inclusion-minimal among
/// all clique cutsets.
pub fn find_clique_cutset(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_connected() {
        return Some(Vec::new());
    }
    minimal_separators(g).into_iter().find(|s| g.is_clique(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::glue_along_clique;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_min_clique_cutset(g: &Graph) -> Option<usize> {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&m| (m.count_ones() as usize) < n)
            .filter(|&m| {
                let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                let rest = BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 0));
                g.is_clique(&s) && g.components_within(&rest).len() > 1
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn examples() {
        let t = complete(3);
        let bowtie = glue_along_clique(&t, &t, &[0], &[0], "b.").unwrap();
        assert_eq!(find_clique_cutset(&bowtie), Some(vec![0]));
        assert_eq!(find_clique_cutset(&edgeless(3)), Some(vec![]));
        assert_eq!(find_clique_cutset(&complete(5)), None);
        assert_eq!(find_clique_cutset(&cycle(5)), None);
        assert_eq!(find_clique_cutset(&path(3)), Some(vec![1]));
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let g = gnp(8, 0.45, &mut rng);
            let found = find_clique_cutset(&g);
            assert_eq!(found.as_ref().map(Vec::len), brute_min_clique_cutset(&g));
            if let Some(s) = found {
                assert!(g.is_clique(&s));
                let rest = g.vertex_set().difference(&BitSet::from_indices(g.order(), s));
                assert!(g.components_within(&rest).len() > 1);
            }
        }
    }
}

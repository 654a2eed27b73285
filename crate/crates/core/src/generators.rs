//! Named and seeded random graph families.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder};

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    assert!(n >= 1, "graphs are non-null");
    let mut b = GraphBuilder::new();
    b.add_vertices("v", n).expect("fresh labels");
    for (u, v) in edges {
        b.add_edge(u, v).expect("generated edges are loop-free");
    }
    b.build().expect("non-empty")
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn edgeless(n: usize) -> Graph {
    build(n, [])
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// The 9-cycle `v1 … v9` with the triangle `v1 v4 v7` added: perfect, with
/// clique-chromatic number three.
pub fn c9_triangle() -> Graph {
    let mut b = GraphBuilder::new();
    for i in 1..=9 {
        b.add_vertex(format!("v{i}")).unwrap();
    }
    for v in 0..9 {
        b.add_edge(v, (v + 1) % 9).unwrap();
    }
    for (u, v) in [(0, 3), (3, 6), (6, 0)] {
        b.add_edge(u, v).unwrap();
    }
    b.build().unwrap()
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Two cliques of sizes `a` and `b` with each cross pair joined with
/// probability `p`.
pub fn cobipartite_random<R: Rng + ?Sized>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let n = a + b;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same_side = (u < a) == (v < a);
            if same_side || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Random triangle-free graph: candidate edges in random order, each kept
/// when it closes no triangle.
pub fn random_triangle_free<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new();
    b.add_vertices("v", n).unwrap();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    rand::seq::SliceRandom::shuffle(pairs.as_mut_slice(), rng);
    let mut nb = vec![Vec::<usize>::new(); n];
    for (u, v) in pairs {
        if !rng.gen_bool(p) {
            continue;
        }
        if nb[u].iter().any(|w| nb[v].contains(w)) {
            continue;
        }
        nb[u].push(v);
        nb[v].push(u);
        b.add_edge(u, v).unwrap();
    }
    b.build().unwrap()
}

/// `G(n, p)` with vertex `dominator` joined to everyone else.
pub fn random_with_dominating<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    dominator: usize,
    rng: &mut R,
) -> Graph {
    let base = gnp(n, p, rng);
    let mut b = base.to_builder();
    for v in 0..n {
        if v != dominator {
            b.add_edge(dominator, v).unwrap();
        }
    }
    b.build().unwrap()
}

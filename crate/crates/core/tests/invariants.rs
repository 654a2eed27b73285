use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cliquecolor::cliques::{clique_number, cliques_of_size, maximal_cliques};
use cliquecolor::coloring::{chromatic_number, clique_chromatic_number};
use cliquecolor::expansion::{
    build_tower, expand_at_clique, paper_sequence, BijectionSelection, CliqueSelectionSpec, CustomTowerSpec,
    ExpandOptions, ExpansionSpec, LevelSpec, Limits, TowerRequest,
};
use cliquecolor::generators::{cobipartite_random, complete, cycle, gnp};
use cliquecolor::perfection::{is_perfect, Method};
use cliquecolor::{glue_along_clique, Graph};

fn graph(seed: u64, n: usize, p: f64) -> Graph {
    gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn perfect(g: &Graph) -> bool {
    is_perfect(g, Method::Spgt).unwrap().perfect
}

/// Proper 2-coloring by breadth-first search.
fn two_colorable(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for v in 0..n {
                if g.adjacent(u, v) {
                    match side[v] {
                        None => {
                            side[v] = Some(!side[u].unwrap());
                            queue.push(v);
                        }
                        Some(x) if x == side[u].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(seed in any::<u64>(), n in 1usize..=12, p in 0.0f64..1.0) {
        let g = graph(seed, n, p);
        prop_assert_eq!(g.complement().complement().to_json(), g.to_json());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..=12, p in 0.0f64..1.0) {
        let g = graph(seed, n, p);
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        prop_assert_eq!(back.to_json_string(), g.to_json_string());
    }

    #[test]
    fn cobipartite_iff_complement_bipartite(seed in any::<u64>(), n in 1usize..=10, p in 0.3f64..1.0) {
        let g = graph(seed, n, p);
        match g.is_cobipartite() {
            Some(b) => {
                prop_assert!(g.is_clique(&b.side_a) && g.is_clique(&b.side_b));
                prop_assert_eq!(b.side_a.len() + b.side_b.len(), n);
                prop_assert!(two_colorable(&g.complement()));
            }
            None => prop_assert!(!two_colorable(&g.complement())),
        }
    }

    #[test]
    fn glue_restricts_to_both_sides(seed in any::<u64>(), n1 in 2usize..=7, n2 in 2usize..=7) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g1 = gnp(n1, 0.6, &mut r);
        let g2 = gnp(n2, 0.6, &mut r);
        let s = r.gen_range(1..=clique_number(&g1).min(clique_number(&g2)));
        let c1 = cliques_of_size(&g1, s).choose(&mut r).unwrap().clone();
        let c2 = cliques_of_size(&g2, s).choose(&mut r).unwrap().clone();
        let h = glue_along_clique(&g1, &g2, &c1, &c2, "b:").unwrap();
        prop_assert_eq!(h.order(), n1 + n2 - s);

        let own: Vec<usize> = (0..n1).collect();
        prop_assert_eq!(h.induced_subgraph(&own).unwrap().to_json(), g1.to_json());
        // g2's vertices sit at c1 for the glued part and after g1 otherwise
        let mut image = Vec::new();
        let mut next = n1;
        for v in 0..n2 {
            match c2.iter().position(|&c| c == v) {
                Some(j) => image.push(c1[j]),
                None => {
                    image.push(next);
                    next += 1;
                }
            }
        }
        for u in 0..n2 {
            for v in 0..n2 {
                prop_assert_eq!(h.adjacent(image[u], image[v]), g2.adjacent(u, v));
            }
        }

        let flipped = glue_along_clique(&g2, &g1, &c2, &c1, "a:").unwrap();
        prop_assert_eq!(flipped.edge_count(), h.edge_count());
        prop_assert_eq!(degree_sequence(&flipped), degree_sequence(&h));
    }

    #[test]
    fn clique_coloring_never_needs_more_than_coloring(seed in any::<u64>(), n in 1usize..=9, p in 0.1f64..0.9) {
        let g = graph(seed, n, p);
        prop_assert!(clique_chromatic_number(&g, n).value().unwrap() <= chromatic_number(&g));
    }

    #[test]
    fn gluing_perfect_graphs_keeps_perfection(seed in any::<u64>(), n1 in 2usize..=8, n2 in 2usize..=8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g1 = cobipartite_random(n1 / 2, n1 - n1 / 2, 0.5, &mut r);
        let g2 = gnp(n2, 0.5, &mut r);
        prop_assume!(perfect(&g2));
        let s = r.gen_range(1..=clique_number(&g1).min(clique_number(&g2)));
        let c1 = cliques_of_size(&g1, s)[0].clone();
        let c2 = cliques_of_size(&g2, s)[0].clone();
        let h = glue_along_clique(&g1, &g2, &c1, &c2, "b:").unwrap();
        prop_assert!(perfect(&h));
    }

    #[test]
    fn single_petal_expansion_keeps_perfection(seed in any::<u64>(), n in 2usize..=6, k in 1u32..=3) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = gnp(n, 0.7, &mut r);
        prop_assume!(perfect(&g));
        let spec = [(2, 1), (3, k.min(2)), (4, k)]
            .iter()
            .map(|&(pn, pk)| ExpansionSpec::new(pn, pk).unwrap())
            .rfind(|s| s.clique_size() <= clique_number(&g));
        prop_assume!(spec.is_some());
        let spec = spec.unwrap();
        let mut at = cliques_of_size(&g, spec.clique_size())[0].clone();
        at.shuffle(&mut r);
        let sel = BijectionSelection::Random { count: 1, seed };
        let e = expand_at_clique(&g, &at, &spec, &sel, &ExpandOptions::default()).unwrap();
        prop_assert!(perfect(&e.graph));
    }

    #[test]
    fn petals_are_disjoint_anticomplete_and_removable(seed in any::<u64>(), count in 1usize..=4) {
        let g = complete(3);
        let spec = ExpansionSpec::new(3, 1).unwrap();
        let sel = BijectionSelection::Random { count, seed };
        let e = expand_at_clique(&g, &[0, 1, 2], &spec, &sel, &ExpandOptions::default()).unwrap();
        prop_assert_eq!(e.petals.len(), count);
        for (a, p) in e.petals.iter().enumerate() {
            for q in &e.petals[a + 1..] {
                for &x in &p.petal_vertices {
                    prop_assert!(!q.petal_vertices.contains(&x));
                    prop_assert!(q.petal_vertices.iter().all(|&y| !e.graph.adjacent(x, y)));
                }
            }
        }
        let base: Vec<usize> = (0..g.order()).collect();
        prop_assert_eq!(e.graph.induced_subgraph(&base).unwrap().to_json(), g.to_json());
    }
}

#[test]
fn clique_chromatic_number_is_not_monotone() {
    // C5 needs three colors; adding a vertex adjacent to all of C5 brings it to two
    let h = cycle(5);
    let mut b = h.to_builder();
    let d = b.add_vertex("d").unwrap();
    for v in 0..5 {
        b.add_edge(d, v).unwrap();
    }
    let g = b.build().unwrap();
    assert_eq!(clique_chromatic_number(&h, 5).value(), Some(3));
    assert_eq!(clique_chromatic_number(&g, 5).value(), Some(2));
    assert_eq!(g.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap().to_json(), h.to_json());
}

#[test]
fn buildable_towers_are_perfect() {
    let spec = CustomTowerSpec {
        k_target: None,
        h0: 4,
        levels: vec![LevelSpec {
            n: 3,
            k: 1,
            clique_size: None,
            cliques: CliqueSelectionSpec::All,
            bijections: serde_json::from_str("{\"random\": {\"count\": 2, \"seed\": 7}}").unwrap(),
        }],
    };
    let t = build_tower(&TowerRequest::Custom(spec), &Limits::default()).unwrap();
    for h in &t.graphs {
        assert!(perfect(h));
    }
    assert!(maximal_cliques(t.final_graph(), 2).len() > 1);
}

#[test]
fn sequence_identity_holds() {
    let r = paper_sequence(2).unwrap();
    assert!(r.checks.iter().all(|(_, ok)| *ok), "{:?}", r.checks);
    assert!(r.checks.iter().any(|(name, _)| name.contains("n_1 = n_2 * C(n_2^2 - 1, n_2 - 1)")));
}

//! Finite simple graphs with stable string labels.
//!
//! Vertices are addressed by a dense index (`usize`, insertion order) and
//! carry a unique label. Adjacency is one [`BitSet`] row per vertex. A
//! [`Graph`] is immutable once built; all mutation goes through
//! [`GraphBuilder`].

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Partition of a cobipartite graph into two (possibly empty) cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BitSet>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateVertex(label));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        for row in self.adj.iter_mut() {
            row.resize(id + 1);
        }
        self.adj.push(BitSet::new(id + 1));
        Ok(id)
    }

    /// Adds `count` vertices labelled `{prefix}{i}` with `i` zero-padded so
    /// that label order matches index order.
    pub fn add_vertices(&mut self, prefix: &str, count: usize) -> Result<Vec<usize>> {
        let width = count.saturating_sub(1).to_string().len();
        (0..count)
            .map(|i| self.add_vertex(format!("{prefix}{i:0width$}")))
            .collect()
    }

    /// Idempotent; rejects self-loops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> Result<Graph> {
        if self.labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = self.labels.len();
        let adj = self
            .adj
            .into_iter()
            .map(|mut row| {
                row.resize(n);
                row
            })
            .collect();
        Ok(Graph {
            labels: self.labels,
            index: self.index,
            adj,
        })
    }
}

impl Graph {
    /// Graph on labelled vertices with edges given by index pairs.
    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for l in labels {
            b.add_vertex(l)?;
        }
        for &(u, v) in edges {
            if u >= b.order() || v >= b.order() {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range")));
            }
            b.add_edge(u, v)?;
        }
        b.build()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj: self.adj.clone(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn labels_of(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.labels[v].clone()).collect()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertex_set(&self) -> BitSet {
        BitSet::full(self.order())
    }

    /// Edges as `(u, v)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// True iff the vertices are pairwise adjacent. Empty and singleton sets
    /// are cliques.
    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(a, &u)| s[a + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    pub fn is_clique_set(&self, s: &BitSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_clique_labels<S: AsRef<str>>(&self, s: &[S]) -> Result<bool> {
        Ok(self.is_clique(&self.resolve(s)?))
    }

    /// Returns the first non-adjacent pair in `s`, if any.
    pub fn non_adjacent_pair(&self, s: &[usize]) -> Option<(usize, usize)> {
        for (a, &u) in s.iter().enumerate() {
            for &v in &s[a + 1..] {
                if u == v || !self.adjacent(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub(crate) fn require_clique(&self, s: &[usize]) -> Result<()> {
        match self.non_adjacent_pair(s) {
            None => Ok(()),
            Some((u, v)) => Err(Error::NotAClique(
                self.labels[u].clone(),
                self.labels[v].clone(),
            )),
        }
    }

    /// Is `v` adjacent to every member of `s` (other than itself)?
    pub fn is_complete_to(&self, v: usize, s: &BitSet) -> bool {
        let mut rest = s.clone();
        rest.remove(v);
        rest.is_subset(&self.adj[v])
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n);
                row.difference_with(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    /// Subgraph induced on `s`; vertices keep their labels and relative
    /// index order.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        let mut keep: Vec<usize> = s.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.order()) {
            return Err(Error::InvalidParameter(format!("vertex index {bad} out of range")));
        }
        let mut b = GraphBuilder::new();
        for &v in &keep {
            b.add_vertex(self.labels[v].clone())?;
        }
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    b.add_edge(i, j)?;
                }
            }
        }
        b.build()
    }

    pub fn induced_subgraph_set(&self, s: &BitSet) -> Result<Graph> {
        self.induced_subgraph(&s.to_vec())
    }

    /// Connected components of the subgraph induced on `within`, each as a
    /// bitset, ordered by smallest member.
    pub fn components_within(&self, within: &BitSet) -> Vec<BitSet> {
        let mut seen = BitSet::new(self.order());
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = BitSet::new(self.order());
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for w in self.adj[u].intersection(within).iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&self.vertex_set()).len() == 1
    }

    /// Two-colors the complement by BFS in index order; each color class of
    /// the complement is a clique here.
    pub fn is_cobipartite(&self) -> Option<Bipartition> {
        let n = self.order();
        let comp = self.complement();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for w in comp.adj[u].iter() {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let side_a = (0..n).filter(|&v| side[v] == Some(false)).collect();
        let side_b = (0..n).filter(|&v| side[v] == Some(true)).collect();
        Some(Bipartition { side_a, side_b })
    }

    pub fn to_json(&self) -> GraphJson {
        let mut edges: Vec<[String; 2]> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (&self.labels[u], &self.labels[v]);
                if a <= b {
                    [a.clone(), b.clone()]
                } else {
                    [b.clone(), a.clone()]
                }
            })
            .collect();
        edges.sort();
        GraphJson {
            vertices: self.labels.clone(),
            edges,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("graph json");
        s.push('\n');
        s
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for v in &json.vertices {
            b.add_vertex(v.clone())?;
        }
        for [a, c] in &json.edges {
            let u = b.index_of(a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let v = b.index_of(c).ok_or_else(|| Error::UnknownVertex(c.clone()))?;
            if u == v {
                return Err(Error::SelfLoop(a.clone()));
            }
            if b.has_edge(u, v) {
                return Err(Error::DuplicateEdge(a.clone(), c.clone()));
            }
            b.add_edge(u, v)?;
        }
        b.build()
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let json: GraphJson = serde_json::from_str(s)?;
        Graph::from_json(&json)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{}\";", escape_dot(l));
        }
        for e in self.to_json().edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", escape_dot(&e[0]), escape_dot(&e[1]));
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// On-disk graph format: edges listed once, sorted by endpoint pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// Glues `g2` onto `g1` by identifying `c1[i]` with `c2[i]`.
///
/// The result keeps `g1`'s indices and labels; `g2`'s remaining vertices are
/// appended in index order with labels `{namespace}{label}`.
pub fn glue_along_clique(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    namespace: &str,
) -> Result<Graph> {
    if c1.len() != c2.len() {
        return Err(Error::SizeMismatch {
            expected: c1.len(),
            found: c2.len(),
        });
    }
    g1.require_clique(c1)?;
    g2.require_clique(c2)?;
    let mut b = g1.to_builder();
    let mut map = vec![usize::MAX; g2.order()];
    for (&a, &c) in c1.iter().zip(c2) {
        map[c] = a;
    }
    for (v, slot) in map.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = b.add_vertex(format!("{namespace}{}", g2.label(v)))?;
        }
    }
    for (u, v) in g2.edges() {
        b.add_edge(map[u], map[v])?;
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn is_clique_cases() {
        let k3 = complete(3);
        assert!(k3.is_clique(&[0, 1, 2]));
        let c4 = cycle(4);
        assert!(!c4.is_clique(&[0, 2]));
        assert!(c4.is_clique(&[]));
        assert!(c4.is_clique(&[3]));
        assert!(matches!(
            c4.is_clique_labels(&["v0", "nope"]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn glue_two_triangles_gives_diamond() {
        let t = complete(3);
        let d = glue_along_clique(&t, &t, &[0, 1], &[0, 1], "b.").unwrap();
        assert_eq!(d.order(), 4);
        assert_eq!(d.edge_count(), 5);
        assert_eq!(d.label(3), "b.v2");
        assert!(!d.adjacent(2, 3));
    }

    #[test]
    fn glue_along_empty_clique_is_disjoint_union() {
        let u = glue_along_clique(&complete(2), &cycle(3), &[], &[], "b.").unwrap();
        assert_eq!(u.order(), 5);
        assert_eq!(u.edge_count(), 4);
        assert!(!u.is_connected());
    }

    #[test]
    fn glue_rejects_bad_inputs() {
        let c4 = cycle(4);
        assert!(matches!(
            glue_along_clique(&c4, &c4, &[0, 2], &[0, 1], "b."),
            Err(Error::NotAClique(..))
        ));
        assert!(matches!(
            glue_along_clique(&c4, &c4, &[0], &[0, 1], "b."),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        let c4c = cycle(4).complement();
        assert_eq!(c4c.edge_count(), 2);
        assert!(c4c.adjacent(0, 2) && c4c.adjacent(1, 3));
        assert_eq!(complete(5).complement().edge_count(), 0);
        let c5c = cycle(5).complement();
        // v0 v2 v4 v1 v3 is the cycle in the complement
        let relabel = [0, 2, 4, 1, 3];
        for i in 0..5 {
            assert!(c5c.adjacent(relabel[i], relabel[(i + 1) % 5]));
        }
        assert_eq!(c5c.edge_count(), 5);
    }

    #[test]
    fn cobipartite_examples() {
        let bp = complete(4).is_cobipartite().unwrap();
        assert!(complete(4).is_clique(&bp.side_a) && complete(4).is_clique(&bp.side_b));
        let c4 = cycle(4);
        let bp = c4.is_cobipartite().unwrap();
        assert_eq!(bp.side_a, vec![0, 1]);
        assert_eq!(bp.side_b, vec![2, 3]);
        assert!(cycle(5).is_cobipartite().is_none());
    }

    #[test]
    fn induced_subgraph_cases() {
        let k5 = complete(5);
        assert_eq!(k5.induced_subgraph(&[0, 2, 4]).unwrap().edge_count(), 3);
        assert!(matches!(k5.induced_subgraph(&[]), Err(Error::EmptyGraph)));
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(k5.induced_subgraph(&all).unwrap(), k5);
    }

    #[test]
    fn json_parser_rejects_loops_and_duplicates() {
        let dup = r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#;
        assert!(matches!(Graph::from_json_str(dup), Err(Error::DuplicateEdge(..))));
        let lp = r#"{"vertices":["a"],"edges":[["a","a"]]}"#;
        assert!(matches!(Graph::from_json_str(lp), Err(Error::SelfLoop(_))));
        let dv = r#"{"vertices":["a","a"],"edges":[]}"#;
        assert!(matches!(Graph::from_json_str(dv), Err(Error::DuplicateVertex(_))));
        let empty = r#"{"vertices":[],"edges":[]}"#;
        assert!(matches!(Graph::from_json_str(empty), Err(Error::EmptyGraph)));
    }

    #[test]
    fn json_edges_sorted_once() {
        let g = Graph::from_edges(["b", "a", "c"], &[(0, 1), (2, 0)]).unwrap();
        let j = g.to_json();
        assert_eq!(
            j.edges,
            vec![
                ["a".to_string(), "b".to_string()],
                ["b".to_string(), "c".to_string()]
            ]
        );
        assert_eq!(Graph::from_json(&j).unwrap(), g);
        assert!(g.to_dot().contains("\"a\" -- \"b\";"));
    }
}

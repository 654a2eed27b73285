//! The (n,k)-expansion gadget.
//!
//! Expanding a graph at an `N = C(n,k)`-vertex clique `C = (c_1, …, c_N)`
//! adds, for each selected bijection `φ : C → ([n] choose k)`, a new
//! `n`-clique `X = (x_1, …, x_n)` with `c_i ~ x_j` iff `j ∈ φ(c_i)`. New
//! cliques see nothing outside their own `C` and are pairwise anticomplete.
//! The pair `(C, X)` is a [`Petal`].
//!
//! New vertices are appended, so vertex indices of the input graph stay valid
//! in the expanded graph.

mod tower;

pub use tower::{
    build_tower, check_petal_maximal_cliques, paper_sequence, BijectionSelectionSpec,
    CliqueSelectionSpec, CustomTowerSpec, LevelParams, LevelSpec, PaperTowerReport,
    PetalCliqueReport, PetalViolation, SeqValue, SequenceMode, TowerRequest, TowerTrace,
};

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::cliques::{cliques_of_size, is_maximal_clique};
use crate::combinatorics::{binomial_u64, factorial_u64, mask_bits, mask_elements, mask_from_elements};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::rng::{stream_rng, streams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionSpec {
    n: u32,
    k: u32,
    clique_size: usize,
}

impl ExpansionSpec {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "expansion needs 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        if n > 64 {
            return Err(Error::InvalidParameter(format!("n={n} exceeds 64")));
        }
        let clique_size = binomial_u64(n as u64, k as u64)
            .filter(|&c| c <= usize::MAX as u64)
            .ok_or_else(|| Error::BudgetExceeded(format!("C({n},{k}) does not fit in memory")))?;
        Ok(Self {
            n,
            k,
            clique_size: clique_size as usize,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `N = C(n, k)`, the required attachment clique size.
    pub fn clique_size(&self) -> usize {
        self.clique_size
    }

    /// The k-subsets of `[n]` as masks, in lexicographic order of their
    /// sorted element lists.
    pub fn lex_subsets(&self) -> Vec<u64> {
        (0..self.n)
            .combinations(self.k as usize)
            .map(|c| c.iter().fold(0u64, |m, &b| m | 1 << b))
            .collect()
    }
}

/// A bijection from an ordered attachment clique onto the k-subsets of `[n]`;
/// `masks[r]` is the image of `c_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetBijection {
    n: u32,
    k: u32,
    masks: Vec<u64>,
}

impl SubsetBijection {
    pub fn new(spec: &ExpansionSpec, masks: Vec<u64>) -> Result<Self> {
        if masks.len() != spec.clique_size() {
            return Err(Error::SizeMismatch {
                expected: spec.clique_size(),
                found: masks.len(),
            });
        }
        let limit = if spec.n == 64 { u64::MAX } else { (1u64 << spec.n) - 1 };
        let mut seen = BTreeSet::new();
        for &m in &masks {
            if m.count_ones() != spec.k || m & !limit != 0 {
                return Err(Error::InvalidParameter(format!(
                    "{:?} is not a {}-subset of [{}]",
                    mask_elements(m),
                    spec.k,
                    spec.n
                )));
            }
            if !seen.insert(m) {
                return Err(Error::InvalidParameter(format!(
                    "subset {:?} used twice; not a bijection",
                    mask_elements(m)
                )));
            }
        }
        Ok(Self {
            n: spec.n,
            k: spec.k,
            masks,
        })
    }

    pub fn from_elements(spec: &ExpansionSpec, subsets: &[Vec<u32>]) -> Result<Self> {
        let masks = subsets
            .iter()
            .map(|s| mask_from_elements(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, masks)
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn image(&self, r: usize) -> u64 {
        self.masks[r]
    }

    pub fn to_elements(&self) -> Vec<Vec<u32>> {
        self.masks.iter().map(|&m| mask_elements(m)).collect()
    }

    /// Sort key placing bijections in lexicographic order of their subset
    /// sequences.
    fn lex_key(&self, lex: &[u64]) -> Vec<usize> {
        self.masks
            .iter()
            .map(|m| lex.iter().position(|x| x == m).unwrap())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionSelection {
    /// All `N!` bijections, refused above [`Limits::max_bijections`].
    All,
    Explicit(Vec<SubsetBijection>),
    /// `count` distinct uniformly random bijections.
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueSelection {
    All,
    /// Explicit attachment cliques by vertex index.
    Explicit(Vec<Vec<usize>>),
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetalPolicy {
    pub cliques: CliqueSelection,
    pub bijections: BijectionSelection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_bijections: u64,
    pub max_petals: usize,
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_bijections: 40_320,
            max_petals: 100_000,
            max_vertices: 1_000_000,
        }
    }
}

/// One petal `(C, X)` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Petal {
    pub clique_id: usize,
    pub bijection_index: usize,
    /// `c_1 … c_N` in the order the bijection refers to.
    pub attachment: Vec<usize>,
    /// `x_1 … x_n`.
    pub petal_vertices: Vec<usize>,
    pub bijection: SubsetBijection,
}

impl Petal {
    /// `N_X(c_r)` as vertex indices.
    pub fn neighborhood(&self, r: usize) -> Vec<usize> {
        mask_bits(self.bijection.image(r))
            .into_iter()
            .map(|b| self.petal_vertices[b as usize])
            .collect()
    }

    pub fn attachment_set(&self, capacity: usize) -> BitSet {
        BitSet::from_indices(capacity, self.attachment.iter().copied())
    }

    pub fn petal_set(&self, capacity: usize) -> BitSet {
        BitSet::from_indices(capacity, self.petal_vertices.iter().copied())
    }
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Graph,
    pub petals: Vec<Petal>,
}

#[derive(Clone, Debug)]
pub struct ExpandOptions {
    /// Prefix for new vertex labels: `{prefix}c{clique}b{bijection}x{j}`.
    pub label_prefix: String,
    pub clique_id: usize,
    pub limits: Limits,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        Self {
            label_prefix: "x.".into(),
            clique_id: 0,
            limits: Limits::default(),
        }
    }
}

fn bijection_count(spec: &ExpansionSpec, selection: &BijectionSelection) -> Option<u64> {
    match selection {
        BijectionSelection::All => factorial_u64(spec.clique_size() as u64),
        BijectionSelection::Explicit(list) => Some(list.len() as u64),
        BijectionSelection::Random { count, .. } => Some(
            factorial_u64(spec.clique_size() as u64)
                .map_or(*count as u64, |f| f.min(*count as u64)),
        ),
    }
}

/// Materializes the selected bijections, deduplicated and in lexicographic
/// order of subset sequences.
fn select_bijections(
    spec: &ExpansionSpec,
    selection: &BijectionSelection,
    stream: u64,
    limits: &Limits,
) -> Result<Vec<SubsetBijection>> {
    let lex = spec.lex_subsets();
    let big_n = spec.clique_size();
    let total = factorial_u64(big_n as u64);
    let mut out = match selection {
        BijectionSelection::All => {
            match total {
                Some(t) if t <= limits.max_bijections => {}
                _ => {
                    return Err(Error::BudgetExceeded(format!(
                        "{big_n}! bijections exceed the limit of {}",
                        limits.max_bijections
                    )))
                }
            }
            // permutations of 0..N come out in lexicographic order
            return Ok((0..big_n)
                .permutations(big_n)
                .map(|p| SubsetBijection {
                    n: spec.n,
                    k: spec.k,
                    masks: p.iter().map(|&i| lex[i]).collect(),
                })
                .collect());
        }
        BijectionSelection::Explicit(list) => {
            for b in list {
                if b.n != spec.n || b.k != spec.k {
                    return Err(Error::InvalidParameter(format!(
                        "bijection for ({}, {}) used with ({}, {})",
                        b.n, b.k, spec.n, spec.k
                    )));
                }
            }
            list.clone()
        }
        BijectionSelection::Random { count, seed } => {
            let want = total.map_or(*count as u64, |t| t.min(*count as u64)) as usize;
            if want as u64 > limits.max_bijections {
                return Err(Error::BudgetExceeded(format!(
                    "{want} random bijections exceed the limit of {}",
                    limits.max_bijections
                )));
            }
            let mut rng = stream_rng(*seed, stream);
            let mut seen = BTreeSet::new();
            let mut perm: Vec<usize> = (0..big_n).collect();
            while seen.len() < want {
                perm.shuffle(&mut rng);
                seen.insert(perm.clone());
            }
            seen.into_iter()
                .map(|p| SubsetBijection {
                    n: spec.n,
                    k: spec.k,
                    masks: p.iter().map(|&i| lex[i]).collect(),
                })
                .collect()
        }
    };
    out.sort_by_cached_key(|b| b.lex_key(&lex));
    out.dedup();
    Ok(out)
}

fn attach_petals(
    b: &mut GraphBuilder,
    clique: &[usize],
    spec: &ExpansionSpec,
    bijections: Vec<SubsetBijection>,
    prefix: &str,
    clique_id: usize,
) -> Result<Vec<Petal>> {
    let mut petals = Vec::with_capacity(bijections.len());
    for (bi, bij) in bijections.into_iter().enumerate() {
        let xs: Vec<usize> = (1..=spec.n)
            .map(|j| b.add_vertex(format!("{prefix}c{clique_id}b{bi}x{j}")))
            .collect::<Result<_>>()?;
        for (a, &u) in xs.iter().enumerate() {
            for &v in &xs[a + 1..] {
                b.add_edge(u, v)?;
            }
        }
        for (r, &c) in clique.iter().enumerate() {
            for bit in mask_bits(bij.image(r)) {
                b.add_edge(c, xs[bit as usize])?;
            }
        }
        petals.push(Petal {
            clique_id,
            bijection_index: bi,
            attachment: clique.to_vec(),
            petal_vertices: xs,
            bijection: bij,
        });
    }
    Ok(petals)
}

/// The (n,k)-expansion of `g` at the ordered clique `clique`, restricted to
/// the selected bijections.
pub fn expand_at_clique(
    g: &Graph,
    clique: &[usize],
    spec: &ExpansionSpec,
    selection: &BijectionSelection,
    opts: &ExpandOptions,
) -> Result<Expansion> {
    if clique.len() != spec.clique_size() {
        return Err(Error::SizeMismatch {
            expected: spec.clique_size(),
            found: clique.len(),
        });
    }
    g.require_clique(clique)?;
    let stream = streams::indexed(streams::BIJECTION, opts.clique_id as u64);
    let bijections = select_bijections(spec, selection, stream, &opts.limits)?;
    check_growth(g, spec, 1, bijections.len(), &opts.limits)?;
    let mut b = g.to_builder();
    let petals = attach_petals(&mut b, clique, spec, bijections, &opts.label_prefix, opts.clique_id)?;
    Ok(Expansion {
        graph: b.build()?,
        petals,
    })
}

fn check_growth(
    g: &Graph,
    spec: &ExpansionSpec,
    cliques: usize,
    per_clique: usize,
    limits: &Limits,
) -> Result<()> {
    let petals = cliques.saturating_mul(per_clique);
    if petals > limits.max_petals {
        return Err(Error::BudgetExceeded(format!(
            "{petals} petals exceed the limit of {}",
            limits.max_petals
        )));
    }
    let vertices = g.order().saturating_add(petals.saturating_mul(spec.n() as usize));
    if vertices > limits.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{vertices} vertices exceed the limit of {}",
            limits.max_vertices
        )));
    }
    Ok(())
}

/// Expansion at every `N`-vertex clique of `g` (all cliques of that size,
/// not only maximal ones), subject to the selection policy.
pub fn universal_expansion(
    g: &Graph,
    spec: &ExpansionSpec,
    policy: &PetalPolicy,
    opts: &ExpandOptions,
) -> Result<Expansion> {
    let cliques: Vec<Vec<usize>> = match &policy.cliques {
        CliqueSelection::All => cliques_of_size(g, spec.clique_size()),
        CliqueSelection::Explicit(list) => {
            let mut list: Vec<Vec<usize>> = list
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c
                })
                .collect();
            list.sort();
            list.dedup();
            for c in &list {
                if c.len() != spec.clique_size() {
                    return Err(Error::SizeMismatch {
                        expected: spec.clique_size(),
                        found: c.len(),
                    });
                }
                g.require_clique(c)?;
            }
            list
        }
        CliqueSelection::Random { count, seed } => {
            let mut all = cliques_of_size(g, spec.clique_size());
            let mut rng = stream_rng(*seed, streams::CLIQUES);
            all.shuffle(&mut rng);
            all.truncate(*count);
            all.sort();
            all
        }
    };
    let per_clique = bijection_count(spec, &policy.bijections).unwrap_or(u64::MAX);
    check_growth(
        g,
        spec,
        cliques.len(),
        per_clique.min(usize::MAX as u64) as usize,
        &opts.limits,
    )?;
    let mut b = g.to_builder();
    let mut petals = Vec::new();
    for (id, clique) in cliques.iter().enumerate() {
        let stream = streams::indexed(streams::BIJECTION, id as u64);
        let bijections = select_bijections(spec, &policy.bijections, stream, &opts.limits)?;
        petals.extend(attach_petals(&mut b, clique, spec, bijections, &opts.label_prefix, id)?);
    }
    Ok(Expansion {
        graph: b.build()?,
        petals,
    })
}

/// Structural checks for petals living in `g`: each `C ∪ X` is cobipartite
/// with bipartition `(C, X)`, `c ~ x_j ⇔ j ∈ φ(c)`, neighborhoods in `X` are
/// pairwise distinct of size `k`, `X` sees nothing outside `C`, and distinct
/// petals are disjoint and anticomplete. Returns one message per violation.
pub fn check_petal_structure(g: &Graph, petals: &[Petal]) -> Vec<String> {
    let n = g.order();
    let mut issues = Vec::new();
    for (pi, p) in petals.iter().enumerate() {
        let c_set = p.attachment_set(n);
        let x_set = p.petal_set(n);
        if !g.is_clique(&p.petal_vertices) {
            issues.push(format!("petal {pi}: X is not a clique"));
        }
        if !g.is_clique(&p.attachment) {
            issues.push(format!("petal {pi}: C is not a clique"));
        }
        let mut union = c_set.clone();
        union.union_with(&x_set);
        match g.induced_subgraph_set(&union).ok().and_then(|h| h.is_cobipartite()) {
            Some(_) => {}
            None => issues.push(format!("petal {pi}: C ∪ X is not cobipartite")),
        }
        let mut seen = BTreeSet::new();
        for (r, &c) in p.attachment.iter().enumerate() {
            let expect = BitSet::from_indices(n, p.neighborhood(r));
            let actual = g.neighbors(c).intersection(&x_set);
            if actual != expect {
                issues.push(format!("petal {pi}: N_X({}) does not match φ", g.label(c)));
            }
            if actual.len() != p.bijection.k as usize {
                issues.push(format!("petal {pi}: |N_X({})| != k", g.label(c)));
            }
            if !seen.insert(actual.to_vec()) {
                issues.push(format!("petal {pi}: N_X({}) repeats", g.label(c)));
            }
        }
        for x in x_set.iter() {
            let outside = g.neighbors(x).difference(&union);
            if !outside.is_empty() {
                issues.push(format!("petal {pi}: {} has neighbors outside C ∪ X", g.label(x)));
            }
        }
        for (qi, q) in petals.iter().enumerate().skip(pi + 1) {
            let y_set = q.petal_set(n);
            if !x_set.is_disjoint(&y_set) {
                issues.push(format!("petals {pi} and {qi} share vertices"));
            }
            if x_set.iter().any(|x| !g.neighbors(x).is_disjoint(&y_set)) {
                issues.push(format!("petals {pi} and {qi} are not anticomplete"));
            }
        }
    }
    issues
}

/// For every petal and every `c ∈ C`, checks that `{c} ∪ N_X(c)` is a
/// maximal clique of `g` of size `k + 1`.
pub fn petal_clique_violations<'a>(
    g: &Graph,
    petals: impl IntoIterator<Item = (usize, &'a Petal)>,
) -> (usize, Vec<PetalViolation>) {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (level, p) in petals {
        for (r, &c) in p.attachment.iter().enumerate() {
            checked += 1;
            let mut clique = p.neighborhood(r);
            clique.push(c);
            clique.sort_unstable();
            let reason = if clique.len() != p.bijection.k as usize + 1 {
                Some("wrong size")
            } else if !g.is_clique(&clique) {
                Some("not a clique")
            } else if !is_maximal_clique(g, &clique) {
                Some("not maximal")
            } else {
                None
            };
            if let Some(reason) = reason {
                violations.push(PetalViolation {
                    level,
                    clique_id: p.clique_id,
                    bijection_index: p.bijection_index,
                    vertex: g.label(c).to_string(),
                    clique: g.labels_of(&clique),
                    reason: reason.to_string(),
                });
            }
        }
    }
    (checked, violations)
}

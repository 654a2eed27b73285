//! Iterated universal expansions `H_0, H_1, …` starting from a complete graph.
//!
//! In paper mode (`n_k = (k+1)!`, `n_{i-1} = C(n_i², n_i)`) the
//! tower cannot be built for any `k ≥ 2`; [`build_tower`] then refuses with a
//! [`PaperTowerReport`] carrying the exact sequence arithmetic. Custom mode
//! takes arbitrary small levels and records everything in a [`TowerTrace`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{
    petal_clique_violations, universal_expansion, BijectionSelection, CliqueSelection,
    ExpandOptions, ExpansionSpec, Limits, Petal, PetalPolicy, SubsetBijection,
};
use crate::combinatorics::{binomial_big, factorial};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceMode {
    Paper,
    Custom,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueSelectionSpec {
    #[default]
    All,
    Explicit(Vec<Vec<String>>),
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BijectionSelectionSpec {
    #[default]
    All,
    /// Each bijection lists the image subset (elements of `[n]`) of `c_1 … c_N`.
    Explicit(Vec<Vec<Vec<u32>>>),
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    pub n: u32,
    pub k: u32,
    /// Must equal `C(n, k)` when given.
    #[serde(default)]
    pub clique_size: Option<usize>,
    #[serde(default)]
    pub cliques: CliqueSelectionSpec,
    #[serde(default)]
    pub bijections: BijectionSelectionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomTowerSpec {
    #[serde(default)]
    pub k_target: Option<usize>,
    /// Size of the complete graph `H_0`.
    pub h0: usize,
    #[serde(default)]
    pub levels: Vec<LevelSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerRequest {
    Paper { k: usize },
    Custom(CustomTowerSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelParams {
    pub n: u32,
    pub k: u32,
    pub clique_size: usize,
}

#[derive(Clone, Debug)]
pub struct TowerTrace {
    pub k_target: usize,
    pub mode: SequenceMode,
    pub levels: Vec<LevelParams>,
    /// `H_0 … H_t`; vertex indices of `H_i` are valid in every later graph.
    pub graphs: Vec<Graph>,
    /// `petals[l]` are the petals added when building `H_{l+1}`.
    pub petals: Vec<Vec<Petal>>,
    pub notes: Vec<String>,
}

impl TowerTrace {
    pub fn final_graph(&self) -> &Graph {
        self.graphs.last().expect("H_0 always present")
    }

    pub fn h0_order(&self) -> usize {
        self.graphs[0].order()
    }

    /// Petals tagged with their level (1-based: level `l` builds `H_l`).
    pub fn tagged_petals(&self) -> impl Iterator<Item = (usize, &Petal)> {
        self.petals
            .iter()
            .enumerate()
            .flat_map(|(l, ps)| ps.iter().map(move |p| (l + 1, p)))
    }

    /// JSON manifest with graphs referenced by file name and petals inline.
    pub fn manifest(&self, graph_files: &[String]) -> serde_json::Value {
        let g = self.final_graph();
        let petals: Vec<Vec<serde_json::Value>> = self
            .petals
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| {
                        serde_json::json!({
                            "clique_id": p.clique_id,
                            "bijection_index": p.bijection_index,
                            "attachment": g.labels_of(&p.attachment),
                            "petal_vertices": g.labels_of(&p.petal_vertices),
                            "bijection": p.bijection.to_elements(),
                        })
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "k_target": self.k_target,
            "sequence_mode": self.mode,
            "levels": self.levels,
            "graphs": graph_files,
            "petals": petals,
            "notes": self.notes,
        })
    }
}

/// A value of the `n_i` sequence: exact when small enough to write down,
/// otherwise its binary logarithm or only its defining expression.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqValue {
    Exact(BigUint),
    Approx { expr: String, log2: f64 },
    Symbolic { expr: String },
}

impl SeqValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            SeqValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn log2(&self) -> Option<f64> {
        match self {
            SeqValue::Exact(v) if v.is_zero() => None,
            SeqValue::Exact(v) => Some(crate::combinatorics::ln_big(v) / std::f64::consts::LN_2),
            SeqValue::Approx { log2, .. } => Some(*log2),
            SeqValue::Symbolic { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SeqValue::Exact(v) => serde_json::json!({ "exact": v.to_string() }),
            SeqValue::Approx { expr, log2 } => serde_json::json!({ "expr": expr, "log2": log2 }),
            SeqValue::Symbolic { expr } => serde_json::json!({ "expr": expr }),
        }
    }
}

impl fmt::Display for SeqValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqValue::Exact(v) => write!(f, "{v}"),
            SeqValue::Approx { expr, log2 } => write!(f, "{expr} ≈ 2^{log2:.6e}"),
            SeqValue::Symbolic { expr } => write!(f, "{expr} (too large to evaluate)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PaperTowerReport {
    pub k: usize,
    /// `(i, n_i)` for `i = k, k-1, …, 0`.
    pub sequence: Vec<(usize, SeqValue)>,
    pub h0_vertices: SeqValue,
    pub checks: Vec<(String, bool)>,
    pub refusal: Option<String>,
}

impl PaperTowerReport {
    pub fn value(&self, i: usize) -> Option<&SeqValue> {
        self.sequence.iter().find(|(j, _)| *j == i).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let seq: Vec<serde_json::Value> = self
            .sequence
            .iter()
            .map(|(i, v)| serde_json::json!({ "i": i, "n_i": v.to_json() }))
            .collect();
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|(name, ok)| serde_json::json!({ "check": name, "pass": ok }))
            .collect();
        serde_json::json!({
            "k": self.k,
            "sequence": seq,
            "h0_vertices": self.h0_vertices.to_json(),
            "checks": checks,
            "refusal": self.refusal,
        })
    }
}

impl fmt::Display for PaperTowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in &self.sequence {
            writeln!(f, "n_{i} = {v}")?;
        }
        writeln!(f, "|V(H_0)| = {}", self.h0_vertices)?;
        for (name, ok) in &self.checks {
            writeln!(f, "[{}] {name}", if *ok { "ok" } else { "FAIL" })?;
        }
        if let Some(r) = &self.refusal {
            write!(f, "refused: {r}")?;
        }
        Ok(())
    }
}

const EXACT_LIMIT: u64 = 5_000;
const SUMMATION_LIMIT: u64 = 50_000_000;

/// log2 C(a, b) by summing `ln((a - s) / (s + 1))`.
fn log2_binomial_sum(a: f64, b: u64) -> f64 {
    let mut acc = 0.0f64;
    for s in 0..b {
        acc += ((a - s as f64) / (s + 1) as f64).ln();
    }
    acc / std::f64::consts::LN_2
}

/// `C(n², n)` given `n`.
fn next_value(n: &SeqValue, name: usize) -> SeqValue {
    let expr = format!("C(n_{name}^2, n_{name})");
    match n {
        SeqValue::Exact(v) => match v.to_u64() {
            Some(x) if x <= EXACT_LIMIT => SeqValue::Exact(binomial_big(&(v * v), x)),
            Some(x) if x <= SUMMATION_LIMIT => {
                let a = (x as f64) * (x as f64);
                SeqValue::Approx {
                    expr,
                    log2: log2_binomial_sum(a, x),
                }
            }
            _ => approx_from_log2(crate::combinatorics::ln_big(v) / std::f64::consts::LN_2, expr),
        },
        SeqValue::Approx { log2, .. } => approx_from_log2(*log2, expr),
        SeqValue::Symbolic { .. } => SeqValue::Symbolic { expr },
    }
}

/// For huge `n = 2^L`: `log2 C(n², n) ≈ n (log2 n + log2 e) - ½ log2(2πn)`.
fn approx_from_log2(l: f64, expr: String) -> SeqValue {
    let n = l.exp2();
    let v = n * (l + std::f64::consts::LOG2_E) - 0.5 * (l + (2.0 * std::f64::consts::PI).log2());
    if v.is_finite() {
        SeqValue::Approx { expr, log2: v }
    } else {
        SeqValue::Symbolic { expr }
    }
}

/// The sequence `n_k = (k+1)!`, `n_{i-1} = C(n_i², n_i)` with its sanity
/// checks and `|V(H_0)| = (k+1) n_0`.
pub fn paper_sequence(k: usize) -> Result<PaperTowerReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let fact = factorial(k as u64 + 1);
    let mut values = vec![SeqValue::Exact(fact.clone())];
    for i in (1..=k).rev() {
        let next = next_value(values.last().unwrap(), i);
        values.push(next);
    }
    let sequence: Vec<(usize, SeqValue)> = (0..=k).rev().zip(values).collect();

    let mut checks = Vec::new();
    for w in sequence.windows(2) {
        let ((i, ni), (_, prev)) = (&w[0], &w[1]);
        if let (Some(a), Some(b)) = (ni.exact(), prev.exact()) {
            let n_u = a.to_u64().unwrap();
            let rhs = a * binomial_big(&(a * a - BigUint::one()), n_u - 1);
            checks.push((
                format!("n_{} = n_{i} * C(n_{i}^2 - 1, n_{i} - 1)", i - 1),
                *b == rhs,
            ));
        }
        if let (Some(a), Some(b)) = (ni.log2(), prev.log2()) {
            checks.push((format!("n_{} > n_{i}", i - 1), b > a));
        }
    }
    for (i, v) in &sequence {
        if let Some(x) = v.exact() {
            checks.push((format!("(k+1)! divides n_{i}"), (x % &fact).is_zero()));
        }
    }
    let n0 = &sequence.last().unwrap().1;
    let h0_vertices = match n0 {
        SeqValue::Exact(v) => SeqValue::Exact(v * BigUint::from(k + 1)),
        SeqValue::Approx { log2, .. } => SeqValue::Approx {
            expr: format!("{} * n_0", k + 1),
            log2: log2 + ((k + 1) as f64).log2(),
        },
        SeqValue::Symbolic { .. } => SeqValue::Symbolic {
            expr: format!("{} * n_0", k + 1),
        },
    };
    Ok(PaperTowerReport {
        k,
        sequence,
        h0_vertices,
        checks,
        refusal: None,
    })
}

pub fn build_tower(request: &TowerRequest, limits: &Limits) -> Result<TowerTrace> {
    match request {
        TowerRequest::Paper { k } => {
            let mut report = paper_sequence(*k)?;
            let fits = report
                .h0_vertices
                .exact()
                .and_then(|v| v.to_usize())
                .filter(|&v| v <= limits.max_vertices);
            let Some(h0) = fits else {
                report.refusal = Some(format!(
                    "|V(H_0)| = {} exceeds the vertex limit of {}",
                    report.h0_vertices, limits.max_vertices
                ));
                return Err(Error::InfeasibleTower(Box::new(report)));
            };
            let mut levels = Vec::new();
            for i in 1..=*k {
                let ni = report.value(i).and_then(SeqValue::exact).and_then(|v| v.to_u32());
                let Some(ni) = ni else {
                    report.refusal = Some(format!("n_{i} too large to expand"));
                    return Err(Error::InfeasibleTower(Box::new(report)));
                };
                levels.push(LevelSpec {
                    n: ni * ni,
                    k: ni,
                    clique_size: None,
                    cliques: CliqueSelectionSpec::All,
                    bijections: BijectionSelectionSpec::All,
                });
            }
            let spec = CustomTowerSpec {
                k_target: Some(*k),
                h0,
                levels,
            };
            let mut trace = build_custom(&spec, limits)?;
            trace.mode = SequenceMode::Paper;
            Ok(trace)
        }
        TowerRequest::Custom(spec) => build_custom(spec, limits),
    }
}

fn build_custom(spec: &CustomTowerSpec, limits: &Limits) -> Result<TowerTrace> {
    if spec.h0 == 0 {
        return Err(Error::EmptyGraph);
    }
    if spec.h0 > limits.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "H_0 on {} vertices exceeds the vertex limit of {}",
            spec.h0, limits.max_vertices
        )));
    }
    let k_target = spec.k_target.unwrap_or(spec.levels.len().max(2));
    let mut b = GraphBuilder::new();
    let hs = b.add_vertices("h", spec.h0)?;
    for (a, &u) in hs.iter().enumerate() {
        for &v in &hs[a + 1..] {
            b.add_edge(u, v)?;
        }
    }
    let h0 = b.build()?;

    let mut notes = Vec::new();
    let fact = (2..=k_target as u64 + 1).try_fold(1u64, |a, x| a.checked_mul(x));
    let mut graphs = vec![h0];
    let mut petals = Vec::new();
    let mut params = Vec::new();
    for (li, level) in spec.levels.iter().enumerate() {
        let l = li + 1;
        let es = ExpansionSpec::new(level.n, level.k)?;
        if let Some(cs) = level.clique_size {
            if cs != es.clique_size() {
                return Err(Error::SizeMismatch {
                    expected: es.clique_size(),
                    found: cs,
                });
            }
        }
        if level.n != level.k * level.k {
            notes.push(format!(
                "level {l}: (n, k) = ({}, {}) is not of the form (m^2, m)",
                level.n, level.k
            ));
        }
        if let Some(f) = fact {
            if !(level.k as u64).is_multiple_of(f) {
                notes.push(format!(
                    "level {l}: (k_target+1)! = {f} does not divide k = {}",
                    level.k
                ));
            }
        }
        if l == 1 && spec.h0 != (k_target + 1) * es.clique_size() {
            notes.push(format!(
                "H_0 has {} vertices, not (k_target+1) * N = {}",
                spec.h0,
                (k_target + 1) * es.clique_size()
            ));
        }
        let prev = graphs.last().unwrap();
        let cliques = match &level.cliques {
            CliqueSelectionSpec::All => CliqueSelection::All,
            CliqueSelectionSpec::Explicit(list) => CliqueSelection::Explicit(
                list.iter()
                    .map(|c| prev.resolve(c))
                    .collect::<Result<Vec<_>>>()?,
            ),
            CliqueSelectionSpec::Random { count, seed } => CliqueSelection::Random {
                count: *count,
                seed: *seed,
            },
        };
        let bijections = match &level.bijections {
            BijectionSelectionSpec::All => BijectionSelection::All,
            BijectionSelectionSpec::Explicit(list) => BijectionSelection::Explicit(
                list.iter()
                    .map(|b| SubsetBijection::from_elements(&es, b))
                    .collect::<Result<Vec<_>>>()?,
            ),
            BijectionSelectionSpec::Random { count, seed } => BijectionSelection::Random {
                count: *count,
                seed: *seed,
            },
        };
        let opts = ExpandOptions {
            label_prefix: format!("L{l}."),
            clique_id: 0,
            limits: *limits,
        };
        let e = universal_expansion(prev, &es, &PetalPolicy { cliques, bijections }, &opts)?;
        graphs.push(e.graph);
        petals.push(e.petals);
        params.push(LevelParams {
            n: level.n,
            k: level.k,
            clique_size: es.clique_size(),
        });
    }
    Ok(TowerTrace {
        k_target,
        mode: SequenceMode::Custom,
        levels: params,
        graphs,
        petals,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PetalViolation {
    pub level: usize,
    pub clique_id: usize,
    pub bijection_index: usize,
    pub vertex: String,
    pub clique: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PetalCliqueReport {
    pub checked: usize,
    pub violations: Vec<PetalViolation>,
}

impl PetalCliqueReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every petal `(C, X)` of the tower and every `c ∈ C`, is
/// `{c} ∪ N_X(c)` a maximal clique of the final graph of size `k + 1`?
/// Violations are reported; custom parameters may legitimately produce them.
pub fn check_petal_maximal_cliques(trace: &TowerTrace) -> PetalCliqueReport {
    let (checked, violations) = petal_clique_violations(trace.final_graph(), trace.tagged_petals());
    PetalCliqueReport { checked, violations }
}

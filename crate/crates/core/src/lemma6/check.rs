use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::{sample_with, Lemma6Instance};
use crate::combinatorics::{binomial_u64, colex_rank, mask_bits, mask_elements, BinomialTable, Combinations};
use crate::error::{Error, Result};
use crate::rng::{stream_rng, streams};

/// Exhaustive checks are refused above this many containment lookups.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 50_000_000;

const MAX_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    /// 1-based part index.
    pub part: u32,
    /// `A` for property 1, `B` for property 2.
    pub set: u64,
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: u8,
    pub mode: CheckMode,
    /// Sets examined (with repetition when sampled).
    pub checked: u64,
    /// Failing `(set, part)` pairs.
    pub failures: u64,
    /// The first failures found, at most 32.
    pub witnesses: Vec<FailureWitness>,
    pub note: String,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

struct Checker<'a> {
    inst: &'a Lemma6Instance,
    table: BinomialTable,
    part_by_rank: Vec<u32>,
    full: u64,
}

impl<'a> Checker<'a> {
    fn new(inst: &'a Lemma6Instance) -> Self {
        let table = BinomialTable::new();
        let part_by_rank = inst.part_by_rank(&table);
        let full = if inst.i == 64 { u64::MAX } else { (1u64 << inst.i) - 1 };
        Self {
            inst,
            table,
            part_by_rank,
            full,
        }
    }

    /// Parts (as a bit mask) with no image inside `a`.
    fn p1_missing(&self, a: u64) -> u64 {
        let elems = mask_bits(a);
        let mut seen = 0u64;
        for s in Combinations::new(&elems, self.inst.k as usize) {
            seen |= 1 << self.part_by_rank[colex_rank(s, &self.table) as usize];
            if seen == self.full {
                return 0;
            }
        }
        self.full & !seen
    }

    /// Parts with fewer than `b` images containing `set`.
    fn p2_missing(&self, set: u64, b: u32, counts: &mut [u32]) -> u64 {
        counts.iter_mut().for_each(|c| *c = 0);
        let outside: Vec<u8> = (0..self.inst.m as u8).filter(|&e| set >> e & 1 == 0).collect();
        let mut short = self.inst.i;
        for t in Combinations::new(&outside, (self.inst.k - b) as usize) {
            let j = self.part_by_rank[colex_rank(set | t, &self.table) as usize] as usize;
            counts[j] += 1;
            if counts[j] == b {
                short -= 1;
                if short == 0 {
                    return 0;
                }
            }
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < b)
            .fold(0u64, |m, (j, _)| m | 1 << j)
    }
}

fn record(missing: u64, set: u64, failures: &mut u64, witnesses: &mut Vec<FailureWitness>) {
    *failures += missing.count_ones() as u64;
    for j in mask_bits(missing) {
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(FailureWitness {
                part: j as u32 + 1,
                set,
                elements: mask_elements(set),
            });
        }
    }
}

fn random_subset(rng: &mut dyn rand::RngCore, m: u32, size: u32) -> u64 {
    index::sample(rng, m as usize, size as usize)
        .iter()
        .fold(0u64, |acc, e| acc | 1 << e)
}

/// Runs a property check. `outer` is the size of the subsets tested,
/// `inner` the number of lookups per subset in the worst case.
#[allow(clippy::too_many_arguments)]
fn run(
    property: u8,
    inst: &Lemma6Instance,
    mode: CheckMode,
    budget: u64,
    outer: u32,
    inner: u64,
    rng: Option<&mut dyn rand::RngCore>,
    missing: &mut dyn FnMut(u64) -> u64,
) -> Result<PropertyReport> {
    let total = binomial_u64(inst.m as u64, outer as u64).unwrap_or(u64::MAX);
    let mut failures = 0;
    let mut witnesses = Vec::new();
    let (checked, note) = match mode {
        CheckMode::Exhaustive => {
            let work = total.saturating_mul(inner);
            if work > budget {
                return Err(Error::BudgetExceeded(format!(
                    "exhaustive property {property} check needs {total} sets x {inner} lookups, budget is {budget}"
                )));
            }
            let elems: Vec<u8> = (0..inst.m as u8).collect();
            for set in Combinations::new(&elems, outer as usize) {
                record(missing(set), set, &mut failures, &mut witnesses);
            }
            (total, "exhaustive; failure count is exact".to_string())
        }
        CheckMode::Sampled { samples, seed } => {
            let stream = if property == 1 { streams::PROPERTY1 } else { streams::PROPERTY2 };
            let mut own;
            let rng: &mut dyn rand::RngCore = match rng {
                Some(r) => r,
                None => {
                    own = stream_rng(seed, stream);
                    &mut own
                }
            };
            let mut failing_sets = 0u64;
            for _ in 0..samples {
                let set = random_subset(rng, inst.m, outer);
                let miss = missing(set);
                failing_sets += (miss != 0) as u64;
                record(miss, set, &mut failures, &mut witnesses);
            }
            let (lo, hi) = wilson_interval(failing_sets, samples);
            (
                samples,
                format!(
                    "sampled {samples} of {total} sets; 95% Wilson interval for the failing fraction [{lo:.3e}, {hi:.3e}]"
                ),
            )
        }
    };
    Ok(PropertyReport {
        property,
        mode,
        checked,
        failures,
        witnesses,
        note,
    })
}

fn p1_precheck(inst: &Lemma6Instance) -> Result<()> {
    if 2 * inst.k > inst.m {
        return Err(Error::InvalidParameter(format!(
            "property 1 needs 2k <= m, got k={}, m={}",
            inst.k, inst.m
        )));
    }
    Ok(())
}

fn p2_threshold(inst: &Lemma6Instance) -> Result<u32> {
    if !inst.k.is_multiple_of(inst.i + 1) {
        return Err(Error::Divisibility(format!(
            "property 2 needs (i+1) | k, got i={}, k={}",
            inst.i, inst.k
        )));
    }
    Ok(inst.k / (inst.i + 1))
}

pub fn check_property1(inst: &Lemma6Instance, mode: CheckMode, budget: u64) -> Result<PropertyReport> {
    check_property1_with(inst, mode, budget, None)
}

fn check_property1_with(
    inst: &Lemma6Instance,
    mode: CheckMode,
    budget: u64,
    rng: Option<&mut dyn rand::RngCore>,
) -> Result<PropertyReport> {
    p1_precheck(inst)?;
    let checker = Checker::new(inst);
    let inner = binomial_u64(2 * inst.k as u64, inst.k as u64).unwrap_or(u64::MAX);
    run(1, inst, mode, budget, 2 * inst.k, inner, rng, &mut |a| checker.p1_missing(a))
}

pub fn check_property2(inst: &Lemma6Instance, mode: CheckMode, budget: u64) -> Result<PropertyReport> {
    check_property2_with(inst, mode, budget, None)
}

fn check_property2_with(
    inst: &Lemma6Instance,
    mode: CheckMode,
    budget: u64,
    rng: Option<&mut dyn rand::RngCore>,
) -> Result<PropertyReport> {
    let b = p2_threshold(inst)?;
    let checker = Checker::new(inst);
    let inner = binomial_u64((inst.m - b) as u64, (inst.k - b) as u64).unwrap_or(u64::MAX);
    let mut counts = vec![0u32; inst.i as usize];
    run(2, inst, mode, budget, b, inner, rng, &mut |set| {
        checker.p2_missing(set, b, &mut counts)
    })
}

/// Re-checks a witness by scanning the whole part.
pub fn verify_witness(inst: &Lemma6Instance, property: u8, w: &FailureWitness) -> bool {
    let members = || inst.part_members(w.part - 1).map(|c| inst.phi[c]);
    match property {
        1 => !members().any(|s| s & !w.set == 0),
        2 => {
            let b = inst.k / (inst.i + 1);
            members().filter(|&s| w.set & !s == 0).count() < b as usize
        }
        _ => false,
    }
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub failures: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl RateEstimate {
    fn new(failures: u64, trials: u64) -> Self {
        let (wilson_low, wilson_high) = wilson_interval(failures, trials);
        Self {
            failures,
            trials,
            p_hat: if trials == 0 { 0.0 } else { failures as f64 / trials as f64 },
            wilson_low,
            wilson_high,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureEstimate {
    pub m: u32,
    pub k: u32,
    pub i: u32,
    /// `None` when the property is undefined for the parameters.
    pub p1: Option<RateEstimate>,
    pub p2: Option<RateEstimate>,
}

/// Fraction of random bijections failing each property. Each trial gets its
/// own streams, so the result does not depend on evaluation order. `inner`
/// of `None` judges every trial exhaustively.
pub fn estimate_failure_probability(
    m: u32,
    k: u32,
    i: u32,
    trials: u64,
    inner: Option<u64>,
    seed: u64,
) -> Result<FailureEstimate> {
    let mut f1 = 0;
    let mut f2 = 0;
    let do_p1 = 2 * k <= m;
    let do_p2 = k.is_multiple_of(i + 1);
    for t in 0..trials {
        let inst = sample_with(m, k, i, &mut stream_rng(seed, streams::indexed(streams::BIJECTION, t)))?;
        let mode = match inner {
            None => CheckMode::Exhaustive,
            Some(samples) => CheckMode::Sampled { samples, seed },
        };
        if do_p1 {
            let mut rng = stream_rng(seed, streams::indexed(streams::PROPERTY1, t));
            let r = check_property1_with(&inst, mode, u64::MAX, Some(&mut rng))?;
            f1 += !r.holds() as u64;
        }
        if do_p2 {
            let mut rng = stream_rng(seed, streams::indexed(streams::PROPERTY2, t));
            let r = check_property2_with(&inst, mode, u64::MAX, Some(&mut rng))?;
            f2 += !r.holds() as u64;
        }
    }
    Ok(FailureEstimate {
        m,
        k,
        i,
        p1: do_p1.then(|| RateEstimate::new(f1, trials)),
        p2: do_p2.then(|| RateEstimate::new(f2, trials)),
    })
}

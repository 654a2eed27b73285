//! Random bijections `φ : C → ([m] choose k̂)` and the two covering
//! properties used to find uniform cliques in expanded graphs.
//!
//! * property 1: for every part `C_j` and every `2k̂`-subset `A`, some member
//!   of `φ[C_j]` lies inside `A`;
//! * property 2: for every part `C_j` and every `k̂/(i+1)`-subset `B`, at
//!   least `k̂/(i+1)` members of `φ[C_j]` contain `B`.
//!
//! Subsets are `m`-bit masks. The canonical order of `([m] choose k̂)` is
//! ascending mask order, so [`colex_rank`] inverts it.

mod check;
mod uniform;

pub use check::{
    check_property1, check_property2, estimate_failure_probability, verify_witness, wilson_interval,
    CheckMode, FailureEstimate, FailureWitness, PropertyReport, RateEstimate,
    DEFAULT_EXHAUSTIVE_BUDGET,
};
pub use uniform::{assemble_uniform_clique, find_uniform_clique, is_uniform_clique, Assembly};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_u64, colex_rank, ksubset_masks, BinomialTable};
use crate::error::{Error, Result};
use crate::rng::{stream_rng, streams};

/// Largest `|C|` held in memory.
pub const MAX_INSTANCE_SIZE: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceShape {
    /// `m = k̂²` and `i(i+1) | k̂`.
    Paper,
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma6Instance {
    m: u32,
    k: u32,
    i: u32,
    /// `phi[c]` is the image of the `c`-th element of `C`.
    phi: Vec<u64>,
    /// Part (0-based) of each element of `C`.
    part: Vec<u32>,
}

/// Serialized form: the permutation as masks in C-order, plus the part of
/// each element when it is not the consecutive-blocks default.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub m: u32,
    pub k: u32,
    pub i: u32,
    pub shape: InstanceShape,
    pub phi: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<u32>>,
}

fn check_sizes(m: u32, k: u32, i: u32) -> Result<u64> {
    if m == 0 || m > 64 || k == 0 || k > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= m <= 64, got m={m}, k={k}"
        )));
    }
    if i == 0 || i > 64 {
        return Err(Error::InvalidParameter(format!("need 1 <= i <= 64, got {i}")));
    }
    let size = binomial_u64(m as u64, k as u64)
        .filter(|&s| s <= MAX_INSTANCE_SIZE)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!("C({m},{k}) exceeds {MAX_INSTANCE_SIZE} subsets"))
        })?;
    if size % i as u64 != 0 {
        return Err(Error::Divisibility(format!(
            "i={i} does not divide C({m},{k})={size}"
        )));
    }
    Ok(size)
}

/// Consecutive blocks of the C-order.
pub fn consecutive_parts(size: usize, i: u32) -> Vec<u32> {
    let block = size / i as usize;
    (0..size).map(|c| (c / block) as u32).collect()
}

impl Lemma6Instance {
    /// Validates that `phi` is a bijection onto the `k`-subsets of `[m]` and
    /// that `part` splits `C` into `i` equal parts. `None` means
    /// consecutive blocks.
    pub fn new(m: u32, k: u32, i: u32, phi: Vec<u64>, part: Option<Vec<u32>>) -> Result<Self> {
        let size = check_sizes(m, k, i)? as usize;
        if phi.len() != size {
            return Err(Error::SizeMismatch {
                expected: size,
                found: phi.len(),
            });
        }
        let table = BinomialTable::new();
        let mut seen = vec![false; size];
        for &mask in &phi {
            if mask.count_ones() != k || (m < 64 && mask >> m != 0) {
                return Err(Error::InvalidParameter(format!(
                    "mask {mask:#x} is not a {k}-subset of [{m}]"
                )));
            }
            let r = colex_rank(mask, &table) as usize;
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidParameter(format!(
                    "mask {mask:#x} appears twice; phi is not a bijection"
                )));
            }
        }
        let part = match part {
            None => consecutive_parts(size, i),
            Some(p) => {
                if p.len() != size {
                    return Err(Error::SizeMismatch {
                        expected: size,
                        found: p.len(),
                    });
                }
                let mut counts = vec![0usize; i as usize];
                for &j in &p {
                    *counts.get_mut(j as usize).ok_or_else(|| {
                        Error::InvalidParameter(format!("part index {j} outside 0..{i}"))
                    })? += 1;
                }
                if counts.iter().any(|&c| c != size / i as usize) {
                    return Err(Error::InvalidParameter(format!(
                        "parts are not equal-sized: {counts:?}"
                    )));
                }
                p
            }
        };
        Ok(Self { m, k, i, phi, part })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn subset_size(&self) -> u32 {
        self.k
    }

    pub fn parts(&self) -> u32 {
        self.i
    }

    pub fn phi(&self) -> &[u64] {
        &self.phi
    }

    pub fn part_of(&self, c: usize) -> u32 {
        self.part[c]
    }

    pub fn part_assignment(&self) -> &[u32] {
        &self.part
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn shape(&self) -> InstanceShape {
        let paper = self.m == self.k * self.k && self.k.is_multiple_of(self.i * (self.i + 1));
        if paper {
            InstanceShape::Paper
        } else {
            InstanceShape::Generalized
        }
    }

    /// Members of `C_j` (0-based `j`) in C-order.
    pub fn part_members(&self, j: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&c| self.part[c] == j)
    }

    /// Part of the preimage of each `k`-subset, indexed by colex rank.
    pub(crate) fn part_by_rank(&self, table: &BinomialTable) -> Vec<u32> {
        let mut out = vec![0u32; self.len()];
        for (c, &mask) in self.phi.iter().enumerate() {
            out[colex_rank(mask, table) as usize] = self.part[c];
        }
        out
    }

    pub fn to_json(&self) -> InstanceJson {
        let default = consecutive_parts(self.len(), self.i);
        InstanceJson {
            m: self.m,
            k: self.k,
            i: self.i,
            shape: self.shape(),
            phi: self.phi.clone(),
            parts: (self.part != default).then(|| self.part.clone()),
        }
    }

    pub fn from_json(json: InstanceJson) -> Result<Self> {
        Self::new(json.m, json.k, json.i, json.phi, json.parts)
    }
}

/// Uniformly random bijection: a seeded shuffle of the canonical subset
/// order, with consecutive-block parts.
pub fn sample_bijection(m: u32, k: u32, i: u32, seed: u64) -> Result<Lemma6Instance> {
    sample_with(m, k, i, &mut stream_rng(seed, streams::BIJECTION))
}

pub(crate) fn sample_with(m: u32, k: u32, i: u32, rng: &mut impl Rng) -> Result<Lemma6Instance> {
    check_sizes(m, k, i)?;
    let mut phi = ksubset_masks(m, k);
    phi.shuffle(rng);
    let part = consecutive_parts(phi.len(), i);
    Ok(Lemma6Instance { m, k, i, phi, part })
}

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Lemma6Instance;
use crate::bitset::BitSet;
use crate::coloring::CliqueColoring;
use crate::error::{Error, Result};
use crate::expansion::Petal;
use crate::graph::Graph;

/// A clique on which exactly `t` colors appear, each on `|set|/t` vertices.
pub fn is_uniform_clique(g: &Graph, col: &CliqueColoring, set: &[usize], t: usize) -> bool {
    if t == 0 || !set.len().is_multiple_of(t) || !g.is_clique(set) {
        return false;
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in set {
        *counts.entry(col.color(v)).or_default() += 1;
    }
    counts.len() == t && counts.values().all(|&c| c == set.len() / t)
}

/// The lexicographically least `t`-uniform clique of size `s`, if any.
pub fn find_uniform_clique(g: &Graph, col: &CliqueColoring, s: usize, t: usize) -> Result<Option<Vec<usize>>> {
    if t == 0 || !s.is_multiple_of(t) {
        return Err(Error::Divisibility(format!("t={t} must divide s={s}")));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("clique size must be positive".into()));
    }
    let mut search = Search {
        g,
        col,
        s,
        t,
        quota: s / t,
        chosen: Vec::new(),
        counts: BTreeMap::new(),
    };
    Ok(search.run(g.vertex_set()).then_some(search.chosen))
}

struct Search<'a> {
    g: &'a Graph,
    col: &'a CliqueColoring,
    s: usize,
    t: usize,
    quota: usize,
    chosen: Vec<usize>,
    counts: BTreeMap<u32, usize>,
}

impl Search<'_> {
    fn run(&mut self, cand: BitSet) -> bool {
        if self.chosen.len() == self.s {
            return true;
        }
        let mut remaining = cand.clone();
        for v in cand.iter() {
            remaining.remove(v);
            if self.chosen.len() + 1 + remaining.len() < self.s {
                return false;
            }
            let c = self.col.color(v);
            let used = self.counts.get(&c).copied().unwrap_or(0);
            if used == self.quota || (used == 0 && self.counts.len() == self.t) {
                continue;
            }
            *self.counts.entry(c).or_default() += 1;
            self.chosen.push(v);
            if self.run(remaining.intersection(self.g.neighbors(v))) {
                return true;
            }
            self.chosen.pop();
            let e = self.counts.get_mut(&c).unwrap();
            *e -= 1;
            if *e == 0 {
                self.counts.remove(&c);
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    /// `B ∪ B_1 ∪ … ∪ B_i`, sorted.
    Assembled(Vec<usize>),
    /// The step that could not be carried out.
    Failed(String),
}

/// One induction step: from a petal `(C, X)` whose attachment is split into
/// the parts of `inst`, pick a color class of `X` not used on `C`, take its
/// first `b = k/(i+1)` vertices as `B`, and from each part the first `b`
/// members complete to `B`.
pub fn assemble_uniform_clique(
    g: &Graph,
    petal: &Petal,
    col: &CliqueColoring,
    inst: &Lemma6Instance,
) -> Result<Assembly> {
    if petal.bijection.masks() != inst.phi() || petal.petal_vertices.len() != inst.m() as usize {
        return Err(Error::InvalidParameter(
            "petal was not built from this instance's bijection".into(),
        ));
    }
    if col.len() != g.order() {
        return Err(Error::SizeMismatch {
            expected: g.order(),
            found: col.len(),
        });
    }
    let i = inst.parts();
    let k = inst.subset_size();
    if !k.is_multiple_of(i + 1) {
        return Err(Error::Divisibility(format!("(i+1)={} does not divide k={k}", i + 1)));
    }
    let b = (k / (i + 1)) as usize;

    let part_colors: BTreeSet<u32> = petal.attachment.iter().map(|&c| col.color(c)).collect();
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for &x in &petal.petal_vertices {
        let c = col.color(x);
        if !part_colors.contains(&c) {
            classes.entry(c).or_default().push(x);
        }
    }
    let largest = classes
        .values()
        .fold(None::<&Vec<usize>>, |best, cls| match best {
            Some(best) if best.len() >= cls.len() => Some(best),
            _ => Some(cls),
        });
    let class = match largest {
        Some(cls) if cls.len() >= b => cls,
        other => {
            return Ok(Assembly::Failed(format!(
                "no color class of size k/(i+1) = {b} in X outside the part colors (largest has {})",
                other.map_or(0, Vec::len)
            )))
        }
    };
    let mut class = class.clone();
    class.sort_unstable();
    let big_b = &class[..b];

    let mut out = big_b.to_vec();
    for j in 0..i {
        let complete: Vec<usize> = inst
            .part_members(j)
            .map(|c| petal.attachment[c])
            .filter(|&v| big_b.iter().all(|&x| g.adjacent(v, x)))
            .collect();
        let mut complete = complete;
        complete.sort_unstable();
        if complete.len() < b {
            return Ok(Assembly::Failed(format!(
                "part {} has {} members complete to B, need {b}",
                j + 1,
                complete.len()
            )));
        }
        out.extend_from_slice(&complete[..b]);
    }
    out.sort_unstable();
    if !is_uniform_clique(g, col, &out, i as usize + 1) {
        return Ok(Assembly::Failed(format!(
            "assembled set of {} vertices is not {}-uniform",
            out.len(),
            i + 1
        )));
    }
    Ok(Assembly::Assembled(out))
}

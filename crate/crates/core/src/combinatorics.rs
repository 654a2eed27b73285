//! Exact binomials and factorials, plus k-subset enumeration over bitmasks.
//!
//! Subsets of `[m] = {1, …, m}` are `u64` masks with bit `j - 1` standing for
//! element `j`, so `m ≤ 64`. The canonical order of k-subsets is ascending
//! mask value (colexicographic order on sorted element lists), and
//! [`colex_rank`] is the position of a mask in that order.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact `C(a, b)`; `Err` when `b > a`.
pub fn binomial(a: u64, b: u64) -> Result<BigUint> {
    if b > a {
        return Err(Error::InvalidParameter(format!("binomial({a}, {b}) with b > a")));
    }
    Ok(binomial_big(&BigUint::from(a), b))
}

/// `C(a, b)` for a big top argument; zero when `b > a`.
pub fn binomial_big(a: &BigUint, b: u64) -> BigUint {
    if BigUint::from(b) > *a {
        return BigUint::zero();
    }
    let b = match (a - BigUint::from(b)).to_u64() {
        Some(rest) if rest < b => rest,
        _ => b,
    };
    let mut acc = BigUint::one();
    for s in 0..b {
        // acc = C(a, s) here; the running product stays integral
        acc = acc * (a - BigUint::from(s)) / BigUint::from(s + 1);
    }
    acc
}

/// `C(a, b)` as `u64`, or `None` on overflow.
pub fn binomial_u64(a: u64, b: u64) -> Option<u64> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for s in 0..b {
        acc = acc * (a - s) as u128 / (s + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn factorial_u64(n: u64) -> Option<u64> {
    (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Natural log of a positive big integer from its top 64 bits.
/// Relative error is below 2⁻⁵².
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Table of `C(a, b)` for `0 ≤ b ≤ a ≤ 64`, as `u64` (saturating).
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        let mut rows = vec![vec![0u64; 66]; 66];
        for a in 0..66 {
            rows[a][0] = 1;
            for b in 1..=a {
                rows[a][b] = rows[a - 1][b - 1].saturating_add(rows[a - 1][b]);
            }
        }
        Self { rows }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.rows[a][b]
    }
}

impl Default for BinomialTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Position of `mask` among masks of equal popcount in ascending order.
#[inline]
pub fn colex_rank(mask: u64, table: &BinomialTable) -> u64 {
    let mut rank = 0;
    let mut m = mask;
    let mut t = 1;
    while m != 0 {
        let pos = m.trailing_zeros() as usize;
        rank += table.get(pos, t);
        m &= m - 1;
        t += 1;
    }
    rank
}

/// All k-subsets of `[m]` as masks, in ascending order (Gosper's hack).
pub fn ksubset_masks(m: u32, k: u32) -> Vec<u64> {
    assert!(m <= 64 && k <= m);
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit: u128 = 1u128 << m;
    let mut x: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Lazily yields every `k`-subset of a fixed element list as a mask, in
/// lexicographic order of positions.
pub struct Combinations<'a> {
    elems: &'a [u8],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(elems: &'a [u8], k: usize) -> Self {
        Self {
            elems,
            idx: (0..k).collect(),
            done: k > elems.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self
            .idx
            .iter()
            .fold(0u64, |m, &i| m | 1u64 << self.elems[i]);
        let k = self.idx.len();
        let n = self.elems.len();
        let mut t = k;
        loop {
            if t == 0 {
                self.done = true;
                break;
            }
            t -= 1;
            if self.idx[t] < n - k + t {
                self.idx[t] += 1;
                for s in t + 1..k {
                    self.idx[s] = self.idx[s - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

/// Bit positions set in `mask`, ascending.
pub fn mask_bits(mask: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as u8);
        m &= m - 1;
    }
    out
}

/// Elements of `[m]` (1-based) in `mask`.
pub fn mask_elements(mask: u64) -> Vec<u32> {
    mask_bits(mask).into_iter().map(|b| b as u32 + 1).collect()
}

pub fn mask_from_elements(elements: &[u32]) -> Result<u64> {
    let mut mask = 0u64;
    for &e in elements {
        if e == 0 || e > 64 {
            return Err(Error::InvalidParameter(format!("subset element {e} outside 1..=64")));
        }
        mask |= 1 << (e - 1);
    }
    Ok(mask)
}

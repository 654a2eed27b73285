use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::combinatorics::{binomial, ln_big};

/// Per-operation rounding allowance.
const EPS: f64 = 4.0 * f64::EPSILON;

/// A positive real `x` held as `ln x`, with `|ln x − ln| ≤ err`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogVal {
    pub ln: f64,
    pub err: f64,
}

impl LogVal {
    pub fn from_ln(ln: f64, err: f64) -> Self {
        Self {
            ln,
            err: err + EPS * ln.abs(),
        }
    }

    pub fn one() -> Self {
        Self { ln: 0.0, err: 0.0 }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x > 0.0, "log of non-positive value {x}");
        Self::from_ln(x.ln(), EPS)
    }

    pub fn from_big(x: &BigUint) -> Self {
        let ln = ln_big(x);
        Self::from_ln(ln, 2.0 * EPS * (ln.abs() + 1.0))
    }

    /// `self^e` for an exponent known to relative precision `EPS`.
    pub fn powf(self, e: f64) -> Self {
        let ln = e * self.ln;
        Self {
            ln,
            err: e.abs() * self.err + 2.0 * EPS * ln.abs(),
        }
    }

    pub fn pow_big(self, e: &BigUint) -> Self {
        self.powf(e.to_f64().expect("exponent fits in f64"))
    }

    pub fn log2(&self) -> f64 {
        self.ln / std::f64::consts::LN_2
    }

    pub fn log2_err(&self) -> f64 {
        self.err / std::f64::consts::LN_2
    }

    /// `Some(self < o)` when the error bounds decide it.
    pub fn lt(&self, o: &Self) -> Option<bool> {
        let gap = o.ln - self.ln;
        let tol = self.err + o.err;
        if gap > tol {
            Some(true)
        } else if gap < -tol {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(self ≤ o)`; ties within the error are undecided.
    pub fn le(&self, o: &Self) -> Option<bool> {
        self.lt(o)
    }
}

impl Mul for LogVal {
    type Output = LogVal;

    fn mul(self, o: Self) -> Self {
        let ln = self.ln + o.ln;
        Self {
            ln,
            err: self.err + o.err + EPS * (self.ln.abs() + o.ln.abs()),
        }
    }
}

impl Div for LogVal {
    type Output = LogVal;

    fn div(self, o: Self) -> Self {
        self * Self { ln: -o.ln, err: o.err }
    }
}

/// Log-sum-exp.
impl Add for LogVal {
    type Output = LogVal;

    fn add(self, o: Self) -> Self {
        let (hi, lo) = if self.ln >= o.ln { (self, o) } else { (o, self) };
        let ln = hi.ln + (lo.ln - hi.ln).exp().ln_1p();
        Self {
            ln,
            err: hi.err.max(lo.err) + EPS * (ln.abs() + 1.0),
        }
    }
}

impl fmt::Display for LogVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^({:.5} ± {:.1e})", self.log2(), self.log2_err())
    }
}

/// `ln n!`: a direct sum below 20, otherwise Stirling's series through the
/// `n⁻⁵` term, whose remainder is below `1/(1680 n⁷)`.
pub fn ln_factorial(n: f64) -> LogVal {
    if n < 20.0 {
        let ln: f64 = (2..=n as u64).map(|k| (k as f64).ln()).sum();
        return LogVal::from_ln(ln, 20.0 * EPS * (ln + 1.0));
    }
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    let series = inv / 12.0 - inv * inv2 / 360.0 + inv * inv2 * inv2 / 1260.0;
    let main = n * n.ln() - n;
    let ln = main + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + series;
    let remainder = inv * inv2 * inv2 * inv2 / 1680.0;
    LogVal::from_ln(ln, remainder + 8.0 * EPS * (main.abs() + n))
}

/// `ln C(a, b)`: exact for `a ≤ 10⁴`, else through [`ln_factorial`]. Both
/// arguments must be integers below 2⁵³.
pub fn ln_binomial(a: f64, b: f64) -> LogVal {
    assert!(b >= 0.0 && b <= a, "ln_binomial({a}, {b})");
    if b == 0.0 || b == a {
        return LogVal::one();
    }
    if a <= 1e4 {
        return LogVal::from_big(&binomial(a as u64, b as u64).expect("b <= a"));
    }
    let la = ln_factorial(a);
    let lb = ln_factorial(b);
    let lc = ln_factorial(a - b);
    LogVal {
        ln: la.ln - lb.ln - lc.ln,
        err: la.err + lb.err + lc.err + EPS * (la.ln.abs() + lb.ln.abs() + lc.ln.abs()),
    }
}

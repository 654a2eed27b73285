//! Exact and log-space evaluation of the union bounds on the failure
//! probabilities of a random bijection, and of every inequality used to show
//! that they sum to less than one.
//!
//! Notation: `N = C(n², n)`, `p = C(2n, n)`, `b = n/(i+1)`,
//! `q = C(n² − b, n − b)`, `M = N/i`.

mod logval;

pub use logval::{ln_binomial, ln_factorial, LogVal};

use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::combinatorics::{binomial, binomial_big, factorial};
use crate::error::{Error, Result};

/// Largest `n` accepted; `2^(2n−1)` must stay a finite `f64`.
pub const MAX_N: u64 = 500;

/// Exact comparisons are used when operands stay below this many bits.
pub const EXACT_BIT_LIMIT: u64 = 1_000_000;

/// `N` up to this value is an exact `f64` argument to [`ln_binomial`].
const RATIO_FORM_LIMIT: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: u64,
    pub i: u64,
    pub b: u64,
    pub big_n: BigUint,
    pub p: BigUint,
    pub q: BigUint,
    /// `C(n², 2n)`.
    pub c_2n: BigUint,
}

impl Params {
    pub fn new(n: u64, i: u64) -> Result<Self> {
        if i < 2 {
            return Err(Error::InvalidParameter(format!("need i >= 2, got i={i}")));
        }
        if !n.is_multiple_of(i * (i + 1)) {
            return Err(Error::Divisibility(format!(
                "i(i+1) = {} does not divide n = {n}",
                i * (i + 1)
            )));
        }
        if n > MAX_N {
            return Err(Error::InvalidParameter(format!("n = {n} exceeds {MAX_N}")));
        }
        let b = n / (i + 1);
        Ok(Self {
            n,
            i,
            b,
            big_n: binomial(n * n, n)?,
            p: binomial(2 * n, n)?,
            q: binomial(n * n - b, n - b)?,
            c_2n: binomial(n * n, 2 * n)?,
        })
    }
}

fn show(x: &BigUint) -> String {
    let s = x.to_string();
    if s.len() <= 30 {
        s
    } else {
        format!("~2^{:.3}", LogVal::from_big(x).log2())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(base: u64, e: u64) -> BigUint {
    num_traits::pow(big(base), e as usize)
}

fn ln_one_minus_inv(x: f64) -> LogVal {
    LogVal::from_ln((-1.0 / x).ln_1p(), 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkMethod {
    Exact,
    LogSpace,
    /// Log space was inconclusive; decided exactly.
    Escalated,
    /// Neither route decided it; counted as a failure.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Link {
    pub name: String,
    pub statement: String,
    pub lhs: String,
    pub rhs: String,
    pub method: LinkMethod,
    pub passed: bool,
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<6} {}  (lhs {}, rhs {}, {:?})",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.statement,
            self.lhs,
            self.rhs,
            self.method
        )
    }
}

fn exact_link(name: &str, statement: &str, lhs: &BigUint, rhs: &BigUint, holds: bool) -> Link {
    Link {
        name: name.into(),
        statement: statement.into(),
        lhs: show(lhs),
        rhs: show(rhs),
        method: LinkMethod::Exact,
        passed: holds,
    }
}

/// `lhs < rhs` (strict) or `lhs ≤ rhs`, both decided only outside the error.
fn log_link(name: &str, statement: &str, lhs: LogVal, rhs: LogVal) -> Link {
    let decided = lhs.lt(&rhs);
    Link {
        name: name.into(),
        statement: statement.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        method: if decided.is_some() { LinkMethod::LogSpace } else { LinkMethod::Undecided },
        passed: decided == Some(true),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLine {
    pub name: String,
    pub formula: String,
    pub value: LogVal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P1Bound {
    /// `i·C(n²,2n)·C(N−M, p)/C(N, p)`, when `N ≤ 2⁴⁰`.
    pub ratio_form: Option<LogVal>,
    /// `i·C(n²,2n)·(1 − 1/i)^p`.
    pub bound: LogVal,
}

pub fn evaluate_p1_bound(n: u64, i: u64) -> Result<P1Bound> {
    Ok(p1_bound(&Params::new(n, i)?))
}

fn p1_bound(pr: &Params) -> P1Bound {
    let i = pr.i as f64;
    let head = LogVal::from_f64(i).mul(LogVal::from_big(&pr.c_2n));
    let bound = head.mul(ln_one_minus_inv(i).pow_big(&pr.p));
    let ratio_form = (pr.big_n <= big(RATIO_FORM_LIMIT)).then(|| {
        let n_f = pr.big_n.to_f64().unwrap();
        let m_f = n_f / i;
        let p_f = pr.p.to_f64().unwrap();
        if p_f > n_f - m_f {
            // no p-set avoids M images: the probability is zero, bounded by anything
            return LogVal::from_ln(f64::NEG_INFINITY, 0.0);
        }
        head.mul(ln_binomial(n_f - m_f, p_f)).div(ln_binomial(n_f, p_f))
    });
    P1Bound { ratio_form, bound }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P2Chain {
    /// Each displayed line in order; the first only when `N ≤ 2⁴⁰`.
    pub lines: Vec<ChainLine>,
    /// `lines[k] ≤ lines[k+1]` for each `k`.
    pub steps: Vec<Link>,
    /// The last line, `(i·C(n²,2n)·(1 − 1/i)^p)^n`.
    pub bound: LogVal,
}

impl P2Chain {
    pub fn monotone(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

pub fn evaluate_p2_bound(n: u64, i: u64) -> Result<P2Chain> {
    let pr = Params::new(n, i)?;
    Ok(p2_chain(&pr, &p1_bound(&pr)))
}

fn sum(terms: impl IntoIterator<Item = LogVal>) -> LogVal {
    terms
        .into_iter()
        .reduce(LogVal::add)
        .unwrap_or(LogVal::from_ln(f64::NEG_INFINITY, 0.0))
}

fn p2_chain(pr: &Params, p1: &P1Bound) -> P2Chain {
    let i = pr.i as f64;
    let li = LogVal::from_f64(i);
    let ln_n = LogVal::from_big(&pr.big_n);
    let ln_q = LogVal::from_big(&pr.q);
    let shrink = ln_one_minus_inv(i);
    let shrink_q = shrink.pow_big(&pr.q);
    let b = pr.b;
    let mut lines = Vec::new();
    let mut line = |name: &str, formula: &str, value: LogVal| {
        lines.push(ChainLine {
            name: name.into(),
            formula: formula.into(),
            value,
        })
    };

    if pr.big_n <= big(RATIO_FORM_LIMIT) {
        let n_f = pr.big_n.to_f64().unwrap();
        let m_f = n_f / i;
        let q_f = pr.q.to_f64().unwrap();
        let denom = ln_binomial(n_f, q_f);
        let terms = (0..b).filter_map(|t| {
            let t = t as f64;
            (q_f - t <= n_f - m_f)
                .then(|| ln_binomial(n_f - m_f, q_f - t).mul(ln_binomial(m_f, t)).div(denom))
        });
        let v = li
            .mul(LogVal::from_big(&binomial(pr.n * pr.n, b).unwrap()))
            .mul(sum(terms));
        line("L0", "i C(n^2, b) sum_t C(N-N/i, q-t) C(N/i, t) / C(N, q)", v);
    }

    let terms = (0..b).map(|t| {
        let num = (0..t).fold(BigUint::one(), |acc, s| acc * (&pr.q - big(s)));
        let den = (0..t).fold(BigUint::one(), |acc, s| acc * (&pr.big_n - &pr.q + big(t - s)));
        LogVal::from_big(&num)
            .div(LogVal::from_big(&den))
            .mul(LogVal::from_big(&binomial_big(&pr.big_n, t)))
            .mul(shrink.pow_big(&(&pr.q - big(t))))
            .mul(li.powf(-(t as f64)))
    });
    let v = li.mul(ln_n).mul(sum(terms));
    line("L1", "i N sum_t C(N, q-t) C(N, t) / C(N, q) (1-1/i)^(q-t) (1/i)^t", v);

    let head = li.mul(ln_n).mul(shrink_q);
    let qn = ln_q.mul(ln_n);
    let v = head.mul(sum((0..b).map(|t| qn.powf(t as f64))));
    line("L2", "i N (1-1/i)^q sum_t (qN)^t", v);

    let v = head
        .mul(LogVal::from_f64(b as f64))
        .mul(ln_n.powf(2.0 * (b as f64 - 1.0)));
    line("L3", "i N (1-1/i)^q b N^(2(b-1))", v);

    let v = li.mul(ln_n.powf(pr.n as f64)).mul(shrink_q);
    line("L4", "i N^n (1-1/i)^q", v);

    let q_over_n = pr.q.to_f64().unwrap() / pr.n as f64;
    let v = li
        .mul(LogVal::from_big(&pr.c_2n))
        .mul(shrink.powf(q_over_n))
        .powf(pr.n as f64);
    line("L5", "(i C(n^2, 2n) (1-1/i)^(q/n))^n", v);

    let bound = p1.bound.powf(pr.n as f64);
    line("L6", "(i C(n^2, 2n) (1-1/i)^p)^n", bound);

    let steps = lines
        .windows(2)
        .map(|w| {
            let mut l = log_link(
                &format!("{}<={}", w[0].name, w[1].name),
                &format!("{} <= {}", w[0].formula, w[1].formula),
                w[0].value,
                w[1].value,
            );
            // consecutive lines may coincide, so a tie within the error passes
            if l.method == LinkMethod::Undecided {
                l.passed = (w[0].value.ln - w[1].value.ln) <= w[0].value.err + w[1].value.err;
            }
            l
        })
        .collect();
    P2Chain { lines, steps, bound }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    #[serde(skip)]
    pub params: Params,
    pub p1: P1Bound,
    pub p2: P2Chain,
    pub links: Vec<Link>,
    pub overall: bool,
}

/// Evaluates both bounds and checks every named link of the argument.
pub fn verify_inequality_chain(n: u64, i: u64) -> Result<BoundsReport> {
    let pr = Params::new(n, i)?;
    let p1 = p1_bound(&pr);
    let p2 = p2_chain(&pr, &p1);
    let mut links = vec![pascal_link(&pr), link_a(&pr), link_b(&pr), link_c(&pr)];
    links.extend(links_d(&pr));
    links.extend(links_e(&pr, &p1));
    links.extend(links_f(&pr, &p1, &p2));
    let overall = links.iter().all(|l| l.passed) && p2.monotone();
    Ok(BoundsReport {
        params: pr,
        p1,
        p2,
        links,
        overall,
    })
}

fn pascal_link(pr: &Params) -> Link {
    let n = pr.n;
    let checks = [(n * n, n), (2 * n, n), (n * n - pr.b, n - pr.b), (n * n, 2 * n)];
    let ok = checks.iter().all(|&(a, b)| {
        binomial(a, b).unwrap() == binomial(a - 1, b - 1).unwrap() + binomial(a - 1, b).unwrap()
    });
    Link {
        name: "pascal".into(),
        statement: "C(a,b) = C(a-1,b-1) + C(a-1,b) for N, p, q, C(n^2,2n)".into(),
        lhs: show(&pr.big_n),
        rhs: show(&pr.big_n),
        method: LinkMethod::Exact,
        passed: ok,
    }
}

fn link_a(pr: &Params) -> Link {
    let (l, r) = (big(pr.i * pr.i), big(pr.n));
    exact_link("a", "i <= sqrt(n), as i^2 <= n", &l, &r, l <= r)
}

fn link_b(pr: &Params) -> Link {
    let l = &pr.p * &pr.p * big(pr.n);
    let r = BigUint::one() << (4 * pr.n - 2);
    exact_link("b", "p >= 2^(2n-1)/sqrt(n), as p^2 n >= 2^(4n-2)", &l, &r, l >= r)
}

fn link_c(pr: &Params) -> Link {
    let s = (pr.n as f64).sqrt();
    let lhs = LogVal::from_ln(s * (-1.0 / s).ln_1p(), 0.0);
    log_link("c", "(1 - 1/sqrt(n))^sqrt(n) < 1/2", lhs, LogVal::from_f64(0.5))
}

fn links_d(pr: &Params) -> Vec<Link> {
    let n = pr.n;
    let a = n - pr.b;
    let fa = factorial(a);
    let fn2 = factorial(n - 2);
    let fnn = factorial(n);
    let mut out = Vec::new();

    let ok = 3 * a >= 2 * n && a <= n - 2;
    out.push(exact_link(
        "d0",
        "2n/3 <= n - n/(i+1) <= n - 2",
        &big(a),
        &big(n),
        ok,
    ));

    let l = &pr.q * &fa;
    let r = pow(n * n - n + 1, a);
    out.push(exact_link(
        "d1",
        "q/n >= (1/n) (n^2-n+1)^(n-b) / (n-b)!, as q (n-b)! >= (n^2-n+1)^(n-b)",
        &l,
        &r,
        l >= r,
    ));

    // cubed to clear the 2n/3 exponent
    let l = pow(n * n - n + 1, 3 * a) * fn2.pow(3);
    let r = pow(n - 1, 4 * n) * fa.pow(3);
    out.push(exact_link(
        "d2",
        "(n^2-n+1)^(n-b)/(n-b)! >= (n^2-2n+1)^(2n/3)/(n-2)!, cubed",
        &l,
        &r,
        l >= r,
    ));

    let l = big(n) * big(n - 1) * &fn2;
    out.push(exact_link(
        "d3",
        "(1/n) (n-1)^(4n/3) / (n-2)! = (n-1)^(4n/3+1) / n!",
        &l,
        &fnn,
        l == fnn,
    ));

    let l = pow(n - 1, 4 * n + 3);
    let r = pr.p.pow(3) * fnn.pow(3);
    out.push(exact_link(
        "d4",
        "(n-1)^(4n/3+1) / n! >= p, cubed",
        &l,
        &r,
        l >= r,
    ));

    let r = big(n) * &pr.p;
    out.push(exact_link("d5", "q/n >= p", &pr.q, &r, pr.q >= r));

    if n >= 12 {
        out.push(exact_link(
            "d6",
            "n - 1 >= 11n/12",
            &big(12 * (n - 1)),
            &big(11 * n),
            12 * (n - 1) >= 11 * n,
        ));
        out.push(exact_link(
            "d7",
            "(11^4/12^3)^(1/3) >= 2, as 11^4 >= 8 * 12^3",
            &big(14641),
            &big(13824),
            14641 >= 13824,
        ));
        let l = pow(n - 1, 4);
        let r = big(8) * pow(n, 3);
        let mut link = exact_link("d8", "(n-1)^(4/3) >= 2n, as (n-1)^4 >= 8 n^3", &l, &r, l >= r);
        link.lhs = format!("{} (so (n-1)^(4/3) = {:.4})", link.lhs, ((n - 1) as f64).powf(4.0 / 3.0));
        out.push(link);
        let l = pow(2 * n, n);
        let r = &pr.p * &fnn;
        out.push(exact_link("d9", "(2n)^n / n! >= p", &l, &r, l >= r));
    }
    out
}

fn links_e(pr: &Params, p1: &P1Bound) -> Vec<Link> {
    let n = pr.n as f64;
    let s = n.sqrt();
    let c = LogVal::from_big(&pr.c_2n);
    let big_exp = 2f64.powi(2 * pr.n as i32 - 1);
    let half = LogVal::from_f64(0.5);
    let n4n = LogVal::from_f64(n).powf(4.0 * n);

    let r1 = LogVal::from_f64(s).mul(c).mul(ln_one_minus_inv(s).powf(big_exp / s));
    let r2 = LogVal::from_f64(s)
        .mul(n4n)
        .div(LogVal::from_big(&factorial(2 * pr.n)))
        .mul(half.powf(big_exp / n));
    let r3 = n4n.mul(half.powf(2f64.powi(pr.n as i32)));

    let mut out = vec![
        log_link("e1", "i C(n^2,2n) (1-1/i)^p <= sqrt(n) C(n^2,2n) (1-1/sqrt(n))^(2^(2n-1)/sqrt(n))", p1.bound, r1),
        log_link("e2", "... <= sqrt(n) n^(4n)/(2n)! (1/2)^(2^(2n-1)/n)", r1, r2),
        log_link("e3", "... <= n^(4n) (1/2)^(2^n)", r2, r3),
    ];

    let value = 4.0 * n * n.log2() - 2f64.powi(pr.n as i32);
    let tol = 8.0 * f64::EPSILON * (4.0 * n * n.log2() + 2f64.powi(pr.n as i32));
    let margin = -1.0 - value;
    out.push(Link {
        name: "e4".into(),
        statement: "4n log2(n) - 2^n < -1".into(),
        lhs: format!("{value:.6}"),
        rhs: "-1".into(),
        method: if margin.abs() > tol { LinkMethod::LogSpace } else { LinkMethod::Undecided },
        passed: margin > tol,
    });
    out
}

fn links_f(pr: &Params, p1: &P1Bound, p2: &P2Chain) -> Vec<Link> {
    let mut f1 = log_link("f1", "i C(n^2,2n) (1-1/i)^p < 1/2", p1.bound, LogVal::from_f64(0.5));
    if f1.method == LinkMethod::Undecided {
        // 2 i C(n^2,2n) (i-1)^p < i^p
        let bits = pr.p.to_f64().unwrap_or(f64::INFINITY) * (pr.i as f64).log2();
        if bits <= EXACT_BIT_LIMIT as f64 {
            let e = pr.p.to_usize().unwrap();
            let l = big(2 * pr.i) * &pr.c_2n * num_traits::pow(big(pr.i - 1), e);
            let r = num_traits::pow(big(pr.i), e);
            f1.passed = l < r;
            f1.method = LinkMethod::Escalated;
        }
    }
    let total = p1.bound.add(p2.bound);
    let f2 = log_link("f2", "p1 bound + p2 bound < 1", total, LogVal::one());
    vec![f1, f2]
}

impl BoundsReport {
    pub fn to_json(&self) -> serde_json::Value {
        let pr = &self.params;
        json!({
            "n": pr.n,
            "i": pr.i,
            "b": pr.b,
            "N": pr.big_n.to_string(),
            "p": pr.p.to_string(),
            "q": pr.q.to_string(),
            "C(n^2,2n)": pr.c_2n.to_string(),
            "p1_bound": {
                "log2": self.p1.bound.log2(),
                "log2_err": self.p1.bound.log2_err(),
                "ratio_form_log2": self.p1.ratio_form.map(|v| v.log2()),
            },
            "p2_bound": {
                "log2": self.p2.bound.log2(),
                "log2_err": self.p2.bound.log2_err(),
            },
            "p2_chain": self.p2.lines.iter().map(|l| json!({
                "name": l.name,
                "formula": l.formula,
                "log2": l.value.log2(),
                "log2_err": l.value.log2_err(),
            })).collect::<Vec<_>>(),
            "p2_steps": self.p2.steps,
            "links": self.links,
            "overall": self.overall,
        })
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pr = &self.params;
        writeln!(f, "n = {}, i = {}, n/(i+1) = {}", pr.n, pr.i, pr.b)?;
        writeln!(f, "N = {}", show(&pr.big_n))?;
        writeln!(f, "p = {}", show(&pr.p))?;
        writeln!(f, "q = {}", show(&pr.q))?;
        writeln!(f, "C(n^2, 2n) = {}", show(&pr.c_2n))?;
        writeln!(f, "p1 bound = {}", self.p1.bound)?;
        if let Some(r) = self.p1.ratio_form {
            writeln!(f, "p1 ratio form = {r}")?;
        }
        writeln!(f, "p2 chain:")?;
        for l in &self.p2.lines {
            writeln!(f, "  {} = {}   {}", l.name, l.value, l.formula)?;
        }
        for s in &self.p2.steps {
            writeln!(f, "  {s}")?;
        }
        writeln!(f, "links:")?;
        for l in &self.links {
            writeln!(f, "  {l}")?;
        }
        write!(f, "overall: {}", if self.overall { "pass" } else { "FAIL" })
    }
}

/// First lines of both union bounds for arbitrary `(m, k̂, i)`, as plain
/// probabilities (possibly above one). `None` where the property is
/// undefined or `C(m, k̂) > 2⁴⁰`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralizedBounds {
    pub p1: Option<f64>,
    pub p2: Option<f64>,
}

pub fn generalized_first_lines(m: u64, k: u64, i: u64) -> Result<GeneralizedBounds> {
    if k == 0 || k > m || i == 0 {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= m and i >= 1, got m={m}, k={k}, i={i}")));
    }
    let big_n = binomial(m, k)?;
    if big_n > big(RATIO_FORM_LIMIT) {
        return Ok(GeneralizedBounds { p1: None, p2: None });
    }
    let n_f = big_n.to_f64().unwrap();
    if !(&big_n % big(i)).is_zero() {
        return Err(Error::Divisibility(format!("i={i} does not divide C({m},{k})")));
    }
    let m_f = n_f / i as f64;
    let li = LogVal::from_f64(i as f64);
    let p1 = (2 * k <= m).then(|| {
        let p = binomial(2 * k, k).unwrap().to_f64().unwrap();
        if p > n_f - m_f {
            return 0.0;
        }
        li.mul(LogVal::from_big(&binomial(m, 2 * k).unwrap()))
            .mul(ln_binomial(n_f - m_f, p))
            .div(ln_binomial(n_f, p))
            .ln
            .exp()
    });
    let p2 = k.is_multiple_of(i + 1).then(|| {
        let b = k / (i + 1);
        let q = binomial(m - b, k - b).unwrap().to_f64().unwrap();
        let denom = ln_binomial(n_f, q);
        let s: f64 = (0..b)
            .filter(|&t| q - t as f64 <= n_f - m_f && t as f64 <= m_f)
            .map(|t| {
                ln_binomial(n_f - m_f, q - t as f64)
                    .mul(ln_binomial(m_f, t as f64))
                    .div(denom)
                    .ln
                    .exp()
            })
            .sum();
        i as f64 * binomial(m, b).unwrap().to_f64().unwrap() * s
    });
    Ok(GeneralizedBounds { p1, p2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_case_values() {
        let pr = Params::new(6, 2).unwrap();
        assert_eq!(pr.big_n, big(1_947_792));
        assert_eq!(pr.p, big(924));
        assert_eq!(pr.q, big(46_376));
        assert_eq!(pr.c_2n, big(1_251_677_700));
    }

    #[test]
    fn p1_bound_at_n6() {
        let v = evaluate_p1_bound(6, 2).unwrap();
        // 1 + log2 C(36,12) - 924, the last term exact since (1/2)^924
        let expected = 1.0 + (1_251_677_700f64).log2() - 924.0;
        assert!((v.bound.log2() - expected).abs() < 1e-9);
        assert!((v.bound.log2() + 892.78).abs() < 0.01);
        assert!(v.ratio_form.unwrap().ln <= v.bound.ln);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(evaluate_p1_bound(6, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(verify_inequality_chain(6, 3), Err(Error::Divisibility(_))));
    }

    #[test]
    fn chain_passes_small_cases() {
        for (n, i) in [(6, 2), (12, 2), (12, 3), (18, 2), (20, 4)] {
            let r = verify_inequality_chain(n, i).unwrap();
            assert!(r.overall, "n={n} i={i}\n{r}");
        }
    }

    #[test]
    fn e4_margin_at_six() {
        let r = verify_inequality_chain(6, 2).unwrap();
        let e4 = r.links.iter().find(|l| l.name == "e4").unwrap();
        let v: f64 = e4.lhs.parse().unwrap();
        assert!((v + 1.96090).abs() < 1e-4);
    }

    #[test]
    fn l0_present_only_for_small_n() {
        assert_eq!(evaluate_p2_bound(6, 2).unwrap().lines[0].name, "L0");
        assert_eq!(evaluate_p2_bound(12, 2).unwrap().lines[0].name, "L1");
    }

    #[test]
    fn generalized_lines() {
        let g = generalized_first_lines(6, 2, 3).unwrap();
        // 3 * C(6,4) * C(10,6)/C(15,6)
        let expected = 3.0 * 15.0 * 210.0 / 5005.0;
        assert!((g.p1.unwrap() - expected).abs() < 1e-9);
        assert_eq!(g.p2, None);
    }
}

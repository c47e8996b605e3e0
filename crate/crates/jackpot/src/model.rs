//! Domain types, validation, and elementary lottery arithmetic.
//!
//! The model is a pure-jackpot parimutuel lottery: `t` tickets, one winning
//! ticket drawn with probabilities `p`, a carryover pool `a` rolled in from
//! previous drawings, and a take rate `x` deducted from the betting pool.
//! A coordinating syndicate stakes `s` dollars spread by a weight vector `r`
//! (fractional stakes allowed); a crowd of `c` independent bettors each buys
//! one ticket sampled from `q`. Money is a real number in units of one ticket
//! price; there is no currency rounding anywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for probability/weight vectors summing to one.
///
/// Vectors off by more than this are rejected outright — silent
/// renormalization would mask caller bugs.
pub const PROB_SUM_TOL: f64 = 1e-12;

fn check_sums_to_one(field: &'static str, v: &[f64]) -> Result<()> {
    // Compensated: a plain fold accumulates ~n·ε of rounding, which would
    // spuriously reject valid million-entry uniform vectors at this
    // tolerance.
    let mut acc = crate::numeric::Kahan::default();
    for &x in v {
        acc.add(x);
    }
    let sum = acc.value();
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::invalid(
            field,
            format!("entries must sum to 1 within {PROB_SUM_TOL:e}, got {sum:.17}"),
        ));
    }
    Ok(())
}

/// Static description of one lottery drawing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LotteryConfig {
    /// Winning-ticket probabilities; length is the ticket count `t`.
    p: Vec<f64>,
    /// Carryover pool rolled over from drawings with no winner (≥ 0).
    a: f64,
    /// Take rate: fraction the operator deducts from the pool, in [0, 1).
    x: f64,
}

impl LotteryConfig {
    /// Validates and builds a lottery: every `p_i` must be strictly positive
    /// and the vector must sum to 1 within [`PROB_SUM_TOL`]; `a ≥ 0`;
    /// `0 ≤ x < 1`.
    ///
    /// Zero-probability tickets are rejected here (several formulas divide
    /// by `p_i`); crowd vectors `q` may contain zeros, see
    /// [`CrowdStrategy::new`].
    pub fn new(p: Vec<f64>, a: f64, x: f64) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::invalid("p", "ticket count must be at least 1"));
        }
        if let Some(bad) = p.iter().find(|&&pi| !(pi > 0.0) || !pi.is_finite()) {
            return Err(Error::invalid(
                "p",
                format!("every ticket probability must be strictly positive, got {bad}"),
            ));
        }
        check_sums_to_one("p", &p)?;
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::invalid("a", format!("carryover must be ≥ 0, got {a}")));
        }
        if !(0.0..1.0).contains(&x) {
            return Err(Error::invalid("x", format!("take rate must lie in [0, 1), got {x}")));
        }
        Ok(Self { p, a, x })
    }

    /// Equiprobable lottery on `t` tickets: `p_i = 1/t` for all `i`.
    pub fn equiprobable(t: usize, a: f64, x: f64) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("t", "ticket count must be at least 1"));
        }
        Self::new(vec![1.0 / t as f64; t], a, x)
    }

    /// Ticket count `t`.
    pub fn t(&self) -> usize {
        self.p.len()
    }

    /// Winning-ticket probability vector.
    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// Carryover pool.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Take rate.
    pub fn x(&self) -> f64 {
        self.x
    }

    /// The cash jackpot `v = a + (s + c)(1 − x)` for syndicate stake `s` and
    /// crowd stake `c` (both in ticket units, both ≥ 0).
    pub fn jackpot(&self, s: f64, c: f64) -> f64 {
        debug_assert!(s >= 0.0 && c >= 0.0);
        self.a + (s + c) * (1.0 - self.x)
    }
}

/// The syndicate's stake plan: total stake `s` spread over tickets by a
/// weight vector `r`, so the stake on ticket `i` is `s·r_i`. Fractional
/// per-ticket stakes are first-class; nothing assumes integer tickets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyndicateStrategy {
    s: f64,
    r: Vec<f64>,
}

impl SyndicateStrategy {
    /// Validates and builds a strategy: `s ≥ 0`, weights nonnegative and
    /// summing to 1 within [`PROB_SUM_TOL`].
    pub fn new(s: f64, r: Vec<f64>) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::invalid("s", format!("total stake must be ≥ 0, got {s}")));
        }
        if r.is_empty() {
            return Err(Error::invalid("r", "weight vector must be nonempty"));
        }
        if let Some(bad) = r.iter().find(|&&ri| !(ri >= 0.0) || !ri.is_finite()) {
            return Err(Error::invalid(
                "r",
                format!("weights must be nonnegative, got {bad}"),
            ));
        }
        check_sums_to_one("r", &r)?;
        Ok(Self { s, r })
    }

    /// The trump-ticket plan on `t` tickets: stake `t`, one ticket each.
    pub fn trump(t: usize) -> Result<Self> {
        Self::new(t as f64, uniform_support(t, t)?)
    }

    /// Stake `s` spread evenly over the first `s` of `t` tickets
    /// (`s` whole tickets, one each). See [`uniform_support`].
    pub fn spread(s: usize, t: usize) -> Result<Self> {
        Self::new(s as f64, uniform_support(s, t)?)
    }

    /// Total stake.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Weight vector.
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// Stake on ticket `i`: `s·r_i`.
    pub fn stake_on(&self, i: usize) -> f64 {
        self.s * self.r[i]
    }
}

/// Optional crowd coordination: `g` groups each buying `l` distinct tickets,
/// chosen uniformly at random without replacement, with `g·l = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    /// Number of groups.
    pub g: usize,
    /// Distinct tickets per group.
    pub l: usize,
}

/// The crowd: `c` independent bettors each buying one ticket sampled from
/// `q` (with replacement across bettors), optionally organized into small
/// coordinating groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrowdStrategy {
    c: usize,
    q: Vec<f64>,
    groups: Option<GroupStructure>,
}

impl CrowdStrategy {
    /// Validates and builds an ungrouped crowd: `q_i ≥ 0` (zeros allowed —
    /// the binomial ticket-count marginal degenerates cleanly) and
    /// `Σ q_i = 1` within [`PROB_SUM_TOL`].
    pub fn new(c: usize, q: Vec<f64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::invalid("q", "selection vector must be nonempty"));
        }
        if let Some(bad) = q.iter().find(|&&qi| !(qi >= 0.0) || !qi.is_finite()) {
            return Err(Error::invalid(
                "q",
                format!("selection probabilities must be nonnegative, got {bad}"),
            ));
        }
        check_sums_to_one("q", &q)?;
        Ok(Self { c, q, groups: None })
    }

    /// Uniform ungrouped crowd of `c` bettors over `t` tickets.
    pub fn uniform(c: usize, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("q", "selection vector must be nonempty"));
        }
        Self::new(c, vec![1.0 / t as f64; t])
    }

    /// Crowd of `g` groups, each drawing `l` distinct tickets uniformly
    /// without replacement. Requires `g·l = c` and `1 ≤ l ≤ t`; the crowd
    /// size is `c = g·l` and `q` records the uniform per-ticket marginal.
    pub fn grouped(g: usize, l: usize, t: usize) -> Result<Self> {
        if l < 1 || l > t {
            return Err(Error::invalid(
                "groups",
                format!("tickets per group must satisfy 1 ≤ l ≤ t, got l = {l}, t = {t}"),
            ));
        }
        let mut crowd = Self::uniform(g * l, t)?;
        crowd.groups = Some(GroupStructure { g, l });
        Ok(crowd)
    }

    /// Crowd size (number of one-ticket bets).
    pub fn c(&self) -> usize {
        self.c
    }

    /// Selection probability vector.
    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// Group structure, if the crowd is organized into coordinating groups.
    pub fn groups(&self) -> Option<GroupStructure> {
        self.groups
    }
}

/// How an [`ExpectationReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Exact binomial triple sum.
    Exact,
    /// Closed-form equiprobable expression.
    ClosedForm,
    /// Large-stake limit.
    Asymptotic,
    /// Seeded Monte Carlo.
    Simulated,
    /// Exhaustive enumeration of crowd configurations.
    Enumerated,
}

/// Expected-value summary for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    /// Cash jackpot `v = a + (s + c)(1 − x)`.
    pub jackpot: f64,
    /// Syndicate expected winnings `E[W]`.
    pub expected_win: f64,
    /// Expected gain `E[G] = E[W] − s`.
    pub expected_gain: f64,
    /// Expected return `E[R] = E[G]/s`; `None` when `s = 0` (undefined).
    pub expected_return: Option<f64>,
    /// Crowd-side expected return `(v·E[K_D/(s_D+K_D)] − c)/c`; `None` when
    /// the crowd is empty.
    pub crowd_expected_return: Option<f64>,
    /// Probability that the drawing produces no winner at all (the jackpot
    /// rolls over); `None` for routes that do not compute it.
    pub carryover_probability: Option<f64>,
    /// Computation route that produced the numbers.
    pub method: Method,
}

impl ExpectationReport {
    /// Assembles a report from the jackpot, expected win, and stakes,
    /// deriving gain and return (return is `None` when `s = 0`).
    pub(crate) fn from_win(
        jackpot: f64,
        expected_win: f64,
        s: f64,
        crowd_expected_return: Option<f64>,
        carryover_probability: Option<f64>,
        method: Method,
    ) -> Self {
        let expected_gain = expected_win - s;
        let expected_return = (s > 0.0).then(|| expected_gain / s);
        Self {
            jackpot,
            expected_win,
            expected_gain,
            expected_return,
            crowd_expected_return,
            carryover_probability,
            method,
        }
    }
}

/// The weight vector `e_s` on `t` tickets: weight `1/s` on tickets `1..=s`,
/// zero elsewhere. `s = t` yields the uniform vector `e_t`.
///
/// Errors when `s < 1` or `s > t`.
pub fn uniform_support(s: usize, t: usize) -> Result<Vec<f64>> {
    if s < 1 || s > t {
        return Err(Error::domain(
            "uniform_support",
            format!("support size must satisfy 1 ≤ s ≤ t, got s = {s}, t = {t}"),
        ));
    }
    let mut r = vec![0.0; t];
    let w = 1.0 / s as f64;
    r[..s].fill(w);
    Ok(r)
}

/// Converts a fractional weight vector into integer per-ticket stakes summing
/// exactly to `s`, by floor-then-largest-remainder; remainder ties break
/// toward the lowest ticket index.
///
/// Useful when a fractional optimum (e.g. proportional stakes `s·p_i`) must
/// be placed as whole tickets.
pub fn integralize(r: &[f64], s: u64) -> Vec<u64> {
    let mut stakes: Vec<u64> = Vec::with_capacity(r.len());
    let mut remainders: Vec<(usize, f64)> = Vec::with_capacity(r.len());
    let mut allocated: u64 = 0;
    for (i, &ri) in r.iter().enumerate() {
        let exact = ri * s as f64;
        let floor = exact.floor();
        stakes.push(floor as u64);
        allocated += floor as u64;
        remainders.push((i, exact - floor));
    }
    // Distribute the shortfall to the largest remainders, lowest index first
    // on ties. The sort is stable, so sorting by descending remainder alone
    // preserves index order within equal remainders.
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let shortfall = s - allocated.min(s);
    for &(i, _) in remainders.iter().take(shortfall as usize) {
        stakes[i] += 1;
    }
    stakes
}

//! Closed forms for the equiprobable lottery: the placement-averaged win
//! formula, uniform-crowd returns, breakeven stake sizes, the per-`k`
//! contribution table, coordinated-group corrections, whole-multiple
//! strategies, and two legacy back-of-envelope formulas.
//!
//! Everything here assumes `p = e_t` (each of the `t` tickets equally likely)
//! and zero take unless a formula says otherwise; the general-take exact
//! engine lives in [`crate::exact`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binom_pmf_raw, pow1m, stirlerr, Kahan, HALF_LN_TWO_PI};

/// Breakeven analysis of the `s`-distinct-ticket strategy against a uniform
/// crowd: where expected gain bottoms out and where it turns positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakevenReport {
    /// `(1 − 1/t)^{c+1}` — the chance no crowd ticket lands on a fixed line.
    pub y: f64,
    /// Stake size minimizing expected gain: `s* = (1 + c·y) / (2(1 − y))`.
    pub s_star: f64,
    /// The minimum expected gain `g(s*) = −¼(1+cy)²/((1−y)(1+c))`, ≤ 0.
    pub g_min: f64,
    /// The real breakeven stake `s₀ = 2·s*` where the gain parabola crosses 0.
    pub s_zero: f64,
    /// Smallest integer stake with strictly positive expected gain, found by
    /// evaluating the gain directly rather than rounding `s_zero`.
    pub first_profitable_integer: u64,
}

/// Coordinated-group correction to the uniform-crowd win.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupStructureReport {
    /// Approximate expected win `((c+s)·s/(c+l))(1 − e^{−(c+l)/t})` when the
    /// crowd consists of `g` groups each holding `l` distinct tickets.
    pub adjusted_win: f64,
    /// Ratio of the grouped win to the ungrouped (`l = 1`) baseline.
    pub ratio_to_ungrouped: f64,
}

/// One row of the per-`k` payoff/contribution table.
///
/// `k` is the number of crowd tickets sharing the winning line. The payoff
/// columns are the jackpot share `v/(1+k)` for the full-coverage strategy
/// (`s = t`, jackpot `t + c`) and the single-ticket strategy (`s = 1`,
/// jackpot `1 + c`); contributions weight the payoff by the probability of
/// the row — including the `1/t` chance of holding the winner when `s = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub k: u64,
    pub prob: f64,
    pub payoff_s_t: f64,
    pub contrib_s_t: f64,
    pub payoff_s_1: f64,
    pub contrib_s_1: f64,
}

/// Which pmf generates the `prob` column of [`table1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PmfMode {
    /// The exact crowd-count law `Bin(c, 1/t)`.
    Binomial,
    /// The Poisson law with mean `μ = c/t` — what the classic printed table
    /// uses; agrees with the binomial to 3 decimal places at `t = c = 1000`.
    Poisson,
}

fn require(cond: bool, field: &'static str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(field, reason.to_string()))
    }
}

/// Placement-averaged expected win of an `s`-distinct-ticket syndicate in an
/// equiprobable `t`-ticket lottery with zero take:
///
/// ```txt
/// E[W] = ((c+s)/(c+1)) · (s/t) · (1/t) · Σ_i (1/q_i)(1 − (1−q_i)^{c+1})
/// ```
///
/// The inner sum runs over all `t` tickets although the syndicate holds only
/// `s` of them: the formula is the expectation over a uniformly random
/// placement of the `s`-ticket support. For `q = e_t` every placement is
/// equivalent and the value is exact per placement; for non-uniform `q` it is
/// the placement average, not a per-placement value.
///
/// `s = 0` returns 0. Errors when any `q_i = 0` (the formula divides by it).
pub fn placement_averaged_win(t: u64, c: u64, s: u64, q: &[f64]) -> Result<f64> {
    require(t >= 1, "t", "must be at least 1")?;
    require(s <= t, "s", "must satisfy 0 ≤ s ≤ t")?;
    require(
        q.len() == t as usize,
        "q",
        &format!("selection vector has length {}, expected t = {t}", q.len()),
    )?;
    if s == 0 {
        return Ok(0.0);
    }
    let n = (c + 1) as f64;
    let mut sum = Kahan::default();
    for (i, &q_i) in q.iter().enumerate() {
        if !(q_i > 0.0 && q_i <= 1.0) {
            return Err(Error::domain(
                "placement_averaged_win",
                format!("q[{i}] = {q_i} outside (0, 1]; the formula divides by q_i"),
            ));
        }
        sum.add(-(n * (-q_i).ln_1p()).exp_m1() / q_i);
    }
    let tf = t as f64;
    let sf = s as f64;
    Ok((c as f64 + sf) / n * (sf / tf) * sum.value() / tf)
}

/// Expected return of the `s`-distinct-ticket syndicate against a uniform
/// crowd of `c` bettors:
///
/// ```txt
/// E[R] = ((c+s)/(c+1))(1 − (1−1/t)^{c+1}) − 1
/// ```
///
/// Affine and strictly increasing in `s`; positive at `s = t` for every
/// `t ≥ 2`, `c ≥ 2`.
pub fn uniform_return(t: u64, c: u64, s: u64) -> Result<f64> {
    require(t >= 2, "t", "must be at least 2")?;
    require(c >= 2, "c", "must be at least 2")?;
    require(s >= 1 && s <= t, "s", "must satisfy 1 ≤ s ≤ t")?;
    Ok(uniform_return_raw(t as f64, c as f64, s as f64))
}

fn uniform_return_raw(t: f64, c: f64, s: f64) -> f64 {
    let one_minus_y = -((c + 1.0) * (-1.0 / t).ln_1p()).exp_m1();
    (c + s) / (c + 1.0) * one_minus_y - 1.0
}

/// Expected gain `s · E[R]` of the `s`-distinct-ticket strategy.
fn uniform_gain_raw(t: f64, c: f64, s: f64) -> f64 {
    s * uniform_return_raw(t, c, s)
}

/// Breakeven analysis for the equiprobable lottery: the gain of the
/// `s`-distinct-ticket strategy is a parabola in `s` with roots at 0 and
/// `s₀ = 2s*`; this computes the vertex, the roots, and the first integer
/// stake in the profitable region.
pub fn breakeven(t: u64, c: u64) -> Result<BreakevenReport> {
    require(t >= 2, "t", "must be at least 2")?;
    require(c >= 2, "c", "must be at least 2")?;
    let (tf, cf) = (t as f64, c as f64);
    let y = pow1m(1.0 / tf, cf + 1.0);
    let one_minus_y = -((cf + 1.0) * (-1.0 / tf).ln_1p()).exp_m1();
    let s_star = (1.0 + cf * y) / (2.0 * one_minus_y);
    let g_min = -0.25 * (1.0 + cf * y).powi(2) / (one_minus_y * (1.0 + cf));
    let s_zero = 2.0 * s_star;
    // Find the first profitable integer by direct evaluation near s₀ — the
    // gain is negative on (0, s₀) and increasing beyond s*, so scanning
    // upward from just below s₀ cannot stop early or late.
    let mut s = (s_zero.floor() as u64).saturating_sub(2).max(1);
    while uniform_gain_raw(tf, cf, s as f64) <= 0.0 {
        s += 1;
    }
    Ok(BreakevenReport {
        y,
        s_star,
        g_min,
        s_zero,
        first_profitable_integer: s,
    })
}

/// Poisson pmf `e^{−μ} μ^k / k!`, evaluated in log space so large `μ` and
/// `k` do not underflow intermediate factors.
fn poisson_pmf(mu: f64, k: u64) -> f64 {
    if k == 0 {
        return (-mu).exp();
    }
    let kf = k as f64;
    let ln_k_fact = stirlerr(kf) + (kf + 0.5) * kf.ln() - kf + HALF_LN_TWO_PI;
    (-mu + kf * mu.ln() - ln_k_fact).exp()
}

/// Per-`k` payoff and contribution rows for the two bracketing strategies
/// `s = t` (own every line) and `s = 1` (one ticket), with `k` crowd tickets
/// on the winning line, `k = 0..=k_max`.
///
/// `Poisson` mode reproduces the classic printed table (μ = c/t);
/// `Binomial` mode uses the exact crowd-count law. Requires `k_max ≤ c`.
pub fn table1(t: u64, c: u64, k_max: u64, pmf_mode: PmfMode) -> Result<Vec<Table1Row>> {
    require(t >= 1, "t", "must be at least 1")?;
    require(k_max <= c, "k_max", "must not exceed c")?;
    let (tf, cf) = (t as f64, c as f64);
    let v_full = tf + cf;
    let v_single = 1.0 + cf;
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let prob = match pmf_mode {
            PmfMode::Binomial => binom_pmf_raw(c, 1.0 / tf, k),
            PmfMode::Poisson => poisson_pmf(cf / tf, k),
        };
        let share = 1.0 / (1.0 + k as f64);
        let payoff_s_t = v_full * share;
        let payoff_s_1 = v_single * share;
        rows.push(Table1Row {
            k,
            prob,
            payoff_s_t,
            contrib_s_t: prob * payoff_s_t,
            payoff_s_1,
            contrib_s_1: prob * payoff_s_1 / tf,
        });
    }
    Ok(rows)
}

/// Win correction when the crowd coordinates into `g` groups of `l` distinct
/// tickets each (`g·l = c`):
///
/// ```txt
/// E_g[W] ≈ ((c+s)·s/(c+l)) (1 − e^{−(c+l)/t})
/// ratio  = ((c+1)/(c+l)) · (1 − e^{−(c+l)/t}) / (1 − e^{−(c+1)/t})
/// ```
///
/// The ratio is very close to 1 whenever `l ≪ min(c, t)`; it degrades
/// visibly when `l` is a sizable fraction of either (the `l = 500` case
/// below drops to ~0.82).
pub fn group_adjusted_win(t: u64, c: u64, s: u64, g: u64, l: u64) -> Result<GroupStructureReport> {
    require(t >= 1, "t", "must be at least 1")?;
    require(l >= 1 && l <= t, "l", "must satisfy 1 ≤ l ≤ t")?;
    require(
        g * l == c,
        "g",
        &format!("groups must tile the crowd: g·l = {} but c = {c}", g * l),
    )?;
    let (tf, cf, sf, lf) = (t as f64, c as f64, s as f64, l as f64);
    let grouped_kernel = -(-(cf + lf) / tf).exp_m1();
    let baseline_kernel = -(-(cf + 1.0) / tf).exp_m1();
    Ok(GroupStructureReport {
        adjusted_win: (cf + sf) * sf / (cf + lf) * grouped_kernel,
        ratio_to_ungrouped: (cf + 1.0) / (cf + lf) * grouped_kernel / baseline_kernel,
    })
}

/// Exact expected gain when the syndicate stakes `n` on **every** ticket and
/// the crowd of `c` picks uniformly:
///
/// ```txt
/// g(n) = (nt + c) · E[n/(n+K)] − nt,   K ~ Bin(c, 1/t)
/// ```
///
/// Strictly positive for every `n ≥ 1` when `c ≥ 2` (the crowd's expected
/// loss funds it); `c = 0` gives exactly 0 — the syndicate splits its own
/// money with itself.
pub fn multiples_gain(n: u64, t: u64, c: u64) -> Result<f64> {
    require(n >= 1, "n", "must be at least 1")?;
    require(t >= 1, "t", "must be at least 1")?;
    let (nf, tf, cf) = (n as f64, t as f64, c as f64);
    let mut kernel = Kahan::default();
    for k in 0..=c {
        kernel.add(binom_pmf_raw(c, 1.0 / tf, k) * nf / (nf + k as f64));
    }
    Ok((nf * tf + cf) * kernel.value() - nf * tf)
}

/// The gain-optimal split of an integer budget `s` across `t` equiprobable
/// tickets: `⌊s/t⌋` on every ticket plus one extra on the first `s mod t`
/// tickets. Any choice of which tickets get the extra is payoff-equivalent;
/// lowest-index is used for determinism.
pub fn optimal_budget_allocation(s: u64, t: u64) -> Result<Vec<u64>> {
    require(s >= 1, "s", "must be at least 1")?;
    require(t >= 1, "t", "must be at least 1")?;
    let base = s / t;
    let extra = (s % t) as usize;
    Ok((0..t as usize)
        .map(|i| base + u64::from(i < extra))
        .collect())
}

/// Legacy rule of thumb: expected return of an unpopular-number ticket as
/// `base × Π F_i`, where each `F_i > 1` marks a number the crowd avoids and
/// `base` is the post-take payback (0.45 when `None`).
pub fn unpopular_factor_return(factors: &[f64], base: Option<f64>) -> Result<f64> {
    let base = base.unwrap_or(0.45);
    require(
        base > 0.0 && base.is_finite(),
        "base",
        "must be positive and finite",
    )?;
    let mut product = base;
    for (i, &f) in factors.iter().enumerate() {
        if !(f > 0.0 && f.is_finite()) {
            return Err(Error::invalid(
                "factors",
                format!("factor[{i}] = {f} must be positive and finite"),
            ));
        }
        product *= f;
    }
    Ok(product)
}

/// Legacy Poisson-style estimate of a syndicate's expected value:
///
/// ```txt
/// (W/N) · [R + k·cost·(W+N)] · (1 − e^{−p·N})
/// ```
///
/// with `W` syndicate tickets, `N` crowd tickets, rollover `R`, pool
/// fraction `k`, ticket cost `cost`, and per-ticket win probability `p`.
/// The exponent is `−p·N`; the growing-exponent variant sometimes quoted
/// diverges and contradicts the formula's own description as a Poisson
/// approximation. With `R = 0`, `k = cost = 1`, `W = t` it lands within 1%
/// of the exact full-coverage win.
pub fn matheson_expected_value(
    w: f64,
    n: f64,
    r: f64,
    k_frac: f64,
    cost: f64,
    p_win: f64,
) -> Result<f64> {
    require(n >= 1.0, "n", "must be at least 1")?;
    require(w >= 0.0, "w", "must be nonnegative")?;
    Ok(w / n * (r + k_frac * cost * (w + n)) * -(-p_win * n).exp_m1())
}

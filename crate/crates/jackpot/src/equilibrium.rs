//! Game-theoretic machinery: projected-gradient minimization on the
//! probability simplex, the share-kernel convexity profile, large-stake
//! asymptotic returns and best responses, the winning condition, risk-profiled
//! crowds, and the equiprobable-lottery optimality check.
//!
//! The optimizer is deliberately generic: callers hand it a value-and-gradient
//! closure and a start point, and get back an [`OptimizerReport`] whose
//! `converged` flag is honest — a run that exhausts its iteration budget says
//! so instead of returning a silently wrong argmin.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::expected_win_exact;
use crate::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy, PROB_SUM_TOL};
use crate::numeric::{pow1m, Kahan};

/// Outcome of a simplex-constrained minimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerReport {
    /// The final iterate; on the simplex within 1e-12.
    pub argmin_vector: Vec<f64>,
    /// Lagrange-multiplier estimate: the common gradient value the
    /// first-order conditions equalize across the support.
    pub multiplier: f64,
    /// Maximum first-order-condition spread across coordinates (gradient
    /// spread over the support, plus any complementarity violation at zeros).
    pub residual: f64,
    /// Outer iterations executed.
    pub iterations: u64,
    /// True iff `residual ≤ tolerance` was reached within the budget.
    pub converged: bool,
}

/// Tuning for [`simplex_minimize`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// FOC-residual target; the solver stops as soon as it is met.
    pub tolerance: f64,
    /// Outer-iteration budget; exhausting it yields `converged = false`.
    pub max_iterations: u64,
    /// Starting trial step for the backtracking line search.
    pub initial_step: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: 1e-10,
            max_iterations: 100_000,
            initial_step: 1.0,
        }
    }
}

/// Euclidean projection of `v` onto the probability simplex
/// `{x : x_i ≥ 0, Σx_i = 1}`.
///
/// Standard threshold algorithm: sort descending, find the largest prefix
/// whose shifted values stay positive, clip the rest to zero. Deterministic
/// for tied inputs (the sort is stable and the threshold depends only on
/// values).
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut prefix = 0.0;
    let mut tau = 0.0;
    let mut rho = 0;
    for (j, &u) in sorted.iter().enumerate() {
        prefix += u;
        let candidate = (prefix - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            tau = candidate;
            rho = j + 1;
        }
    }
    debug_assert!(rho >= 1);
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

/// First-order conditions at `q` with gradient `g`: the multiplier estimate
/// (mean gradient over the support) and the residual (gradient spread over
/// the support, plus `max(0, γ − g_i)` for clipped coordinates, which the
/// KKT conditions require to satisfy `g_i ≥ γ`).
fn foc(q: &[f64], g: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut n = 0u32;
    for (&qi, &gi) in q.iter().zip(g) {
        if qi > 0.0 {
            lo = lo.min(gi);
            hi = hi.max(gi);
            sum += gi;
            n += 1;
        }
    }
    let gamma = sum / f64::from(n.max(1));
    let mut residual = if n > 0 { hi - lo } else { 0.0 };
    for (&qi, &gi) in q.iter().zip(g) {
        if qi == 0.0 {
            residual = residual.max(gamma - gi);
        }
    }
    (gamma, residual.max(0.0))
}

/// Minimize a smooth convex objective over the probability simplex by
/// projected gradient with a backtracking (Armijo) line search.
///
/// `objective` returns the value and gradient at a simplex point; `start`
/// must lie on the simplex. Two acceptance rules drive the search: the
/// classic sufficient-decrease test, and — once objective differences sink
/// below floating-point noise, which happens while the iterate is still
/// ~1e-8 from the argmin — a strict decrease of the FOC residual, which
/// stays measurable down to ~1e-15 because it compares gradient components
/// rather than nearly-equal objective values.
pub fn simplex_minimize<F>(objective: F, start: &[f64], opts: &SolverOptions) -> OptimizerReport
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    const SIGMA: f64 = 1e-4;
    const MIN_STEP: f64 = 1e-18;
    let mut q = start.to_vec();
    let (mut value, mut grad) = objective(&q);
    let mut step = opts.initial_step;
    let mut iterations = 0u64;
    let mut converged = false;
    while iterations < opts.max_iterations {
        let (_, residual) = foc(&q, &grad);
        if residual <= opts.tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let noise_band = 32.0 * f64::EPSILON * (1.0 + value.abs());
        let mut accepted = false;
        while step >= MIN_STEP {
            let trial: Vec<f64> = q.iter().zip(&grad).map(|(&x, &g)| x - step * g).collect();
            let candidate = project_to_simplex(&trial);
            let dist2: f64 = candidate
                .iter()
                .zip(&q)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            if dist2 == 0.0 {
                break;
            }
            let (cand_value, cand_grad) = objective(&candidate);
            let (_, cand_residual) = foc(&candidate, &cand_grad);
            // The sufficient-decrease test must clear the rounding noise of
            // the objective, or ulp-level jitter near the optimum can accept
            // steps that wreck the FOC residual and cycle forever.
            let armijo = cand_value <= value - (SIGMA / step * dist2).max(noise_band);
            let foc_progress =
                cand_value <= value + noise_band && cand_residual <= residual * (1.0 - 1e-3);
            if armijo || foc_progress {
                q = candidate;
                value = cand_value;
                grad = cand_grad;
                step = (step * 2.0).min(1e6);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let (gamma, residual) = foc(&q, &grad);
    if residual <= opts.tolerance {
        converged = true;
    }
    OptimizerReport {
        argmin_vector: q,
        multiplier: gamma,
        residual,
        iterations,
        converged,
    }
}

/// Certificate that `point` is a local minimum against coordinate
/// perturbations: every `±delta` single-coordinate bump, re-projected onto
/// the simplex, must raise the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationCertificate {
    /// True iff every effective perturbation strictly worsened the objective.
    pub all_worse: bool,
    /// Smallest observed objective increase (0 when no perturbation moved
    /// the point, e.g. on a one-point simplex).
    pub min_margin: f64,
}

/// Check all `2t` single-coordinate `±delta` perturbations of `point`
/// (re-projected onto the simplex; no-ops are skipped) against `objective`.
pub fn perturbation_certificate<F>(objective: F, point: &[f64], delta: f64) -> PerturbationCertificate
where
    F: Fn(&[f64]) -> f64,
{
    let base = objective(point);
    let mut all_worse = true;
    let mut min_margin = f64::INFINITY;
    for i in 0..point.len() {
        for sign in [1.0, -1.0] {
            let mut v = point.to_vec();
            v[i] += sign * delta;
            let moved = project_to_simplex(&v);
            if moved
                .iter()
                .zip(point)
                .all(|(&a, &b)| (a - b).abs() <= 1e-15)
            {
                continue;
            }
            let margin = objective(&moved) - base;
            min_margin = min_margin.min(margin);
            if margin <= 0.0 {
                all_worse = false;
            }
        }
    }
    if !min_margin.is_finite() {
        min_margin = 0.0;
    }
    PerturbationCertificate {
        all_worse,
        min_margin,
    }
}

/// Share kernel `f(q) = (1 − (1−q)^{c+1})/q` with endpoint limits
/// `f(0+) = c + 1`, `f(1) = 1`.
fn kernel_f(c: u64, q: f64) -> f64 {
    if q <= 0.0 {
        return (c + 1) as f64;
    }
    if q >= 1.0 {
        return 1.0;
    }
    let n = (c + 1) as f64;
    -(n * (-q).ln_1p()).exp_m1() / q
}

/// Derivative of the share kernel: `f'(q) = −P[Bin(c+1, q) ≥ 2]/q²`, with
/// limits `f'(0+) = −c(c+1)/2` and `f'(1) = −1`.
///
/// For `(c+1)q ≤ ½` the tail probability divided by `q²` is summed as a
/// positive-term series (no cancellation, no underflow at tiny `q`);
/// otherwise the two-term complement is safe because the tail is ≥ ~0.09.
fn kernel_f_prime(c: u64, q: f64) -> f64 {
    let n = c + 1;
    let nf = n as f64;
    if q <= 0.0 {
        return -(nf * (nf - 1.0) / 2.0);
    }
    if q >= 1.0 {
        return -1.0;
    }
    if nf * q <= 0.5 {
        let ratio_base = q / (1.0 - q);
        let mut term = nf * (nf - 1.0) / 2.0 * pow1m(q, nf - 2.0);
        let mut sum = term;
        let mut k = 2u64;
        while k < n && term > sum * 1e-17 {
            term *= (nf - k as f64) / (k as f64 + 1.0) * ratio_base;
            sum += term;
            k += 1;
        }
        -sum
    } else {
        let e0 = pow1m(q, nf);
        let e1 = nf * q * pow1m(q, nf - 1.0);
        -(1.0 - e0 - e1) / (q * q)
    }
}

/// The share kernel at one point, together with finite differences for
/// inspecting monotonicity and convexity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityKernel {
    /// `f(q)`, always in `(1, c+1)` on the open interval.
    pub value: f64,
    /// Forward difference `f(q+h) − f(q)`; negative (f strictly decreases).
    pub first_difference: f64,
    /// Central second difference `f(q+h) − 2f(q) + f(q−h)`; positive
    /// (f strictly convex).
    pub second_difference: f64,
    /// The stencil width used, `min(1e-4, q/2, (1−q)/2)`.
    pub h: f64,
}

/// Evaluate the convexity kernel `f(q) = q^{−1}(1 − (1−q)^{c+1})` and its
/// finite differences. Requires `0 < q < 1` and `c ≥ 2`.
pub fn convexity_kernel(q: f64, c: u64) -> Result<ConvexityKernel> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(
            "convexity_kernel",
            format!("q must lie in (0, 1), got {q}"),
        ));
    }
    if c < 2 {
        return Err(Error::invalid("c", "must be at least 2".to_string()));
    }
    let h = (q / 2.0).min((1.0 - q) / 2.0).min(1e-4);
    let value = kernel_f(c, q);
    let up = kernel_f(c, q + h);
    let down = kernel_f(c, q - h);
    Ok(ConvexityKernel {
        value,
        first_difference: up - value,
        second_difference: up - 2.0 * value + down,
        h,
    })
}

/// Minimize the syndicate's expected return over the crowd's selection
/// distribution `q` on the simplex, for an equiprobable `t`-ticket lottery,
/// an `s`-distinct-ticket syndicate, and a crowd of `c`.
///
/// The objective is the placement-averaged return
/// `((c+s)/((c+1)t²))·Σ_i f(q_i) − 1`; by symmetry and strict convexity of
/// `f` the minimizer is the uniform vector, which the report certifies via
/// its FOC residual.
pub fn minimize_return_over_crowd(t: u64, c: u64, s: u64) -> Result<OptimizerReport> {
    if t < 1 {
        return Err(Error::invalid("t", "must be at least 1".to_string()));
    }
    if c < 2 {
        return Err(Error::invalid("c", "must be at least 2".to_string()));
    }
    if s < 1 || s > t {
        return Err(Error::invalid("s", format!("must satisfy 1 ≤ s ≤ t, got {s}")));
    }
    let tf = t as f64;
    let scale = (c + s) as f64 / ((c + 1) as f64 * tf * tf);
    let objective = move |q: &[f64]| -> (f64, Vec<f64>) {
        let mut sum = Kahan::default();
        for &qi in q {
            sum.add(kernel_f(c, qi));
        }
        let grad = q.iter().map(|&qi| scale * kernel_f_prime(c, qi)).collect();
        (scale * sum.value() - 1.0, grad)
    };
    let start = vec![1.0 / tf; t as usize];
    Ok(simplex_minimize(objective, &start, &SolverOptions::default()))
}

/// Large-stake regime: the crowd-to-syndicate stake ratio `u = lim c/s`,
/// carryover per unit syndicate stake `a_rate = lim a/s`, and take `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConfig {
    pub u: f64,
    pub a_rate: f64,
    pub x: f64,
}

impl AsymptoticConfig {
    pub fn new(u: f64, a_rate: f64, x: f64) -> Result<Self> {
        if !(u >= 0.0 && u.is_finite()) {
            return Err(Error::invalid("u", format!("must be finite and ≥ 0, got {u}")));
        }
        if !(a_rate >= 0.0 && a_rate.is_finite()) {
            return Err(Error::invalid(
                "a_rate",
                format!("must be finite and ≥ 0, got {a_rate}"),
            ));
        }
        if !(0.0..1.0).contains(&x) {
            return Err(Error::invalid("x", format!("must lie in [0, 1), got {x}")));
        }
        Ok(AsymptoticConfig { u, a_rate, x })
    }

    /// The jackpot per unit of syndicate stake: `a_rate + (1−x)(1+u)`.
    pub fn rate(&self) -> f64 {
        self.a_rate + (1.0 - self.x) * (1.0 + self.u)
    }
}

/// Asymptotic per-unit-stake returns for both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReturns {
    /// `(a_rate + (1−x)(1+u))·Σ_i p_i r_i/(r_i + u q_i) − 1`.
    pub syndicate: f64,
    /// The crowd's per-unit return, defined so stake-weighted returns
    /// conserve the pool: `syndicate + u·crowd = rate − (1+u)`. `None` when
    /// `u = 0` (no crowd stake to normalize by).
    pub crowd: Option<f64>,
}

fn validate_prob_vector(name: &'static str, v: &[f64]) -> Result<()> {
    let mut sum = Kahan::default();
    for (i, &x) in v.iter().enumerate() {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::invalid(
                name,
                format!("entry {i} is {x}, must be finite and ≥ 0"),
            ));
        }
        sum.add(x);
    }
    let total = sum.value();
    if (total - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::invalid(
            name,
            format!("entries sum to {total:.17}, must be 1 within {PROB_SUM_TOL:e}"),
        ));
    }
    Ok(())
}

/// Limit returns when the syndicate's stake grows with the pool: the crowd
/// plays `q`, the syndicate spreads its stake in proportions `r`, and
/// `c/s → u`. Tickets with `p_i = 0` are ignored; a ticket with positive
/// win probability abandoned by both sides (`r_i = u·q_i = 0`) is a domain
/// error — its share is 0/0.
pub fn asymptotic_return(
    p: &[f64],
    r: &[f64],
    q: &[f64],
    cfg: &AsymptoticConfig,
) -> Result<AsymptoticReturns> {
    if r.len() != p.len() || q.len() != p.len() {
        return Err(Error::invalid(
            "r",
            format!(
                "vector lengths disagree: p has {}, r has {}, q has {}",
                p.len(),
                r.len(),
                q.len()
            ),
        ));
    }
    validate_prob_vector("p", p)?;
    validate_prob_vector("r", r)?;
    validate_prob_vector("q", q)?;
    let rate = cfg.rate();
    let mut syn = Kahan::default();
    let mut crowd = Kahan::default();
    for i in 0..p.len() {
        if p[i] == 0.0 {
            continue;
        }
        let denom = r[i] + cfg.u * q[i];
        if denom == 0.0 {
            return Err(Error::domain(
                "asymptotic_return",
                format!("ticket {i} has p > 0 but no stake from either side (r_i = u·q_i = 0)"),
            ));
        }
        syn.add(p[i] * r[i] / denom);
        crowd.add(p[i] * q[i] / denom);
    }
    Ok(AsymptoticReturns {
        syndicate: rate * syn.value() - 1.0,
        crowd: (cfg.u > 0.0).then(|| rate * crowd.value() - 1.0),
    })
}

/// Which player a best response is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BestResponseSide {
    /// The crowd picks `q` to minimize the syndicate's return against `r = p`.
    Crowd,
    /// The syndicate picks `r` to maximize its return against `q = p`.
    Syndicate,
}

/// Numerically solve one side's asymptotic best response by projected
/// gradient from the uniform start. Both solves must land on the
/// proportional vector `p`; together they certify the unique Nash
/// equilibrium `r = q = p`.
///
/// Requires `t ≥ 2`, strictly positive `p`, and `u > 0`.
pub fn asymptotic_best_response(
    p: &[f64],
    cfg: &AsymptoticConfig,
    side: BestResponseSide,
) -> Result<OptimizerReport> {
    if p.len() < 2 {
        return Err(Error::invalid("p", "need at least 2 tickets".to_string()));
    }
    validate_prob_vector("p", p)?;
    if p.iter().any(|&x| x == 0.0) {
        return Err(Error::invalid(
            "p",
            "all entries must be strictly positive".to_string(),
        ));
    }
    if cfg.u <= 0.0 {
        return Err(Error::invalid("u", "best responses need u > 0".to_string()));
    }
    let rate = cfg.rate();
    let u = cfg.u;
    let p_own: Vec<f64> = p.to_vec();
    let objective = move |v: &[f64]| -> (f64, Vec<f64>) {
        // Crowd: minimize rate·Σ p_i²/(p_i + u v_i) − 1 over q = v.
        // Syndicate: maximize rate·Σ p_i v_i/(v_i + u p_i) − 1 over r = v,
        // i.e. minimize its negation. Both gradients share the same form
        // −rate·u·p_i²/denom² with the side-specific denominator.
        let mut sum = Kahan::default();
        let mut grad = Vec::with_capacity(v.len());
        match side {
            BestResponseSide::Crowd => {
                for (&pi, &vi) in p_own.iter().zip(v) {
                    let denom = pi + u * vi;
                    sum.add(pi * pi / denom);
                    grad.push(-rate * u * pi * pi / (denom * denom));
                }
                (rate * sum.value() - 1.0, grad)
            }
            BestResponseSide::Syndicate => {
                for (&pi, &vi) in p_own.iter().zip(v) {
                    let denom = vi + u * pi;
                    sum.add(pi * vi / denom);
                    grad.push(-rate * u * pi * pi / (denom * denom));
                }
                (1.0 - rate * sum.value(), grad)
            }
        }
    };
    let start = vec![1.0 / p.len() as f64; p.len()];
    Ok(simplex_minimize(objective, &start, &SolverOptions::default()))
}

/// Existence bound for a profitable syndicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WinningCondition {
    /// True iff the bound is nonnegative — a winning strategy exists.
    pub holds: bool,
    /// `s·(a/(s+c) − x)`: a lower bound on the proportional-stake expected
    /// gain; the exact gain strictly exceeds it whenever `c ≥ 2`.
    pub bound: f64,
}

/// Evaluate the winning condition `a/(s+c) − x ≥ 0` and its gain bound.
/// Requires `s > 0` and `s + c > 0`.
pub fn winning_condition(a: f64, x: f64, s: f64, c: f64) -> Result<WinningCondition> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid("s", format!("must be finite and > 0, got {s}")));
    }
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::invalid("c", format!("must be finite and ≥ 0, got {c}")));
    }
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::invalid("a", format!("must be finite and ≥ 0, got {a}")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::invalid("x", format!("must lie in [0, 1), got {x}")));
    }
    let bound = s * (a / (s + c) - x);
    Ok(WinningCondition {
        holds: bound >= 0.0,
        bound,
    })
}

/// Whether rank multipliers tilt toward long shots or favorites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskKind {
    /// Overweights low-probability tickets: multipliers nondecreasing in
    /// rank, below 1 at the most likely ticket, above 1 at the least likely.
    RiskSeeking,
    /// The mirror image: favorites overweighted.
    RiskAverse,
}

/// Rank-indexed multipliers describing a systematically biased crowd:
/// `q_(i) = p_(i) · u_(i)` after ranking `p` in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskProfile {
    /// Multipliers by probability rank (rank 1 = most likely ticket).
    pub u_weights: Vec<f64>,
    pub kind: RiskKind,
}

impl RiskProfile {
    pub fn new(u_weights: Vec<f64>, kind: RiskKind) -> Self {
        RiskProfile { u_weights, kind }
    }

    /// Generate a random profile valid against `p`: multipliers of the form
    /// `1 ± λ·(w − w̄)` for ranked weights `w`, which satisfy the
    /// monotonicity and boundary clauses by construction and keep
    /// `Σ p_(i) u_(i) = 1` to machine precision. A convenience for
    /// experiments and property tests, not part of the core model.
    pub fn random(p: &[f64], kind: RiskKind, rng: &mut impl Rng) -> RiskProfile {
        let t = p.len();
        let mut ranked = p.to_vec();
        ranked.sort_by(|a, b| b.total_cmp(a));
        loop {
            let mut w: Vec<f64> = (0..t).map(|_| rng.gen::<f64>()).collect();
            w.sort_by(|a, b| a.total_cmp(b));
            let mean: f64 = ranked.iter().zip(&w).map(|(&pi, &wi)| pi * wi).sum();
            let d: Vec<f64> = w.iter().map(|&wi| wi - mean).collect();
            if !(d[0] < -1e-9 && d[t - 1] > 1e-9) {
                continue;
            }
            let cap = match kind {
                RiskKind::RiskSeeking => 1.0 / -d[0],
                RiskKind::RiskAverse => 1.0 / d[t - 1],
            };
            let lambda = cap * (0.2 + 0.6 * rng.gen::<f64>());
            let u_weights = d
                .iter()
                .map(|&di| match kind {
                    RiskKind::RiskSeeking => 1.0 + lambda * di,
                    RiskKind::RiskAverse => 1.0 - lambda * di,
                })
                .collect();
            return RiskProfile { u_weights, kind };
        }
    }
}

/// Apply a risk profile to a win distribution: rank `p` descending, multiply
/// by the rank-indexed weights, and map back to original ticket order.
///
/// The profile must already be consistent: monotonicity and boundary clauses
/// per its kind, and `Σ q = 1` within 1e-12 — there is no silent
/// renormalization. The all-ones (neutral) profile is accepted for either
/// kind and returns `q = p` exactly.
pub fn build_risk_profile(p: &[f64], profile: &RiskProfile) -> Result<Vec<f64>> {
    let t = p.len();
    validate_prob_vector("p", p)?;
    if p.iter().any(|&x| x == 0.0) {
        return Err(Error::invalid(
            "p",
            "all entries must be strictly positive".to_string(),
        ));
    }
    let u = &profile.u_weights;
    if u.len() != t {
        return Err(Error::invalid(
            "u_weights",
            format!("has length {}, expected t = {t}", u.len()),
        ));
    }
    for (i, &w) in u.iter().enumerate() {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(Error::invalid(
                "u_weights",
                format!("entry {i} is {w}, must be finite and ≥ 0"),
            ));
        }
    }
    let neutral = u.iter().all(|&w| w == 1.0);
    if !neutral {
        match profile.kind {
            RiskKind::RiskSeeking => {
                if u.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::invalid(
                        "u_weights",
                        "risk_seeking requires nondecreasing multipliers over ranks".to_string(),
                    ));
                }
                if !(u[0] < 1.0) {
                    return Err(Error::invalid(
                        "u_weights",
                        format!("risk_seeking requires u_(1) < 1, got {}", u[0]),
                    ));
                }
                if !(u[t - 1] > 1.0) {
                    return Err(Error::invalid(
                        "u_weights",
                        format!("risk_seeking requires u_(t) > 1, got {}", u[t - 1]),
                    ));
                }
            }
            RiskKind::RiskAverse => {
                if u.windows(2).any(|w| w[1] > w[0]) {
                    return Err(Error::invalid(
                        "u_weights",
                        "risk_averse requires nonincreasing multipliers over ranks".to_string(),
                    ));
                }
                if !(u[0] > 1.0) {
                    return Err(Error::invalid(
                        "u_weights",
                        format!("risk_averse requires u_(1) > 1, got {}", u[0]),
                    ));
                }
                if !(u[t - 1] < 1.0) {
                    return Err(Error::invalid(
                        "u_weights",
                        format!("risk_averse requires u_(t) < 1, got {}", u[t - 1]),
                    ));
                }
            }
        }
    }
    // Rank tickets by descending probability, stably, and pair rank i with
    // multiplier u_(i).
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by(|&i, &j| p[j].total_cmp(&p[i]));
    let mut q = vec![0.0; t];
    let mut sum = Kahan::default();
    for (rank, &ticket) in order.iter().enumerate() {
        q[ticket] = p[ticket] * u[rank];
        sum.add(q[ticket]);
    }
    let total = sum.value();
    if (total - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::invalid(
            "u_weights",
            format!(
                "induced q sums to {total:.17}, must be 1 within {PROB_SUM_TOL:e}; \
                 multipliers must be supplied consistent with p (no renormalization)"
            ),
        ));
    }
    Ok(q)
}

/// A strictly positive random point of the `t`-simplex (normalized
/// exponentials — the flat Dirichlet distribution).
pub fn random_simplex_point(t: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut e = Vec::with_capacity(t);
    for _ in 0..t {
        let x = loop {
            let u: f64 = rng.gen();
            if u > 0.0 {
                break -u.ln();
            }
        };
        e.push(x.max(f64::MIN_POSITIVE));
    }
    let mut sum = Kahan::default();
    for &x in &e {
        sum.add(x);
    }
    let total = sum.value();
    e.iter_mut().for_each(|x| *x /= total);
    e
}

/// Result of comparing the equiprobable lottery against sampled alternatives
/// when both players respond proportionally (`r = q = p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquiprobableCheck {
    /// Exact syndicate gain at `p = e_t`.
    pub baseline_gain: f64,
    /// Largest gain among the sampled non-uniform `p`.
    pub max_sample_gain: f64,
    /// Smallest gain among the samples.
    pub min_sample_gain: f64,
    /// Number of random simplex points evaluated.
    pub samples: u64,
    /// True iff no sample beat the baseline (within 1e-12 slack).
    pub baseline_is_max: bool,
}

/// Check that the equiprobable lottery maximizes the syndicate's exact gain
/// when the crowd plays its best response `q = p` and the syndicate stakes
/// proportionally `r = p` (fractional stakes): evaluate the gain at `p = e_t`
/// and at `sample_count` random simplex points drawn from `seed`.
///
/// Note the proportional-crowd form is essential: against a *fixed* uniform
/// crowd, non-uniform `p` can raise the syndicate's gain, so the claim is
/// only available with the crowd best-responding.
pub fn equiprobable_optimality_check(
    t: u64,
    c: u64,
    s: u64,
    sample_count: u64,
    seed: u64,
) -> Result<EquiprobableCheck> {
    use rand::SeedableRng;
    if t < 1 {
        return Err(Error::invalid("t", "must be at least 1".to_string()));
    }
    if c < 2 {
        return Err(Error::invalid("c", "must be at least 2".to_string()));
    }
    if s < 1 {
        return Err(Error::invalid("s", "must be at least 1".to_string()));
    }
    let gain_at = |p: Vec<f64>| -> Result<f64> {
        let config = LotteryConfig::new(p.clone(), 0.0, 0.0)?;
        let syn = SyndicateStrategy::new(s as f64, p.clone())?;
        let crowd = CrowdStrategy::new(c as usize, p)?;
        Ok(expected_win_exact(&config, &syn, &crowd)?.expected_gain)
    };
    let baseline_gain = gain_at(vec![1.0 / t as f64; t as usize])?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_sample_gain = f64::NEG_INFINITY;
    let mut min_sample_gain = f64::INFINITY;
    for _ in 0..sample_count {
        let p = random_simplex_point(t as usize, &mut rng);
        let g = gain_at(p)?;
        max_sample_gain = max_sample_gain.max(g);
        min_sample_gain = min_sample_gain.min(g);
    }
    if sample_count == 0 {
        max_sample_gain = baseline_gain;
        min_sample_gain = baseline_gain;
    }
    Ok(EquiprobableCheck {
        baseline_gain,
        max_sample_gain,
        min_sample_gain,
        samples: sample_count,
        baseline_is_max: max_sample_gain <= baseline_gain + 1e-12 * (1.0 + baseline_gain.abs()),
    })
}

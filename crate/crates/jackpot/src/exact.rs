//! Exact expectation engine: the binomial triple sum over winning ticket and
//! crowd counts, plus the share-factor kernels `E[1/(1+X)]`.
//!
//! The central quantity is the syndicate's expected winnings
//!
//! ```txt
//! E[W] = v · Σ_i p_i · Σ_k C(c,k) q_i^k (1−q_i)^{c−k} · s_i/(s_i + k)
//! ```
//!
//! where `s_i = s·r_i` is the (possibly fractional) stake on ticket `i` and
//! `k` counts crowd tickets on the winner. Payout shares use the convention
//! that an empty pot pays nothing: `0/(0+0) = 0`, implemented as an explicit
//! branch rather than left to floating point. All pmf values come from the
//! saddle-point kernel in [`crate::numeric`] and sums are compensated — the
//! `t·c` terms at `t = c = 1000` lose digits under naive accumulation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CrowdStrategy, ExpectationReport, LotteryConfig, Method, SyndicateStrategy};
use crate::numeric::{binom_pmf_raw, pow1m, Kahan};

/// Cap on `t·(c+1)` for the exact triple sum; larger requests are refused as
/// infeasible rather than silently truncated.
const MAX_EXACT_TERMS: u128 = 100_000_000;

/// Binomial pmf `P[X = k]`, `X ~ Bin(c, q)`.
///
/// Full rows sum to 1 within 1e-12 up to `c = 10^6`; see [`crate::numeric`]
/// for how. Errors when `k > c` or `q` is outside `[0, 1]`.
pub fn binom_pmf(c: u64, q: f64, k: u64) -> Result<f64> {
    if k > c {
        return Err(Error::domain(
            "binom_pmf",
            format!("k must satisfy 0 ≤ k ≤ c, got k = {k}, c = {c}"),
        ));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(
            "binom_pmf",
            format!("q must lie in [0, 1], got {q}"),
        ));
    }
    Ok(binom_pmf_raw(c, q, k))
}

/// Result of a share-factor evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShareKernelResult {
    /// The expectation `E[stake/(stake + K)]`, always in `[0, 1]`.
    pub value: f64,
    /// Series terms consumed; 0 when a closed form was used.
    pub terms_used: usize,
    /// Bound on truncation error; 0 for closed forms and full sums.
    pub max_term_error: f64,
}

/// The share factor `E[1/(1+X)]` for `X ~ Bin(c, q)`, by the closed form
///
/// ```txt
/// E[1/(1+X)] = (1 − (1−q)^{c+1}) / ((c+1) q)
/// ```
///
/// No summation is involved; the numerator is evaluated as
/// `−expm1((c+1)·ln1p(−q))` so small `q` loses nothing to cancellation.
///
/// Errors when `q = 0`: the closed form's `q → 0` limit is 1 but the formula
/// divides by `q`; callers with a degenerate crowd (`K ≡ 0`) should
/// special-case it rather than rely on a limit.
pub fn expected_share_factor(c: u64, q: f64) -> Result<ShareKernelResult> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::domain(
            "expected_share_factor",
            format!("q must lie in (0, 1], got {q}"),
        ));
    }
    let n = (c + 1) as f64;
    let value = -(n * (-q).ln_1p()).exp_m1() / (n * q);
    Ok(ShareKernelResult {
        value,
        terms_used: 0,
        max_term_error: 0.0,
    })
}

/// Which Poisson approximation of the share factor to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShareApproxMode {
    /// `(1 − e^{−(c+1)q}) / ((c+1)q)` — Poisson with mean `(c+1)q`.
    CPlusOne,
    /// `(1 − e^{−μ}) / μ` with `μ = c·q` — Poisson with the crowd mean.
    Mean,
}

/// A Poisson approximation of the share factor, with a validity flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShareApproximation {
    /// The approximate `E[1/(1+X)]`.
    pub value: f64,
    /// True when the inputs fall outside the regime where the Poisson
    /// replacement of the binomial is trustworthy (`c < 100` or `q > 0.1`).
    /// Advisory only — the value is still returned.
    pub regime_warning: bool,
}

/// Poisson approximations of [`expected_share_factor`], valid when the crowd
/// is large and each ticket rare (`c ≫ 1`, small `q`).
///
/// Requires `c ≥ 1` and `0 < q ≤ 1`.
pub fn poisson_share_approx(c: u64, q: f64, mode: ShareApproxMode) -> Result<ShareApproximation> {
    if c < 1 {
        return Err(Error::domain(
            "poisson_share_approx",
            "c must be at least 1".to_string(),
        ));
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::domain(
            "poisson_share_approx",
            format!("q must lie in (0, 1], got {q}"),
        ));
    }
    let m = match mode {
        ShareApproxMode::CPlusOne => (c + 1) as f64 * q,
        ShareApproxMode::Mean => c as f64 * q,
    };
    Ok(ShareApproximation {
        value: -(-m).exp_m1() / m,
        regime_warning: c < 100 || q > 0.1,
    })
}

/// The two inner expectations for one ticket: the syndicate's share factor
/// `E[s_i/(s_i+K)]` and the crowd's `E[K/(s_i+K)]`, `K ~ Bin(n, prob)`.
fn ticket_kernels(s_i: f64, n: u64, prob: f64) -> (f64, f64) {
    // Degenerate crowd marginal: K ≡ 0. The syndicate keeps the jackpot iff
    // it holds the ticket; the empty-pot convention pays nothing otherwise.
    if prob == 0.0 || n == 0 {
        return (if s_i > 0.0 { 1.0 } else { 0.0 }, 0.0);
    }
    if s_i == 0.0 {
        // The syndicate's share is 0/(0+k): zero for k ≥ 1 and zero at
        // k = 0 by the empty-pot convention. The crowd takes everything
        // whenever k ≥ 1, so its kernel is 1 − (1−q)^n, evaluated in log
        // space to keep small probabilities exact.
        let p_nonzero = -(n as f64 * (-prob).ln_1p()).exp_m1();
        return (0.0, p_nonzero);
    }
    let mut syn = Kahan::default();
    let mut crowd = Kahan::default();
    for k in 0..=n {
        let pmf = binom_pmf_raw(n, prob, k);
        let kf = k as f64;
        syn.add(pmf * s_i / (s_i + kf));
        if k > 0 {
            crowd.add(pmf * kf / (s_i + kf));
        }
    }
    (syn.value(), crowd.value())
}

/// Per-ticket crowd-count marginal: `(n, prob)` such that the number of
/// crowd tickets on ticket `i` is `Bin(n, prob)`. For an ungrouped crowd
/// this is `(c, q_i)`; for `g` groups of `l` uniformly chosen distinct
/// tickets each group covers ticket `i` with probability `l/t`
/// independently, so the count is exactly `Bin(g, l/t)`.
fn crowd_marginal(crowd: &CrowdStrategy, t: usize, i: usize) -> (u64, f64) {
    match crowd.groups() {
        Some(gs) => (gs.g as u64, gs.l as f64 / t as f64),
        None => (crowd.c() as u64, crowd.q()[i]),
    }
}

fn check_dims(config: &LotteryConfig, syn: &SyndicateStrategy, crowd: &CrowdStrategy) -> Result<()> {
    let t = config.t();
    if syn.r().len() != t {
        return Err(Error::invalid(
            "r",
            format!("weight vector has length {}, expected t = {t}", syn.r().len()),
        ));
    }
    if crowd.q().len() != t {
        return Err(Error::invalid(
            "q",
            format!("selection vector has length {}, expected t = {t}", crowd.q().len()),
        ));
    }
    let terms = t as u128 * (crowd.c() as u128 + 1);
    if terms > MAX_EXACT_TERMS {
        return Err(Error::Infeasible(format!(
            "exact evaluation needs t·(c+1) = {terms} kernel terms, cap is {MAX_EXACT_TERMS}"
        )));
    }
    Ok(())
}

/// Exact expected win/gain/return for the syndicate, and the crowd's return,
/// by the full binomial triple sum. Cost is `O(t·c)`.
///
/// `expected_return` is `None` when `s = 0` (return is undefined with no
/// stake); `crowd_expected_return` is `None` when the crowd is empty.
pub fn expected_win_exact(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
) -> Result<ExpectationReport> {
    check_dims(config, syn, crowd)?;
    let s = syn.s();
    let c = crowd.c() as f64;
    let v = config.jackpot(s, c);
    let mut syn_total = Kahan::default();
    let mut crowd_total = Kahan::default();
    let mut carryover = Kahan::default();
    for i in 0..config.t() {
        let p_i = config.p()[i];
        let (n, prob) = crowd_marginal(crowd, config.t(), i);
        let (syn_k, crowd_k) = ticket_kernels(syn.stake_on(i), n, prob);
        syn_total.add(p_i * syn_k);
        crowd_total.add(p_i * crowd_k);
        if syn.stake_on(i) == 0.0 {
            // No winner iff the syndicate skipped the drawn ticket and no
            // crowd bet landed on it: P[K_i = 0] = (1 − prob)^n.
            carryover.add(p_i * pow1m(prob, n as f64));
        }
    }
    let expected_win = v * syn_total.value();
    let crowd_return = (crowd.c() > 0).then(|| (v * crowd_total.value() - c) / c);
    Ok(ExpectationReport::from_win(
        v,
        expected_win,
        s,
        crowd_return,
        Some(carryover.value()),
        Method::Exact,
    ))
}

/// The crowd's exact expected return `(v·E[K_D/(s_D+K_D)] − c)/c`.
///
/// When the syndicate covers every ticket (`min_i s_i > 0`) the syndicate and
/// crowd winnings partition the jackpot exactly. Errors when `c = 0`.
pub fn crowd_expected_return(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
) -> Result<f64> {
    if crowd.c() == 0 {
        return Err(Error::domain(
            "crowd_expected_return",
            "crowd return is undefined for c = 0".to_string(),
        ));
    }
    let report = expected_win_exact(config, syn, crowd)?;
    Ok(report
        .crowd_expected_return
        .expect("crowd return present when c ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_support;

    fn t2c2s2() -> (LotteryConfig, SyndicateStrategy, CrowdStrategy) {
        (
            LotteryConfig::equiprobable(2, 0.0, 0.0).unwrap(),
            SyndicateStrategy::trump(2).unwrap(),
            CrowdStrategy::uniform(2, 2).unwrap(),
        )
    }

    #[test]
    fn pmf_simple_values_are_exact() {
        // The general saddle-point path is a-few-ulps accurate, not bitwise.
        assert!((binom_pmf(2, 0.5, 1).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(binom_pmf(0, 0.3, 0).unwrap(), 1.0);
        assert_eq!(binom_pmf(5, 0.0, 0).unwrap(), 1.0);
        assert_eq!(binom_pmf(5, 0.0, 3).unwrap(), 0.0);
        assert_eq!(binom_pmf(5, 1.0, 5).unwrap(), 1.0);
        assert_eq!(binom_pmf(5, 1.0, 4).unwrap(), 0.0);
    }

    #[test]
    fn pmf_matches_iterated_multiplication_at_k_zero() {
        // 0.999^1000 by literal repeated multiplication — an oracle sharing
        // no code with the log-space path.
        let mut oracle = 1.0f64;
        for _ in 0..1000 {
            oracle *= 0.999;
        }
        let got = binom_pmf(1000, 0.001, 0).unwrap();
        assert!((got - oracle).abs() / oracle < 1e-12, "got {got}, oracle {oracle}");
        assert!((got - 0.36769542477096404).abs() < 1e-15);
    }

    #[test]
    fn pmf_matches_high_precision_references() {
        let cases = [
            (1000u64, 0.001, 2u64, 0.18403174412961163),
            (17, 0.3, 5, 0.20812922103548484),
            (1_000_000, 0.001, 1000, 0.012620923387767838),
        ];
        for (c, q, k, want) in cases {
            let got = binom_pmf(c, q, k).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-13,
                "pmf({c},{q},{k}) = {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn pmf_rows_sum_to_one_up_to_a_million_tickets() {
        for &c in &[0u64, 1, 2, 17, 1000, 100_000, 1_000_000] {
            for &q in &[0.001, 0.3, 0.5, 0.9] {
                let mut sum = Kahan::default();
                for k in 0..=c {
                    sum.add(binom_pmf_raw(c, q, k));
                }
                let total = sum.value();
                assert!(
                    (total - 1.0).abs() < 1e-12,
                    "row sum for c = {c}, q = {q} is {total:.17}"
                );
            }
        }
    }

    #[test]
    fn pmf_rejects_out_of_range_inputs() {
        assert!(binom_pmf(4, 0.5, 5).is_err());
        assert!(binom_pmf(4, -0.1, 2).is_err());
        assert!(binom_pmf(4, 1.1, 2).is_err());
    }

    #[test]
    fn share_factor_small_cases() {
        // c = 2, q = 1: X = 2 always, so E[1/(1+X)] = 1/3.
        let r = expected_share_factor(2, 1.0).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        // c = 2, q = 1/2: (1/4)·1 + (1/2)·(1/2) + (1/4)·(1/3) = 7/12.
        let r = expected_share_factor(2, 0.5).unwrap();
        assert!((r.value - 7.0 / 12.0).abs() < 1e-15);
        assert_eq!(r.terms_used, 0);
        assert_eq!(r.max_term_error, 0.0);
    }

    #[test]
    fn share_factor_worked_example() {
        // Reference: 1001-term series summed in 30-digit arithmetic.
        let r = expected_share_factor(1000, 0.001).unwrap();
        assert!((r.value - 0.63204023042338354).abs() < 1e-15);
    }

    #[test]
    fn share_factor_rejects_zero_q() {
        assert!(expected_share_factor(5, 0.0).is_err());
        assert!(expected_share_factor(5, -0.2).is_err());
        assert!(expected_share_factor(5, 1.5).is_err());
    }

    #[test]
    fn poisson_approx_worked_example() {
        let a = poisson_share_approx(1000, 0.001, ShareApproxMode::CPlusOne).unwrap();
        assert!((a.value - 0.63185639799331314).abs() < 1e-15);
        assert!(!a.regime_warning);
        let a = poisson_share_approx(1000, 0.001, ShareApproxMode::Mean).unwrap();
        assert!((a.value - 0.63212055882855768).abs() < 1e-15);
    }

    #[test]
    fn poisson_approx_limit_and_warning() {
        // μ → 0: the factor tends to 1.
        let a = poisson_share_approx(100, 1e-12, ShareApproxMode::Mean).unwrap();
        assert!((a.value - 1.0).abs() < 1e-9);
        // Small crowd or common ticket: flagged.
        assert!(poisson_share_approx(50, 0.001, ShareApproxMode::Mean)
            .unwrap()
            .regime_warning);
        assert!(poisson_share_approx(1000, 0.5, ShareApproxMode::Mean)
            .unwrap()
            .regime_warning);
    }

    #[test]
    fn poisson_approx_tracks_exact_in_regime() {
        for &c in &[1000u64, 2000, 5000] {
            for &q in &[0.0005, 0.001, 0.005] {
                let exact = expected_share_factor(c, q).unwrap().value;
                for mode in [ShareApproxMode::CPlusOne, ShareApproxMode::Mean] {
                    let approx = poisson_share_approx(c, q, mode).unwrap();
                    assert!(
                        (approx.value - exact).abs() <= 1e-3,
                        "c={c} q={q} {mode:?}: |{} − {exact}| > 1e-3",
                        approx.value
                    );
                    assert!(!approx.regime_warning);
                }
            }
        }
    }

    #[test]
    fn two_ticket_lottery_matches_hand_enumeration() {
        let (cfg, syn, crowd) = t2c2s2();
        let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
        assert_eq!(rep.jackpot, 4.0);
        assert!((rep.expected_win - 7.0 / 3.0).abs() < 1e-14);
        assert!((rep.expected_gain - 1.0 / 3.0).abs() < 1e-14);
        assert!((rep.expected_return.unwrap() - 1.0 / 6.0).abs() < 1e-14);
        assert!((rep.crowd_expected_return.unwrap() + 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn trump_ticket_worked_example() {
        let cfg = LotteryConfig::equiprobable(1000, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::trump(1000).unwrap();
        let crowd = CrowdStrategy::uniform(1000, 1000).unwrap();
        let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
        assert!((rep.expected_return.unwrap() - 0.26408046084676707).abs() < 1e-12);
    }

    #[test]
    fn zero_stake_reports_undefined_return() {
        let cfg = LotteryConfig::equiprobable(2, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::new(0.0, vec![0.5, 0.5]).unwrap();
        let crowd = CrowdStrategy::uniform(0, 2).unwrap();
        let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
        assert_eq!(rep.expected_win, 0.0);
        assert_eq!(rep.expected_gain, 0.0);
        assert_eq!(rep.expected_return, None);
        assert_eq!(rep.crowd_expected_return, None);
    }

    #[test]
    fn crowd_return_with_clustered_crowd() {
        let cfg = LotteryConfig::equiprobable(2, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::trump(2).unwrap();
        let crowd = CrowdStrategy::new(2, vec![1.0, 0.0]).unwrap();
        let ret = crowd_expected_return(&cfg, &syn, &crowd).unwrap();
        assert!((ret + 1.0 / 3.0).abs() < 1e-14);
        // The syndicate side improves when the crowd clumps: 1/3 > 1/6.
        let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
        assert!((rep.expected_return.unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn crowd_return_requires_a_crowd() {
        let cfg = LotteryConfig::equiprobable(2, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::trump(2).unwrap();
        let crowd = CrowdStrategy::uniform(0, 2).unwrap();
        assert!(crowd_expected_return(&cfg, &syn, &crowd).is_err());
    }

    #[test]
    fn conservation_under_full_coverage() {
        // Syndicate win + crowd win = v whenever every ticket carries
        // syndicate money (no carryover possible).
        let cfg = LotteryConfig::new(vec![0.5, 0.3, 0.2], 7.0, 0.12).unwrap();
        let syn = SyndicateStrategy::new(5.0, vec![0.2, 0.5, 0.3]).unwrap();
        for q in [vec![1.0 / 3.0; 3], vec![0.6, 0.4, 0.0], vec![1.0, 0.0, 0.0]] {
            let crowd = CrowdStrategy::new(4, q).unwrap();
            let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
            let crowd_win = rep.crowd_expected_return.unwrap() * 4.0 + 4.0;
            assert!(
                (rep.expected_win + crowd_win - rep.jackpot).abs() < 1e-9,
                "coverage conservation broke for q = {:?}",
                crowd.q()
            );
        }
    }

    #[test]
    fn fractional_stakes_are_first_class() {
        let cfg = LotteryConfig::new(vec![0.7, 0.3], 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::new(2.0, vec![0.7, 0.3]).unwrap();
        let crowd = CrowdStrategy::new(2, vec![0.7, 0.3]).unwrap();
        let rep = expected_win_exact(&cfg, &syn, &crowd).unwrap();
        // Reference: 30-digit direct evaluation of the double sum.
        assert!((rep.expected_gain - 0.30486425339366516).abs() < 1e-14);
    }

    #[test]
    fn grouped_crowd_uses_binomial_group_marginal() {
        // g groups of l distinct tickets: coverage of any fixed ticket is
        // Bin(g, l/t). With l = 1 the marginal coincides with an ungrouped
        // uniform crowd of c = g bettors.
        let cfg = LotteryConfig::equiprobable(4, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::trump(4).unwrap();
        let grouped = CrowdStrategy::grouped(3, 1, 4).unwrap();
        let ungrouped = CrowdStrategy::uniform(3, 4).unwrap();
        let a = expected_win_exact(&cfg, &syn, &grouped).unwrap();
        let b = expected_win_exact(&cfg, &syn, &ungrouped).unwrap();
        assert!((a.expected_win - b.expected_win).abs() < 1e-12);
    }

    #[test]
    fn oversized_requests_are_refused() {
        let cfg = LotteryConfig::equiprobable(1000, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::trump(1000).unwrap();
        let crowd = CrowdStrategy::uniform(200_000, 1000).unwrap();
        match expected_win_exact(&cfg, &syn, &crowd) {
            Err(Error::Infeasible(_)) => {}
            other => panic!("expected a size refusal, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let cfg = LotteryConfig::equiprobable(3, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::new(2.0, uniform_support(2, 2).unwrap()).unwrap();
        let crowd = CrowdStrategy::uniform(2, 3).unwrap();
        assert!(expected_win_exact(&cfg, &syn, &crowd).is_err());
    }
}

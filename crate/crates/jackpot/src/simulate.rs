//! Independent verification oracles: seeded Monte Carlo simulation of
//! drawings, and exhaustive enumeration over every crowd configuration.
//!
//! Both oracles share nothing with the analytic engine beyond the payoff
//! rule itself — the simulator draws actual tickets and the enumerator sums
//! over raw configurations with product weights — so agreement with
//! [`expected_win_exact`](crate::exact::expected_win_exact) is real evidence,
//! not algebra checking itself.
//!
//! Determinism contract: a simulation is a pure function of the inputs, the
//! seed, and the partition plan. Trials are split into fixed-size partitions
//! (the plan depends only on `n_trials`), partition `j` draws from stream `j`
//! of a counter-based generator, and partial results merge in partition
//! order — so any worker count, including one, produces bit-identical
//! results.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CrowdStrategy, ExpectationReport, LotteryConfig, Method, SyndicateStrategy};
use crate::numeric::Kahan;

/// Trials per RNG stream; the partition plan is `ceil(n_trials / this)`
/// partitions regardless of worker count.
const TRIALS_PER_PARTITION: u64 = 65_536;

/// Enumeration ceiling: the brute-force oracle refuses beyond 2^24 crowd
/// configurations (`t^c` ungrouped, `C(t,l)^g` grouped), which keeps it in
/// the sub-second range while admitting grids as large as 4^12.
pub const MAX_ENUM_CONFIGS: u128 = 1 << 24;

/// Aggregates of a seeded Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    /// Trials executed.
    pub n_trials: u64,
    /// Sample mean of the per-trial syndicate return `(W − s)/s`; 0 when the
    /// syndicate stakes nothing (no stake to normalize by).
    pub mean_syndicate_return: f64,
    /// Standard error of that mean (0 when `s = 0` or `n_trials < 2`).
    pub std_error: f64,
    /// Sample mean of the crowd's collective return; 0 when the crowd is
    /// empty.
    pub mean_crowd_return: f64,
    /// Fraction of trials in which nobody held the drawn ticket.
    pub carryover_frequency: f64,
    /// The seed the run was keyed on.
    pub seed: u64,
}

/// Categorical sampler over ticket indices: linear scan through the
/// cumulative distribution for small `t`, Walker–Vose alias tables above 64
/// tickets where the scan's O(t) per draw starts to hurt.
enum Categorical {
    Scan(Vec<f64>),
    Alias { prob: Vec<f64>, alias: Vec<usize> },
}

impl Categorical {
    fn new(weights: &[f64]) -> Self {
        if weights.len() <= 64 {
            let mut cumulative = Vec::with_capacity(weights.len());
            let mut acc = Kahan::default();
            for &w in weights {
                acc.add(w);
                cumulative.push(acc.value());
            }
            // Pin the final edge so residual summation dust cannot push a
            // uniform draw past the end of the table.
            *cumulative.last_mut().expect("weights are non-empty") = 1.0;
            Categorical::Scan(cumulative)
        } else {
            let n = weights.len();
            let mut prob = vec![0.0f64; n];
            let mut alias = vec![0usize; n];
            let scaled: Vec<f64> = weights.iter().map(|&w| w * n as f64).collect();
            let mut small: Vec<usize> = Vec::with_capacity(n);
            let mut large: Vec<usize> = Vec::with_capacity(n);
            for (i, &x) in scaled.iter().enumerate() {
                if x < 1.0 {
                    small.push(i);
                } else {
                    large.push(i);
                }
            }
            let mut scaled = scaled;
            while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
                small.pop();
                prob[s] = scaled[s];
                alias[s] = l;
                scaled[l] = (scaled[l] + scaled[s]) - 1.0;
                if scaled[l] < 1.0 {
                    large.pop();
                    small.push(l);
                }
            }
            // Whatever is left holds weight 1 up to rounding dust.
            for &i in small.iter().chain(large.iter()) {
                prob[i] = 1.0;
            }
            Categorical::Alias { prob, alias }
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        match self {
            Categorical::Scan(cumulative) => {
                let u: f64 = rng.gen();
                cumulative.partition_point(|&edge| edge <= u)
            }
            Categorical::Alias { prob, alias } => {
                let i = rng.gen_range(0..prob.len());
                if rng.gen::<f64>() < prob[i] {
                    i
                } else {
                    alias[i]
                }
            }
        }
    }
}

/// Sufficient statistics of one partition; merging is summation.
#[derive(Debug, Clone, Copy, Default)]
struct PartitionStats {
    trials: u64,
    sum_win: f64,
    sum_win_sq: f64,
    sum_crowd_win: f64,
    carryovers: u64,
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
    Ok(())
}

/// One partition of trials on its own RNG stream.
fn run_partition(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
    jackpot: f64,
    draw_sampler: &Categorical,
    crowd_sampler: &Option<Categorical>,
    seed: u64,
    partition: u64,
    trials: u64,
) -> PartitionStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(partition);
    let t = config.t();
    let mut stats = PartitionStats {
        trials,
        ..PartitionStats::default()
    };
    let mut sum_win = Kahan::default();
    let mut sum_win_sq = Kahan::default();
    let mut sum_crowd_win = Kahan::default();
    // Scratch for group sampling: a persistent identity permutation that a
    // partial Fisher–Yates shuffles and then rolls back, so each group draw
    // is O(l) instead of O(t).
    let mut indices: Vec<usize> = (0..t).collect();
    let mut swaps: Vec<usize> = Vec::new();
    for _ in 0..trials {
        let drawn = draw_sampler.draw(&mut rng);
        let mut hits = 0u64;
        match crowd.groups() {
            Some(gs) => {
                for _ in 0..gs.g {
                    swaps.clear();
                    for j in 0..gs.l {
                        let r = rng.gen_range(j..t);
                        indices.swap(j, r);
                        swaps.push(r);
                        if indices[j] == drawn {
                            hits += 1;
                        }
                    }
                    for (j, &r) in swaps.iter().enumerate().rev() {
                        indices.swap(j, r);
                    }
                }
            }
            None => {
                if let Some(sampler) = crowd_sampler {
                    for _ in 0..crowd.c() {
                        if sampler.draw(&mut rng) == drawn {
                            hits += 1;
                        }
                    }
                }
            }
        }
        let stake = syn.stake_on(drawn);
        let pot = stake + hits as f64;
        if pot > 0.0 {
            let win = jackpot * stake / pot;
            sum_win.add(win);
            sum_win_sq.add(win * win);
            sum_crowd_win.add(jackpot * hits as f64 / pot);
        } else {
            stats.carryovers += 1;
        }
    }
    stats.sum_win = sum_win.value();
    stats.sum_win_sq = sum_win_sq.value();
    stats.sum_crowd_win = sum_crowd_win.value();
    stats
}

/// Seeded Monte Carlo estimate of both players' returns: per trial, draw the
/// winning ticket from `p`, realize the crowd (each bettor draws from `q`,
/// or each group draws `l` distinct tickets uniformly), split the jackpot,
/// and aggregate. Uses one worker thread per partition up to the machine's
/// parallelism; see [`simulate_with_workers`] for explicit control.
pub fn simulate(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
    n_trials: u64,
    seed: u64,
) -> Result<SimulationResult> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    simulate_with_workers(config, syn, crowd, n_trials, seed, workers)
}

/// [`simulate`] with an explicit worker count. The result is bit-identical
/// for every `workers ≥ 1`: the partition plan and per-partition RNG streams
/// depend only on `(n_trials, seed)`, and partial sums merge in partition
/// order.
pub fn simulate_with_workers(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
    n_trials: u64,
    seed: u64,
    workers: usize,
) -> Result<SimulationResult> {
    check_dims(config, syn, crowd)?;
    if n_trials < 1 {
        return Err(Error::invalid("n_trials", "must be at least 1".to_string()));
    }
    if workers < 1 {
        return Err(Error::invalid("workers", "must be at least 1".to_string()));
    }
    let s = syn.s();
    let c = crowd.c() as f64;
    let jackpot = config.jackpot(s, c);
    let draw_sampler = Categorical::new(config.p());
    let crowd_sampler = (crowd.groups().is_none() && crowd.c() > 0)
        .then(|| Categorical::new(crowd.q()));
    let partitions = n_trials.div_ceil(TRIALS_PER_PARTITION);
    let slots: Mutex<Vec<PartitionStats>> =
        Mutex::new(vec![PartitionStats::default(); partitions as usize]);
    let next = AtomicU64::new(0);
    let threads = workers.min(partitions as usize);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                if j >= partitions {
                    break;
                }
                let lo = j * TRIALS_PER_PARTITION;
                let hi = (lo + TRIALS_PER_PARTITION).min(n_trials);
                let stats = run_partition(
                    config,
                    syn,
                    crowd,
                    jackpot,
                    &draw_sampler,
                    &crowd_sampler,
                    seed,
                    j,
                    hi - lo,
                );
                slots.lock().expect("no panics hold this lock")[j as usize] = stats;
            });
        }
    });
    let slots = slots.into_inner().expect("no panics hold this lock");
    let mut sum_win = Kahan::default();
    let mut sum_win_sq = Kahan::default();
    let mut sum_crowd_win = Kahan::default();
    let mut carryovers = 0u64;
    let mut merged_trials = 0u64;
    for part in &slots {
        sum_win.add(part.sum_win);
        sum_win_sq.add(part.sum_win_sq);
        sum_crowd_win.add(part.sum_crowd_win);
        carryovers += part.carryovers;
        merged_trials += part.trials;
    }
    debug_assert_eq!(merged_trials, n_trials, "every partition reports in");
    let n = merged_trials as f64;
    let mean_win = sum_win.value() / n;
    let (mean_syndicate_return, std_error) = if s > 0.0 {
        let variance = ((sum_win_sq.value() - n * mean_win * mean_win) / (n - 1.0)).max(0.0);
        let se = if n_trials > 1 {
            (variance / n).sqrt() / s
        } else {
            0.0
        };
        ((mean_win - s) / s, se)
    } else {
        (0.0, 0.0)
    };
    let mean_crowd_return = if c > 0.0 {
        (sum_crowd_win.value() / n - c) / c
    } else {
        0.0
    };
    Ok(SimulationResult {
        n_trials,
        mean_syndicate_return,
        std_error,
        mean_crowd_return,
        carryover_frequency: carryovers as f64 / n,
        seed,
    })
}

/// Number of crowd configurations the brute-force oracle would visit.
fn enumeration_size(crowd: &CrowdStrategy, t: usize) -> u128 {
    match crowd.groups() {
        Some(gs) => {
            let subsets = binomial_u128(t as u128, gs.l as u128);
            checked_pow_capped(subsets, gs.g as u32)
        }
        None => checked_pow_capped(t as u128, crowd.c() as u32),
    }
}

fn checked_pow_capped(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base) {
            Some(v) if v <= MAX_ENUM_CONFIGS => v,
            _ => return MAX_ENUM_CONFIGS + 1,
        };
    }
    acc
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > MAX_ENUM_CONFIGS {
            return MAX_ENUM_CONFIGS + 1;
        }
    }
    acc
}

/// All `l`-element subsets of `0..t` in lexicographic order.
fn subsets(t: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(l);
    fn rec(start: usize, t: usize, l: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == l {
            out.push(current.clone());
            return;
        }
        for i in start..t {
            current.push(i);
            rec(i + 1, t, l, current, out);
            current.pop();
        }
    }
    rec(0, t, l, &mut current, &mut out);
    out
}

/// Brute-force expectation oracle: sum the payoff over *every* crowd
/// configuration — all `t^c` ordered ticket assignments with product weights
/// `Πq`, or all `C(t,l)^g` group-subset choices with uniform weights — times
/// all `t` draws. Shares no algebra with the analytic engine.
///
/// Also fills `carryover_probability`. Refuses with a size error beyond
/// [`MAX_ENUM_CONFIGS`] configurations.
pub fn enumerate_exact(
    config: &LotteryConfig,
    syn: &SyndicateStrategy,
    crowd: &CrowdStrategy,
) -> Result<ExpectationReport> {
    check_dims(config, syn, crowd)?;
    let size = enumeration_size(crowd, config.t());
    if size > MAX_ENUM_CONFIGS {
        return Err(Error::Infeasible(format!(
            "enumeration needs more than {MAX_ENUM_CONFIGS} crowd configurations"
        )));
    }
    let s = syn.s();
    let c = crowd.c() as f64;
    let v = config.jackpot(s, c);
    let t = config.t();
    let mut win = Kahan::default();
    let mut crowd_win = Kahan::default();
    let mut carry = Kahan::default();
    let mut counts = vec![0u64; t];
    // Payoff of one fully realized crowd, totalled over draws.
    let leaf = |weight: f64, counts: &[u64], win: &mut Kahan, crowd_win: &mut Kahan, carry: &mut Kahan| {
        for d in 0..t {
            let p_d = config.p()[d];
            if p_d == 0.0 {
                continue;
            }
            let stake = syn.stake_on(d);
            let pot = stake + counts[d] as f64;
            if pot > 0.0 {
                win.add(weight * p_d * v * stake / pot);
                crowd_win.add(weight * p_d * v * counts[d] as f64 / pot);
            } else {
                carry.add(weight * p_d);
            }
        }
    };
    match crowd.groups() {
        Some(gs) => {
            let choices = subsets(t, gs.l);
            let weight_per = 1.0 / choices.len() as f64;
            fn rec<F: FnMut(f64, &[u64])>(
                remaining: usize,
                weight: f64,
                weight_per: f64,
                choices: &[Vec<usize>],
                counts: &mut Vec<u64>,
                leaf: &mut F,
            ) {
                if remaining == 0 {
                    leaf(weight, counts);
                    return;
                }
                for subset in choices {
                    for &i in subset {
                        counts[i] += 1;
                    }
                    rec(remaining - 1, weight * weight_per, weight_per, choices, counts, leaf);
                    for &i in subset {
                        counts[i] -= 1;
                    }
                }
            }
            rec(
                gs.g,
                1.0,
                weight_per,
                &choices,
                &mut counts,
                &mut |w, k| leaf(w, k, &mut win, &mut crowd_win, &mut carry),
            );
        }
        None => {
            let q = crowd.q();
            fn rec<F: FnMut(f64, &[u64])>(
                remaining: usize,
                weight: f64,
                q: &[f64],
                counts: &mut Vec<u64>,
                leaf: &mut F,
            ) {
                if remaining == 0 {
                    leaf(weight, counts);
                    return;
                }
                for i in 0..q.len() {
                    if q[i] == 0.0 {
                        continue;
                    }
                    counts[i] += 1;
                    rec(remaining - 1, weight * q[i], q, counts, leaf);
                    counts[i] -= 1;
                }
            }
            rec(crowd.c(), 1.0, q, &mut counts, &mut |w, k| {
                leaf(w, k, &mut win, &mut crowd_win, &mut carry)
            });
        }
    }
    let crowd_return = (crowd.c() > 0).then(|| (crowd_win.value() - c) / c);
    Ok(ExpectationReport::from_win(
        v,
        win.value(),
        s,
        crowd_return,
        Some(carry.value()),
        Method::Enumerated,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_setup(t: usize, c: usize, s: usize) -> (LotteryConfig, SyndicateStrategy, CrowdStrategy) {
        let config = LotteryConfig::equiprobable(t, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::spread(s, t).unwrap();
        let crowd = CrowdStrategy::uniform(c, t).unwrap();
        (config, syn, crowd)
    }

    #[test]
    fn enumerate_tiny_case_by_hand() {
        // t = 2, c = 2, one syndicate ticket on each side: 8 equally likely
        // (draw, crowd) outcomes give E[W] = 7/3 with v = 4.
        let (config, syn, crowd) = uniform_setup(2, 2, 2);
        let report = enumerate_exact(&config, &syn, &crowd).unwrap();
        assert!((report.expected_win - 7.0 / 3.0).abs() < 1e-14);
        assert!((report.expected_return.unwrap() - 1.0 / 6.0).abs() < 1e-14);
        assert_eq!(report.method, Method::Enumerated);
        // Full coverage: no carryover possible.
        assert_eq!(report.carryover_probability, Some(0.0));
    }

    #[test]
    fn enumerate_agrees_with_exact_engine() {
        use crate::exact::expected_win_exact;
        for t in [2usize, 3] {
            for c in [0usize, 1, 2, 3, 4] {
                for s in 1..=t {
                    let (config, syn, crowd) = uniform_setup(t, c, s);
                    let byenum = enumerate_exact(&config, &syn, &crowd).unwrap();
                    let byexact = expected_win_exact(&config, &syn, &crowd).unwrap();
                    assert!(
                        (byenum.expected_win - byexact.expected_win).abs()
                            <= 1e-12 * byexact.expected_win.abs().max(1.0),
                        "t={t} c={c} s={s}: {} vs {}",
                        byenum.expected_win,
                        byexact.expected_win
                    );
                    let (a, b) = (byenum.carryover_probability.unwrap(), byexact.carryover_probability.unwrap());
                    assert!((a - b).abs() < 1e-13, "carryover t={t} c={c} s={s}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn enumerate_handles_empty_crowd() {
        // c = 0: the syndicate wins v whenever it holds the draw.
        let (config, syn, crowd) = uniform_setup(3, 0, 2);
        let report = enumerate_exact(&config, &syn, &crowd).unwrap();
        // v = 2, P[syndicate holds draw] = 2/3.
        assert!((report.expected_win - 2.0 * 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(report.crowd_expected_return, None);
        assert!((report.carryover_probability.unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn enumerate_grouped_matches_exact_engine() {
        let config = LotteryConfig::equiprobable(4, 0.5, 0.1).unwrap();
        let syn = SyndicateStrategy::spread(2, 4).unwrap();
        for (g, l) in [(1usize, 2usize), (2, 2), (3, 1), (2, 3)] {
            let crowd = CrowdStrategy::grouped(g, l, 4).unwrap();
            let byenum = enumerate_exact(&config, &syn, &crowd).unwrap();
            let byexact = crate::exact::expected_win_exact(&config, &syn, &crowd).unwrap();
            assert!(
                (byenum.expected_win - byexact.expected_win).abs() < 1e-12,
                "g={g} l={l}: {} vs {}",
                byenum.expected_win,
                byexact.expected_win
            );
        }
    }

    #[test]
    fn enumerate_size_guard() {
        // 4^12 = 2^24 sits exactly at the cap and passes; 10^10 does not.
        let (config, syn, crowd) = uniform_setup(4, 12, 2);
        assert!(enumerate_exact(&config, &syn, &crowd).is_ok());
        let (config, syn, crowd) = uniform_setup(10, 10, 2);
        assert!(matches!(
            enumerate_exact(&config, &syn, &crowd),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn simulation_is_deterministic_and_worker_invariant() {
        let (config, syn, crowd) = uniform_setup(3, 4, 2);
        let a = simulate_with_workers(&config, &syn, &crowd, 200_000, 42, 1).unwrap();
        let b = simulate_with_workers(&config, &syn, &crowd, 200_000, 42, 4).unwrap();
        let c = simulate(&config, &syn, &crowd, 200_000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = simulate(&config, &syn, &crowd, 200_000, 43).unwrap();
        assert_ne!(a, d, "different seeds must explore different trials");
    }

    #[test]
    fn simulation_matches_exact_small_uniform_case() {
        let (config, syn, crowd) = uniform_setup(2, 2, 2);
        let sim = simulate(&config, &syn, &crowd, 1_000_000, 7).unwrap();
        // Exact return is 1/6; demand agreement within 4 standard errors.
        assert!(sim.std_error > 0.0);
        assert!(
            (sim.mean_syndicate_return - 1.0 / 6.0).abs() <= 4.0 * sim.std_error,
            "mean {} ± {}",
            sim.mean_syndicate_return,
            sim.std_error
        );
    }

    #[test]
    fn simulation_all_stakes_zero() {
        let config = LotteryConfig::equiprobable(3, 5.0, 0.0).unwrap();
        let syn = SyndicateStrategy::new(0.0, vec![1.0 / 3.0; 3]).unwrap();
        let crowd = CrowdStrategy::new(0, vec![1.0 / 3.0; 3]).unwrap();
        let sim = simulate(&config, &syn, &crowd, 1000, 5).unwrap();
        assert_eq!(sim.mean_syndicate_return, 0.0);
        assert_eq!(sim.std_error, 0.0);
        assert_eq!(sim.mean_crowd_return, 0.0);
        assert_eq!(sim.carryover_frequency, 1.0);
    }

    #[test]
    fn simulation_grouped_crowd_matches_exact() {
        let config = LotteryConfig::equiprobable(5, 0.0, 0.0).unwrap();
        let syn = SyndicateStrategy::spread(3, 5).unwrap();
        let crowd = CrowdStrategy::grouped(3, 2, 5).unwrap();
        let exact = crate::exact::expected_win_exact(&config, &syn, &crowd).unwrap();
        let sim = simulate(&config, &syn, &crowd, 400_000, 99).unwrap();
        assert!(
            (sim.mean_syndicate_return - exact.expected_return.unwrap()).abs()
                <= 4.0 * sim.std_error
        );
    }

    #[test]
    fn simulation_rejects_zero_trials() {
        let (config, syn, crowd) = uniform_setup(2, 2, 2);
        assert!(simulate(&config, &syn, &crowd, 0, 1).is_err());
        assert!(simulate_with_workers(&config, &syn, &crowd, 10, 1, 0).is_err());
    }

    #[test]
    fn alias_sampler_hits_every_ticket_at_the_right_rate() {
        // Force the alias path with t = 80 and a lopsided distribution.
        let t = 80usize;
        let mut weights: Vec<f64> = (1..=t).map(|i| i as f64).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let sampler = Categorical::new(&weights);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 400_000usize;
        let mut counts = vec![0u64; t];
        for _ in 0..n {
            counts[sampler.draw(&mut rng)] += 1;
        }
        for i in 0..t {
            let expected = weights[i] * n as f64;
            let slack = 5.0 * expected.sqrt().max(3.0);
            assert!(
                ((counts[i] as f64) - expected).abs() < slack,
                "ticket {i}: {} vs {expected}",
                counts[i]
            );
        }
    }

    #[test]
    fn scan_sampler_respects_the_distribution() {
        let weights = [0.5, 0.25, 0.25];
        let sampler = Categorical::new(&weights);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut counts = [0u64; 3];
        let n = 200_000;
        for _ in 0..n {
            counts[sampler.draw(&mut rng)] += 1;
        }
        for i in 0..3 {
            let expected = weights[i] * n as f64;
            assert!(((counts[i] as f64) - expected).abs() < 5.0 * expected.sqrt());
        }
    }
}

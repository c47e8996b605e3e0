//! # When can a syndicate profit at all?
//!
//! With a carryover a rolled into the pool and a take x skimmed off it, a
//! proportionally betting syndicate's expected gain strictly exceeds the
//! deterministic floor s·(a/(s+c) − x). The floor is positive — a
//! guaranteed profitable syndicate exists — exactly when the carryover
//! fraction beats the take: a/(s+c) > x. This example walks the bound
//! through a losing configuration, the breakeven boundary, and a juicy
//! carryover, and confirms the strict inequality with the exact engine.

use jackpot::equilibrium::winning_condition;
use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};

fn main() {
    let (s, c) = (1000.0f64, 1000.0f64);
    println!("syndicate stake s = {s}, crowd stake c = {c}\n");
    println!("  carryover a     take x    floor s·(a/(s+c) − x)   holds?");
    for (a, x) in [(0.0, 0.1), (200.0, 0.1), (300.0, 0.1), (500.0, 0.05)] {
        let w = winning_condition(a, x, s, c).unwrap();
        println!("  {a:10.1}   {x:7.2}   {:20.2}   {}", w.bound, w.holds);
    }

    // The floor is conservative: the exact expected gain of a proportional
    // syndicate clears it strictly even at the boundary a = x(s+c).
    let t = 4usize;
    let p = vec![0.4, 0.3, 0.2, 0.1];
    let (s_small, c_small) = (2.0f64, 5usize);
    let x = 0.2;
    let a = x * (s_small + c_small as f64);
    let config = LotteryConfig::new(p.clone(), a, x).unwrap();
    let syndicate = SyndicateStrategy::new(s_small, p.clone()).unwrap();
    let crowd = CrowdStrategy::new(c_small, p).unwrap();
    let gain = expected_win_exact(&config, &syndicate, &crowd)
        .unwrap()
        .expected_gain;
    let bound = winning_condition(a, x, s_small, c_small as f64).unwrap().bound;
    println!(
        "\nboundary case on {t} tickets: floor = {bound:.3}, exact gain = {gain:+.4}"
    );
    assert!(gain > bound);
}

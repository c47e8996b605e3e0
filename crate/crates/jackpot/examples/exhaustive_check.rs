//! # Trust, but enumerate
//!
//! For small lotteries the crowd's t^c possible configurations can be
//! walked outright, weighting each by its multinomial probability. That
//! brute-force expectation is the oracle the fast engine is checked
//! against: the engine collapses the same sum through per-ticket binomial
//! marginals, so the two must agree to the last few ulps — on skewed
//! distributions, fractional stakes, abandoned tickets, takes, and
//! carryovers alike.

use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};
use jackpot::simulate::enumerate_exact;

fn main() {
    let config = LotteryConfig::new(vec![0.6, 0.3, 0.1], 1.5, 0.2).unwrap();
    let syndicate = SyndicateStrategy::new(1.75, vec![0.4, 0.6, 0.0]).unwrap();
    let crowd = CrowdStrategy::new(4, vec![0.5, 0.5, 0.0]).unwrap();

    let fast = expected_win_exact(&config, &syndicate, &crowd).unwrap();
    let brute = enumerate_exact(&config, &syndicate, &crowd).unwrap();

    println!("three tickets, crowd of 4, 3^4 = 81 crowd configurations\n");
    println!("                      engine              enumeration");
    println!(
        "expected win     {:18.15}  {:18.15}",
        fast.expected_win, brute.expected_win
    );
    println!(
        "crowd return     {:18.15}  {:18.15}",
        fast.crowd_expected_return.unwrap(),
        brute.crowd_expected_return.unwrap()
    );
    println!(
        "carryover prob   {:18.15}  {:18.15}",
        fast.carryover_probability.unwrap(),
        brute.carryover_probability.unwrap()
    );

    let rel = (fast.expected_win - brute.expected_win).abs() / brute.expected_win;
    println!("\nrelative disagreement: {rel:.2e}");
    assert!(rel < 1e-12);

    // The guard: sizes explode as t^c, and the oracle refuses politely.
    let big_crowd = CrowdStrategy::uniform(40, 10).unwrap();
    let big_config = LotteryConfig::equiprobable(10, 0.0, 0.0).unwrap();
    let big_syn = SyndicateStrategy::trump(10).unwrap();
    match enumerate_exact(&big_config, &big_syn, &big_crowd) {
        Err(e) => println!("10^40 configurations: {e}"),
        Ok(_) => unreachable!("the size guard must reject this"),
    }
}

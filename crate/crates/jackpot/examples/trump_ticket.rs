//! # Buying every ticket
//!
//! The headline computation: in a pure-jackpot parimutuel lottery with
//! $1000$ equally likely tickets and a crowd of $1000$ random bettors, a
//! syndicate that buys the whole field ("the trump ticket") wins the drawing
//! with certainty and expects about a 26.4% return — funded entirely by the
//! crowd splitting the pool with it.
//!
//! The same number is computed twice: through the equiprobable closed form,
//! and through the exact engine that sums binomial sharing marginals. The
//! two routes share no code.

use jackpot::closed_forms::uniform_return;
use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};

fn main() {
    let (t, c) = (1000usize, 1000usize);

    let closed = uniform_return(t as u64, c as u64, t as u64).unwrap();

    let config = LotteryConfig::equiprobable(t, 0.0, 0.0).unwrap();
    let syndicate = SyndicateStrategy::trump(t).unwrap();
    let crowd = CrowdStrategy::uniform(c, t).unwrap();
    let report = expected_win_exact(&config, &syndicate, &crowd).unwrap();

    println!("t = {t} tickets, crowd of {c}, syndicate buys all {t}");
    println!("pool (jackpot)            : {:10.2}", report.jackpot);
    println!("expected winnings         : {:10.2}", report.expected_win);
    println!("expected gain             : {:10.2}", report.expected_gain);
    println!(
        "expected return (exact)   : {:10.4} %",
        report.expected_return.unwrap() * 100.0
    );
    println!("expected return (closed)  : {:10.4} %", closed * 100.0);
    println!(
        "crowd's expected return   : {:10.4} %",
        report.crowd_expected_return.unwrap() * 100.0
    );
    println!(
        "chance nobody wins        : {:10.4}   (full coverage makes it 0)",
        report.carryover_probability.unwrap()
    );

    let gap = (report.expected_return.unwrap() - closed).abs();
    println!("\nroute disagreement        : {gap:.2e}");
    assert!(gap < 1e-11);
}

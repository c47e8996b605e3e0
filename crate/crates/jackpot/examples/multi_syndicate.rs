//! # Two syndicates can both buy the field and both profit
//!
//! Full coverage is not a winner-take-all trick: if n syndicates each buy
//! every ticket, the drawn ticket is held n + K times (K crowd winners),
//! and each syndicate still expects a positive gain — the crowd's expected
//! loss simply splits n ways. The closed form g(n) and the exact engine
//! (pooled stake n·t spread evenly) agree to machine precision.

use jackpot::closed_forms::multiples_gain;
use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};

fn main() {
    let (t, c) = (10usize, 10usize);
    println!("t = {t} tickets, crowd of {c}; n syndicates each buy the whole field\n");
    println!("   n    pooled gain   per-syndicate gain   per-syndicate return");
    for n in 1u64..=4 {
        let pooled = multiples_gain(n, t as u64, c as u64).unwrap();
        let stake = (n as f64) * t as f64;
        println!(
            "  {n:2}    {pooled:10.4}    {:16.4}    {:17.2} %",
            pooled / n as f64,
            pooled / stake * 100.0
        );
        assert!(pooled > 0.0);
    }

    // Cross-check n = 2 against the exact engine: a pooled stake of 2t
    // spread evenly is the same random experiment.
    let config = LotteryConfig::equiprobable(t, 0.0, 0.0).unwrap();
    let pooled_syn = SyndicateStrategy::new(2.0 * t as f64, vec![1.0 / t as f64; t]).unwrap();
    let crowd = CrowdStrategy::uniform(c, t).unwrap();
    let engine = expected_win_exact(&config, &pooled_syn, &crowd).unwrap();
    let closed = multiples_gain(2, t as u64, c as u64).unwrap();
    println!(
        "\nn = 2 cross-check: engine gain {:.12}, closed form {:.12}",
        engine.expected_gain, closed
    );
    assert!((engine.expected_gain - closed).abs() < 1e-12 * closed);

    // The larger the crowd, the more each syndicate makes — even with a
    // rival syndicate matching every bet.
    for &big_c in &[20u64, 50, 100] {
        let g = multiples_gain(2, t as u64, big_c).unwrap();
        println!("crowd {big_c:3}: per-syndicate gain {:8.4}", g / 2.0);
    }
}

//! # Which lottery design serves the syndicate?
//!
//! Suppose everyone moves proportionally to the design: the organizer picks
//! ticket probabilities p, the crowd bets q = p, and the syndicate stakes
//! r = p. When the syndicate's stake matches the crowd's, the
//! equal-probability design maximizes the syndicate's exact expected gain —
//! no skew would help it. The comparison is regime-dependent, though: with
//! crowd money at twice the stake, sampled skewed designs pull ahead and
//! equal probabilities stop being the maximum. This example shows both
//! sides, with the flip certified through the exact engine.

use jackpot::equilibrium::equiprobable_optimality_check;
use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};

/// Exact syndicate gain when design, crowd, and syndicate all follow `p`.
fn gain_all_proportional(p: &[f64], s: f64, c: usize) -> f64 {
    let config = LotteryConfig::new(p.to_vec(), 0.0, 0.0).unwrap();
    let syndicate = SyndicateStrategy::new(s, p.to_vec()).unwrap();
    let crowd = CrowdStrategy::new(c, p.to_vec()).unwrap();
    expected_win_exact(&config, &syndicate, &crowd)
        .unwrap()
        .expected_gain
}

fn main() {
    // Matched scale: two tickets, two crowd bettors, a stake of two.
    let matched = equiprobable_optimality_check(2, 2, 2, 64, 1234).unwrap();
    println!("matched scale (t = 2, c = 2, s = 2)");
    println!("  gain at the equiprobable design  : {:+.6}", matched.baseline_gain);
    println!(
        "  best of {} sampled skewed designs : {:+.6}",
        matched.samples, matched.max_sample_gain
    );
    println!("  worst sampled design             : {:+.6}", matched.min_sample_gain);
    println!("  equiprobable is the max          : {}", matched.baseline_is_max);
    assert!((matched.baseline_gain - 1.0 / 3.0).abs() < 1e-12);
    assert!(matched.baseline_is_max);
    assert!(matched.max_sample_gain < matched.baseline_gain);

    // Deep crowd: the same check with crowd money at twice the stake.
    let deep = equiprobable_optimality_check(3, 6, 3, 500, 99).unwrap();
    println!("\ndeep crowd (t = 3, c = 6, s = 3)");
    println!("  gain at the equiprobable design  : {:+.6}", deep.baseline_gain);
    println!(
        "  best of {} sampled skewed designs: {:+.6}",
        deep.samples, deep.max_sample_gain
    );
    println!("  equiprobable is the max          : {}", deep.baseline_is_max);
    assert!(!deep.baseline_is_max);
    assert!(deep.max_sample_gain > deep.baseline_gain);

    // One concrete skew for scale, scored directly by the exact engine.
    let skew = [0.5, 0.3, 0.2];
    let tilted = gain_all_proportional(&skew, 3.0, 6);
    let flat = gain_all_proportional(&[1.0 / 3.0; 3], 3.0, 6);
    println!("\n  hand-picked skew p = {skew:?}");
    println!("  gain at the skew                 : {:+.6}", tilted);
    println!("  gain at the flat design          : {:+.6}", flat);
    assert!((flat - deep.baseline_gain).abs() < 1e-12);
    assert!(tilted > flat);

    println!("\nEqual probabilities are the syndicate's best design when stakes");
    println!("and crowd are matched; a deep enough crowd tips the question.");
}

//! # The crowd that hurts the syndicate most is the uniform one
//!
//! Against a full-coverage syndicate, the syndicate's expected return is a
//! convex function of the crowd's ticket-choice distribution; minimizing it
//! over the probability simplex lands exactly on the uniform distribution.
//! Any crowd that concentrates anywhere hands the syndicate more. The
//! projected-gradient solver certifies the minimum through first-order
//! conditions plus a 2t-direction perturbation check scored by the exact
//! engine.

use jackpot::equilibrium::{minimize_return_over_crowd, perturbation_certificate};
use jackpot::exact::expected_win_exact;
use jackpot::model::{CrowdStrategy, LotteryConfig, SyndicateStrategy};

fn main() {
    let (t, c, s) = (5u64, 12u64, 5u64);
    let report = minimize_return_over_crowd(t, c, s).unwrap();

    println!("t = {t}, crowd of {c}, syndicate covers the field\n");
    println!("converged   : {} ({} iterations)", report.converged, report.iterations);
    println!("FOC residual: {:.2e}", report.residual);
    println!("argmin      : {:?}", report.argmin_vector);

    let config = LotteryConfig::equiprobable(t as usize, 0.0, 0.0).unwrap();
    let syndicate = SyndicateStrategy::trump(t as usize).unwrap();
    let through_engine = |q: &[f64]| {
        let crowd = CrowdStrategy::new(c as usize, q.to_vec()).unwrap();
        expected_win_exact(&config, &syndicate, &crowd)
            .unwrap()
            .expected_return
            .unwrap()
    };

    let base = through_engine(&report.argmin_vector);
    println!("\nreturn at the argmin  : {:+.6}", base);
    for (label, q) in [
        ("mildly tilted crowd ", vec![0.24, 0.22, 0.2, 0.18, 0.16]),
        ("popular-number crowd", vec![0.4, 0.3, 0.15, 0.1, 0.05]),
        ("single-number crowd ", vec![1.0, 0.0, 0.0, 0.0, 0.0]),
    ] {
        println!("return vs {label}: {:+.6}", through_engine(&q));
    }

    let cert = perturbation_certificate(through_engine, &report.argmin_vector, 1e-4);
    println!(
        "\nperturbation certificate: all 2t directions worse, min margin {:.2e}",
        cert.min_margin
    );
    assert!(cert.all_worse);
}

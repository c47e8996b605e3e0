//! # Proportional betting is a fixed point
//!
//! In the large-stake limit (syndicate stake s → ∞ with crowd-to-syndicate
//! ratio u = c/s held fixed), the game between one syndicate and one
//! aggregated crowd has a unique equilibrium: both sides spread their money
//! in proportion to the win probabilities. Each side's best response to a
//! proportional opponent is to play proportionally too — computed here by
//! projected gradient descent from a deliberately bad warm start.

use jackpot::equilibrium::{
    asymptotic_best_response, asymptotic_return, AsymptoticConfig, BestResponseSide,
};

fn main() {
    let p = vec![0.35, 0.25, 0.2, 0.12, 0.08];
    let cfg = AsymptoticConfig::new(1.5, 0.0, 0.0).unwrap();

    println!("win probabilities p = {p:?}, crowd/syndicate ratio u = {}\n", 1.5);
    for side in [BestResponseSide::Crowd, BestResponseSide::Syndicate] {
        let report = asymptotic_best_response(&p, &cfg, side).unwrap();
        let linf = report
            .argmin_vector
            .iter()
            .zip(&p)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("{side:?} best response:");
        println!("  converged in {} iterations, residual {:.1e}", report.iterations, report.residual);
        println!("  distance from p (L∞)  : {linf:.2e}");
        assert!(linf < 1e-8);
    }

    // At the fixed point the limit returns conserve the pool exactly:
    // syndicate + u · crowd = rate − (1 + u).
    let at_equilibrium = asymptotic_return(&p, &p, &p, &cfg).unwrap();
    println!("\nequilibrium returns: syndicate {:+.6}, crowd {:+.6}",
        at_equilibrium.syndicate,
        at_equilibrium.crowd.unwrap()
    );

    // A crowd that chases favorites does strictly worse than proportional.
    let tilted = vec![0.45, 0.28, 0.17, 0.06, 0.04];
    let off = asymptotic_return(&p, &p, &tilted, &cfg).unwrap();
    println!(
        "favorite-chasing crowd : crowd return falls to {:+.6}",
        off.crowd.unwrap()
    );
    assert!(off.crowd.unwrap() < at_equilibrium.crowd.unwrap());
}

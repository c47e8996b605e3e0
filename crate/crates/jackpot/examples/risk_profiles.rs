//! # Any systematic taste costs the crowd money
//!
//! Suppose the crowd weights tickets by utility multipliers instead of
//! betting proportionally: risk seekers overweight longshots, risk avoiders
//! overweight favorites. Either way the resulting selection distribution
//! q ≠ p, and against a proportional syndicate the crowd's limit return
//! drops below the zero it would earn by betting proportionally. This
//! example builds both kinds of profile — a worked example and a batch of
//! random ones — and shows the damage.

use jackpot::equilibrium::{
    asymptotic_return, build_risk_profile, AsymptoticConfig, RiskKind, RiskProfile,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // The worked example: longshot lovers on a three-ticket lottery.
    let p = vec![0.5, 0.3, 0.2];
    let profile = RiskProfile::new(vec![0.8, 1.0, 1.5], RiskKind::RiskSeeking);
    let q = build_risk_profile(&p, &profile).unwrap();
    println!("win probabilities     p = {p:?}");
    println!("risk-seeking weights  u = {:?}", profile.u_weights);
    println!("crowd actually plays  q = {q:?}\n");

    let cfg = AsymptoticConfig::new(1.0, 0.0, 0.0).unwrap();
    let proportional = asymptotic_return(&p, &p, &p, &cfg).unwrap();
    let distorted = asymptotic_return(&p, &p, &q, &cfg).unwrap();
    println!(
        "crowd return, proportional: {:+.6}",
        proportional.crowd.unwrap()
    );
    println!(
        "crowd return, risk-seeking: {:+.6}",
        distorted.crowd.unwrap()
    );
    assert!(distorted.crowd.unwrap() < proportional.crowd.unwrap());

    // Batch: random valid profiles of both kinds, every one of them loses.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in [RiskKind::RiskSeeking, RiskKind::RiskAverse] {
        let mut worst: f64 = f64::NEG_INFINITY;
        for _ in 0..50 {
            let profile = RiskProfile::random(&p, kind, &mut rng);
            let q = build_risk_profile(&p, &profile).unwrap();
            let ret = asymptotic_return(&p, &p, &q, &cfg).unwrap().crowd.unwrap();
            assert!(ret < 0.0);
            worst = worst.max(ret);
        }
        println!("50 random {kind:?} crowds: every return < 0 (best {worst:+.2e})");
    }
}

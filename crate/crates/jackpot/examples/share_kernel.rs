//! # The machinery under everything: E[1/(1+X)] and its kernel
//!
//! Every expected-win formula in this crate reduces to the share factor
//! E[1/(1+X)] for a binomial X — the expected fraction of the pool a
//! one-unit stake keeps. Three views of it:
//!
//!   * the exact closed form via expm1/ln1p (no cancellation at tiny q),
//!   * Poisson approximations with an explicit validity regime,
//!   * the kernel f(q) = (1 − (1−q)^{c+1})/q whose strict convexity drives
//!     the worst-case-crowd and equilibrium results.

use jackpot::equilibrium::convexity_kernel;
use jackpot::exact::{expected_share_factor, poisson_share_approx, ShareApproxMode};

fn main() {
    println!("share factor E[1/(1+X)], X ~ Bin(c, q)\n");
    println!("        c        q        exact      poisson(c+1)   warning");
    for &(c, q) in &[
        (1000u64, 0.001f64),
        (1000, 0.01),
        (100_000, 1e-5),
        (50, 0.02),
        (1000, 0.3),
    ] {
        let exact = expected_share_factor(c, q).unwrap();
        let approx = poisson_share_approx(c, q, ShareApproxMode::CPlusOne).unwrap();
        println!(
            "  {c:7}  {q:7}   {:10.8}   {:10.8}   {}",
            exact.value,
            approx.value,
            if approx.regime_warning { "outside regime" } else { "" }
        );
    }

    println!("\nkernel f(q) = (1 − (1−q)^(c+1))/q at c = 20");
    println!("      q       f(q)     window slope   window curvature");
    for &q in &[0.01f64, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
        let probe = convexity_kernel(q, 20).unwrap();
        println!(
            "  {q:5.2}  {:9.4}   {:12.2e}   {:14.2e}",
            probe.value,
            probe.first_difference / probe.h,
            probe.second_difference / (probe.h * probe.h)
        );
        assert!(probe.first_difference < 0.0 && probe.second_difference > 0.0);
    }
    println!("\nf falls from c+1 = 21 toward 1, always decreasing, always convex —");
    println!("which is exactly why the uniform crowd is the syndicate's worst case.");
}

//! Expected-value analysis of pure-jackpot parimutuel lotteries.
//!
//! In a pure-jackpot lottery every bettor pays 1 for a ticket, the pool
//! `v = a + (s + c)(1 − x)` (seed `a`, syndicate stake `s`, crowd stake `c`,
//! take `x`) goes entirely to the bettors holding the drawn ticket in
//! proportion to their stakes, and nobody wins when nobody holds it. A
//! syndicate that buys tickets *systematically* — one of each, say — can
//! have a positive expected return even in a fair-odds lottery, because the
//! crowd's random choices collide with themselves more than a spread-out
//! stake does. This crate computes that edge exactly, approximates it
//! cheaply, bounds it, optimizes against it, and verifies all of the above
//! by brute force.
//!
//! # Quick start
//!
//! ```
//! use jackpot::closed_forms::uniform_return;
//!
//! // One of each of t = 1000 equally likely tickets, against a crowd of
//! // c = 1000, no seed and no take: a 26.4% expected return.
//! let r = uniform_return(1000, 1000, 1000).unwrap();
//! assert!((r - 0.264080).abs() < 5e-7);
//! ```
//!
//! # Modules
//!
//! - [`model`] — the shared vocabulary: [`model::LotteryConfig`],
//!   [`model::SyndicateStrategy`], [`model::CrowdStrategy`], and the
//!   [`model::ExpectationReport`] everything reports in.
//! - [`exact`] — the exact expectation engine for arbitrary ticket
//!   probabilities, stakes, and crowd distributions (independent or
//!   grouped), plus the share-factor kernels it is built from.
//! - [`closed_forms`] — the equiprobable specializations: returns and
//!   breakeven stakes in closed form, payout tables, group-play
//!   adjustments, multiples of full coverage, and comparisons against
//!   simpler published formulas.
//! - [`equilibrium`] — optimization on the probability simplex: the
//!   worst-case crowd, asymptotic best responses for either side,
//!   winning-condition bounds, risk-profiled crowds, and lottery-design
//!   checks.
//! - [`simulate`] — seeded, worker-count-invariant Monte Carlo and
//!   exhaustive enumeration over every crowd configuration; the blunt
//!   instruments that keep the clever ones honest.
//! - [`numeric`] — the numerically careful primitives underneath:
//!   compensated summation, `(1−p)^n` without cancellation, saddle-point
//!   binomial probabilities.
//! - [`cli`] — a batch command-line interface over all of the above,
//!   behind the one thin binary.
//!
//! # Where to start reading
//!
//! The `examples/` directory is a guided tour, one runnable story per
//! capability: `trump_ticket` for the headline number, `breakeven` for
//! where the edge starts, `worst_case_crowd` and `best_response` for the
//! game theory, `monte_carlo` and `exhaustive_check` for the verification
//! story. Each prints its narrative and asserts its own claims.
//!
//! # Determinism
//!
//! Simulations take an explicit seed and produce bit-identical results for
//! a given seed regardless of worker count; every CLI run can write a
//! manifest recording the resolved parameters that produced its output.

pub mod cli;
pub mod closed_forms;
pub mod equilibrium;
pub mod error;
pub mod exact;
pub mod model;
pub mod numeric;
pub mod simulate;

pub use error::{Error, Result};

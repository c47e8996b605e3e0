//! # How many tickets before the strategy turns profitable
//!
//! Buying a few tickets in a parimutuel jackpot lottery is a losing
//! proposition: the crowd probably holds the winning ticket too, and the
//! pool splits. The expected gain as a function of the syndicate's stake is
//! an exact quadratic that starts at zero, dips to its worst value near
//! 29% coverage, crosses back to zero near 58%, and is positive beyond.
//!
//! This example prints the characteristic points for the t = c = 1000 case
//! and sketches the gain curve.

use jackpot::closed_forms::{breakeven, uniform_return};

fn main() {
    let (t, c) = (1000u64, 1000u64);
    let report = breakeven(t, c).unwrap();

    println!("t = {t} tickets, crowd of {c}\n");
    println!("crowd no-show factor y      : {:12.6}", report.y);
    println!("worst-gain stake s*         : {:12.4}", report.s_star);
    println!("gain at s*                  : {:12.4}", report.g_min);
    println!("continuous zero crossing    : {:12.4}", report.s_zero);
    println!("first profitable integer    : {:12}", report.first_profitable_integer);

    println!("\n   stake        gain");
    for s in (100..=1000).step_by(100) {
        let gain = s as f64 * uniform_return(t, c, s).unwrap();
        let offset = ((gain + 60.0) / 330.0 * 60.0).clamp(0.0, 60.0) as usize;
        println!("  {s:6}  {gain:10.2}  |{}*", " ".repeat(offset));
    }

    // The reported integer really is the first profitable one.
    let at = |s: u64| s as f64 * uniform_return(t, c, s).unwrap();
    assert!(at(report.first_profitable_integer) > 0.0);
    assert!(at(report.first_profitable_integer - 1) <= 0.0);
    println!(
        "\ngain({}) = {:+.4},  gain({}) = {:+.4}",
        report.first_profitable_integer - 1,
        at(report.first_profitable_integer - 1),
        report.first_profitable_integer,
        at(report.first_profitable_integer),
    );
}

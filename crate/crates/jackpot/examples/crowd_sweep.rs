//! # The edge dies slowly as the crowd grows
//!
//! More crowd money cuts both ways for a full-coverage syndicate: it swells
//! the pool linearly but at first adds winners only sublinearly, so the
//! return actually *rises* to a peak near c ≈ 2t before sharing takes over
//! and the slow die-off begins. Even then the decay is gentle: five times
//! the crowd still leaves a 19% return, ten times still leaves 10%. This
//! example tabulates the curve for t = 1000.

use jackpot::closed_forms::uniform_return;

fn main() {
    let t = 1000u64;
    println!("t = {t}, syndicate buys the field; crowd size varies\n");
    println!("   crowd c     return      bar");
    for c in (1000..=10_000).step_by(1000) {
        let ret = uniform_return(t, c, t).unwrap();
        let bar = "#".repeat((ret * 150.0) as usize);
        println!("  {c:8}   {:7.2} %    {bar}", ret * 100.0);
    }

    let at_5000 = uniform_return(t, 5000, t).unwrap();
    let at_10000 = uniform_return(t, 10_000, t).unwrap();
    println!("\nfive-fold crowd : {:5.2} %", at_5000 * 100.0);
    println!("ten-fold crowd  : {:5.2} %", at_10000 * 100.0);
    assert!(at_5000 > 0.185 && at_10000 > 0.095);
}

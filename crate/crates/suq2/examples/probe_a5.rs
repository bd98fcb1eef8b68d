//! Timing probe for the spin-6 system.
use std::time::Instant;
use suq2::coideal::replays::{a5_chain, a5_display_check, a5_system};
use suq2::qscalar::{Ctx, Sign};

fn main() {
    let ctx = Ctx::formal(Sign::Positive);
    let t0 = Instant::now();
    let sys = a5_system(&ctx);
    println!("system built in {:?} ({} equations)", t0.elapsed(), sys.equations.len());
    let t0 = Instant::now();
    let rep = a5_display_check(&ctx);
    println!("displays in {:?}: pass = {}", t0.elapsed(), rep.all_passed());
    if !rep.all_passed() {
        println!("{}", rep.to_text());
    }
    let t0 = Instant::now();
    let rep = a5_chain(&ctx);
    println!("chain in {:?}: pass = {}", t0.elapsed(), rep.all_passed());
    if !rep.all_passed() {
        println!("{}", rep.to_text());
    }
}

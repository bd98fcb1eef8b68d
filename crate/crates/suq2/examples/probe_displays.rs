//! Scratch probe: print generated elimination expressions.
use suq2::coideal::constraints::ConstraintSystem;
use suq2::coideal::replays::self_pair;
use suq2::qscalar::{display_scalar, Ctx, HalfInt, Sign};

fn main() {
    let ctx = Ctx::formal(Sign::Positive);
    let n = HalfInt::from_int(3);
    let p = self_pair(n, HalfInt::from_int(5), 2, &ctx);
    println!("f2.psi5 (spin 3):");
    for ((a, b), c) in p.terms() {
        println!("  ({a},{b}): {}", display_scalar(c, &ctx));
    }
    // s4 seqn03: generated third equation after killing c3
    let n4 = HalfInt::from_int(4);
    let mut sys = ConstraintSystem::new(n4, true);
    let eq = self_pair(n4, HalfInt::from_int(3), 1, &ctx).pi_t_selfpair(&sys, &ctx);
    sys.push("eq", eq);
    let v3 = sys.var_of(HalfInt::from_int(3));
    let killed = sys.equations[0].1.kill_var(v3, &ctx);
    println!("s4 pi_t(f.psi3) after c3 = 0:");
    for (m, c) in killed.terms() {
        println!("  {:?}: {}", m.0, display_scalar(c, &ctx));
    }
}

//! Runs the one-leg correspondence over the standard grid.
use gwpt::engine::{one_leg_grid, verify_one_leg, GwEvaluator};

fn main() {
    let mut ev = GwEvaluator::new();
    let mut failed = 0;
    for (mu, ks) in one_leg_grid() {
        let r = verify_one_leg(&mut ev, &mu, &ks, 10).unwrap();
        if !r.pass {
            failed += 1;
            println!("mu={mu} k={ks:?} differs by {}", r.difference);
        }
    }
    println!("{} cases, {failed} failed", one_leg_grid().len());
}

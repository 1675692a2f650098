//! Solves the dressing operator W and checks that it intertwines D and 𝒜
//! with their dressed versions.
use gwpt::dressing::{check_intertwine, solve_w, Intertwine};

fn main() {
    let w = solve_w(3).expect("no logarithmic terms");
    for (a, b, c) in w.iter() {
        println!("H^{a} S^{b}: {c}");
    }
    for which in [Intertwine::D, Intertwine::A { m: 1 }, Intertwine::ClosedForm] {
        let r = check_intertwine(which, 5).unwrap();
        println!("{which:?}: residual vanishes through u^{}: {}", r.precision, r.vanishes());
    }
}

//! Solves the Lambert-type curve order by order in `x` and checks the
//! back-substitution residual.
use gwpt::series::Var;
use gwpt::vertex_ops::{lambert_w, V};

fn main() {
    let c = lambert_w(5, 12).expect("curve solves");
    for j in 1..=3 {
        println!("[x^{j}] w = {}", c.w_coefficient(j).unwrap().truncate(V, 6));
    }
    let r = c.residual().unwrap().truncate(V, 10).truncate(Var::X, 5);
    println!("residual through x^5 vanishes: {}", r.is_zero());
}

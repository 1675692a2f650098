//! Heisenberg modes acting on the Fock space.
use gwpt::fock::{alpha_apply, mu_state};
use gwpt::partitions::Partition;

fn main() {
    // the power-sum state p_μ/z_μ in the Schur basis
    let v = mu_state(&Partition::parse("2,1").unwrap(), 5).unwrap();
    for (lam, c) in v.iter() {
        println!("v_{lam}: {c}");
    }
    let w = alpha_apply(-1, &v).unwrap();
    println!("a_-1 applied: {} terms", w.iter().count());
    let comm = alpha_apply(1, &w).unwrap().sub(&alpha_apply(-1, &alpha_apply(1, &v).unwrap()).unwrap());
    println!("[a_1, a_-1] acts as the identity: {}", comm.sub(&v).is_zero());
}

//! Converts between the standard descendents τ_k and the Heisenberg modes 𝔞_n.
use gwpt::heis::{a_to_tau, tau_to_a};
use gwpt::vertex_ops::heis_c_kappa;

fn main() {
    let kappa = heis_c_kappa();
    for k in 0..=3 {
        println!("tau_{k} = {}", tau_to_a(k, 6, true, &kappa));
    }
    for n in 1..=3 {
        println!("a_{n} = {}", a_to_tau(n, 6, true, &kappa));
    }
    // back and forth is the identity
    let t = tau_to_a(4, 8, true, &kappa);
    println!("tau_4 round trip: {}", t.convert(8, true));
}

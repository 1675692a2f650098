//! Relative brackets on both sides of the correspondence.
use gwpt::engine::{pt_bracket, GwEvaluator};
use gwpt::partitions::Partition;

fn main() {
    let mut ev = GwEvaluator::new();
    for mu in ["0", "1", "2", "1,1"] {
        let mu = Partition::parse(mu).unwrap();
        for ks in [vec![1], vec![2], vec![1, 2]] {
            let gw = ev.gw_hgw_bracket(&ks, &mu).unwrap();
            let pt = pt_bracket(&ks, &mu).unwrap();
            println!("mu={mu} k={ks:?}\n  GW: {}\n  PT: {}", gw.value, pt.value);
        }
    }
}

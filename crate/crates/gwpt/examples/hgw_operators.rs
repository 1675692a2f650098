//! The hatted GW descendent operators and their PT counterparts.
use gwpt::vertex_ops::{hgw_hat, hgw_product_hat, hpt_weights, PtSign};

fn main() {
    for k in 1..=5 {
        println!("H^GW_{k} = {}", hgw_hat(k).unwrap());
    }
    println!("H^GW_(2,1) = {}", hgw_product_hat(&[2, 1]).unwrap());
    for k in 0..=4 {
        let w = hpt_weights(k, PtSign::Generating).unwrap();
        let terms: Vec<String> = w.iter().map(|(j, c)| format!("({c}) ch_{j}")).collect();
        println!("H^PT_{k} = {}", terms.join(" + "));
    }
}

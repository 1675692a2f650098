//! Character table of S_4 and shifted power sums of its partitions.
use gwpt::partitions::{character, enumerate_partitions, shifted_newton};

fn main() {
    let ps = enumerate_partitions(4);
    for l in &ps {
        let row: Vec<i64> = ps.iter().map(|mu| character(l, mu).unwrap()).collect();
        let p2 = shifted_newton(2, l).unwrap();
        println!("{:<12} {row:?}  p_2 = {p2}", format!("{:?}", l.parts()));
    }
}

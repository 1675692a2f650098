use gwpt::partitions::*;
use gwpt::series::{Monomial, Scalar, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[test]
fn character_orthogonality() {
    for n in 1..=5 {
        let ps = enumerate_partitions(n);
        for mu in &ps {
            for nu in &ps {
                let s: i64 = ps.iter().map(|l| character(l, mu).unwrap() * character(l, nu).unwrap()).sum();
                let v = BigRational::new(s.into(), zmu(mu));
                let expect = if mu == nu { BigRational::one() } else { BigRational::zero() };
                assert_eq!(v, expect, "{mu:?} {nu:?}");
            }
        }
    }
}

#[test]
fn column_sums() {
    for n in 1..=5 {
        let ps = enumerate_partitions(n);
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        for mu in ps.iter().filter(|m| **m != ones) {
            let s: i64 = ps.iter().map(|l| character(l, &ones).unwrap() * character(l, mu).unwrap()).sum();
            assert_eq!(s, 0, "{mu:?}");
        }
    }
}

#[test]
fn dimension_is_trivial_character() {
    for n in 1..=6 {
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        for l in enumerate_partitions(n) {
            assert_eq!(BigInt::from(character(&l, &ones).unwrap()), l.dim());
        }
    }
}

#[test]
fn newton_ignores_zero_parts() {
    // the i-th summand vanishes when λᵢ = 0, so padding the sum changes nothing
    let half = |a: i64| BigRational::new((2 * a + 1).into(), 2.into());
    let pw = |x: BigRational, k: u32| (0..k).fold(BigRational::one(), |a, _| a * &x);
    for l in partitions_up_to(5) {
        for k in 1..=6u32 {
            let base = shifted_newton(k, &l).unwrap();
            let padded: BigRational = (1..=l.len() as i64 + 3)
                .map(|i| pw(half(l.part(i as usize - 1) as i64 - i), k) - pw(half(-i), k))
                .sum();
            let two_k = BigRational::from_integer(BigInt::from(2).pow(k));
            let zeta = (BigRational::one() - two_k.recip()) * gwpt::series::zeta_negative(k as usize);
            assert_eq!(base, padded + zeta);
        }
    }
}

#[test]
fn exp_weight_matches_newton() {
    for l in partitions_up_to(6) {
        let e = exp_weight(&l, 8);
        for k in 1..=8u32 {
            let fact: BigInt = (1..=k).map(BigInt::from).product();
            let c = &e.coeff_of(&Monomial::var(Var::X, k as i32)) * &Scalar::from(BigRational::from_integer(fact));
            assert_eq!(c, Scalar::from(shifted_newton(k, &l).unwrap()), "{l:?} k={k}");
        }
    }
}

#[test]
fn augmented_size_and_order() {
    let ps = enumerate_partitions(3);
    let shown: Vec<String> = ps.iter().map(|p| format!("{:?}", p.parts())).collect();
    assert_eq!(shown, ["[3]", "[2, 1]", "[1, 1, 1]"]);
    assert_eq!(Partition::parse("2,1").unwrap().aug_size(), 5);
}

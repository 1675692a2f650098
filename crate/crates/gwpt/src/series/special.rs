//! Bernoulli numbers, zeta values at negative integers, the F₃ series and the
//! hyperbolic-sine expansions used throughout.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::scalar::Scalar;
use super::trunc::{TruncSeries, Window};

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

fn binom(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

/// `B_n` with `B₁ = −1/2`, memoized.
pub fn bernoulli(n: usize) -> BigRational {
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        let b = if m == 0 {
            BigRational::one()
        } else {
            // Σ_{k<m+1} C(m+1,k) B_k = 0
            let mut s = BigRational::zero();
            for (k, bk) in table.iter().enumerate() {
                s += BigRational::from_integer(binom(m as u64 + 1, k as u64)) * bk;
            }
            -s / BigRational::from_integer(BigInt::from(m + 1))
        };
        table.push(b);
    }
    table[n].clone()
}

/// `ζ(−k) = −B_{k+1}/(k+1)` for `k ≥ 1`.
pub fn zeta_negative(k: usize) -> BigRational {
    assert!(k >= 1, "zeta_negative needs k ≥ 1");
    -bernoulli(k + 1) / BigRational::from_integer(BigInt::from(k + 1))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `F₃(u) = −Σ_{n≥0} B_{2n+2}B_{2n}/((2n)!(2n+2)) (iu)^{2n−1}`, through `u^order`.
pub fn f3_series(order: i32) -> TruncSeries {
    assert!(order >= -1, "f3_series needs order ≥ −1");
    let mut terms = Vec::new();
    let mut n = 0usize;
    while 2 * n as i32 - 1 <= order {
        let e = 2 * n as i64 - 1;
        let c = -(bernoulli(2 * n + 2) * bernoulli(2 * n))
            / BigRational::from_integer(factorial(2 * n as u64) * BigInt::from(2 * n + 2));
        let c = Scalar::from(c) * Scalar::i_pow(e);
        terms.push((Monomial::var(Var::U, e as i32), c));
        n += 1;
    }
    TruncSeries::new(terms, Window::exact().with_hi(Var::U, order).with_lo(Var::U, -1))
}

/// `Σ_{n≥1} n² qⁿ/(1−qⁿ)` through `q^order`.
pub fn f3_q_series(order: i32) -> TruncSeries {
    let mut terms = Vec::new();
    for big_n in 1..=order.max(0) {
        let sigma: i64 = (1..=big_n).filter(|d| big_n % d == 0).map(|d| (d * d) as i64).sum();
        terms.push((Monomial::var(Var::Q, big_n), Scalar::int(sigma)));
    }
    TruncSeries::new(terms, Window::exact().with_hi(Var::Q, order).with_lo(Var::Q, 1))
}

/// `𝒮(x) = (e^{x/2} − e^{−x/2})/x = Σ x^{2n}/(4ⁿ(2n+1)!)` in the monomial `x = m`,
/// truncated to total power `order` of `m`.
pub fn sinh_ratio(m: &Monomial, order: i32) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::new();
    let mut n = 0u64;
    while 2 * n as i32 <= order {
        let c = BigRational::new(BigInt::one(), BigInt::from(4u64.pow(n as u32)) * factorial(2 * n + 1));
        let mut mm = Monomial::ONE;
        for (v, e) in m.pairs() {
            mm.set(v, e * 2 * n as i32);
        }
        out.push((mm, Scalar::from(c)));
        n += 1;
    }
    out
}

/// `𝒮(c·v)` as a series in one variable `v`, through `v^order`.
pub fn sinh_ratio_series(v: Var, order: i32) -> TruncSeries {
    TruncSeries::new(sinh_ratio(&Monomial::var(v, 1), order), Window::exact().with_hi(v, order))
}

/// `e^{c·v}` through `v^order`.
pub fn exp_linear(v: Var, c: &Scalar, order: i32) -> TruncSeries {
    let mut terms = Vec::new();
    let mut coef = Scalar::one();
    for n in 0..=order.max(-1) {
        if n > 0 {
            coef = &(&coef * c) * &Scalar::frac(1, n as i64);
        }
        terms.push((Monomial::var(v, n), coef.clone()));
    }
    TruncSeries::new(terms, Window::exact().with_hi(v, order))
}

/// `1/(e^{v/2} − e^{−v/2})` as a Laurent series in `v` through `v^order`.
pub fn inv_two_sinh_half(v: Var, order: i32) -> TruncSeries {
    // 1/(v·𝒮(v)); 𝒮 is a unit, so expand 1/𝒮 to order+1
    let s = sinh_ratio_series(v, order + 1);
    let inv = super::analytic::inv(&s).expect("𝒮 is a unit");
    inv.shift_var(v, -1)
}

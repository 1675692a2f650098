//! Power-series functions of truncated series: exp, log, powers, inverses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::monomial::{Monomial, NV};
use super::scalar::Scalar;
use super::trunc::{TruncSeries, POS_INF};
use super::SeriesError;

/// Hard cap on the number of series terms summed before giving up.
const MAX_POWERS: usize = 4096;

/// Sums `Σ_{n≥0} coeff(n)·gⁿ` for `g` with positive valuation in some truncated
/// variable. The sum stops once every further power provably lies outside the
/// accumulated window.
fn compose(g: &TruncSeries, mut coeff: impl FnMut(usize) -> Scalar) -> Result<TruncSeries, SeriesError> {
    if !g.constant_term().is_zero() {
        return Err(SeriesError::ConstantTerm(g.constant_term().to_string()));
    }
    if g.is_zero() && g.window().lo.iter().all(|&l| l == POS_INF) {
        return Ok(TruncSeries::constant(coeff(0)).restrict_to(g.window()));
    }
    let lo = g.window().lo;
    let hi_g = g.window().hi;
    if !(0..NV).any(|k| lo[k] > 0 && lo[k] != POS_INF && hi_g[k] != POS_INF) {
        return Err(SeriesError::NoConvergence);
    }
    let mut acc = TruncSeries::constant(coeff(0));
    let mut power = TruncSeries::one();
    for n in 1..MAX_POWERS {
        power = &power * g;
        let c = coeff(n);
        if c.is_zero() {
            acc = acc.restrict_to(power.window());
        } else {
            acc = &acc + &power.scale(&c);
        }
        // every later power has v-valuation ≥ (n+1)·lo[v]
        let hi = acc.window().hi;
        let done = (0..NV).any(|k| {
            lo[k] > 0 && lo[k] != POS_INF && hi[k] != POS_INF && (n as i64 + 1) * lo[k] as i64 > hi[k] as i64
        });
        if done {
            return Ok(acc);
        }
    }
    Err(SeriesError::NoConvergence)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// `exp(f)` for `f` without constant term.
pub fn exp(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let mut fact = Scalar::one();
    compose(f, |n| {
        if n > 0 {
            fact = &fact * &q(1, n as i64);
        }
        fact.clone()
    })
}

/// `log(1+g)`.
pub fn log1p(g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    compose(g, |n| if n == 0 { Scalar::zero() } else { q(if n % 2 == 1 { 1 } else { -1 }, n as i64) })
}

/// `(1+g)^α` for a scalar exponent `α`.
pub fn pow1p(g: &TruncSeries, alpha: &Scalar) -> Result<TruncSeries, SeriesError> {
    let mut c = Scalar::one();
    compose(g, |n| {
        if n > 0 {
            let k = n as i64;
            c = &(&c * &(alpha - &Scalar::int(k - 1))) * &q(1, k);
        }
        c.clone()
    })
}

/// `(1+g)^α − 1`; keeps the valuation of `g`.
pub fn pow1p_m1(g: &TruncSeries, alpha: &Scalar) -> Result<TruncSeries, SeriesError> {
    let mut c = Scalar::one();
    compose(g, |n| {
        if n == 0 {
            return Scalar::zero();
        }
        let k = n as i64;
        c = &(&c * &(alpha - &Scalar::int(k - 1))) * &q(1, k);
        c.clone()
    })
}

/// `1/(1+g)`.
pub fn inv1p(g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    compose(g, |n| if n % 2 == 0 { Scalar::one() } else { Scalar::int(-1) })
}

/// `exp(f) − 1`; keeps the valuation of `f`.
pub fn expm1(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let mut fact = Scalar::one();
    compose(f, |n| {
        if n == 0 {
            return Scalar::zero();
        }
        fact = &fact * &q(1, n as i64);
        fact.clone()
    })
}

fn unit_part(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let c = f.constant_term();
    if !c.is_one() {
        return Err(SeriesError::ConstantTerm(c.to_string()));
    }
    Ok(f - &TruncSeries::one().restrict_to(f.window()))
}

/// `log f` for `f` with constant term 1.
pub fn log(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    log1p(&unit_part(f)?)
}

/// `f^α` for `f` with constant term 1 and scalar `α`.
pub fn pow_scalar(f: &TruncSeries, alpha: &Scalar) -> Result<TruncSeries, SeriesError> {
    pow1p(&unit_part(f)?, alpha)
}

/// `f^g = exp(g·log f)` for `f` with constant term 1.
pub fn pow(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    exp(&(g * &log(f)?))
}

/// Square root of `f` with constant term 1.
pub fn sqrt(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    pow_scalar(f, &q(1, 2))
}

/// `1/f` for `f` whose constant term is a nonzero scalar.
pub fn inv(f: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    let c = f.constant_term();
    if c.is_zero() {
        return Err(SeriesError::ConstantTerm("0".into()));
    }
    let ci = c.inv();
    let g = &f.scale(&ci) - &TruncSeries::one().restrict_to(f.window());
    Ok(inv1p(&g)?.scale(&ci))
}

/// `a/b`, see [`inv`].
pub fn div(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    Ok(a * &inv(b)?)
}

/// Multiplies by a monomial and a scalar in one step.
pub fn scaled_shift(f: &TruncSeries, m: &Monomial, c: &Scalar) -> TruncSeries {
    f.shift(m).scale(c)
}

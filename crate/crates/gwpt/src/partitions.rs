//! Partitions, symmetric-group characters and shifted power sums.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::special::inv_two_sinh_half;
use crate::series::{zeta_negative, Monomial, Scalar, TruncSeries, Var, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("sizes differ: |λ| = {0}, |μ| = {1}")]
    SizeMismatch(u32, u32),
    #[error("shifted power sums start at k = 1")]
    ZeroIndex,
    #[error("cannot parse partition {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Partition, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `"0"` or `""` is the empty partition, otherwise comma-separated parts.
    pub fn parse(s: &str) -> Result<Partition, PartitionError> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        Partition::new(parts.map_err(|_| PartitionError::Parse(s.into()))?)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ (1 + λᵢ)`.
    pub fn aug_size(&self) -> u32 {
        self.0.iter().map(|p| p + 1).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λᵢ` with `λᵢ = 0` past the end (0-based `i`).
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Hook length product `Π h(□)`.
    pub fn hook_product(&self) -> BigInt {
        let conj = self.conjugate();
        let mut h = BigInt::one();
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r {
                let arm = r - j - 1;
                let leg = conj.part(j as usize) - i as u32 - 1;
                h *= BigInt::from(arm + leg + 1);
            }
        }
        h
    }

    /// Number of standard Young tableaux, `|λ|!/Π h`.
    pub fn dim(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Partition, PartitionError> {
        let arr = v.as_array().ok_or_else(|| PartitionError::Parse(v.to_string()))?;
        let parts: Option<Vec<u32>> = arr.iter().map(|x| x.as_u64().map(|n| n as u32)).collect();
        Partition::new(parts.ok_or_else(|| PartitionError::Parse(v.to_string()))?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// All partitions of `n`, largest first part first: `(n), (n−1,1), …, (1ⁿ)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

type CharKey = (Vec<u32>, Vec<u32>);
static CHARACTERS: Mutex<Option<HashMap<CharKey, i64>>> = Mutex::new(None);

/// Beta numbers `λᵢ + ℓ − i`, strictly decreasing.
fn beta_numbers(parts: &[u32]) -> Vec<u32> {
    let l = parts.len() as u32;
    parts.iter().enumerate().map(|(i, &p)| p + l - 1 - i as u32).collect()
}

fn from_beta(mut beta: Vec<u32>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len() as u32;
    beta.iter().enumerate().map(|(i, &b)| b + 1 + i as u32 - l).filter(|&p| p > 0).collect()
}

fn mn(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = CHARACTERS.lock().unwrap_or_else(|e| e.into_inner()).get_or_insert_with(HashMap::new).get(&key) {
        return *v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let beta = beta_numbers(lambda);
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // removing a border strip of size r: b ↦ b − r; the height is the
        // number of beta numbers jumped over
        let height = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&from_beta(nb), rest);
    }
    CHARACTERS.lock().unwrap_or_else(|e| e.into_inner()).get_or_insert_with(HashMap::new).insert(key, total);
    total
}

/// `χ^λ_μ` by the Murnaghan–Nakayama rule.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, PartitionError> {
    if lambda.size() != mu.size() {
        return Err(PartitionError::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(mn(&lambda.0, &mu.0))
}

/// `z(μ) = Π mᵢ!·i^{mᵢ}`.
pub fn zmu(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut i = 0;
    while i < mu.0.len() {
        let p = mu.0[i];
        let m = mu.0[i..].iter().take_while(|&&q| q == p).count() as u32;
        z *= factorial(m) * BigInt::from(p).pow(m);
        i += m as usize;
    }
    z
}

fn half_shift(a: i64) -> BigRational {
    // a + 1/2
    BigRational::new(BigInt::from(2 * a + 1), BigInt::from(2))
}

/// `p_k(λ) = Σᵢ [(λᵢ − i + ½)^k − (−i + ½)^k] + (1 − 2^{−k}) ζ(−k)`.
pub fn shifted_newton(k: u32, lambda: &Partition) -> Result<BigRational, PartitionError> {
    if k == 0 {
        return Err(PartitionError::ZeroIndex);
    }
    let mut s = BigRational::zero();
    for (i, &p) in lambda.0.iter().enumerate() {
        let i = i as i64 + 1;
        s += pow_q(&half_shift(p as i64 - i), k) - pow_q(&half_shift(-i), k);
    }
    let two_k = BigRational::from_integer(BigInt::from(2).pow(k));
    s += (BigRational::one() - two_k.recip()) * zeta_negative(k as usize);
    Ok(s)
}

fn pow_q(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |a, _| a * x)
}

/// `E(v;λ) = Σᵢ [e^{v(λᵢ−i+½)} − e^{v(−i+½)}] + (e^{v/2} − e^{−v/2})^{−1}` through `v^order`.
pub fn exp_weight_in(lambda: &Partition, v: Var, order: i32) -> TruncSeries {
    assert!(order >= -1, "exp_weight needs order ≥ −1");
    let mut terms = Vec::new();
    for k in 0..=order.max(0) {
        let mut c = BigRational::zero();
        for (i, &p) in lambda.0.iter().enumerate() {
            let i = i as i64 + 1;
            c += pow_q(&half_shift(p as i64 - i), k as u32) - pow_q(&half_shift(-i), k as u32);
        }
        c /= BigRational::from_integer(factorial(k as u32));
        terms.push((Monomial::var(v, k), Scalar::from(c)));
    }
    let poly = TruncSeries::new(terms, Window::exact().with_hi(v, order));
    (&poly + &inv_two_sinh_half(v, order)).assume_lo(v, -1)
}

/// [`exp_weight_in`] in the variable `x`.
pub fn exp_weight(lambda: &Partition, x_order: i32) -> TruncSeries {
    exp_weight_in(lambda, Var::X, x_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(4)[1], p(&[3, 1]));
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::parse("3,1,1").unwrap(), p(&[3, 1, 1]));
        assert_eq!(Partition::parse("0").unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1]).aug_size(), 6);
    }

    #[test]
    fn small_characters() {
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), 2);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn dimension_by_hooks() {
        assert_eq!(p(&[2, 1]).dim(), BigInt::from(2));
        assert_eq!(p(&[3, 2]).dim(), BigInt::from(5));
        assert_eq!(Partition::empty().dim(), BigInt::one());
    }

    #[test]
    fn z_values() {
        assert_eq!(zmu(&Partition::empty()), BigInt::one());
        assert_eq!(zmu(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(zmu(&p(&[2])), BigInt::from(2));
        assert_eq!(zmu(&p(&[2, 2, 1])), BigInt::from(8));
    }

    #[test]
    fn newton_values() {
        assert_eq!(shifted_newton(1, &p(&[1])).unwrap(), q(23, 24));
        assert_eq!(shifted_newton(2, &p(&[1])).unwrap(), q(0, 1));
        assert_eq!(shifted_newton(1, &Partition::empty()).unwrap(), q(-1, 24));
        assert!(shifted_newton(0, &p(&[1])).is_err());
    }

    #[test]
    fn weight_of_empty_partition() {
        let e = exp_weight(&Partition::empty(), 3);
        assert_eq!(e, TruncSeries::parse("x^-1 - 1/24*x + 7/5760*x^3").unwrap());
        let e1 = exp_weight(&p(&[1]), 2);
        assert_eq!(e1.coeff_of(&Monomial::var(Var::X, 1)), Scalar::frac(23, 24));
    }
}

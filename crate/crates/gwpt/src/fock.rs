//! The charge-zero Fock space on the partition basis.
//!
//! Internally a partition `λ` is the semi-infinite set
//! `S(λ) = {λᵢ − i + ½}`; half-integers are stored doubled (`2k`) so that
//! all arithmetic stays in `i64`. Public states are always partition-indexed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::partitions::{character, enumerate_partitions, exp_weight_in, zmu, Partition};
use crate::series::special::{exp_linear, inv_two_sinh_half};
use crate::series::{Monomial, Scalar, TruncSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("α₀ is not an operator on the charge-zero space")]
    ZeroMode,
    #[error("state of energy {needed} exceeds the energy cap {cap}")]
    CapTooSmall { needed: u32, cap: u32 },
}

/// A finite combination `Σ c_λ v_λ` with `|λ| ≤ cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amps: BTreeMap<Partition, TruncSeries>,
    cap: u32,
    truncated: bool,
}

/// First `n` entries of `S(λ)`, doubled, decreasing.
pub fn maya(lambda: &Partition, n: usize) -> Vec<i64> {
    (0..n).map(|i| 2 * (lambda.part(i) as i64 - i as i64 - 1) + 1).collect()
}

fn from_maya(s: &[i64]) -> Partition {
    let mut s = s.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let parts = s.iter().enumerate().map(|(i, &k)| (k - 1) / 2 + i as i64 + 1).filter(|&p| p > 0).map(|p| p as u32).collect();
    Partition::new(parts).expect("Maya diagram of a partition")
}

/// One fermionic move `e_k ↦ e_{k−r}` applied to `v_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    /// Doubled charge `2k` of the moved particle.
    pub from2: i64,
    pub sign: i32,
    pub target: Partition,
}

/// All nonzero moves `e_k ↦ e_{k−r}` on `v_λ`, `r ≠ 0`, with the wedge
/// reordering sign `(−1)^{#particles strictly between}`.
pub fn fermion_moves(lambda: &Partition, r: i64) -> Vec<Move> {
    assert!(r != 0, "fermion_moves needs r ≠ 0");
    let n = lambda.len() + r.unsigned_abs() as usize + 1;
    let s = maya(lambda, n + r.unsigned_abs() as usize + 1);
    let mut out = Vec::new();
    for &k2 in &s[..n] {
        let t2 = k2 - 2 * r;
        if s.contains(&t2) {
            continue;
        }
        let (lo, hi) = if t2 < k2 { (t2, k2) } else { (k2, t2) };
        let between = s.iter().filter(|&&c| c > lo && c < hi).count();
        let moved: Vec<i64> = s.iter().map(|&c| if c == k2 { t2 } else { c }).collect();
        out.push(Move { from2: k2, sign: if between % 2 == 0 { 1 } else { -1 }, target: from_maya(&moved) });
    }
    out
}

/// Doubled charges entering the normal-ordered diagonal operator on `v_λ`:
/// occupied positive positions (`+`) and empty negative positions (`−`).
pub fn diagonal_charges(lambda: &Partition) -> (Vec<i64>, Vec<i64>) {
    let n = lambda.len() + lambda.part(0) as usize + 2;
    let s = maya(lambda, n);
    let plus = s.iter().copied().filter(|&k| k > 0).collect();
    let minus = (1..=n as i64).map(|i| -(2 * i - 1)).filter(|k| !s.contains(k)).collect();
    (plus, minus)
}

impl FockVector {
    pub fn zero(cap: u32) -> FockVector {
        FockVector { amps: BTreeMap::new(), cap, truncated: false }
    }

    pub fn vacuum(cap: u32) -> FockVector {
        FockVector::basis(Partition::empty(), cap)
    }

    /// `v_λ`; zero (and flagged as truncated) if `|λ|` exceeds the cap.
    pub fn basis(lambda: Partition, cap: u32) -> FockVector {
        let mut v = FockVector::zero(cap);
        v.add_term(lambda, TruncSeries::one());
        v
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Whether some component was dropped for exceeding the cap.
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn with_cap(mut self, cap: u32) -> FockVector {
        self.cap = cap;
        let before = self.amps.len();
        self.amps.retain(|l, _| l.size() <= cap);
        self.truncated |= self.amps.len() < before;
        self
    }

    pub fn amplitude(&self, lambda: &Partition) -> TruncSeries {
        self.amps.get(lambda).cloned().unwrap_or_else(TruncSeries::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &TruncSeries)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// Adds `c·v_λ`.
    pub fn add_term(&mut self, lambda: Partition, c: TruncSeries) {
        if lambda.size() > self.cap {
            self.truncated |= !c.is_zero();
            return;
        }
        let entry = self.amps.entry(lambda.clone()).or_insert_with(TruncSeries::zero);
        let sum = &*entry + &c;
        if sum.is_zero() {
            self.amps.remove(&lambda);
        } else {
            *entry = sum;
        }
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut r = self.clone().with_cap(self.cap.min(o.cap));
        r.truncated |= o.truncated;
        for (l, c) in &o.amps {
            r.add_term(l.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        self.add(&o.scale(&TruncSeries::int(-1)))
    }

    pub fn scale(&self, c: &TruncSeries) -> FockVector {
        let mut r = FockVector { amps: BTreeMap::new(), cap: self.cap, truncated: self.truncated };
        for (l, a) in &self.amps {
            r.add_term(l.clone(), a * c);
        }
        r
    }

    pub fn map_amps(&self, f: impl Fn(&Partition, &TruncSeries) -> TruncSeries) -> FockVector {
        let mut r = FockVector { amps: BTreeMap::new(), cap: self.cap, truncated: self.truncated };
        for (l, a) in &self.amps {
            r.add_term(l.clone(), f(l, a));
        }
        r
    }

    /// `Σ_λ a_λ b_λ` (the basis is orthonormal).
    pub fn pair(&self, o: &FockVector) -> TruncSeries {
        let mut s = TruncSeries::zero();
        for (l, a) in &self.amps {
            if let Some(b) = o.amps.get(l) {
                s = &s + &(a * b);
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .amps
            .iter()
            .map(|(l, c)| serde_json::json!({"partition": l.to_json(), "coeff": c.to_json()}))
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// `α_k v` for `k ≠ 0`; `α_{−k}` adds border strips of size `k`, `α_k` removes them.
pub fn alpha_apply(k: i64, v: &FockVector) -> Result<FockVector, FockError> {
    if k == 0 {
        return Err(FockError::ZeroMode);
    }
    let mut out = FockVector { amps: BTreeMap::new(), cap: v.cap, truncated: v.truncated };
    for (l, c) in &v.amps {
        if k < 0 && l.size() + (-k) as u32 > v.cap {
            out.truncated = true;
            continue;
        }
        for m in fermion_moves(l, k) {
            out.add_term(m.target, if m.sign > 0 { c.clone() } else { -c });
        }
    }
    Ok(out)
}

/// `|μ⟩ = Σ_λ χ^λ_μ / z(μ) · v_λ`.
pub fn mu_state(mu: &Partition, cap: u32) -> Result<FockVector, FockError> {
    if mu.size() > cap {
        return Err(FockError::CapTooSmall { needed: mu.size(), cap });
    }
    let z = zmu(mu);
    let mut v = FockVector::zero(cap);
    for l in enumerate_partitions(mu.size()) {
        let chi = character(&l, mu).expect("same size");
        if chi != 0 {
            let c = Scalar::from(BigRational::new(BigInt::from(chi), z.clone()));
            v.add_term(l, TruncSeries::constant(c));
        }
    }
    Ok(v)
}

/// `e^{α₁} v`; the sum is finite because `α₁` lowers energy.
pub fn exp_alpha1_apply(v: &FockVector) -> FockVector {
    let mut out = v.clone();
    let mut cur = v.clone();
    let mut n = 1i64;
    loop {
        cur = alpha_apply(1, &cur).expect("k = 1").scale(&TruncSeries::constant(Scalar::frac(1, n)));
        if cur.is_zero() {
            return out;
        }
        out = out.add(&cur);
        n += 1;
    }
}

/// `ℰ_r` with a caller-supplied weight: each move from charge `k` is weighted
/// by `weight(2k − r)` (the doubled argument `k − r/2`); for `r = 0` the
/// normal-ordered diagonal uses `weight(2k)` and the vacuum scalar `vac`.
pub fn e_r_apply_with(
    r: i64,
    v: &FockVector,
    weight: &dyn Fn(i64) -> TruncSeries,
    vac: &TruncSeries,
) -> FockVector {
    let mut out = FockVector { amps: BTreeMap::new(), cap: v.cap, truncated: v.truncated };
    for (l, c) in &v.amps {
        if r == 0 {
            let (plus, minus) = diagonal_charges(l);
            let mut eig = vac.clone();
            for k2 in plus {
                eig = &eig + &weight(k2);
            }
            for k2 in minus {
                eig = &eig - &weight(k2);
            }
            out.add_term(l.clone(), c * &eig);
            continue;
        }
        if r < 0 && l.size() + (-r) as u32 > v.cap {
            out.truncated = true;
            continue;
        }
        for m in fermion_moves(l, r) {
            let w = weight(m.from2 - r);
            let a = c * &w;
            out.add_term(m.target, if m.sign > 0 { a } else { -a });
        }
    }
    out
}

/// `ℰ_r(z) v` with `z`-expansions through `z^z_order`.
pub fn e_r_apply(r: i64, v: &FockVector, z_order: i32) -> FockVector {
    let weight = |c2: i64| exp_linear(Var::Z, &Scalar::frac(c2, 2), z_order);
    let vac = if r == 0 { inv_two_sinh_half(Var::Z, z_order) } else { TruncSeries::zero() };
    e_r_apply_with(r, v, &weight, &vac)
}

/// Multiplies each `v_λ` amplitude by `E(x·scale; λ)` through `x^x_order`.
pub fn diag_chern_apply(x: Var, scale: &Monomial, x_order: i32, v: &FockVector) -> FockVector {
    v.map_amps(|l, c| {
        let e = exp_weight_in(l, x, x_order).rescale_var(x, scale, &Scalar::one()).expect("exact in scale variables");
        c * &e
    })
}

/// The `v_∅` amplitude.
pub fn vacuum_pair(v: &FockVector) -> TruncSeries {
    v.amplitude(&Partition::empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn c(s: &str) -> TruncSeries {
        TruncSeries::parse(s).unwrap()
    }

    #[test]
    fn maya_roundtrip() {
        for l in crate::partitions::partitions_up_to(5) {
            let s = maya(&l, l.len() + 4);
            assert_eq!(from_maya(&s), l);
        }
    }

    #[test]
    fn creation_and_annihilation() {
        let vac = FockVector::vacuum(6);
        assert_eq!(alpha_apply(-1, &vac).unwrap(), FockVector::basis(p(&[1]), 6));
        assert_eq!(alpha_apply(1, &FockVector::basis(p(&[1]), 6)).unwrap(), vac);
        let two = alpha_apply(-2, &vac).unwrap();
        assert_eq!(two.amplitude(&p(&[2])), c("1"));
        assert_eq!(two.amplitude(&p(&[1, 1])), c("-1"));
        assert!(alpha_apply(0, &vac).is_err());
    }

    #[test]
    fn mu_states() {
        assert_eq!(mu_state(&Partition::empty(), 3).unwrap(), FockVector::vacuum(3));
        let v = mu_state(&p(&[1, 1]), 3).unwrap();
        assert_eq!(v.amplitude(&p(&[2])), c("1/2"));
        assert_eq!(v.amplitude(&p(&[1, 1])), c("1/2"));
        assert!(mu_state(&p(&[3]), 2).is_err());
    }

    #[test]
    fn exp_alpha_one() {
        let v = exp_alpha1_apply(&FockVector::basis(p(&[1]), 4));
        assert_eq!(v.amplitude(&p(&[1])), c("1"));
        assert_eq!(v.amplitude(&Partition::empty()), c("1"));
        let w = exp_alpha1_apply(&FockVector::basis(p(&[2, 1]), 4));
        // dim (2,1) / 3! = 1/3
        assert_eq!(vacuum_pair(&w), c("1/3"));
    }

    #[test]
    fn diagonal_operator_on_small_states() {
        let vac = e_r_apply(0, &FockVector::vacuum(3), 3);
        assert_eq!(vacuum_pair(&vac), inv_two_sinh_half(Var::Z, 3));
        let one = e_r_apply(0, &FockVector::basis(p(&[1]), 3), 3);
        let expect = &(&exp_linear(Var::Z, &Scalar::frac(1, 2), 3) - &exp_linear(Var::Z, &Scalar::frac(-1, 2), 3))
            + &inv_two_sinh_half(Var::Z, 3);
        assert_eq!(one.amplitude(&p(&[1])), expect);
    }

    #[test]
    fn chern_weight_on_one_box() {
        let v = diag_chern_apply(Var::X, &Monomial::var(Var::S, 1), 2, &FockVector::basis(p(&[1]), 2));
        let a = v.amplitude(&p(&[1]));
        assert_eq!(a.coeff_of(&Monomial::from_pairs(&[(Var::X, 1), (Var::S, 1)])), Scalar::frac(23, 24));
    }
}

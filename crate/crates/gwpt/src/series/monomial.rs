//! Variable registry and exponent vectors.

use std::fmt;

/// Number of registered variables.
pub const NV: usize = 32;

/// Largest index `k` for which `𝔞_k` / `𝔞_{-k}` have commuting stand-in variables.
pub const MAX_MODE: usize = 8;

/// Largest index `j` of the insertion variables `x_j`.
pub const MAX_XJ: usize = 6;

/// A registered formal variable.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u8);

impl Var {
    pub const U: Var = Var(0);
    pub const Z: Var = Var(1);
    pub const X: Var = Var(2);
    pub const Y: Var = Var(3);
    pub const S: Var = Var(4);
    pub const T: Var = Var(5);
    pub const C1: Var = Var(6);
    pub const C2: Var = Var(7);
    pub const THETA: Var = Var(8);
    pub const Q: Var = Var(9);

    /// Insertion variable `x_j`, `1 ≤ j ≤ 6`.
    pub fn xj(j: usize) -> Var {
        assert!((1..=MAX_XJ).contains(&j), "x_{j} out of range");
        Var(9 + j as u8)
    }

    /// Commuting stand-in for the mode `𝔞_k`, `1 ≤ |k| ≤ 8`.
    pub fn mode(k: i32) -> Var {
        let a = k.unsigned_abs() as usize;
        assert!(k != 0 && a <= MAX_MODE, "mode {k} out of range");
        if k > 0 {
            Var(15 + a as u8)
        } else {
            Var(23 + a as u8)
        }
    }

    /// Inverse of [`Var::mode`].
    pub fn as_mode(self) -> Option<i32> {
        match self.0 {
            16..=23 => Some(self.0 as i32 - 15),
            24..=31 => Some(-(self.0 as i32 - 23)),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "u".into(),
            1 => "z".into(),
            2 => "x".into(),
            3 => "y".into(),
            4 => "s".into(),
            5 => "t".into(),
            6 => "c1".into(),
            7 => "c2".into(),
            8 => "theta".into(),
            9 => "q".into(),
            10..=15 => format!("x{}", self.0 - 9),
            _ => format!("a{}", self.as_mode().unwrap()),
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        (0..NV as u8).map(Var).find(|v| v.name() == s)
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NV as u8).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over the registry; absent variables have exponent 0.
/// The derived ordering is the canonical monomial order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i8; NV]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NV]);

    pub fn var(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::ONE;
        m.set(v, e);
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Monomial {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.set(v, m.get(v) + e);
        }
        m
    }

    #[inline]
    pub fn get(&self, v: Var) -> i32 {
        self.0[v.index()] as i32
    }

    #[inline]
    pub fn set(&mut self, v: Var, e: i32) {
        self.0[v.index()] = i8::try_from(e).expect("exponent overflow");
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = [0i8; NV];
        for k in 0..NV {
            r[k] = self.0[k].checked_add(o.0[k]).expect("exponent overflow");
        }
        Monomial(r)
    }

    pub fn inv(&self) -> Monomial {
        let mut r = *self;
        for e in r.0.iter_mut() {
            *e = -*e;
        }
        r
    }

    /// Non-zero `(variable, exponent)` pairs in registry order.
    pub fn pairs(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (Var(k as u8), e as i32))
    }

    /// Weighted degree under the given grading.
    pub fn degree(&self, weights: &[(Var, i32)]) -> i32 {
        weights.iter().map(|&(v, w)| w * self.get(v)).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.pairs() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for v in Var::all() {
            assert_eq!(Var::from_name(&v.name()), Some(v));
        }
        assert_eq!(Var::mode(-3).name(), "a-3");
        assert_eq!(Var::xj(2).name(), "x2");
    }

    #[test]
    fn multiply_adds_exponents() {
        let a = Monomial::from_pairs(&[(Var::U, -2), (Var::T, 1)]);
        let b = Monomial::from_pairs(&[(Var::U, 3)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs(&[(Var::U, 1), (Var::T, 1)]));
        assert_eq!(a.mul(&a.inv()), Monomial::ONE);
    }
}

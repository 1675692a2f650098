//! The algebra generated by `H` and `S`, the dressing operator `W` and the
//! intertwining identities it satisfies.
//!
//! `S = α₋₁` raises energy and `H` is the energy operator, so `SH = (H − 1)S`
//! and `S^b g(H) = g(H − b) S^b`. Elements are stored as `Σ c·H^a S^b` with
//! `H` to the left.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::fock::{alpha_apply, FockError, FockVector};
use crate::series::special::sinh_ratio_series;
use crate::series::{analytic, Monomial, Scalar, SeriesError, TruncSeries, Var, NEG_INF, POS_INF};

/// A finite sum `Σ c_{a,b} H^a S^b` with series coefficients.
///
/// The element is known through `u^prec`. Coefficients are truncated there,
/// and an absent `(a, b)` means a zero coefficient through that order.
#[derive(Clone, Debug)]
pub struct GlVElement {
    /// `(b, a) ↦ c`: S-exponent first so that terms group by S-degree.
    terms: BTreeMap<(i32, u32), TruncSeries>,
    prec: i32,
}

impl PartialEq for GlVElement {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

fn hi_plus_lo(hi: i32, lo: i32) -> i32 {
    if hi == POS_INF || lo == POS_INF {
        POS_INF
    } else if hi == NEG_INF || lo == NEG_INF {
        NEG_INF
    } else {
        hi + lo
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

impl GlVElement {
    pub fn zero() -> GlVElement {
        GlVElement { terms: BTreeMap::new(), prec: POS_INF }
    }

    pub fn one() -> GlVElement {
        GlVElement::scalar(TruncSeries::one())
    }

    pub fn scalar(c: TruncSeries) -> GlVElement {
        GlVElement::monomial(0, 0, c)
    }

    pub fn h() -> GlVElement {
        GlVElement::monomial(1, 0, TruncSeries::one())
    }

    pub fn s(b: i32) -> GlVElement {
        GlVElement::monomial(0, b, TruncSeries::one())
    }

    /// `c·H^a S^b`.
    pub fn monomial(a: u32, b: i32, c: TruncSeries) -> GlVElement {
        let mut e = GlVElement::zero();
        e.add_term(a, b, c);
        e
    }

    pub fn add_term(&mut self, a: u32, b: i32, c: TruncSeries) {
        let hi = c.window().hi(Var::U);
        if hi < self.prec {
            self.set_precision(hi);
        }
        let c = c.truncate(Var::U, self.prec);
        let key = (b, a);
        let sum = match self.terms.get(&key) {
            Some(x) => x + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Lowers the `u`-precision of every coefficient to `hi`.
    pub fn set_precision(&mut self, hi: i32) {
        if hi >= self.prec {
            return;
        }
        self.prec = hi;
        let terms = std::mem::take(&mut self.terms);
        for (k, c) in terms {
            let c = c.truncate(Var::U, hi);
            if !c.is_zero() {
                self.terms.insert(k, c);
            }
        }
    }

    /// `u`-valuation bound from the coefficient windows.
    pub fn valuation(&self) -> i32 {
        self.terms.values().map(|c| c.window().lo(Var::U)).min().unwrap_or(POS_INF)
    }

    /// Coefficient of `H^a S^b`.
    pub fn coeff(&self, a: u32, b: i32) -> TruncSeries {
        self.terms.get(&(b, a)).cloned().unwrap_or_else(TruncSeries::zero)
    }

    /// `(a, b, c)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, &TruncSeries)> {
        self.terms.iter().map(|(&(b, a), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// The `S^b` component as a polynomial in `H`.
    pub fn s_component(&self, b: i32) -> GlVElement {
        let mut e = GlVElement::zero();
        for (a, bb, c) in self.iter() {
            if bb == b {
                e.add_term(a, b, c.clone());
            }
        }
        e
    }

    pub fn add(&self, o: &GlVElement) -> GlVElement {
        let mut r = self.clone();
        r.set_precision(o.prec);
        for (a, b, c) in o.iter() {
            r.add_term(a, b, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &GlVElement) -> GlVElement {
        self.add(&o.scale(&TruncSeries::int(-1)))
    }

    pub fn scale(&self, c: &TruncSeries) -> GlVElement {
        let mut r = GlVElement::zero();
        let w = c.window();
        r.set_precision(hi_plus_lo(self.prec, w.lo(Var::U)).min(hi_plus_lo(w.hi(Var::U), self.valuation())));
        for (a, b, x) in self.iter() {
            r.add_term(a, b, x * c);
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> GlVElement {
        let mut r = GlVElement::zero();
        r.set_precision(self.prec);
        for (a, b, x) in self.iter() {
            r.add_term(a, b, f(x));
        }
        r
    }

    /// Product in canonical form: `H^a S^b · H^c S^d = H^a (H − b)^c S^{b+d}`.
    pub fn mul(&self, o: &GlVElement) -> GlVElement {
        let mut r = GlVElement::zero();
        r.set_precision(hi_plus_lo(self.prec, o.valuation()).min(hi_plus_lo(o.prec, self.valuation())));
        for (a1, b1, c1) in self.iter() {
            for (a2, b2, c2) in o.iter() {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                for j in 0..=a2 {
                    let w = binom(a2, j) * BigInt::from(-b1).pow(a2 - j);
                    if w == BigInt::from(0) {
                        continue;
                    }
                    r.add_term(a1 + j, b1 + b2, c.scale(&Scalar::from(BigRational::from_integer(w))));
                }
            }
        }
        r
    }

    /// `Σ_{n≥0} X^n/n!` for `X` of positive `u`-valuation in a truncated
    /// window; stops when the powers vanish.
    pub fn exp(&self) -> GlVElement {
        let mut out = GlVElement::one();
        let mut p = GlVElement::one();
        for n in 1..4096 {
            p = p.mul(self).scale(&TruncSeries::constant(Scalar::frac(1, n))).truncate(Var::U, self.prec);
            if p.is_zero() {
                break;
            }
            out = out.add(&p);
        }
        out
    }

    /// `(1 + N)^{−1} = Σ (−N)^m` for `self = 1 + N` with `N` of positive
    /// `u`-valuation in a truncated window.
    pub fn inverse(&self) -> GlVElement {
        let n = self.sub(&GlVElement::one());
        let neg = n.scale(&TruncSeries::int(-1));
        let mut out = GlVElement::one();
        let mut p = GlVElement::one();
        for _ in 0..4096 {
            p = p.mul(&neg).truncate(Var::U, self.prec);
            if p.is_zero() {
                break;
            }
            out = out.add(&p);
        }
        out
    }

    pub fn truncate(&self, v: Var, hi: i32) -> GlVElement {
        let mut r = self.map_coeffs(|c| c.clone().truncate(v, hi));
        if v == Var::U {
            r.set_precision(hi);
        }
        r
    }

    pub fn eval_var(&self, v: Var, x: &Scalar) -> Result<GlVElement, SeriesError> {
        let mut r = GlVElement::zero();
        r.set_precision(self.prec);
        for (a, b, c) in self.iter() {
            r.add_term(a, b, c.eval_var(v, x)?);
        }
        Ok(r)
    }

    /// The order in `u` through which the element is known.
    pub fn u_precision(&self) -> i32 {
        self.prec
    }

    /// Action on the Fock space, `H` the energy and `S = α₋₁`.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector, FockError> {
        let mut out = FockVector::zero(v.cap());
        let mut by_b: BTreeMap<i32, FockVector> = BTreeMap::new();
        for (a, b, c) in self.iter() {
            if let std::collections::btree_map::Entry::Vacant(e) = by_b.entry(b) {
                let mut w = v.clone();
                let k = if b > 0 { -1 } else { 1 };
                for _ in 0..b.unsigned_abs() {
                    w = alpha_apply(k, &w)?;
                }
                e.insert(w);
            }
            let w = &by_b[&b];
            let hw = w.map_amps(|lam, x| x.scale(&Scalar::int(lam.size() as i64).pow(a as i64)));
            out = out.add(&hw.scale(c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter().map(|(a, b, c)| serde_json::json!({"h": a, "s": b, "coeff": c.to_json()})).collect(),
        )
    }
}

/// `Ψ`: `u ↦ ius`, `S = α₋₁ ↦ s·S`, `S^{−1} ↦ S^{−1}/s`, `H` fixed.
pub fn psi_twist(e: &GlVElement) -> Result<GlVElement, SeriesError> {
    let mut r = GlVElement::zero();
    r.set_precision(e.u_precision());
    for (a, b, c) in e.iter() {
        let c = psi_series(c)?.shift(&Monomial::var(Var::S, b));
        r.add_term(a, b, c);
    }
    Ok(r)
}

/// `Ψ` on scalars: `u ↦ ius`.
pub fn psi_series(c: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    c.rescale_var(Var::U, &Monomial::var(Var::S, 1), &Scalar::i())
}

/// `b_c(H)`, the `((u/t)S^{−1})^c` coefficient of the generator `B` of the
/// dressing flow in the present conventions.
pub fn b_coefficient(c: u32) -> [BigRational; 3] {
    let n = c as i64;
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let c2 = |m: i64| if m >= 2 { m * (m - 1) / 2 } else { 0 };
    let c3 = |m: i64| if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
    [r(2 * c3(n + 2) + 3 * c3(n + 1), 8), r(c2(n + 1), 1), r(n + 1, 2)]
}

/// The flow generator `B = Σ_c b_c(H)(u/t)^c S^{−c}` through `c ≤ j_max`.
pub fn b_operator(j_max: i32) -> GlVElement {
    let mut e = GlVElement::zero();
    for c in 0..=j_max {
        for (a, x) in b_coefficient(c as u32).iter().enumerate() {
            if x != &BigRational::from_integer(0.into()) {
                e.add_term(a as u32, -c, ut_power(c).scale(&Scalar::from(x.clone())).truncate(Var::U, j_max));
            }
        }
    }
    e
}

fn ut_power(j: i32) -> TruncSeries {
    TruncSeries::mono(Monomial::from_pairs(&[(Var::U, j), (Var::T, -j)]), Scalar::one())
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DressingError {
    #[error("logarithmic term at (u/t)^{j} S^{b}")]
    Logarithmic { j: i32, b: i32 },
}

/// Polynomial in `H`, lowest degree first.
type HPoly = Vec<BigRational>;

fn hpoly_shift(p: &HPoly, by: i64) -> HPoly {
    // p(H + by)
    let mut out = vec![BigRational::from_integer(0.into()); p.len()];
    for (a, c) in p.iter().enumerate() {
        for j in 0..=a {
            let w = binom(a as u32, j as u32) * BigInt::from(by).pow((a - j) as u32);
            out[j] += c * BigRational::from_integer(w);
        }
    }
    out
}

fn hpoly_mul(p: &HPoly, q: &HPoly) -> HPoly {
    let mut out = vec![BigRational::from_integer(0.into()); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `W = Σ w_{n,J}(H)(u/t)^J S^{−n}` with `W|_{u=0} = 1` and `dW/du = WB/t`,
/// through `(u/t)^{j_max}`. The recursion is
/// `J·w_{n,J} = Σ_c w_{n−c,J−1−c}(H)·b_c(H + n − c)`; it integrates `u^{J−1}`
/// with `J ≥ 1`, so a logarithm would show up as a `J = 0` integrand.
pub fn solve_w(j_max: i32) -> Result<GlVElement, DressingError> {
    let mut w: BTreeMap<(i32, i32), HPoly> = BTreeMap::new();
    w.insert((0, 0), vec![BigRational::from_integer(1.into())]);
    for j in 1..=j_max {
        for n in 0..=j {
            let mut acc: HPoly = vec![BigRational::from_integer(0.into())];
            for c in 0..=n {
                let Some(prev) = w.get(&(n - c, j - 1 - c)) else { continue };
                let b: HPoly = b_coefficient(c as u32).to_vec();
                let term = hpoly_mul(prev, &hpoly_shift(&b, (n - c) as i64));
                if term.len() > acc.len() {
                    acc.resize(term.len(), BigRational::from_integer(0.into()));
                }
                for (i, x) in term.into_iter().enumerate() {
                    acc[i] += x;
                }
            }
            if acc.iter().all(|x| x == &BigRational::from_integer(0.into())) {
                continue;
            }
            if j == 0 {
                return Err(DressingError::Logarithmic { j: -1, b: -n });
            }
            let jj = BigRational::from_integer(j.into());
            w.insert((n, j), acc.into_iter().map(|x| x / &jj).collect());
        }
    }
    let mut e = GlVElement::zero();
    for ((n, j), p) in w {
        for (a, x) in p.into_iter().enumerate() {
            if x != BigRational::from_integer(0.into()) {
                e.add_term(a as u32, -n, ut_power(j).scale(&Scalar::from(x)).truncate(Var::U, j_max));
            }
        }
    }
    // pad every coefficient to the common window
    Ok(e.truncate(Var::U, j_max).map_coeffs(|c| c.clone().truncate(Var::U, j_max)))
}

/// `D = S^{−1} + H`.
pub fn d_operator() -> GlVElement {
    GlVElement::s(-1).add(&GlVElement::h())
}

/// `D̃ = S^{−1} + Σ_{n≥0}(u/t)ⁿ(H + n/2)S^{−n}` through `(u/t)^{j_max}`.
pub fn d_tilde(j_max: i32) -> GlVElement {
    let mut e = GlVElement::s(-1);
    for n in 0..=j_max {
        let c = ut_power(n).truncate(Var::U, j_max);
        e.add_term(1, -n, c.clone());
        e.add_term(0, -n, c.scale(&Scalar::frac(n as i64, 2)));
    }
    e
}

/// `1/(m+1)_r` in the two-sided convention, `r ∈ ℤ`.
pub fn inv_pochhammer(m: i64, r: i64) -> BigRational {
    let mut p = BigRational::from_integer(1.into());
    if r >= 0 {
        for j in 1..=r {
            p /= BigRational::from_integer((m + j).into());
        }
    } else {
        for j in 0..-r {
            p *= BigRational::from_integer((m - j).into());
        }
    }
    p
}

/// `𝒜|_{t=1, z=m} = (1/u)Σ_{r≥−m} 𝒮(um)^{m+r} (um)^r/(m+1)_r S^{−r} e^{um(H − r/2)}`
/// through `u^{u_order}`.
pub fn a_operator_at(m: i64, u_order: i32) -> Result<GlVElement, SeriesError> {
    let mut e = GlVElement::zero();
    let mm = BigRational::from_integer(m.into());
    for r in -m..=(u_order as i64 + 1) {
        // u^{r−1} times a unit series, needed through u^{u_order − r + 1}
        let need = u_order - r as i32 + 1;
        let pre = if m + r == 0 {
            TruncSeries::one().truncate(Var::U, need)
        } else {
            let sser = sinh_ratio_series(Var::U, need).scale_var(Var::U, &Scalar::int(m));
            analytic::pow_scalar(&sser, &Scalar::int(m + r))?
        };
        let c = mm.pow(r as i32) * inv_pochhammer(m, r);
        if c == BigRational::from_integer(0.into()) {
            continue;
        }
        let pre = pre.scale(&Scalar::from(c));
        // S^{−r} e^{um(H − r/2)} = e^{um(H + r/2)} S^{−r}
        let half_r = BigRational::new(r.into(), 2.into());
        let mut fact = BigRational::from_integer(1.into());
        for j in 0..=need {
            if j > 0 {
                fact *= BigRational::from_integer(j.into());
            }
            let base = pre
                .shift_var(Var::U, r as i32 - 1 + j)
                .scale(&Scalar::from(mm.pow(j) / &fact))
                .truncate(Var::U, u_order);
            for i in 0..=j as u32 {
                let w = BigRational::from_integer(binom(j as u32, i)) * half_r.pow(j - i as i32);
                if w != BigRational::from_integer(0.into()) {
                    e.add_term(i, -(r as i32), base.scale(&Scalar::from(w)));
                }
            }
        }
    }
    Ok(e)
}

/// `Ã|_{t=1, z=m} = 1/u + Σ_{k≠0, k≥−m} m^k/(m+1)_k u^{k−1} S^{−k}` through
/// `u^{u_order}`.
pub fn a_tilde_at(m: i64, u_order: i32) -> GlVElement {
    let mut e = GlVElement::scalar(TruncSeries::term(Scalar::one(), &[(Var::U, -1)]).truncate(Var::U, u_order));
    for k in -m..=(u_order as i64 + 1) {
        if k == 0 {
            continue;
        }
        let mk = if k >= 0 {
            BigRational::from_integer(BigInt::from(m).pow(k as u32))
        } else {
            BigRational::new(1.into(), BigInt::from(m).pow((-k) as u32))
        };
        let c = mk * inv_pochhammer(m, k);
        let s = TruncSeries::mono(Monomial::var(Var::U, k as i32 - 1), Scalar::from(c)).truncate(Var::U, u_order);
        e.add_term(0, -(k as i32), s);
    }
    e
}

/// `𝒜^{(1)} = S·e^{u/2 + uH + uS^{−1}}`, the closed form of `u²𝒜|_{t=1,z=1}`.
pub fn a1_closed(u_order: i32) -> GlVElement {
    let u = TruncSeries::var(Var::U).truncate(Var::U, u_order);
    let x = GlVElement::scalar(u.scale(&Scalar::frac(1, 2)))
        .add(&GlVElement::monomial(1, 0, u.clone()))
        .add(&GlVElement::monomial(0, -1, u));
    GlVElement::s(1).mul(&x.exp())
}

/// `Ã^{(1)} = S·e^{uS^{−1}}`.
pub fn a1_tilde_closed(u_order: i32) -> GlVElement {
    let u = TruncSeries::var(Var::U).truncate(Var::U, u_order);
    GlVElement::s(1).mul(&GlVElement::monomial(0, -1, u).exp())
}

/// Which intertwining identity to check.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Intertwine {
    /// `W^{−1} D W = D̃`.
    D,
    /// `𝒜 W = W Ã` at `t = 1`, `z = m`.
    A { m: i64 },
    /// `W^{−1}𝒜^{(1)}W = Ã^{(1)}` from the closed forms.
    ClosedForm,
}

/// Residual of an intertwining identity with `W` solved through
/// `(u/t)^{j_max}`, together with the `u`-precision it is valid to.
#[derive(Clone, Debug)]
pub struct Residual {
    pub value: GlVElement,
    pub precision: i32,
}

impl Residual {
    pub fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
}

pub fn check_intertwine(which: Intertwine, j_max: i32) -> Result<Residual, SeriesError> {
    let w = solve_w(j_max).expect("no logarithmic terms");
    let one = Scalar::one();
    let value = match which {
        Intertwine::D => {
            let wi = w.inverse();
            wi.mul(&d_operator()).mul(&w).sub(&d_tilde(j_max))
        }
        Intertwine::A { m } => {
            // 𝒜 starts at u^{−1}, so the product loses one order
            let w1 = w.eval_var(Var::T, &one)?;
            let a = a_operator_at(m, j_max)?;
            let at = a_tilde_at(m, j_max);
            a.mul(&w1).sub(&w1.mul(&at))
        }
        Intertwine::ClosedForm => {
            let w1 = w.eval_var(Var::T, &one)?;
            let wi = w1.inverse();
            wi.mul(&a1_closed(j_max)).mul(&w1).sub(&a1_tilde_closed(j_max))
        }
    };
    let precision = value.u_precision().min(j_max);
    let value = value.map_coeffs(|c| c.clone().truncate(Var::U, precision));
    Ok(Residual { value, precision })
}

/// `Ã_k = (1/u)Σ_j u^j [z^{k−j}](1/(tz+1)_j) α_j + δ_{k0}/u`, as `(j, coefficient)`
/// pairs; creators are listed down to `α_{−j_min}`.
pub fn a_tilde_mode(k: i64, j_min: i64) -> Vec<(i64, TruncSeries)> {
    let mut out = Vec::new();
    if k == 0 {
        out.push((0, TruncSeries::term(Scalar::one(), &[(Var::U, -1)])));
    }
    for j in -j_min..=k.max(0) {
        if j == 0 {
            continue;
        }
        let e = k - j;
        if e < 0 {
            continue;
        }
        // [z^e] of 1/Π_{i=1}^{j}(tz + i) or Π_{i=0}^{|j|−1}(tz − i)
        let poly = pochhammer_poly(j, e as usize);
        let Some(c) = poly.get(e as usize).cloned() else { continue };
        if c == BigRational::from_integer(0.into()) {
            continue;
        }
        let s = TruncSeries::mono(Monomial::from_pairs(&[(Var::U, j as i32 - 1), (Var::T, e as i32)]), Scalar::from(c));
        out.push((j, s));
    }
    out
}

/// Coefficients in `w = tz` of `1/(w+1)_j`, lowest first, through `w^order`.
fn pochhammer_poly(j: i64, order: usize) -> Vec<BigRational> {
    let zero = || BigRational::from_integer(0.into());
    if j > 0 {
        let mut c = vec![zero(); order + 1];
        c[0] = BigRational::from_integer(1.into());
        for i in 1..=j {
            let ii = BigRational::from_integer(i.into());
            let mut next = vec![zero(); order + 1];
            for a in 0..=order {
                let mut f = BigRational::from_integer(1.into()) / &ii;
                for b in 0..=(order - a) {
                    next[a + b] += &c[a] * &f;
                    f = -f / &ii;
                }
            }
            c = next;
        }
        c
    } else {
        let mut c = vec![BigRational::from_integer(1.into())];
        for i in 0..-j {
            let mut next = vec![zero(); c.len() + 1];
            for (a, x) in c.iter().enumerate() {
                next[a + 1] += x;
                next[a] -= x * BigRational::from_integer(i.into());
            }
            c = next;
        }
        c
    }
}

/// `Ã_k v` on the truncated Fock space.
pub fn a_tilde_apply(k: i64, v: &FockVector) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero(v.cap());
    for (j, c) in a_tilde_mode(k, v.cap() as i64) {
        let w = if j == 0 { v.clone() } else { alpha_apply(j, v)? };
        out = out.add(&w.scale(&c));
    }
    Ok(out)
}

/// `ᾱ_k v` for the twisted generators `ᾱ_k = sα_k`,
/// `ᾱ_{−k} = stα_{−k} − tδ_{k,1} + iuδ_{k,2}` (`k > 0`).
pub fn alpha_bar_apply(k: i64, v: &FockVector) -> Result<FockVector, FockError> {
    let w = alpha_apply(k, v)?;
    if k > 0 {
        return Ok(w.scale(&TruncSeries::var(Var::S)));
    }
    let mut out = w.scale(&TruncSeries::term(Scalar::one(), &[(Var::S, 1), (Var::T, 1)]));
    match k {
        -1 => out = out.sub(&v.scale(&TruncSeries::var(Var::T))),
        -2 => out = out.add(&v.scale(&TruncSeries::term(Scalar::i(), &[(Var::U, 1)]))),
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> TruncSeries {
        TruncSeries::parse(x).unwrap()
    }

    #[test]
    fn commutation_relation() {
        let sh = GlVElement::s(1).mul(&GlVElement::h());
        let expect = GlVElement::h().mul(&GlVElement::s(1)).sub(&GlVElement::s(1));
        assert_eq!(sh, expect);
        assert_eq!(GlVElement::s(-1).mul(&GlVElement::s(1)), GlVElement::one());
        let hs = GlVElement::h().mul(&GlVElement::s(1));
        // (HS)(HS) = H(H − 1)S²
        let sq = GlVElement::monomial(2, 2, s("1")).add(&GlVElement::monomial(1, 2, s("-1")));
        assert_eq!(hs.mul(&hs), sq);
    }

    #[test]
    fn low_order_dressing() {
        let w = solve_w(2).unwrap();
        assert_eq!(w.coeff(0, 0).truncate(Var::U, 2), s("1").truncate(Var::U, 2));
        assert_eq!(w.coeff(2, 0).coeff(Var::U, 1).unwrap(), s("1/2*t^-1"));
        assert_eq!(w.coeff(4, 0).coeff(Var::U, 2).unwrap(), s("1/8*t^-2"));
        let s1 = w.s_component(-1);
        assert_eq!(s1.coeff(2, -1).coeff(Var::U, 2).unwrap(), s("1/2*t^-2"));
        assert_eq!(s1.coeff(1, -1).coeff(Var::U, 2).unwrap(), s("1/2*t^-2"));
        assert_eq!(s1.coeff(0, -1).coeff(Var::U, 2).unwrap(), s("1/8*t^-2"));
        assert!(w.s_component(-2).is_zero());
        assert!(w.s_component(1).is_zero());
    }

    #[test]
    fn pochhammer_conventions() {
        assert_eq!(inv_pochhammer(2, 2), BigRational::new(1.into(), 12.into()));
        assert_eq!(inv_pochhammer(2, -2), BigRational::from_integer(2.into()));
        assert_eq!(inv_pochhammer(1, -2), BigRational::from_integer(0.into()));
    }

    #[test]
    fn a_tilde_zero_mode() {
        let modes = a_tilde_mode(0, 3);
        assert_eq!(modes[0], (0, s("u^-1")));
    }
}

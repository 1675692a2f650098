//! The correspondence operators: the Lambert curve, the field φ(z), the
//! residue formula for `H^GW(x)`, the `H^PT` weights and the hat/tilde/overline
//! assemblies.
//!
//! Rational functions of `y` are expanded at `y = ∞` in `v = 1/y` (stored in
//! [`Var::Y`]). The curve solution is written `w = y(1 + d)` with
//! `X = x/θ` in [`Var::X`]; `d` has valuation one in both `v` and `X`.

use std::collections::BTreeMap;

use crate::heis::{Basis, HeisError, HeisMonomial, HeisPoly};
use crate::series::special::sinh_ratio_series;
use crate::series::{analytic, Monomial, Scalar, SeriesError, TruncSeries, Var, MAX_MODE};

/// Stand-in for `v = 1/y`.
pub const V: Var = Var::Y;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VertexError {
    #[error("insertion index {0} is out of range")]
    BadIndex(i32),
    #[error("annihilators up to 𝔞_{needed} are required but only {limit} modes are available")]
    ModeLimit { needed: i32, limit: i32 },
    #[error("the v-window did not converge after {0} enlargements")]
    Window(usize),
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Solution of the Lambert curve `y e^y = w e^w e^{x/θ}` around `x = 0`.
#[derive(Clone, Debug)]
pub struct CurveSolution {
    /// `d = w/y − 1` as a series in `v` and `X`.
    pub d: TruncSeries,
    pub x_order: i32,
    pub v_order: i32,
}

impl CurveSolution {
    /// `[x^j] w(y)` as a Laurent series in `v`, including the factor `θ^{−j}`.
    pub fn w_coefficient(&self, j: i32) -> Result<TruncSeries, SeriesError> {
        if j == 0 {
            return Ok(TruncSeries::var(V).shift_var(V, -2));
        }
        let c = self.d.coeff(Var::X, j)?;
        Ok(c.shift(&Monomial::from_pairs(&[(V, -1), (Var::THETA, -j)])))
    }

    /// `(1+d)·e^{d/v + X} − 1`, which is `w e^w e^{X}/(y e^y) − 1`.
    pub fn residual(&self) -> Result<TruncSeries, SeriesError> {
        let arg = (&self.d.shift_var(V, -1) + &TruncSeries::var(Var::X)).assume_lo(Var::X, 1);
        let e = analytic::exp(&arg)?;
        let one = TruncSeries::one();
        Ok(&(&(&one + &self.d) * &e) - &one)
    }
}

/// Solves the curve order by order: `d = −v(X + log(1 + d))`, to `X^{x_order}`
/// and `v^{v_order}`.
pub fn lambert_w(x_order: i32, v_order: i32) -> Result<CurveSolution, SeriesError> {
    let x = TruncSeries::var(Var::X).truncated(&[(Var::X, x_order), (V, v_order)]);
    let v = TruncSeries::var(V).truncated(&[(Var::X, x_order), (V, v_order)]);
    let mut d = TruncSeries::zero().truncated(&[(Var::X, x_order), (V, v_order)]);
    // each pass fixes one more order in v (X enters only with v)
    for _ in 0..=(v_order + 1) {
        let l = analytic::log1p(&d.clone().assume_lo(Var::X, 1).assume_lo(V, 1))?;
        d = -(&v * &(&x + &l));
    }
    Ok(CurveSolution { d: d.assume_lo(Var::X, 1).assume_lo(V, 1), x_order, v_order })
}

/// `φ(z)` truncated to modes `|n| ≤ n_max`, as a map from `z`-power to the
/// coefficient (a linear `𝔞`-polynomial).
pub fn phi_field(n_max: i32, kappa: &TruncSeries) -> BTreeMap<i32, HeisPoly> {
    let mut out = BTreeMap::new();
    for n in 1..=n_max {
        // (𝔞_n/n)(i z c₁/u)^{−n}
        let mut p = HeisPoly::zero(Basis::A, kappa.clone());
        let c = TruncSeries::mono(
            Monomial::from_pairs(&[(Var::U, n), (Var::C1, -n)]),
            &Scalar::i_pow(-(n as i64)) * &Scalar::frac(1, n as i64),
        );
        p.add_term(vec![n], Monomial::ONE, c);
        out.insert(-n, p);
        // (1/c₁)(𝔞_{−n}/(−n))(i z c₁/u)^{n}
        let mut q = HeisPoly::zero(Basis::A, kappa.clone());
        let c = TruncSeries::mono(
            Monomial::from_pairs(&[(Var::U, -n), (Var::C1, n - 1)]),
            &Scalar::i_pow(n as i64) * &Scalar::frac(-1, n as i64),
        );
        q.add_term(vec![-n], Monomial::ONE, c);
        out.insert(n, q);
    }
    out
}

/// How creators enter the residue formula.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Creators {
    /// Creators `𝔞_{−m}`, `m ≤ nc`, kept as generators.
    Symbolic { nc: i32 },
    /// Creators replaced by their bracket values (`𝔞₋₁ ↦ −c₁`, `𝔞₋₂ ↦ iu`):
    /// the output is already hatted.
    Hatted,
}

/// Truncation of the residue formula.
///
/// Sufficiency: a monomial of `H_k` with creators `𝔞_{−m_j}` and annihilators
/// `𝔞_{n_i}` needs `Σ(n_i + 1) + Σ(1 − m_j) ≤ 1` (the `v` budget) and at most
/// `k + 1` generators (the `X` budget), so with creators capped at `nc` the
/// annihilators are bounded by `k·(nc − 1)`. Dropping generators from the
/// exponential only removes monomials that contain them; every retained
/// coefficient is exact.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HgwTrunc {
    pub creators: Creators,
    /// Explicit annihilator cap; `None` uses the sufficiency bound.
    pub annihilators: Option<i32>,
}

impl HgwTrunc {
    pub fn hatted() -> HgwTrunc {
        HgwTrunc { creators: Creators::Hatted, annihilators: None }
    }

    pub fn symbolic(nc: i32) -> HgwTrunc {
        HgwTrunc { creators: Creators::Symbolic { nc }, annihilators: None }
    }

    fn nc(&self) -> i32 {
        match self.creators {
            Creators::Symbolic { nc } => nc,
            Creators::Hatted => 2,
        }
    }

    fn annihilator_cap(&self, k: i32) -> Result<i32, VertexError> {
        let needed = (k * (self.nc() - 1)).max(k.max(1));
        let cap = self.annihilators.unwrap_or(needed).min(needed);
        if cap > MAX_MODE as i32 {
            return Err(VertexError::ModeLimit { needed: cap, limit: MAX_MODE as i32 });
        }
        Ok(cap)
    }
}

/// The pairing scalar of `Heis^c`, `κ = −c₁c₂`.
pub fn heis_c_kappa() -> TruncSeries {
    TruncSeries::term(Scalar::int(-1), &[(Var::C1, 1), (Var::C2, 1)])
}

fn class_of(m: &Monomial) -> Monomial {
    let mut c = Monomial::ONE;
    for v in [Var::C1, Var::C2, Var::THETA] {
        c.set(v, m.get(v));
    }
    c
}

/// `F = (x/θ)/(y − w)·(dw/dy)^{1/2}·:e^{θφ(y) − θφ(w)}:` on the window
/// `X ≤ x_order`, `v ≤ v_order`, generators as mode variables.
fn residue_integrand(x_order: i32, v_order: i32, trunc: &HgwTrunc, ann_cap: i32) -> Result<TruncSeries, VertexError> {
    let curve = lambert_w(x_order, v_order)?;
    let d = &curve.d;
    let one = TruncSeries::one();
    let theta = Monomial::var(Var::THETA, 1);

    // (x/θ)/(y − w) = 1/ε with ε = d/(−vX)
    let eps = d.shift(&Monomial::from_pairs(&[(Var::X, -1), (V, -1)])).scale(&Scalar::int(-1));
    let pref = analytic::inv1p(&(&eps - &one).assume_lo(V, 1))?;
    // dw/dy = 1 + d − v ∂_v d
    let dw = (d - &(&TruncSeries::var(V) * &d.deriv(V))).assume_lo(Var::X, 1);
    let sq = analytic::pow1p(&dw, &Scalar::frac(1, 2))?;

    let mut ex = TruncSeries::zero();
    for n in 1..=ann_cap {
        // (𝔞_n/n)(−iu/c₁)ⁿ·(−vⁿ((1+d)^{−n} − 1))
        let g = analytic::pow1p_m1(d, &Scalar::int(-(n as i64)))?;
        let c = &Scalar::i_pow(-(n as i64)) * &Scalar::frac(-1, n as i64);
        let m = Monomial::from_pairs(&[(Var::U, n), (Var::C1, -n), (V, n), (Var::mode(n), 1)]).mul(&theta);
        ex = &ex + &g.shift(&m).scale(&c);
    }
    let nc = trunc.nc();
    for m in 1..=nc {
        // 𝔞_{−m}·(i^m c₁^{m−1}/(m u^m))·v^{−m}((1+d)^m − 1)
        let g = analytic::pow1p_m1(d, &Scalar::int(m as i64))?;
        let c = &Scalar::i_pow(m as i64) * &Scalar::frac(1, m as i64);
        let base = Monomial::from_pairs(&[(Var::U, -m), (Var::C1, m - 1), (V, -m)]).mul(&theta);
        let term = g.shift(&base).scale(&c);
        let term = match trunc.creators {
            Creators::Symbolic { .. } => term.shift(&Monomial::var(Var::mode(-m), 1)),
            Creators::Hatted => match m {
                1 => term.shift(&Monomial::var(Var::C1, 1)).scale(&Scalar::int(-1)),
                2 => term.shift(&Monomial::var(Var::U, 1)).scale(&Scalar::i()),
                _ => continue,
            },
        };
        ex = &ex + &term;
    }
    let e = analytic::exp(&ex.assume_lo(Var::X, 1))?;
    Ok(&(&pref * &sq) * &e)
}

fn to_heis(series: &TruncSeries, kappa: &TruncSeries) -> HeisPoly {
    let mut groups: BTreeMap<(Vec<i32>, Monomial), Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in series.iter() {
        let mut gens = Vec::new();
        let mut rest = *m;
        for v in Var::all() {
            if let Some(k) = v.as_mode() {
                for _ in 0..m.get(v) {
                    gens.push(k);
                }
                rest.set(v, 0);
            }
        }
        let class = class_of(&rest);
        for v in [Var::C1, Var::C2, Var::THETA] {
            rest.set(v, 0);
        }
        gens.sort_unstable();
        groups.entry((gens, class)).or_default().push((rest, c.clone()));
    }
    let mut p = HeisPoly::zero(Basis::A, kappa.clone());
    for ((gens, class), terms) in groups {
        p.add_term(gens, class, TruncSeries::new(terms, crate::series::Window::exact()));
    }
    p
}

/// `H^GW_k` for `−1 ≤ k ≤ k_max`, as normal-ordered `𝔞`-polynomials with
/// `θ` still in the class decorations (see [`hat_map`]).
pub fn hgw_expand_all(k_max: i32, trunc: &HgwTrunc) -> Result<Vec<HeisPoly>, VertexError> {
    if k_max < -1 {
        return Err(VertexError::BadIndex(k_max));
    }
    let ann_cap = trunc.annihilator_cap(k_max)?;
    let nc = trunc.nc();
    // dividing by X in ε costs one order
    let x_order = k_max + 2;
    let mut v_order = 3 + (x_order + 1) * (nc - 1);
    let kappa = heis_c_kappa();
    for attempt in 0..6 {
        let f = residue_integrand(x_order, v_order, trunc, ann_cap)?;
        let r = match f.coeff(V, 1) {
            Ok(r) => r.scale(&Scalar::int(-1)),
            Err(SeriesError::Insufficient { .. }) => {
                v_order += 2 + attempt;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for k in -1..=k_max {
            let h = r.coeff(Var::X, k + 1)?.shift_var(Var::THETA, -(k + 1));
            out.push(to_heis(&h, &kappa));
        }
        return Ok(out);
    }
    Err(VertexError::Window(6))
}

/// A single `H^GW_k`.
pub fn hgw_expand(k: i32, trunc: &HgwTrunc) -> Result<HeisPoly, VertexError> {
    Ok(hgw_expand_all(k, trunc)?.pop().expect("nonempty"))
}

/// `Ĥ^GW_k`: creators eliminated and `θ⁻² ↦ −c₂` applied.
pub fn hgw_hat(k: i32) -> Result<HeisPoly, VertexError> {
    Ok(hgw_expand(k, &HgwTrunc::hatted())?.theta_rewrite()?)
}

/// Creator elimination followed by the `θ` rewrite.
pub fn hat_map(p: &HeisPoly) -> Result<HeisPoly, VertexError> {
    Ok(p.hat()?.theta_rewrite()?)
}

fn max_annihilator(p: &HeisPoly) -> i32 {
    p.terms().keys().filter_map(|m| m.gens.last().copied()).max().unwrap_or(0)
}

/// `Ĥ^GW_{k₁…k_l} = hat(H_{k₁}⋯H_{k_l})`. Each factor is expanded with
/// creators up to the largest annihilator of the factors to its left; any
/// other creator survives normal ordering and is killed by the hat.
pub fn hgw_product_hat(ks: &[i32]) -> Result<HeisPoly, VertexError> {
    match ks {
        [] => Ok(HeisPoly::scalar(Basis::A, heis_c_kappa(), TruncSeries::one())),
        [k] => hgw_hat(*k),
        _ => {
            let mut acc = HeisPoly::scalar(Basis::A, heis_c_kappa(), TruncSeries::one());
            let mut reach = 2;
            for &k in ks {
                let h = hgw_expand(k, &HgwTrunc::symbolic(reach))?;
                // creators below −2 of the leftmost factor never contract
                acc = acc.mul(&h);
                reach = reach.max(max_annihilator(&acc));
            }
            hat_map(&acc)
        }
    }
}

/// Which sign to use for the `c₂` correction of `H^PT`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PtSign {
    /// `H^PT(x) = 𝒮^{−1}(x/θ) Σ x^k ch_k`, giving `+c₂/24`.
    Generating,
    /// The non-equivariant limit form `ch_{k+1} − (1/24) ch_{k−1}(c₂)`,
    /// i.e. `𝒮(x/θ)` in place of `𝒮^{−1}(x/θ)`.
    Limit,
}

/// `H^PT_k = Σ_j w_j ch_j`, returned as `(j, w_j)` with `w_j` in `c₂`.
pub fn hpt_weights(k: i32, sign: PtSign) -> Result<Vec<(i32, TruncSeries)>, SeriesError> {
    let top = k + 1;
    let order = top.max(0);
    let s = sinh_ratio_series(Var::X, order);
    let g = match sign {
        PtSign::Generating => analytic::inv(&s)?,
        PtSign::Limit => s,
    };
    let mut out = Vec::new();
    let mut e = 0;
    while e <= top + 1 {
        let j = top - e;
        let c = g.coeff_of(&Monomial::var(Var::X, e));
        if !c.is_zero() {
            // X^e = x^e θ^{−e}, θ^{−2} = −c₂
            let sgn = if (e / 2) % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
            out.push((j, TruncSeries::mono(Monomial::var(Var::C2, e / 2), &c * &sgn)));
        }
        e += 2;
    }
    Ok(out)
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(n - 1);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![n - 1]);
        out.push(q);
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Result of the tilde assembly: the quotient and any non-divisible terms.
#[derive(Clone, Debug)]
pub struct Tilde {
    pub value: HeisPoly,
    pub remainder: Vec<HeisMonomial>,
}

impl Tilde {
    pub fn divisible(&self) -> bool {
        self.remainder.is_empty()
    }
}

/// `H̃_{k⃗} = (c₁c₂)^{1−l} Σ_P (−1)^{|P|−1}(|P|−1)! Π_{S∈P} Ĥ_{k⃗_S}`.
pub fn tilde_assembly(ks: &[i32]) -> Result<Tilde, VertexError> {
    let l = ks.len();
    let mut cache: BTreeMap<Vec<i32>, HeisPoly> = BTreeMap::new();
    let mut sum = HeisPoly::zero(Basis::A, heis_c_kappa());
    for p in set_partitions(l) {
        let mut prod = HeisPoly::scalar(Basis::A, heis_c_kappa(), TruncSeries::one());
        for block in &p {
            let sub: Vec<i32> = block.iter().map(|&i| ks[i]).collect();
            if !cache.contains_key(&sub) {
                cache.insert(sub.clone(), hgw_product_hat(&sub)?);
            }
            prod = prod.mul(&cache[&sub]);
        }
        let b = p.len();
        let c = if b % 2 == 1 { 1 } else { -1 } * factorial(b - 1);
        sum = sum.add(&prod.scale(&TruncSeries::int(c)));
    }
    let e = l.saturating_sub(1) as i32;
    let div = Monomial::from_pairs(&[(Var::C1, -e), (Var::C2, -e)]);
    let mut value = sum.empty_like();
    let mut remainder = Vec::new();
    for (m, c) in sum.terms() {
        let class = m.class.mul(&div);
        if class.get(Var::C1) < 0 || class.get(Var::C2) < 0 {
            remainder.push(m.clone());
        }
        value.add_term(m.gens.clone(), class, c.clone());
    }
    Ok(Tilde { value, remainder })
}

/// `overline(H_{k₁}⋯H_{k_l}) = Σ_P Π_{S∈P} H̃_{k⃗_S}`.
pub fn overline(ks: &[i32]) -> Result<HeisPoly, VertexError> {
    let mut sum = HeisPoly::zero(Basis::A, heis_c_kappa());
    for p in set_partitions(ks.len()) {
        let mut prod = HeisPoly::scalar(Basis::A, heis_c_kappa(), TruncSeries::one());
        for block in &p {
            let sub: Vec<i32> = block.iter().map(|&i| ks[i]).collect();
            prod = prod.mul(&tilde_assembly(&sub)?.value);
        }
        sum = sum.add(&prod);
    }
    Ok(sum)
}

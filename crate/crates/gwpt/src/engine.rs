//! Bracket pipelines for the one-leg correspondence.
//!
//! The GW side evaluates strings of `𝒜_K` on `e^{α₁}|μ⟩` in the variables
//! `u, t`, then twists `u ↦ ius` with a factor `−s²` per insertion. Insertions
//! `Ĥ^GW` are rewritten in the `τ` basis first. The PT side is the diagonal
//! Chern action on the character expansion of `|μ⟩`.

use std::collections::{BTreeMap, HashMap};

use crate::fock::{diag_chern_apply, e_r_apply_with, exp_alpha1_apply, mu_state, vacuum_pair, FockError, FockVector};
use crate::heis::{a_to_tau, Basis, HeisError, HeisPoly};
use crate::partitions::Partition;
use crate::series::special::sinh_ratio_series;
use crate::series::{analytic, Monomial, Scalar, SeriesError, TruncSeries, Var};
use crate::vertex_ops::{hgw_product_hat, PtSign, VertexError};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("class decoration {0} has no value at the fixed point")]
    Class(String),
    #[error("insertion index {0} is out of range")]
    Index(i32),
}

/// Which evaluation produced a bracket.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    GwTau,
    GwHgw,
    Pt,
    PtLimit,
}

impl Pipeline {
    pub fn id(self) -> &'static str {
        match self {
            Pipeline::GwTau => "gw-tau",
            Pipeline::GwHgw => "gw-hgw",
            Pipeline::Pt => "pt",
            Pipeline::PtLimit => "pt-limit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BracketResult {
    pub value: TruncSeries,
    pub mu: Partition,
    pub kvec: Vec<i32>,
    pub pipeline: Pipeline,
    /// Largest Fock energy visited.
    pub energy_cap: u32,
}

impl BracketResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mu": self.mu.to_json(),
            "kvec": self.kvec,
            "pipeline": self.pipeline.id(),
            "energy_cap": self.energy_cap,
            "value": self.value.to_json(),
        })
    }
}

/// `1/(tz + 1)_r` (`r > 0`) or `(tz − r + 1)…(tz)` (`r < 0`) through `z^order`.
fn pochhammer_factor(r: i64, order: i32) -> Result<TruncSeries, SeriesError> {
    let tz = TruncSeries::term(Scalar::one(), &[(Var::T, 1), (Var::Z, 1)]).truncate(Var::Z, order);
    let mut p = TruncSeries::one().truncate(Var::Z, order);
    if r > 0 {
        for j in 1..=r {
            let f = analytic::inv1p(&tz.scale(&Scalar::frac(1, j)))?.scale(&Scalar::frac(1, j));
            p = &p * &f;
        }
    } else {
        for j in 0..-r {
            p = &p * &(&tz - &TruncSeries::int(j));
        }
    }
    Ok(p)
}

/// Evaluates `⟨Π 𝒜_{K_j} e^{α₁}|μ⟩` with memoised `z`-series.
#[derive(Default)]
pub struct GwEvaluator {
    /// `(r, order, shift) ↦ [z^i] 𝒮(uz)^{tz+shift}·1/(tz+1)_r` for `i ≤ order`
    bases: HashMap<(i64, i32, i64), Vec<TruncSeries>>,
    brackets: HashMap<(Vec<i32>, Partition), TruncSeries>,
}

impl GwEvaluator {
    pub fn new() -> GwEvaluator {
        GwEvaluator::default()
    }

    fn base(&mut self, r: i64, order: i32, shift: i64) -> Result<&[TruncSeries], SeriesError> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.bases.entry((r, order, shift)) {
            let s = sinh_ratio_series(Var::Z, order).rescale_var(Var::Z, &Monomial::var(Var::U, 1), &Scalar::one())?;
            let log = analytic::log(&s)?;
            let expo = &TruncSeries::term(Scalar::one(), &[(Var::T, 1), (Var::Z, 1)]) + &TruncSeries::int(shift);
            let f = analytic::exp(&(&expo * &log).assume_lo(Var::Z, 1))?;
            let f = &f * &pochhammer_factor(r, order)?;
            let coeffs = (0..=order).map(|i| f.coeff(Var::Z, i)).collect::<Result<Vec<_>, _>>()?;
            e.insert(coeffs);
        }
        Ok(&self.bases[&(r, order, shift)])
    }

    /// `u^{e}[z^order](base · e^{uz·c/2})` as a Laurent polynomial in `u, t`.
    fn weighted(&mut self, r: i64, order: i32, shift: i64, c2: i64, e: i32) -> Result<TruncSeries, SeriesError> {
        let b = self.base(r, order, shift)?;
        let mut acc = TruncSeries::zero();
        let half = Scalar::frac(c2, 2);
        let mut w = Scalar::one();
        for j in 0..=order {
            if j > 0 {
                w = &(&w * &half) * &Scalar::frac(1, j as i64);
            }
            if w.is_zero() {
                break;
            }
            let term = b[(order - j) as usize].shift_var(Var::U, j + e).scale(&w);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `𝒜_K v`, the `z^K` coefficient of `𝒜(z)` at `t` symbolic.
    pub fn a_mode_apply(&mut self, k: i32, v: &FockVector) -> Result<FockVector, SeriesError> {
        let mut out = FockVector::zero(v.cap());
        let top = v.iter().map(|(l, _)| l.size() as i64).max().unwrap_or(0);
        let lowest = -(v.cap() as i64);
        // the diagonal carries the vacuum scalar even for K = −1
        let diag = if k >= -1 { Some(0) } else { None };
        let moves = (lowest..=(k as i64).min(top)).filter(|&r| r != 0);
        for r in diag.into_iter().chain(moves) {
            let order = k - r as i32;
            let term = if r == 0 {
                // normal-ordered diagonal plus the vacuum scalar u^{−2}[z^{K+1}]𝒮^{tz−1}
                let vac = if k + 1 >= 0 { self.base(0, k + 1, -1)?[(k + 1) as usize].shift_var(Var::U, -2) } else { TruncSeries::zero() };
                let mut cache: BTreeMap<i64, TruncSeries> = BTreeMap::new();
                for (l, _) in v.iter() {
                    let (plus, minus) = crate::fock::diagonal_charges(l);
                    for c in plus.into_iter().chain(minus) {
                        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(c) {
                            let w = if k >= 0 { self.weighted(0, k, 0, c, -1)? } else { TruncSeries::zero() };
                            e.insert(w);
                        }
                    }
                }
                e_r_apply_with(0, v, &|c| cache[&c].clone(), &vac)
            } else {
                let mut cache: BTreeMap<i64, TruncSeries> = BTreeMap::new();
                for (l, _) in v.iter() {
                    for m in crate::fock::fermion_moves(l, r) {
                        let c = m.from2 - r;
                        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(c) {
                            e.insert(self.weighted(r, order, r, c, r as i32 - 1)?);
                        }
                    }
                }
                e_r_apply_with(r, v, &|c| cache.get(&c).cloned().unwrap_or_else(TruncSeries::zero), &TruncSeries::zero())
            };
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `⟨𝒜_{K₁}⋯𝒜_{K_n} e^{α₁}|μ⟩` in `u, t`; exact, since `u` enters only
    /// alongside `z` apart from the explicit `u^{r−1}`.
    pub fn p1_bracket(&mut self, ks: &[i32], mu: &Partition) -> Result<TruncSeries, EngineError> {
        let key = (ks.to_vec(), mu.clone());
        if let Some(v) = self.brackets.get(&key) {
            return Ok(v.clone());
        }
        let mut v = exp_alpha1_apply(&mu_state(mu, mu.size())?);
        // after applying the j-th operator only energies that the remaining
        // operators can lower back to zero matter
        for j in (0..ks.len()).rev() {
            let budget: i32 = ks[..j].iter().map(|&k| k.max(0)).sum();
            let top = v.iter().map(|(l, _)| l.size()).max().unwrap_or(0);
            let w = v.with_cap(top.max(budget as u32));
            v = self.a_mode_apply(ks[j], &w)?.with_cap(budget as u32);
        }
        let value = vacuum_pair(&v);
        self.brackets.insert(key, value.clone());
        Ok(value)
    }

    /// `⟨τ_{m₁}⋯τ_{m_n}|μ⟩` at the fixed point: `u ↦ ius` and a factor
    /// `−s²` per insertion.
    pub fn gw_tau(&mut self, ms: &[i32], mu: &Partition) -> Result<TruncSeries, EngineError> {
        let mut sorted = ms.to_vec();
        sorted.sort_unstable();
        let ks: Vec<i32> = sorted.iter().map(|m| m + 1).collect();
        let raw = self.p1_bracket(&ks, mu)?;
        let twisted = raw.rescale_var(Var::U, &Monomial::var(Var::S, 1), &Scalar::i())?;
        let f = TruncSeries::term(Scalar::int(-1), &[(Var::S, 2)]);
        Ok((0..ms.len()).fold(twisted, |acc, _| &acc * &f))
    }

    pub fn gw_tau_bracket(&mut self, ms: &[i32], mu: &Partition) -> Result<BracketResult, EngineError> {
        Ok(BracketResult {
            value: self.gw_tau(ms, mu)?,
            mu: mu.clone(),
            kvec: ms.to_vec(),
            pipeline: Pipeline::GwTau,
            energy_cap: energy_cap(mu, &ms.iter().map(|m| m + 1).collect::<Vec<_>>()),
        })
    }

    /// `⟨Ĥ^GW_{k₁…k_l}|μ⟩`: the hatted product in the `τ` basis with `𝖹⁰`
    /// dropped, bracketed term by term.
    pub fn gw_hgw_bracket(&mut self, ks: &[i32], mu: &Partition) -> Result<BracketResult, EngineError> {
        let p = hgw_product_hat(ks)?;
        let tau = to_tau(&p)?;
        let mut value = TruncSeries::zero();
        for (gens, c) in tau.evaluate_classes(&fixed_point_class)? {
            value = &value + &(&c * &self.gw_tau(&gens, mu)?);
        }
        let top = tau.terms().keys().flat_map(|m| m.gens.iter()).map(|m| m + 1).sum::<i32>();
        Ok(BracketResult {
            value,
            mu: mu.clone(),
            kvec: ks.to_vec(),
            pipeline: Pipeline::GwHgw,
            energy_cap: mu.size().max(top as u32),
        })
    }
}

fn energy_cap(mu: &Partition, ks: &[i32]) -> u32 {
    mu.size().max(ks.iter().map(|&k| k.max(0)).sum::<i32>() as u32)
}

/// Rewrites a polynomial in the annihilators `𝔞_n`, `n ≥ 1`, in the `τ` basis.
pub fn to_tau(p: &HeisPoly) -> Result<HeisPoly, EngineError> {
    let mut out = HeisPoly::zero(Basis::Tau, p.kappa().clone());
    let mut images: BTreeMap<i32, HeisPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut w = HeisPoly::zero(Basis::Tau, p.kappa().clone());
        w.add_term(Vec::new(), m.class, c.clone());
        for &g in &m.gens {
            if g <= 0 {
                return Err(EngineError::Index(g));
            }
            let img = images.entry(g).or_insert_with(|| a_to_tau(g, g, false, p.kappa()));
            w = w.mul(img);
        }
        out = out.add(&w);
    }
    Ok(out)
}

/// `c₁ ↦ t`, `c₂ ↦ −s²`.
pub fn fixed_point_class(m: &Monomial) -> Result<TruncSeries, HeisError> {
    let mut out = Monomial::ONE;
    let mut sign = 1;
    for (v, e) in m.pairs() {
        match v {
            Var::C1 => out.set(Var::T, e),
            Var::C2 => {
                out.set(Var::S, 2 * e);
                if e % 2 != 0 {
                    sign = -1;
                }
            }
            _ => return Err(HeisError::UnknownClass(m.to_string())),
        }
    }
    Ok(TruncSeries::mono(out, Scalar::int(sign)))
}

/// `⟨Π H^PT_{k_j}|μ⟩ = (−s)^ℓ q^{|μ|} [x^{k⃗}] ⟨Π e^{x_j s D} e^{α₁}|μ⟩`,
/// computed diagonally on the character expansion of `|μ⟩`.
pub fn pt_bracket(ks: &[i32], mu: &Partition) -> Result<BracketResult, EngineError> {
    if ks.len() > crate::series::MAX_XJ {
        return Err(EngineError::Index(ks.len() as i32));
    }
    let mut v = mu_state(mu, mu.size())?;
    for (j, &k) in ks.iter().enumerate() {
        if k < -1 {
            return Err(EngineError::Index(k));
        }
        let x = Var::xj(j + 1);
        v = diag_chern_apply(x, &Monomial::var(Var::S, 1), k, &v);
        v = v.map_amps(|_, c| c.coeff(x, k).expect("within the x window"));
    }
    let pair = vacuum_pair(&exp_alpha1_apply(&v));
    let pref = TruncSeries::mono(
        Monomial::from_pairs(&[(Var::S, ks.len() as i32), (Var::Q, mu.size() as i32)]),
        Scalar::int(if ks.len().is_multiple_of(2) { 1 } else { -1 }),
    );
    Ok(BracketResult {
        value: &pair * &pref,
        mu: mu.clone(),
        kvec: ks.to_vec(),
        pipeline: Pipeline::Pt,
        energy_cap: mu.size(),
    })
}

/// PT brackets with the insertions read in the other sign convention,
/// `H^PT,lim(x) = 𝒮(x/θ)² H^PT(x)` at `θ⁻² = s²`.
pub fn pt_bracket_limit(ks: &[i32], mu: &Partition) -> Result<BracketResult, EngineError> {
    // H^lim_k = Σ_e [X^e]𝒮² · s^e · H^PT_{k−e}, X = x/θ
    let top = ks.iter().copied().max().unwrap_or(0) + 1;
    let sq = {
        let s = sinh_ratio_series(Var::X, top.max(0));
        &s * &s
    };
    let expand = |k: i32| -> Vec<(i32, TruncSeries)> {
        (0..=k + 1)
            .step_by(2)
            .filter_map(|e| {
                let c = sq.coeff_of(&Monomial::var(Var::X, e));
                (!c.is_zero()).then(|| (k - e, TruncSeries::mono(Monomial::var(Var::S, e), c)))
            })
            .collect()
    };
    let mut terms: Vec<(Vec<i32>, TruncSeries)> = vec![(Vec::new(), TruncSeries::one())];
    for &k in ks {
        let mut next = Vec::new();
        for (sub, c) in &terms {
            for (kk, w) in expand(k) {
                let mut s2 = sub.clone();
                s2.push(kk);
                next.push((s2, c * &w));
            }
        }
        terms = next;
    }
    let mut value = TruncSeries::zero();
    for (sub, c) in terms {
        value = &value + &(&c * &pt_bracket(&sub, mu)?.value);
    }
    Ok(BracketResult { value, mu: mu.clone(), kvec: ks.to_vec(), pipeline: Pipeline::PtLimit, energy_cap: mu.size() })
}

/// Outcome of one correspondence check.
#[derive(Clone, Debug)]
pub struct OneLegReport {
    pub mu: Partition,
    pub kvec: Vec<i32>,
    pub u_order: i32,
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
    pub difference: TruncSeries,
    pub pass: bool,
}

impl OneLegReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mu": self.mu.to_json(),
            "kvec": self.kvec,
            "u_order": self.u_order,
            "gw": self.lhs.to_json(),
            "pt": self.rhs.to_json(),
            "difference": self.difference.to_json(),
            "pass": self.pass,
        })
    }
}

/// `q^{−|μ|}·f` at `q = −e^{iu}` through `u^{u_order}`.
pub fn substitute_q(f: &TruncSeries, shift: i32, u_order: i32) -> Result<TruncSeries, SeriesError> {
    let mut out = TruncSeries::zero().truncate(Var::U, u_order);
    let mut by_q: BTreeMap<i32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in f.iter() {
        let mut rest = *m;
        rest.set(Var::Q, 0);
        by_q.entry(m.get(Var::Q) - shift).or_default().push((rest, c.clone()));
    }
    for (e, terms) in by_q {
        let part = TruncSeries::new(terms, crate::series::Window::exact());
        let lo = part.min_exp(Var::U).unwrap_or(0);
        // (−e^{iu})^e through the order the part needs
        let ex = crate::series::special::exp_linear(Var::U, &(&Scalar::i() * &Scalar::int(e as i64)), u_order - lo.min(0));
        let sign = if e % 2 == 0 { 1 } else { -1 };
        out = &out + &(&part * &ex.scale(&Scalar::int(sign))).truncate(Var::U, u_order);
    }
    Ok(out)
}

/// The one-leg correspondence for `(μ, k⃗)`: `⟨Ĥ^GW_{k⃗}|μ⟩` against
/// `q^{−|μ|}⟨H^PT_{k⃗}|μ⟩` after `q = −e^{iu}`, compared through `u^{u_order}`.
pub fn verify_one_leg(ev: &mut GwEvaluator, mu: &Partition, ks: &[i32], u_order: i32) -> Result<OneLegReport, EngineError> {
    verify_with(ev, mu, ks, u_order, PtSign::Generating)
}

pub fn verify_with(ev: &mut GwEvaluator, mu: &Partition, ks: &[i32], u_order: i32, sign: PtSign) -> Result<OneLegReport, EngineError> {
    let gw = ev.gw_hgw_bracket(ks, mu)?.value.truncate(Var::U, u_order);
    let pt = match sign {
        PtSign::Generating => pt_bracket(ks, mu)?,
        PtSign::Limit => pt_bracket_limit(ks, mu)?,
    };
    let rhs = substitute_q(&pt.value, mu.size() as i32, u_order)?;
    let difference = &gw - &rhs;
    let pass = difference.is_zero();
    Ok(OneLegReport { mu: mu.clone(), kvec: ks.to_vec(), u_order, lhs: gw, rhs, difference, pass })
}

/// The acceptance grid: `|μ| ≤ 3` with one insertion `k ≤ 4` or two with
/// `k₁ ≤ k₂`, `k₁ + k₂ ≤ 5`.
pub fn one_leg_grid() -> Vec<(Partition, Vec<i32>)> {
    let mut kvecs: Vec<Vec<i32>> = (0..=4).map(|k| vec![k]).collect();
    for k1 in 0..=5 {
        for k2 in k1..=5 - k1 {
            kvecs.push(vec![k1, k2]);
        }
    }
    let mut out = Vec::new();
    for mu in crate::partitions::partitions_up_to(3) {
        for k in &kvecs {
            out.push((mu.clone(), k.clone()));
        }
    }
    out
}

//! Sparse multivariate truncated Laurent series.
//!
//! Every value carries a [`Window`]. For each variable `v`, `lo[v]` is a lower
//! bound for the `v`-exponent of every term of the *true* series, and
//! `hi[v]` is the precision: a stored coefficient (or the absence of one) is
//! exact for every monomial whose exponents are all `≤ hi`. Arithmetic
//! propagates both bounds so that interior coefficients are never corrupted.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::monomial::{Monomial, Var, NV};
use super::scalar::Scalar;
use super::SeriesError;

/// Sentinel for "no lower bound known".
pub const NEG_INF: i32 = i32::MIN;
/// Sentinel for "exact" (no truncation) or, as a lower bound, "identically zero".
pub const POS_INF: i32 = i32::MAX;

fn lo_add(a: i32, b: i32) -> i32 {
    if a == POS_INF || b == POS_INF {
        POS_INF
    } else if a == NEG_INF || b == NEG_INF {
        NEG_INF
    } else {
        a + b
    }
}

fn hi_add(hi: i32, lo: i32) -> i32 {
    if hi == POS_INF || lo == POS_INF {
        POS_INF
    } else if lo == NEG_INF || hi == NEG_INF {
        NEG_INF
    } else {
        hi + lo
    }
}

/// Per-variable truncation bounds.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: [i32; NV],
    pub hi: [i32; NV],
}

impl Window {
    /// No truncation, no known lower bounds.
    pub fn exact() -> Window {
        Window { lo: [NEG_INF; NV], hi: [POS_INF; NV] }
    }

    pub fn with_hi(mut self, v: Var, hi: i32) -> Window {
        self.hi[v.index()] = self.hi[v.index()].min(hi);
        self
    }

    pub fn with_lo(mut self, v: Var, lo: i32) -> Window {
        self.lo[v.index()] = lo;
        self
    }

    pub fn hi(&self, v: Var) -> i32 {
        self.hi[v.index()]
    }

    pub fn lo(&self, v: Var) -> i32 {
        self.lo[v.index()]
    }

    pub fn is_exact(&self) -> bool {
        self.hi.iter().all(|&h| h == POS_INF)
    }

    #[inline]
    pub fn admits(&self, m: &Monomial) -> bool {
        m.0.iter().zip(self.hi.iter()).all(|(&e, &h)| (e as i32) <= h)
    }

    fn meet(&self, o: &Window) -> Window {
        let mut w = *self;
        for k in 0..NV {
            w.lo[k] = w.lo[k].min(o.lo[k]);
            w.hi[k] = w.hi[k].min(o.hi[k]);
        }
        w
    }

    fn product(&self, o: &Window) -> Window {
        let mut w = Window::exact();
        for k in 0..NV {
            w.lo[k] = lo_add(self.lo[k], o.lo[k]);
            w.hi[k] = hi_add(self.hi[k], o.lo[k]).min(hi_add(o.hi[k], self.lo[k]));
        }
        w
    }

    fn shifted(&self, m: &Monomial) -> Window {
        let mut w = *self;
        for k in 0..NV {
            let e = m.0[k] as i32;
            w.lo[k] = lo_add(w.lo[k], e);
            w.hi[k] = hi_add(w.hi[k], e);
        }
        w
    }
}

/// A truncated series with Gaussian-rational coefficients.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    terms: FxHashMap<Monomial, Scalar>,
    window: Window,
}

impl PartialEq for TruncSeries {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl TruncSeries {
    /// Builds a series from terms. Terms outside `window.hi` are dropped.
    /// If the window is exact, lower bounds are recomputed from the support.
    pub fn new(terms: impl IntoIterator<Item = (Monomial, Scalar)>, window: Window) -> Self {
        let mut map: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (m, c) in terms {
            if c.is_zero() || !window.admits(&m) {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => {
                    *e += &c;
                    if e.is_zero() {
                        map.remove(&m);
                    }
                }
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut s = TruncSeries { terms: map, window };
        s.refine_lo();
        s
    }

    pub fn zero() -> Self {
        TruncSeries { terms: FxHashMap::default(), window: Window { lo: [POS_INF; NV], hi: [POS_INF; NV] } }
    }

    pub fn constant(c: Scalar) -> Self {
        TruncSeries::new([(Monomial::ONE, c)], Window::exact())
    }

    pub fn one() -> Self {
        TruncSeries::constant(Scalar::one())
    }

    pub fn int(n: i64) -> Self {
        TruncSeries::constant(Scalar::int(n))
    }

    pub fn mono(m: Monomial, c: Scalar) -> Self {
        TruncSeries::new([(m, c)], Window::exact())
    }

    pub fn var(v: Var) -> Self {
        TruncSeries::mono(Monomial::var(v, 1), Scalar::one())
    }

    /// `c · Π v^e`.
    pub fn term(c: Scalar, pairs: &[(Var, i32)]) -> Self {
        TruncSeries::mono(Monomial::from_pairs(pairs), c)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.window.is_exact()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff_of(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff_of(&Monomial::ONE)
    }

    /// Terms in canonical monomial order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Tightens lower bounds where the true support is fully determined: in every
    /// variable when the series is exact, and in `v` when `v` is the only truncated
    /// variable (missing terms then exceed `hi[v]`).
    fn refine_lo(&mut self) {
        let truncated: Vec<usize> = (0..NV).filter(|&k| self.window.hi[k] != POS_INF).collect();
        let support_min = |k: usize| self.terms.keys().map(|m| m.0[k] as i32).min().unwrap_or(POS_INF);
        match truncated.len() {
            0 => {
                for k in 0..NV {
                    self.window.lo[k] = support_min(k);
                }
            }
            1 => {
                let k = truncated[0];
                let bound = support_min(k).min(hi_add(self.window.hi[k], 1));
                self.window.lo[k] = self.window.lo[k].max(bound);
            }
            _ => {}
        }
    }

    /// Asserts a lower bound for the exponents of `v` in the true series.
    /// The caller vouches for this mathematically; stored terms are checked.
    pub fn assume_lo(mut self, v: Var, lo: i32) -> Self {
        debug_assert!(self.terms.keys().all(|m| m.get(v) >= lo), "assume_lo contradicts stored terms");
        let k = v.index();
        self.window.lo[k] = self.window.lo[k].max(lo);
        self
    }

    /// Lowers the precision in `v` to `hi`, dropping terms beyond it.
    pub fn truncate(mut self, v: Var, hi: i32) -> Self {
        let k = v.index();
        if hi < self.window.hi[k] {
            self.window.hi[k] = hi;
            self.terms.retain(|m, _| m.0[k] as i32 <= hi);
        }
        self
    }

    /// Applies several truncations at once.
    pub fn truncated(self, bounds: &[(Var, i32)]) -> Self {
        bounds.iter().fold(self, |s, &(v, h)| s.truncate(v, h))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            let mut z = TruncSeries::zero();
            z.window.hi = self.window.hi;
            return z;
        }
        TruncSeries {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
            window: self.window,
        }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        TruncSeries {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
            window: self.window.shifted(m),
        }
    }

    /// Multiplies by `v^e`.
    pub fn shift_var(&self, v: Var, e: i32) -> Self {
        self.shift(&Monomial::var(v, e))
    }

    /// `[v^k]` of the series, as a series without `v`.
    pub fn coeff(&self, v: Var, k: i32) -> Result<Self, SeriesError> {
        let idx = v.index();
        if k > self.window.hi[idx] {
            return Err(SeriesError::Insufficient { var: v.name(), needed: k, available: self.window.hi[idx] });
        }
        let mut terms = FxHashMap::default();
        for (m, c) in &self.terms {
            if m.0[idx] as i32 == k {
                let mut mm = *m;
                mm.0[idx] = 0;
                terms.insert(mm, c.clone());
            }
        }
        let mut window = self.window;
        window.lo[idx] = if terms.is_empty() { POS_INF } else { 0 };
        window.hi[idx] = POS_INF;
        let mut s = TruncSeries { terms, window };
        s.refine_lo();
        Ok(s)
    }

    /// Largest exponent of `v` present, if any.
    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.get(v)).max()
    }

    /// Smallest exponent of `v` present, if any.
    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.get(v)).min()
    }

    /// Whether the series involves `v` at all.
    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.get(v) != 0)
    }

    /// Substitution `v ↦ c·v`.
    pub fn scale_var(&self, v: Var, c: &Scalar) -> Self {
        let mut cache: FxHashMap<i32, Scalar> = FxHashMap::default();
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| {
                let e = m.get(v);
                let f = cache.entry(e).or_insert_with(|| c.pow(e as i64)).clone();
                (*m, x * &f)
            })
            .collect();
        TruncSeries::new_raw(terms, self.window)
    }

    /// Substitution `v ↦ c` for a scalar `c`; requires exactness in `v`.
    pub fn eval_var(&self, v: Var, c: &Scalar) -> Result<Self, SeriesError> {
        let idx = v.index();
        if self.window.hi[idx] != POS_INF {
            return Err(SeriesError::NotExact { var: v.name() });
        }
        let mut cache: FxHashMap<i32, Scalar> = FxHashMap::default();
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(self.terms.len());
        for (m, x) in &self.terms {
            let e = m.get(v);
            let f = cache.entry(e).or_insert_with(|| c.pow(e as i64)).clone();
            let mut mm = *m;
            mm.0[idx] = 0;
            out.push((mm, x * &f));
        }
        let mut window = self.window;
        window.lo[idx] = 0;
        // collapsing a variable may lower exponents of nothing else; keep other bounds
        Ok(TruncSeries::new(out, window))
    }

    /// Substitution `v ↦ m` for a monomial `m` (e.g. `θ ↦ θ⁻¹`, `u ↦ u·s`).
    /// Requires exactness in `v`; the window of the result is recomputed
    /// only when the input is exact, otherwise bounds on variables in `m`
    /// are dropped to unknown.
    pub fn subst_mono(&self, v: Var, m: &Monomial, c: &Scalar) -> Result<Self, SeriesError> {
        let idx = v.index();
        if self.window.hi[idx] != POS_INF {
            return Err(SeriesError::NotExact { var: v.name() });
        }
        let mut cache: FxHashMap<i32, (Monomial, Scalar)> = FxHashMap::default();
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, x) in &self.terms {
            let e = k.get(v);
            let (pm, pc) = cache
                .entry(e)
                .or_insert_with(|| {
                    let mut pm = Monomial::ONE;
                    for (w, f) in m.pairs() {
                        pm.set(w, f * e);
                    }
                    (pm, c.pow(e as i64))
                })
                .clone();
            let mut kk = *k;
            kk.0[idx] = 0;
            out.push((kk.mul(&pm), x * &pc));
        }
        let mut window = self.window;
        window.lo[idx] = 0;
        for (w, _) in m.pairs() {
            if window.hi[w.index()] != POS_INF {
                return Err(SeriesError::NotExact { var: w.name() });
            }
            window.lo[w.index()] = NEG_INF;
        }
        Ok(TruncSeries::new(out, window))
    }

    /// Substitution `v ↦ c·m·v` for a monomial `m` free of `v`, e.g. `u ↦ i·s·u`.
    /// The series must be exact in the variables of `m`.
    pub fn rescale_var(&self, v: Var, m: &Monomial, c: &Scalar) -> Result<Self, SeriesError> {
        let idx = v.index();
        assert_eq!(m.get(v), 0, "rescale_var: monomial must not involve the variable");
        let mut window = self.window;
        for (w, f) in m.pairs() {
            let k = w.index();
            if window.hi[k] != POS_INF {
                return Err(SeriesError::NotExact { var: w.name() });
            }
            let end = if f > 0 { self.window.lo[idx] } else { self.window.hi[idx] };
            window.lo[k] = if end == NEG_INF || end == POS_INF { NEG_INF } else { lo_add(window.lo[k], end * f) };
        }
        let mut cache: FxHashMap<i32, (Monomial, Scalar)> = FxHashMap::default();
        let mut terms = FxHashMap::default();
        for (k, x) in &self.terms {
            let e = k.get(v);
            let (pm, pc) = cache
                .entry(e)
                .or_insert_with(|| {
                    let mut pm = Monomial::ONE;
                    for (w, f) in m.pairs() {
                        pm.set(w, f * e);
                    }
                    (pm, c.pow(e as i64))
                })
                .clone();
            terms.insert(k.mul(&pm), x * &pc);
        }
        Ok(TruncSeries::new_raw(terms, window))
    }

    /// Partial derivative in `v`.
    pub fn deriv(&self, v: Var) -> Self {
        let idx = v.index();
        let mut terms = FxHashMap::default();
        for (m, c) in &self.terms {
            let e = m.0[idx] as i32;
            if e != 0 {
                let mut mm = *m;
                mm.0[idx] = (e - 1) as i8;
                terms.insert(mm, c * &Scalar::int(e as i64));
            }
        }
        let mut window = self.window;
        window.lo[idx] = lo_add(window.lo[idx], -1);
        window.hi[idx] = hi_add(window.hi[idx], -1);
        TruncSeries::new_raw(terms, window)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &Scalar) -> Scalar) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(m, c))).filter(|(_, c)| !c.is_zero()).collect();
        TruncSeries::new_raw(terms, self.window)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect();
        TruncSeries::new_raw(terms, self.window)
    }

    fn new_raw(terms: FxHashMap<Monomial, Scalar>, window: Window) -> Self {
        let mut s = TruncSeries { terms, window };
        s.refine_lo();
        s
    }

    /// Rewrites `θ⁻² ↦ −c₂`. Odd surviving powers of `θ` are reported.
    pub fn theta_rewrite(&self) -> Result<Self, SeriesError> {
        let th = Var::THETA.index();
        let c2 = Var::C2.index();
        if self.window.hi[th] != POS_INF || self.window.hi[c2] != POS_INF {
            return Err(SeriesError::NotExact { var: "theta/c2".into() });
        }
        let odd: Vec<String> =
            self.sorted_terms().iter().filter(|(m, _)| m.0[th] % 2 != 0).map(|(m, _)| m.to_string()).collect();
        if !odd.is_empty() {
            return Err(SeriesError::OddTheta(odd));
        }
        let out = self.terms.iter().map(|(m, c)| {
            let e = m.0[th] as i32;
            let k = -e / 2; // θ^e = (θ^{-2})^k = (-c₂)^k
            let mut mm = *m;
            mm.0[th] = 0;
            mm.set(Var::C2, mm.get(Var::C2) + k);
            let c = if k % 2 == 0 { c.clone() } else { -c };
            (mm, c)
        });
        let mut window = self.window;
        window.lo[th] = NEG_INF;
        window.lo[c2] = NEG_INF;
        Ok(TruncSeries::new(out.collect::<Vec<_>>(), window))
    }

    /// Weighted degree if the series is homogeneous, otherwise a witness pair
    /// of monomials with different degrees.
    pub fn degree(&self, weights: &[(Var, i32)]) -> Result<Option<i32>, (Monomial, Monomial)> {
        let mut first: Option<(Monomial, i32)> = None;
        for (m, _) in self.sorted_terms() {
            let d = m.degree(weights);
            match first {
                None => first = Some((m, d)),
                Some((m0, d0)) if d0 != d => return Err((m0, m)),
                _ => {}
            }
        }
        Ok(first.map(|(_, d)| d))
    }

    /// Canonical JSON: sorted list of `{exponents, coeff}` plus the window.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mut ex = Map::new();
                for (v, e) in m.pairs() {
                    ex.insert(v.name(), json!(e));
                }
                json!({"exponents": ex, "coeff": c.to_string()})
            })
            .collect();
        let mut win = Map::new();
        for v in Var::all() {
            let (lo, hi) = (self.window.lo(v), self.window.hi(v));
            if hi != POS_INF {
                let lo = if lo == NEG_INF || lo == POS_INF { Value::Null } else { json!(lo) };
                win.insert(v.name(), json!({"min": lo, "max": hi}));
            }
        }
        json!({"terms": terms, "window": win})
    }

    /// Inverse of [`TruncSeries::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let bad = |s: &str| SeriesError::Parse(s.to_string());
        let mut window = Window::exact();
        if let Some(w) = v.get("window").and_then(|w| w.as_object()) {
            for (name, b) in w {
                let var = Var::from_name(name).ok_or_else(|| bad(name))?;
                let hi = b.get("max").and_then(|x| x.as_i64()).ok_or_else(|| bad("max"))?;
                window.hi[var.index()] = hi as i32;
                if let Some(lo) = b.get("min").and_then(|x| x.as_i64()) {
                    window.lo[var.index()] = lo as i32;
                }
            }
        }
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("terms"))? {
            let mut m = Monomial::ONE;
            for (name, e) in t.get("exponents").and_then(|e| e.as_object()).ok_or_else(|| bad("exponents"))? {
                let var = Var::from_name(name).ok_or_else(|| bad(name))?;
                m.set(var, e.as_i64().ok_or_else(|| bad("exponent"))? as i32);
            }
            let c = t.get("coeff").and_then(|c| c.as_str()).ok_or_else(|| bad("coeff"))?;
            terms.push((m, Scalar::parse(c).ok_or_else(|| bad(c))?));
        }
        Ok(TruncSeries::new(terms, window))
    }

    /// Parses a sum of terms such as `"1/2*u^2*t - 3*i*x + 7/5760*c2^2"`.
    pub fn parse(s: &str) -> Result<Self, SeriesError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth_caret = false;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !depth_caret {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
                continue;
            }
            if (ch == '+' || ch == '-') && cur.is_empty() && !depth_caret {
                if ch == '-' {
                    neg = !neg;
                }
                continue;
            }
            depth_caret = ch == '^';
            cur.push(ch);
        }
        if !cur.is_empty() {
            pieces.push((neg, cur));
        }
        let mut out = Vec::new();
        for (neg, p) in pieces {
            let mut c = Scalar::one();
            let mut m = Monomial::ONE;
            for f in p.split('*') {
                if let Some((name, e)) = f.split_once('^') {
                    let var = Var::from_name(name).ok_or_else(|| SeriesError::Parse(name.into()))?;
                    let e: i32 = e.parse().map_err(|_| SeriesError::Parse(e.into()))?;
                    m.set(var, m.get(var) + e);
                } else if f == "i" {
                    c = &c * &Scalar::i();
                } else if let Some(var) = Var::from_name(f) {
                    m.set(var, m.get(var) + 1);
                } else {
                    let q = Scalar::parse(f).ok_or_else(|| SeriesError::Parse(f.into()))?;
                    c = &c * &q;
                }
            }
            out.push((m, if neg { -c } else { c }));
        }
        Ok(TruncSeries::new(out, Window::exact()))
    }

    /// Meets the window with `w`, dropping terms it does not admit.
    pub fn restrict_to(&self, w: &Window) -> Self {
        let window = self.window.meet(w);
        let terms = self.terms.iter().filter(|(m, _)| window.admits(m)).map(|(m, c)| (*m, c.clone())).collect();
        TruncSeries::new_raw(terms, window)
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        let window = self.window.meet(&o.window);
        let mut terms: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        terms.reserve(self.terms.len() + o.terms.len());
        for (m, c) in &self.terms {
            if window.admits(m) {
                terms.insert(*m, c.clone());
            }
        }
        for (m, c) in &o.terms {
            if !window.admits(m) {
                continue;
            }
            match terms.get_mut(m) {
                Some(e) => {
                    if negate {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                    if e.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(*m, if negate { -c } else { c.clone() });
                }
            }
        }
        TruncSeries::new_raw(terms, window)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let window = self.window.product(&o.window);
        let (a, b) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut terms: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        let bvec: Vec<(&Monomial, &Scalar)> = b.terms.iter().collect();
        for (m1, c1) in &a.terms {
            for &(m2, c2) in &bvec {
                let m = m1.mul(m2);
                if !window.admits(&m) {
                    continue;
                }
                let p = c1 * c2;
                match terms.get_mut(&m) {
                    Some(e) => {
                        *e += &p;
                    }
                    None => {
                        terms.insert(m, p);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncSeries::new_raw(terms, window)
    }
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        self.add_impl(o, false)
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        self.add_impl(o, true)
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        self.mul_impl(o)
    }
}

macro_rules! owned_series_op {
    ($tr:ident, $m:ident) => {
        impl $tr<TruncSeries> for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, o: TruncSeries) -> TruncSeries {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a TruncSeries> for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, o: &TruncSeries) -> TruncSeries {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<TruncSeries> for &'a TruncSeries {
            type Output = TruncSeries;
            fn $m(self, o: TruncSeries) -> TruncSeries {
                self.$m(&o)
            }
        }
    };
}
owned_series_op!(Add, add);
owned_series_op!(Sub, sub);
owned_series_op!(Mul, mul);

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new_raw(self.terms.iter().map(|(m, c)| (*m, -c)).collect(), self.window)
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if c.is_real() {
                write!(f, "{c}*{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TruncSeries {
        TruncSeries::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let a = p("1/2*u^2*t - 3*i*x + 7/5760*c2^2");
        assert_eq!(a.len(), 3);
        assert_eq!(a.coeff_of(&Monomial::var(Var::X, 1)), Scalar::parse("-3*i").unwrap());
        assert_eq!(p(&a.to_string().replace("(", "").replace(")", "")), a);
        assert_eq!(p("u^-2").min_exp(Var::U), Some(-2));
    }

    #[test]
    fn product_window_tracks_valuation() {
        // f = u^-2 + u known to u^3, g = 1 + u known to u^3: product known to u^1
        let f = (p("u^-2") + p("u")).truncate(Var::U, 3).assume_lo(Var::U, -2);
        let g = (p("1") + p("u")).truncate(Var::U, 3).assume_lo(Var::U, 0);
        let h = &f * &g;
        assert_eq!(h.window().hi(Var::U), 1);
        assert_eq!(h, p("u^-2 + u^-1 + u + u^2").truncate(Var::U, 1));
    }

    #[test]
    fn unknown_valuation_kills_precision() {
        let f = p("x").truncate(Var::X, 3);
        let g = p("1 + y").truncate(Var::Y, 2);
        // f has unknown y-valuation? no: f is truncated only in x, so its x-bound is known
        let h = &f * &g;
        assert_eq!(h.window().hi(Var::X), 3);
        assert_eq!(h.window().hi(Var::Y), 2);
    }

    #[test]
    fn coeff_extraction_guards_window() {
        let f = p("1 + x + x^2").truncate(Var::X, 1);
        assert!(f.coeff(Var::X, 2).is_err());
        assert_eq!(f.coeff(Var::X, 1).unwrap(), p("1"));
    }

    #[test]
    fn theta_rewrite_even_and_odd() {
        let f = p("theta^-2*x^2 + theta^-4");
        assert_eq!(f.theta_rewrite().unwrap(), p("-c2*x^2 + c2^2"));
        assert!(p("theta^-1").theta_rewrite().is_err());
    }

    #[test]
    fn homogeneity_witness() {
        let w = [(Var::U, 1), (Var::T, 1), (Var::Z, -1)];
        assert_eq!(p("u*z + t*z").degree(&w), Ok(Some(0)));
        assert!(p("u + z").degree(&w).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let f = (p("u^-2 + 1/3*i*t*u") + p("c2")).truncate(Var::U, 4);
        let g = TruncSeries::from_json(&f.to_json()).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.window().hi(Var::U), 4);
    }
}

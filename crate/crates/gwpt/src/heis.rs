//! Normal-ordered polynomials in abstract Heisenberg generators.
//!
//! Two generator families share one representation: `𝔞_k` with
//! `[𝔞_k, 𝔞_m] = k δ_{k+m} κ`, and `τ_k` with
//! `[τ_k, τ_m] = (−1)^k δ_{k+m+1} κ / u²`. Negative indices are creators in
//! both families. Every monomial carries a class decoration (a monomial in
//! `c₁`, `c₂`, `θ`); coefficients never contain those variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::series::special::sinh_ratio_series;
use crate::series::{analytic, Monomial, Scalar, SeriesError, TruncSeries, Var};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HeisError {
    #[error("no integral is tabulated for the class {0}")]
    UnknownClass(String),
    #[error("operation needs the {0:?} basis")]
    WrongBasis(Basis),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which generator family a polynomial is written in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    A,
    Tau,
}

const CLASS_VARS: [Var; 3] = [Var::C1, Var::C2, Var::THETA];

/// A normal-ordered monomial: generator indices in increasing order
/// (creators first) and a class decoration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisMonomial {
    pub gens: Vec<i32>,
    pub class: Monomial,
}

impl HeisMonomial {
    pub fn new(mut gens: Vec<i32>, class: Monomial) -> HeisMonomial {
        gens.sort_unstable();
        HeisMonomial { gens, class }
    }

    pub fn one() -> HeisMonomial {
        HeisMonomial { gens: Vec::new(), class: Monomial::ONE }
    }

    pub fn creators(&self) -> impl Iterator<Item = i32> + '_ {
        self.gens.iter().copied().filter(|&g| g < 0)
    }

    pub fn annihilators(&self) -> impl Iterator<Item = i32> + '_ {
        self.gens.iter().copied().filter(|&g| g >= 0)
    }

    pub fn is_scalar(&self) -> bool {
        self.gens.is_empty()
    }
}

/// `Σ coeff · monomial`, normal-ordered, with the pairing scalar `κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisPoly {
    basis: Basis,
    kappa: TruncSeries,
    terms: BTreeMap<HeisMonomial, TruncSeries>,
}

/// Splits a coefficient into (class monomial, class-free coefficient) parts.
pub fn split_class(c: &TruncSeries) -> Vec<(Monomial, TruncSeries)> {
    let mut parts: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, x) in c.iter() {
        let mut class = Monomial::ONE;
        let mut rest = *m;
        for v in CLASS_VARS {
            class.set(v, m.get(v));
            rest.set(v, 0);
        }
        parts.entry(class).or_default().push((rest, x.clone()));
    }
    let mut window = *c.window();
    for v in CLASS_VARS {
        window.lo[v.index()] = crate::series::NEG_INF;
        window.hi[v.index()] = crate::series::POS_INF;
    }
    parts.into_iter().map(|(k, ts)| (k, TruncSeries::new(ts, window))).collect()
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

impl HeisPoly {
    pub fn zero(basis: Basis, kappa: TruncSeries) -> HeisPoly {
        HeisPoly { basis, kappa, terms: BTreeMap::new() }
    }

    pub fn scalar(basis: Basis, kappa: TruncSeries, c: TruncSeries) -> HeisPoly {
        let mut p = HeisPoly::zero(basis, kappa);
        p.add_term(Vec::new(), Monomial::ONE, c);
        p
    }

    /// A single generator with coefficient 1.
    pub fn generator(basis: Basis, kappa: TruncSeries, k: i32) -> HeisPoly {
        let mut p = HeisPoly::zero(basis, kappa);
        p.add_term(vec![k], Monomial::ONE, TruncSeries::one());
        p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn kappa(&self) -> &TruncSeries {
        &self.kappa
    }

    pub fn terms(&self) -> &BTreeMap<HeisMonomial, TruncSeries> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same basis and `κ`, no terms.
    pub fn empty_like(&self) -> HeisPoly {
        HeisPoly::zero(self.basis, self.kappa.clone())
    }

    /// Adds `c · Π gens` decorated by `class`; class variables inside `c`
    /// are moved into the decoration.
    pub fn add_term(&mut self, gens: Vec<i32>, class: Monomial, c: TruncSeries) {
        let mono = HeisMonomial::new(gens, class);
        for (cl, part) in split_class(&c) {
            let key = HeisMonomial { gens: mono.gens.clone(), class: mono.class.mul(&cl) };
            let sum = match self.terms.get(&key) {
                Some(e) => e + &part,
                None => part,
            };
            if sum.is_zero() {
                self.terms.remove(&key);
            } else {
                self.terms.insert(key, sum);
            }
        }
    }

    pub fn coeff(&self, gens: &[i32], class: &Monomial) -> TruncSeries {
        let key = HeisMonomial::new(gens.to_vec(), *class);
        self.terms.get(&key).cloned().unwrap_or_else(TruncSeries::zero)
    }

    /// The scalar (generator-free) part, classes folded back into the series.
    pub fn scalar_part(&self) -> TruncSeries {
        let mut s = TruncSeries::zero();
        for (m, c) in &self.terms {
            if m.is_scalar() {
                s = &s + &c.shift(&m.class);
            }
        }
        s
    }

    pub fn add(&self, o: &HeisPoly) -> HeisPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.gens.clone(), m.class, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &HeisPoly) -> HeisPoly {
        self.add(&o.scale(&TruncSeries::int(-1)))
    }

    pub fn scale(&self, c: &TruncSeries) -> HeisPoly {
        let mut r = self.empty_like();
        for (m, x) in &self.terms {
            r.add_term(m.gens.clone(), m.class, x * c);
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> HeisPoly {
        let mut r = self.empty_like();
        for (m, x) in &self.terms {
            r.add_term(m.gens.clone(), m.class, f(x));
        }
        r
    }

    /// Replaces `κ` (the terms are unchanged).
    pub fn with_kappa(mut self, kappa: TruncSeries) -> HeisPoly {
        self.kappa = kappa;
        self
    }

    /// Pairing scalar for annihilator `a` meeting creator `b`, if they pair.
    fn pairing(&self, a: i32, b: i32) -> Option<TruncSeries> {
        match self.basis {
            Basis::A if a + b == 0 => Some(self.kappa.scale(&Scalar::int(a as i64))),
            Basis::Tau if a + b + 1 == 0 => {
                // induced from the 𝔞 relation: [τ_k, τ_{−k−1}] = (−1)^{k+1} κ/u²
                let sign = if a % 2 == 0 { -1 } else { 1 };
                Some(self.kappa.shift_var(Var::U, -2).scale(&Scalar::int(sign)))
            }
            _ => None,
        }
    }

    fn partner(&self, a: i32) -> i32 {
        match self.basis {
            Basis::A => -a,
            Basis::Tau => -a - 1,
        }
    }

    /// Normal-ordered product `self · o` (Wick's theorem).
    pub fn mul(&self, o: &HeisPoly) -> HeisPoly {
        assert_eq!(self.basis, o.basis, "mixed bases");
        let mut out = self.empty_like();
        for (ma, ca) in &self.terms {
            let ann: Vec<i32> = ma.annihilators().collect();
            for (mb, cb) in &o.terms {
                let base = ca * cb;
                let class = ma.class.mul(&mb.class);
                if ann.is_empty() || !mb.gens.iter().any(|&g| g < 0) {
                    let mut gens = ma.gens.clone();
                    gens.extend_from_slice(&mb.gens);
                    out.add_term(gens, class, base);
                    continue;
                }
                self.contract_into(&mut out, ma, mb, &ann, &base, class);
            }
        }
        out
    }

    fn contract_into(
        &self,
        out: &mut HeisPoly,
        ma: &HeisMonomial,
        mb: &HeisMonomial,
        ann: &[i32],
        base: &TruncSeries,
        class: Monomial,
    ) {
        // distinct annihilator indices with multiplicities and partner counts
        let mut groups: Vec<(i32, usize, usize)> = Vec::new();
        for &a in ann {
            match groups.iter_mut().find(|g| g.0 == a) {
                Some(g) => g.1 += 1,
                None => {
                    let beta = mb.gens.iter().filter(|&&g| g == self.partner(a)).count();
                    groups.push((a, 1, beta));
                }
            }
        }
        // enumerate the number of contractions per group
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut coeff = base.clone();
            let mut removed_a: Vec<(i32, usize)> = Vec::new();
            let mut removed_b: Vec<(i32, usize)> = Vec::new();
            let mut ok = true;
            for (g, &j) in groups.iter().zip(&choice) {
                if j == 0 {
                    continue;
                }
                let Some(pair) = self.pairing(g.0, self.partner(g.0)) else {
                    ok = false;
                    break;
                };
                let comb = binom(g.1, j) * binom(g.2, j) * factorial(j);
                coeff = coeff.scale(&Scalar::from(BigRational::from_integer(comb)));
                for _ in 0..j {
                    coeff = &coeff * &pair;
                }
                removed_a.push((g.0, j));
                removed_b.push((self.partner(g.0), j));
            }
            if ok {
                let mut gens = remove_counts(&ma.gens, &removed_a);
                gens.extend(remove_counts(&mb.gens, &removed_b));
                out.add_term(gens, class, coeff);
            }
            // next choice
            let mut idx = 0;
            loop {
                if idx == groups.len() {
                    return;
                }
                let max = groups[idx].1.min(groups[idx].2);
                if choice[idx] < max {
                    choice[idx] += 1;
                    break;
                }
                choice[idx] = 0;
                idx += 1;
            }
        }
    }

    /// `[self, o]`.
    pub fn commutator(&self, o: &HeisPoly) -> HeisPoly {
        self.mul(o).sub(&o.mul(self))
    }

    /// `Σ_{j ≤ degree} self^j / j!`.
    pub fn exp_truncated(&self, degree: usize) -> HeisPoly {
        let mut out = HeisPoly::scalar(self.basis, self.kappa.clone(), TruncSeries::one());
        let mut power = out.clone();
        for j in 1..=degree {
            power = power.mul(self).scale(&TruncSeries::constant(Scalar::frac(1, j as i64)));
            out = out.add(&power);
        }
        out
    }

    /// The negative-mode elimination: `𝔞_{−1} ↦ −c₁`, `𝔞_{−2} ↦ iu`,
    /// `𝔞_{−k} ↦ 0` for `k ≥ 3`. The result has only positive generators.
    pub fn hat(&self) -> Result<HeisPoly, HeisError> {
        if self.basis != Basis::A {
            return Err(HeisError::WrongBasis(Basis::A));
        }
        let mut out = self.empty_like();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut class = m.class;
            let mut rest = Vec::new();
            for &g in &m.gens {
                match g {
                    -1 => {
                        class = class.mul(&Monomial::var(Var::C1, 1));
                        coeff = -coeff;
                    }
                    -2 => coeff = coeff.shift_var(Var::U, 1).scale(&Scalar::i()),
                    g if g < 0 => continue 'terms,
                    g => rest.push(g),
                }
            }
            out.add_term(rest, class, coeff);
        }
        Ok(out)
    }

    /// Bracket evaluation of the negative generators followed by the class
    /// integral: creators are replaced by their scalar rule (`𝔞_{−1}`, `𝔞_{−2}`
    /// in the `𝔞` basis; `τ_{−2} ↦ 1/u²` in the `τ` basis; all others vanish)
    /// and each remaining class decoration is integrated via `table`.
    pub fn vacuum_eval(&self, table: &BTreeMap<Monomial, TruncSeries>) -> Result<HeisPoly, HeisError> {
        let reduced = match self.basis {
            Basis::A => self.hat()?,
            Basis::Tau => {
                let mut out = self.empty_like();
                'terms: for (m, c) in &self.terms {
                    let mut coeff = c.clone();
                    let mut rest = Vec::new();
                    for &g in &m.gens {
                        match g {
                            -2 => coeff = coeff.shift_var(Var::U, -2),
                            g if g < 0 => continue 'terms,
                            g => rest.push(g),
                        }
                    }
                    out.add_term(rest, m.class, coeff);
                }
                out
            }
        };
        let mut out = reduced.empty_like();
        for (m, c) in &reduced.terms {
            let integral = table.get(&m.class).ok_or_else(|| HeisError::UnknownClass(m.class.to_string()))?;
            out.add_term(m.gens.clone(), Monomial::ONE, c * integral);
        }
        Ok(out)
    }

    /// Substitutes the class variables (`c₁ ↦ t`, `c₂ ↦ −s²`, …) into the
    /// decorations, returning class-free coefficients per generator word.
    pub fn evaluate_classes(
        &self,
        eval: &dyn Fn(&Monomial) -> Result<TruncSeries, HeisError>,
    ) -> Result<BTreeMap<Vec<i32>, TruncSeries>, HeisError> {
        let mut out: BTreeMap<Vec<i32>, TruncSeries> = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c * &eval(&m.class)?;
            let e = out.entry(m.gens.clone()).or_insert_with(TruncSeries::zero);
            *e = &*e + &v;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Applies the `θ⁻² ↦ −c₂` rewrite to the decorations.
    pub fn theta_rewrite(&self) -> Result<HeisPoly, HeisError> {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let folded = TruncSeries::mono(m.class, Scalar::one()).theta_rewrite()?;
            out.add_term(m.gens.clone(), Monomial::ONE, c * &folded);
        }
        Ok(out)
    }

    /// Rewrites the polynomial in the other generator family, generator by
    /// generator. Creator tails are cut at index `−n_max`.
    pub fn convert(&self, n_max: i32, with_z0: bool) -> HeisPoly {
        let target = match self.basis {
            Basis::A => Basis::Tau,
            Basis::Tau => Basis::A,
        };
        let image = |g: i32| match self.basis {
            Basis::Tau => tau_to_a(g, n_max, with_z0, &self.kappa),
            Basis::A => a_to_tau(g, n_max, with_z0, &self.kappa),
        };
        let mut out = HeisPoly::zero(target, self.kappa.clone());
        for (m, c) in &self.terms {
            let mut w = HeisPoly::zero(target, self.kappa.clone());
            w.add_term(Vec::new(), m.class, c.clone());
            for &g in &m.gens {
                w = w.mul(&image(g));
            }
            out = out.add(&w);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let rows: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut cl = Map::new();
                for (v, e) in m.class.pairs() {
                    cl.insert(v.name(), json!(e));
                }
                json!({
                    "creators": m.creators().collect::<Vec<_>>(),
                    "annihilators": m.annihilators().collect::<Vec<_>>(),
                    "class": cl,
                    "coeff": c.to_json(),
                })
            })
            .collect();
        json!({"basis": format!("{:?}", self.basis), "terms": rows})
    }
}

fn remove_counts(gens: &[i32], counts: &[(i32, usize)]) -> Vec<i32> {
    let mut out = Vec::with_capacity(gens.len());
    let mut left: Vec<(i32, usize)> = counts.to_vec();
    for &g in gens {
        if let Some(e) = left.iter_mut().find(|e| e.0 == g && e.1 > 0) {
            e.1 -= 1;
        } else {
            out.push(g);
        }
    }
    out
}

impl fmt::Display for HeisPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = match self.basis {
            Basis::A => "a",
            Basis::Tau => "tau",
        };
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if !m.class.is_one() {
                write!(f, "*[{}]", m.class)?;
            }
            for g in &m.gens {
                write!(f, "*{sym}{g}")?;
            }
        }
        Ok(())
    }
}

/// Normal-orders a word of generators.
pub fn normal_order(word: &[i32], basis: Basis, kappa: &TruncSeries) -> HeisPoly {
    let mut p = HeisPoly::scalar(basis, kappa.clone(), TruncSeries::one());
    for &g in word {
        p = p.mul(&HeisPoly::generator(basis, kappa.clone(), g));
    }
    p
}

fn iu_pow(e: i32) -> TruncSeries {
    TruncSeries::mono(Monomial::var(Var::U, e), Scalar::i_pow(e as i64))
}

/// `[wʲ] 1/Π_{i=1}^n (i + w)` for `j ≤ order`.
fn inv_pochhammer_coeffs(n: usize, order: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::from_integer(1.into())];
    c.resize(order + 1, BigRational::from_integer(0.into()));
    for i in 1..=n as i64 {
        // multiply by 1/(i + w) = (1/i) Σ (−w/i)^m
        let mut next = vec![BigRational::from_integer(0.into()); order + 1];
        for (a, ca) in c.iter().enumerate() {
            let mut f = BigRational::new(1.into(), i.into());
            for b in 0..=(order - a) {
                next[a + b] += ca * &f;
                f = -f / BigRational::from_integer(i.into());
            }
        }
        c = next;
    }
    c
}

/// Coefficients of the polynomial `Π_{j=0}^{p−1}(w − j)`, lowest first.
fn falling_poly(p: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::from_integer(1.into())];
    for j in 0..p as i64 {
        let mut next = vec![BigRational::from_integer(0.into()); c.len() + 1];
        for (a, ca) in c.iter().enumerate() {
            next[a + 1] += ca;
            next[a] -= ca * BigRational::from_integer(j.into());
        }
        c = next;
    }
    c
}

fn class_c1(e: i32) -> Monomial {
    Monomial::var(Var::C1, e)
}

/// The `𝖹⁰` coefficient of `zᵐ`, `z⁻²u⁻²(1/𝒮(zu/θ) − 1)`, after `θ⁻² ↦ −c₂`.
pub fn z0_coefficient(m: i32) -> TruncSeries {
    if m < 0 || m % 2 != 0 {
        return TruncSeries::zero();
    }
    let j = (m + 2) / 2;
    let inv = analytic::inv(&sinh_ratio_series(Var::X, 2 * j)).expect("𝒮 is a unit");
    let c = inv.coeff_of(&Monomial::var(Var::X, 2 * j));
    // x^{2j} = z^{2j} u^{2j} θ^{-2j}, and θ^{-2j} = (−c₂)^j
    let sign = if j % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    TruncSeries::mono(Monomial::from_pairs(&[(Var::U, m), (Var::C2, j)]), &c * &sign)
}

/// `τ_m` written in the `𝔞` basis. For `m < 0` the infinite tail of creators
/// is cut at `𝔞_{−n_max}`; every retained coefficient is exact.
pub fn tau_to_a(m: i32, n_max: i32, with_z0: bool, kappa: &TruncSeries) -> HeisPoly {
    let mut p = HeisPoly::zero(Basis::A, kappa.clone());
    if m >= 0 {
        for n in 1..=m + 1 {
            let j = (m - n + 1) as usize;
            let c = inv_pochhammer_coeffs(n as usize, j)[j].clone();
            let coeff = iu_pow(n - 1).scale(&Scalar::from(c));
            p.add_term(vec![n], class_c1(j as i32), coeff);
        }
        if with_z0 {
            p.add_term(Vec::new(), Monomial::ONE, z0_coefficient(m));
        }
    } else {
        for n in (-n_max..=m).rev() {
            let pp = (-n) as usize;
            let j = (m - n + 1) as usize;
            let poly = falling_poly(pp);
            let Some(c) = poly.get(j) else { continue };
            // (1/c₁)(iu)^{n−1}·c₁^j [w^j]Π(w − i)
            let coeff = iu_pow(n - 1).scale(&Scalar::from(c.clone()));
            p.add_term(vec![n], class_c1(j as i32 - 1), coeff);
        }
    }
    p
}

/// `𝔞_n` written in the `τ` basis, by triangular inversion of [`tau_to_a`].
pub fn a_to_tau(n: i32, n_max: i32, with_z0: bool, kappa: &TruncSeries) -> HeisPoly {
    assert!(n != 0, "𝔞₀ is not a generator");
    // table[n] = 𝔞_n in the τ basis
    let mut table: BTreeMap<i32, HeisPoly> = BTreeMap::new();
    let order: Vec<i32> = if n > 0 { (1..=n).collect() } else { (-n_max..=n).collect() };
    for &k in &order {
        let m = if k > 0 { k - 1 } else { k };
        let row = tau_to_a(m, n_max, with_z0, kappa);
        let mut acc = HeisPoly::generator(Basis::Tau, kappa.clone(), m);
        let mut lead: Option<(Monomial, TruncSeries)> = None;
        for (mono, c) in row.terms() {
            if mono.gens.is_empty() {
                acc.add_term(Vec::new(), mono.class, -c);
                continue;
            }
            let g = mono.gens[0];
            if g == k {
                lead = Some((mono.class, c.clone()));
                continue;
            }
            let lower = &table[&g];
            for (lm, lc) in lower.terms() {
                acc.add_term(lm.gens.clone(), lm.class.mul(&mono.class), -(lc * c));
            }
        }
        let (lclass, lcoef) = lead.expect("triangular leading term");
        let inv = invert_monomial_series(&lcoef);
        let mut solved = acc.empty_like();
        for (mono, c) in acc.terms() {
            solved.add_term(mono.gens.clone(), mono.class.mul(&lclass.inv()), c * &inv);
        }
        table.insert(k, solved);
    }
    table.remove(&n).expect("computed")
}

fn invert_monomial_series(c: &TruncSeries) -> TruncSeries {
    let terms = c.sorted_terms();
    assert_eq!(terms.len(), 1, "leading coefficient must be a monomial");
    let (m, x) = &terms[0];
    TruncSeries::mono(m.inv(), x.inv())
}

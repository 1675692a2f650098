#![allow(dead_code)]

use std::collections::BTreeMap;

use gwpt::series::{analytic, Monomial, Scalar, TruncSeries, Var};
use gwpt::vertex_ops::{hgw_expand, Creators, HgwTrunc, V};

pub fn s(x: &str) -> TruncSeries {
    TruncSeries::parse(x).unwrap()
}

pub fn cls(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

/// `v^a·p(v)/(1+v)^b` through `v^order`, times `θ^{−j}`.
pub fn rational(a: i32, p: &str, b: i64, j: i32, order: i32) -> TruncSeries {
    let den = analytic::pow_scalar(&s("1 + y").truncate(V, order), &Scalar::int(-b)).unwrap();
    (&s(p) * &den).shift(&Monomial::from_pairs(&[(V, a), (Var::THETA, -j)])).truncate(V, order)
}

/// Monomials of `[H_j, H_k]` whose creators satisfy `Σ(m − 1) ≤ cap` only
/// receive contractions through annihilators `≤ cap`, so they are
/// computed exactly from the truncated expansions.
pub fn commutator_on_exact_part(j: i32, k: i32, cap: i32) -> Vec<String> {
    let t = HgwTrunc { creators: Creators::Symbolic { nc: cap }, annihilators: Some(cap) };
    let hj = hgw_expand(j, &t).unwrap();
    let hk = hgw_expand(k, &t).unwrap();
    // fold θ^{2a} into (−c₂)^{−a}; odd powers keep one θ
    let mut folded: BTreeMap<(Vec<i32>, Monomial), TruncSeries> = BTreeMap::new();
    for (m, v) in hj.commutator(&hk).terms() {
        let budget: i32 = m.gens.iter().filter(|&&g| g < 0).map(|&g| -g - 1).sum();
        if m.gens.iter().any(|&g| g.abs() > cap) || budget > cap {
            continue;
        }
        let e = m.class.get(Var::THETA);
        let a = e.div_euclid(2);
        let mut class = m.class;
        class.set(Var::THETA, e.rem_euclid(2));
        class.set(Var::C2, class.get(Var::C2) - a);
        let sign = if a % 2 == 0 { 1 } else { -1 };
        let slot = folded.entry((m.gens.clone(), class)).or_insert_with(TruncSeries::zero);
        *slot = &*slot + &v.scale(&Scalar::int(sign));
    }
    folded
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((g, c), v)| format!("{g:?} [{c}]: {v}"))
        .collect()
}


//! One line per acceptance criterion. Every comparison is exact: the
//! tolerance printed on each line is zero. Checks whose printed form is
//! known to be wrong report `FAIL (known)`, assert that the printed form
//! still fails, and check the corrected form.
#![allow(clippy::type_complexity)]

mod common;

use std::time::{Duration, Instant};

use common::{cls, commutator_on_exact_part, rational, s};
use gwpt::dressing::{a_tilde_apply, check_intertwine, solve_w, Intertwine};
use gwpt::engine::{one_leg_grid, verify_one_leg, verify_with, GwEvaluator};
use gwpt::fock::{alpha_apply, FockVector};
use gwpt::heis::{tau_to_a, Basis, HeisPoly};
use gwpt::partitions::{character, enumerate_partitions, exp_weight, partitions_up_to, shifted_newton, zmu, Partition};
use gwpt::series::{Monomial, Scalar, TruncSeries, Var};
use gwpt::vertex_ops::*;
use num_bigint::BigInt;
use num_rational::BigRational;

const C1: Var = Var::C1;
const C2: Var = Var::C2;

enum Outcome {
    Pass(String),
    /// The printed form fails as expected; the corrected form passes.
    Known(String),
    Fail(String),
}

struct Suite {
    failures: Vec<String>,
}

impl Suite {
    fn run(&mut self, id: &str, name: &str, budget: Duration, f: impl FnOnce() -> Vec<Outcome>) {
        let start = Instant::now();
        let outcomes = f();
        let took = start.elapsed();
        let timing = format!("{:.2}s, budget {}s", took.as_secs_f64(), budget.as_secs());
        for o in outcomes {
            match o {
                Outcome::Pass(what) => println!("{id} {name}: PASS [{what}] (tolerance 0, {timing})"),
                Outcome::Known(what) => println!("{id} {name}: FAIL (known) [{what}] (tolerance 0, {timing})"),
                Outcome::Fail(what) => {
                    println!("{id} {name}: FAIL [{what}] (tolerance 0, {timing})");
                    self.failures.push(format!("{id}: {what}"));
                }
            }
        }
        if took > budget {
            println!("{id} {name}: FAIL [runtime {:.2}s over budget]", took.as_secs_f64());
            self.failures.push(format!("{id}: runtime"));
        }
    }
}

fn outcome(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(what.into())
    } else {
        Outcome::Fail(what.into())
    }
}

/// A printed form that must still fail while its correction holds.
fn known(literal_holds: bool, corrected_holds: bool, what: impl Into<String>) -> Outcome {
    let what = what.into();
    match (literal_holds, corrected_holds) {
        (false, true) => Outcome::Known(what),
        (true, _) => Outcome::Fail(format!("{what}: printed form now holds")),
        (false, false) => Outcome::Fail(format!("{what}: corrected form fails")),
    }
}

fn kappa() -> TruncSeries {
    heis_c_kappa()
}

/// `Σ coeff·Π gens` in the 𝔞 basis, class variables allowed in the coefficients.
fn a_poly(terms: &[(&[i32], &str)]) -> HeisPoly {
    let mut p = HeisPoly::zero(Basis::A, kappa());
    for (gens, c) in terms {
        p.add_term(gens.to_vec(), Monomial::ONE, s(c));
    }
    p
}

fn generator_part(p: &HeisPoly) -> HeisPoly {
    let mut r = p.empty_like();
    for (m, c) in p.terms() {
        if !m.is_scalar() {
            r.add_term(m.gens.clone(), m.class, c.clone());
        }
    }
    r
}

/// `Σ coeff·τ_j` written in the 𝔞 basis.
fn tau_combination(terms: &[(i32, &str)]) -> HeisPoly {
    terms.iter().fold(HeisPoly::zero(Basis::A, kappa()), |acc, (j, c)| acc.add(&tau_to_a(*j, 10, true, &kappa()).scale(&s(c))))
}

fn lambert() -> Vec<Outcome> {
    let order = 10;
    let c = lambert_w(5, order + 12).unwrap();
    let oracle = [
        (1, rational(0, "-1", 1, 1, order)),
        (2, rational(2, "1/2", 3, 2, order)),
        (3, rational(3, "1/3 - 1/6*y", 5, 3, order)),
    ];
    let first = oracle.iter().all(|(j, e)| c.w_coefficient(*j).unwrap().truncate(V, order) == *e);
    let residual = c.residual().unwrap().truncate(V, order).truncate(Var::X, 5).is_zero();
    vec![
        outcome(first, "[x¹..x³]w against the frozen expansion through v¹⁰"),
        outcome(residual, "back-substitution residual through x⁵"),
    ]
}

fn conversions() -> Vec<Outcome> {
    let mut out = Vec::new();
    let k = kappa();
    let tau0 = tau_to_a(0, 10, true, &k);
    out.push(outcome(tau0 == a_poly(&[(&[1], "1"), (&[], "1/24*c2")]), "τ₀ = 𝔞₁ + c₂/24"));
    let tau1 = tau_to_a(1, 10, true, &k);
    out.push(outcome(tau1 == a_poly(&[(&[2], "1/2*i*u"), (&[1], "-c1")]), "τ₁ = (iu/2)𝔞₂ − c₁𝔞₁"));
    let tau2 = tau_to_a(2, 10, true, &k);
    let gens2 = a_poly(&[(&[3], "-1/6*u^2"), (&[2], "-3/4*i*u*c1"), (&[1], "c1^2")]);
    out.push(outcome(generator_part(&tau2) == gens2, "τ₂ generator part"));
    out.push(known(
        tau2.scalar_part() == s("1/5760*u^2*c2^2"),
        tau2.scalar_part() == s("7/5760*u^2*c2^2"),
        "τ₂ scalar: printed u²c₂²/5760, definition gives 7u²c₂²/5760",
    ));

    let lines: [(i32, &str, Vec<(i32, &str)>); 5] = [
        (1, "1", vec![(0, "1"), (-100, "-1/24*c2")]),
        (2, "1/2*i*u", vec![(1, "1"), (0, "c1")]),
        (3, "-1/3*u^2", vec![(2, "2"), (1, "3*c1"), (0, "c1^2")]),
        (4, "-1/4*i*u^3", vec![(3, "6"), (2, "11*c1"), (1, "6*c1^2"), (0, "c1^3")]),
        (5, "1/5*u^4", vec![(4, "24"), (3, "50*c1"), (2, "35*c1^2"), (1, "10*c1^3"), (0, "c1^4")]),
    ];
    for (n, coef, rhs) in lines {
        let (taus, scalar): (Vec<_>, Vec<_>) = rhs.into_iter().partition(|(j, _)| *j > -100);
        let mut r = tau_combination(&taus);
        for (_, c) in scalar {
            r = r.add(&HeisPoly::scalar(Basis::A, k.clone(), s(c)));
        }
        let d = r.sub(&HeisPoly::generator(Basis::A, k.clone(), n).scale(&s(coef)));
        out.push(outcome(generator_part(&d).is_zero(), format!("inversion line {n}, generator part")));
        if n == 1 {
            out.push(outcome(d.is_zero(), "inversion line 1 including −c₂/24"));
        } else {
            // the printed line has no scalar, the definition produces one
            let missing = d.scalar_part();
            let corrected = if n == 2 { missing == s("1/24*c1*c2") } else { !missing.is_zero() };
            out.push(known(missing.is_zero(), corrected, format!("inversion line {n} scalar: omitted {}", missing.scale(&Scalar::int(-1)))));
        }
    }

    let round = (-8..=8).all(|m| tau_to_a(m, 10, true, &k).convert(10, true) == HeisPoly::generator(Basis::Tau, k.clone(), m));
    out.push(outcome(round, "τ → 𝔞 → τ identity for −8 ≤ k ≤ 8"));
    out
}

fn brackets() -> Vec<Outcome> {
    let e = |gens: &'static [i32], class: Monomial, c: &str| (gens, class, s(c));
    let cases = vec![
        (1, vec![e(&[1], Monomial::ONE, "1")]),
        (2, vec![e(&[2], Monomial::ONE, "1/2")]),
        (3, vec![e(&[3], Monomial::ONE, "1/6"), e(&[], cls(&[(C1, 2), (C2, 1)]), "1/24*u^-2")]),
        (
            4,
            vec![
                e(&[4], Monomial::ONE, "1/24"),
                e(&[1, 1], cls(&[(C1, 1)]), "-1/12*i*u^-1"),
                e(&[], cls(&[(C1, 3), (C2, 1)]), "-5/144*i*u^-3"),
            ],
        ),
        (
            5,
            vec![
                e(&[5], Monomial::ONE, "1/120"),
                e(&[1, 2], cls(&[(C1, 1)]), "-1/24*i*u^-1"),
                e(&[1, 1], cls(&[(C1, 2)]), "-1/48*u^-2"),
                e(&[1], cls(&[(C1, 2), (C2, 1)]), "1/24*u^-2"),
                e(&[], cls(&[(C1, 4), (C2, 1)]), "-1/64*u^-4"),
            ],
        ),
    ];
    cases
        .into_iter()
        .map(|(k, expect)| {
            let h = hgw_hat(k).unwrap();
            let ok = h.len() == expect.len() && expect.iter().all(|(g, c, v)| h.coeff(g, c) == *v);
            outcome(ok, format!("Ĥ^GW_{k}"))
        })
        .collect()
}

fn pt_weights() -> Vec<Outcome> {
    let display = (3..=7).all(|k| {
        let w = hpt_weights(k, PtSign::Generating).unwrap();
        w[..3] == [(k + 1, s("1")), (k - 1, s("1/24*c2")), (k - 3, s("7/5760*c2^2"))]
    });
    let mut ev = GwEvaluator::new();
    let mu = Partition::parse("1").unwrap();
    let generating = verify_with(&mut ev, &mu, &[3], 10, PtSign::Generating).unwrap().pass;
    let limit = verify_with(&mut ev, &mu, &[3], 10, PtSign::Limit).unwrap().pass;
    vec![
        outcome(display, "ch_{k+1} + (c₂/24)ch_{k−1} + (7c₂²/5760)ch_{k−3} for 3 ≤ k ≤ 7"),
        outcome(generating && !limit, "sign resolved: 𝒮⁻¹(x/θ) matches GW, the limit form fails at μ=(1), k=3"),
    ]
}

fn commutators() -> Vec<Outcome> {
    let cap = 9;
    let states: Vec<_> = partitions_up_to(5).into_iter().map(|l| FockVector::basis(l, cap)).collect();
    let t_over_u2 = |sign: i64| TruncSeries::term(Scalar::int(sign), &[(Var::T, 1), (Var::U, -2)]);
    let mut literal = true;
    let mut corrected = true;
    for k in -3i64..=3 {
        for l in -3i64..=3 {
            let even = k % 2 == 0;
            let (lit, cor) = if k + l == 1 {
                (t_over_u2(if even { 1 } else { -1 }), t_over_u2(if even { -1 } else { 1 }))
            } else {
                (TruncSeries::zero(), TruncSeries::zero())
            };
            for v in &states {
                let kl = a_tilde_apply(k, &a_tilde_apply(l, v).unwrap()).unwrap();
                let lk = a_tilde_apply(l, &a_tilde_apply(k, v).unwrap()).unwrap();
                let c = kl.sub(&lk);
                let vanishes = |e: &TruncSeries| {
                    let d = c.sub(&v.scale(e)).map_amps(|_, x| x.clone().truncate(Var::U, 10));
                    let ok = d.iter().all(|(p, x)| p.size() > 5 || x.is_zero());
                    ok
                };
                literal &= vanishes(&lit);
                corrected &= vanishes(&cor);
            }
        }
    }
    vec![known(literal, corrected, "[Ã_k, Ã_l] = (−1)^k δ t/u² printed; (−1)^{k+1} holds for |k|,|l| ≤ 3, |λ| ≤ 5")]
}

fn dressing() -> Vec<Outcome> {
    let mut out = Vec::new();
    for (which, name) in [
        (Intertwine::D, "W⁻¹DW − D̃"),
        (Intertwine::A { m: 1 }, "W⁻¹𝒜W − Ã at z = 1"),
        (Intertwine::A { m: 2 }, "W⁻¹𝒜W − Ã at z = 2"),
        (Intertwine::ClosedForm, "closed form at t = 1, z = 1"),
    ] {
        let r = check_intertwine(which, 5).unwrap();
        out.push(outcome(r.vanishes(), format!("{name} vanishes through u^{}", r.precision)));
    }
    let w = solve_w(5).unwrap();
    let printed_s2 = (0..=2).any(|a| !w.coeff(a, 2).is_zero());
    let order_two = w.coeff(2, -1).truncate(Var::U, 2) == s("1/2*u^2*t^-2")
        && w.coeff(1, -1).truncate(Var::U, 2) == s("1/2*u^2*t^-2")
        && w.coeff(0, -1).truncate(Var::U, 2) == s("1/8*u^2*t^-2");
    out.push(known(printed_s2, order_two, "W S² entry −(t/u)(H² + H + 3/8) absent; order two is (H²/2 + H/2 + 1/8)S⁻¹"));
    out
}

fn one_leg() -> Vec<Outcome> {
    let mut ev = GwEvaluator::new();
    let grid = one_leg_grid();
    let bad: Vec<String> = grid
        .iter()
        .filter(|(mu, ks)| !verify_one_leg(&mut ev, mu, ks, 10).unwrap().pass)
        .map(|(mu, ks)| format!("{:?} {ks:?}", mu.parts()))
        .collect();
    vec![outcome(bad.is_empty(), format!("{} cases, |μ| ≤ 3, through u¹⁰; failing {bad:?}", grid.len()))]
}

fn structure() -> Vec<Outcome> {
    let mus: Vec<Partition> = partitions_up_to(5).into_iter().filter(|m| m.aug_size() <= 6 && m.size() > 0).collect();
    let mut literal = true;
    let mut lead = true;
    let mut lower = true;
    for mu in &mus {
        let parts: Vec<i32> = mu.parts().iter().map(|&p| p as i32).collect();
        let h = hgw_product_hat(&parts).unwrap();
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        let fact = |n: i64| (1..=n).product::<i64>();
        let c = h.coeff(&sorted, &Monomial::ONE);
        literal &= c == TruncSeries::constant(Scalar::frac(1, parts.iter().map(|&m| fact(m as i64 - 1)).product()));
        lead &= c == TruncSeries::constant(Scalar::frac(1, parts.iter().map(|&m| fact(m as i64)).product()));
        let aug = |g: &[i32]| g.iter().map(|x| x + 1).sum::<i32>();
        for m in h.terms().keys() {
            let poly = m.class.get(C1) >= 0 && m.class.get(C2) >= 0 && m.class.get(Var::THETA) == 0;
            let below = (m.gens == sorted && m.class.is_one()) || aug(&m.gens) < aug(&sorted);
            lower &= poly && below;
        }
    }
    vec![
        outcome(lower, format!("{} partitions with |μ|⁺ ≤ 6: polynomial in c₁, c₂, lower terms of smaller |·|⁺", mus.len())),
        known(literal, lead, "leading term 𝔞_μ/Π(μᵢ−1)! printed; 𝔞_μ/Πμᵢ! holds"),
    ]
}

fn properties() -> Vec<Outcome> {
    let mut out = Vec::new();
    let orth = (1..=5).all(|n| {
        let ps = enumerate_partitions(n);
        ps.iter().all(|mu| {
            ps.iter().all(|nu| {
                let sum: i64 = ps.iter().map(|l| character(l, mu).unwrap() * character(l, nu).unwrap()).sum();
                let want = if mu == nu { zmu(mu) } else { BigInt::from(0) };
                BigInt::from(sum) == want
            })
        })
    });
    out.push(outcome(orth, "character orthogonality, n ≤ 5"));

    let cap = 14;
    let heis = partitions_up_to(6).into_iter().all(|l| {
        let v = FockVector::basis(l, cap);
        (-4i64..=4).filter(|&k| k != 0).all(|k| {
            (-4i64..=4).filter(|&m| m != 0).all(|m| {
                let km = alpha_apply(k, &alpha_apply(m, &v).unwrap()).unwrap();
                let mk = alpha_apply(m, &alpha_apply(k, &v).unwrap()).unwrap();
                let expect = if k + m == 0 { v.scale(&TruncSeries::int(k)) } else { FockVector::zero(cap) };
                km.sub(&mk).sub(&expect).is_zero()
            })
        })
    });
    out.push(outcome(heis, "Heisenberg relations on energy ≤ 6, |k|,|m| ≤ 4"));

    let coherent = partitions_up_to(6).into_iter().all(|l| {
        let e = exp_weight(&l, 8);
        (1..=8u32).all(|k| {
            let fact = BigRational::from_integer((1..=k).map(BigInt::from).product());
            &e.coeff_of(&Monomial::var(Var::X, k as i32)) * &Scalar::from(fact) == Scalar::from(shifted_newton(k, &l).unwrap())
        })
    });
    out.push(outcome(coherent, "k!·[x^k] exp_weight = shifted_newton, |λ| ≤ 6, k ≤ 8"));

    let commuting: Vec<String> =
        (1..=4).flat_map(|j| (j + 1..=4).map(move |k| (j, k))).filter(|&(j, k)| !commutator_on_exact_part(j, k, 4).is_empty()).map(|p| format!("{p:?}")).collect();
    out.push(outcome(commuting.is_empty(), format!("[H^GW_j, H^GW_k] = 0 for j, k ≤ 4 {commuting:?}")));

    let divisible = [[1, 1], [1, 2], [2, 2], [1, 3], [2, 3]].iter().all(|ks| tilde_assembly(ks).unwrap().divisible());
    out.push(outcome(divisible, "tilde assembly divisible by c₁c₂ for l = 2, k ≤ 3"));
    out
}

#[test]
fn acceptance() {
    let mut suite = Suite { failures: Vec::new() };
    let secs = Duration::from_secs;
    suite.run("C1", "Lambert inversion", secs(1), lambert);
    suite.run("C2", "basis conversions", secs(1), conversions);
    suite.run("C3", "bracket formulas", secs(60), brackets);
    suite.run("C4", "PT weights", secs(60), pt_weights);
    suite.run("C5", "dressed commutators", secs(120), commutators);
    suite.run("C6", "dressing", secs(300), dressing);
    suite.run("C7", "one-leg correspondence", secs(600), one_leg);
    suite.run("C8", "leading terms", secs(120), structure);
    suite.run("C9", "property suites", secs(120), properties);
    assert!(suite.failures.is_empty(), "{:?}", suite.failures);
}

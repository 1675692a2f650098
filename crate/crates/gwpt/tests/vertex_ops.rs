mod common;

use common::{cls, commutator_on_exact_part, rational, s};
use gwpt::heis::HeisPoly;
use gwpt::series::{Monomial, Scalar, TruncSeries, Var};
use gwpt::vertex_ops::*;

#[test]
fn curve_matches_closed_forms() {
    let order = 10;
    let c = lambert_w(6, order + 12).unwrap();
    // y·P(y)/(y+1)^b with y = 1/v becomes v^{b−1−deg P}·P̃(v)/(1+v)^b
    let cases = [
        (1, rational(0, "-1", 1, 1, order)),
        (2, rational(2, "1/2", 3, 2, order)),
        (3, rational(3, "1/3 - 1/6*y", 5, 3, order)),
        (4, rational(4, "1/4 - 1/3*y + 1/24*y^2", 7, 4, order)),
        (5, rational(5, "1/5 - 29/60*y + 11/60*y^2 - 1/120*y^3", 9, 5, order)),
    ];
    for (j, expect) in cases {
        let got = c.w_coefficient(j).unwrap().truncate(V, order);
        assert_eq!(got, expect, "[x^{j}] w");
    }
    let r = c.residual().unwrap().truncate(V, order).truncate(Var::X, 5);
    assert!(r.is_zero(), "residual {r}");
}

fn check(h: &HeisPoly, expected: &[(&[i32], Monomial, &str)]) {
    assert_eq!(h.len(), expected.len(), "{h}");
    for (gens, class, c) in expected {
        assert_eq!(h.coeff(gens, class), s(c), "{gens:?} {class}");
    }
}

#[test]
fn bracket_formulas_one_to_five() {
    const C1: Var = Var::C1;
    const C2: Var = Var::C2;
    check(&hgw_hat(1).unwrap(), &[(&[1], Monomial::ONE, "1")]);
    check(&hgw_hat(2).unwrap(), &[(&[2], Monomial::ONE, "1/2")]);
    check(
        &hgw_hat(3).unwrap(),
        &[(&[3], Monomial::ONE, "1/6"), (&[], cls(&[(C1, 2), (C2, 1)]), "1/24*u^-2")],
    );
    check(
        &hgw_hat(4).unwrap(),
        &[
            (&[4], Monomial::ONE, "1/24"),
            (&[1, 1], cls(&[(C1, 1)]), "-1/12*i*u^-1"),
            (&[], cls(&[(C1, 3), (C2, 1)]), "-5/144*i*u^-3"),
        ],
    );
    check(
        &hgw_hat(5).unwrap(),
        &[
            (&[5], Monomial::ONE, "1/120"),
            (&[1, 2], cls(&[(C1, 1)]), "-1/24*i*u^-1"),
            (&[1, 1], cls(&[(C1, 2)]), "-1/48*u^-2"),
            (&[1], cls(&[(C1, 2), (C2, 1)]), "1/24*u^-2"),
            (&[], cls(&[(C1, 4), (C2, 1)]), "-1/64*u^-4"),
        ],
    );
}

#[test]
fn symbolic_then_hat_agrees_with_direct_hat() {
    for k in 1..=4 {
        let raw = hgw_expand(k, &HgwTrunc::symbolic(2)).unwrap();
        assert_eq!(hat_map(&raw).unwrap(), hgw_hat(k).unwrap(), "k={k}");
    }
}

#[test]
fn theta_parity_after_hat() {
    for k in -1..=5 {
        // theta_rewrite errors on odd powers
        let raw = hgw_expand(k, &HgwTrunc::hatted()).unwrap();
        assert!(raw.theta_rewrite().is_ok(), "odd θ in Ĥ_{k}");
    }
}

fn aug(gens: &[i32]) -> i32 {
    gens.iter().map(|g| g + 1).sum()
}

#[test]
fn leading_terms() {
    let mus: [&[i32]; 10] = [&[1], &[2], &[3], &[4], &[5], &[1, 1], &[2, 1], &[3, 1], &[2, 2], &[1, 1, 1]];
    for mu in mus {
        let h = hgw_product_hat(mu).unwrap();
        let mut sorted = mu.to_vec();
        sorted.sort_unstable();
        let lead: i64 = mu.iter().map(|&m| (1..=m as i64).product::<i64>()).product();
        assert_eq!(h.coeff(&sorted, &Monomial::ONE), TruncSeries::constant(Scalar::frac(1, lead)), "{mu:?}");
        for m in h.terms().keys() {
            let c1 = m.class.get(Var::C1);
            let c2 = m.class.get(Var::C2);
            assert!(c1 >= 0 && c2 >= 0 && m.class.get(Var::THETA) == 0, "{mu:?}: class {}", m.class);
            if m.gens != sorted || !m.class.is_one() {
                assert!(aug(&m.gens) < aug(mu), "{mu:?}: {:?}", m.gens);
            }
        }
    }
}

#[test]
fn tilde_divisibility() {
    for ks in [[1, 1], [1, 2], [2, 2], [1, 3], [2, 3]] {
        let t = tilde_assembly(&ks).unwrap();
        assert!(t.divisible(), "{ks:?}: {:?}", t.remainder);
    }
    // l = 1 is the hatted insertion itself
    assert_eq!(tilde_assembly(&[3]).unwrap().value, hgw_hat(3).unwrap());
    // overline for l = 2
    let o = overline(&[1, 2]).unwrap();
    let direct = tilde_assembly(&[1, 2]).unwrap().value.add(&hgw_hat(1).unwrap().mul(&hgw_hat(2).unwrap()));
    assert_eq!(o, direct);
}

#[test]
fn mutual_commutativity() {
    for j in 1..=4 {
        for k in j + 1..=4 {
            let bad = commutator_on_exact_part(j, k, 4);
            assert!(bad.is_empty(), "[H_{j}, H_{k}]: {:?}", &bad[..bad.len().min(3)]);
        }
    }
}

use gwpt::series::{analytic, Monomial, Scalar, TruncSeries, Var, Window, GRADING_UTZ};
use proptest::prelude::*;

/// Sparse polynomials in `u, t, z` with small rational coefficients.
fn poly(lo_u: i32) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec((lo_u..4, 0..3i32, 0..3i32, -5i64..6, 1i64..4), 0..6).prop_map(|ts| {
        let terms = ts
            .into_iter()
            .map(|(a, b, c, n, d)| (Monomial::from_pairs(&[(Var::U, a), (Var::T, b), (Var::Z, c)]), Scalar::frac(n, d)));
        TruncSeries::new(terms, Window::exact())
    })
}

fn window(n: i32) -> [(Var, i32); 2] {
    [(Var::U, n), (Var::Z, n)]
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(-2), b in poly(-2), c in poly(-2)) {
        let w = window(5);
        let (a, b, c) = (a.truncated(&w), b.truncated(&w), c.truncated(&w));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn exp_log_round_trip(f in poly(1)) {
        let f = f.truncate(Var::U, 6).assume_lo(Var::U, 1);
        let back = analytic::log(&analytic::exp(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn truncation_keeps_interior(a in poly(0), b in poly(0)) {
        // products at a small window agree with the exact product inside it
        let n = 3;
        let small = (&a.clone().truncate(Var::U, n).assume_lo(Var::U, 0) * &b.clone().truncate(Var::U, n).assume_lo(Var::U, 0)).truncate(Var::U, n);
        prop_assert!(small.window().hi(Var::U) >= n);
        let exact = (&a * &b).truncate(Var::U, n);
        prop_assert_eq!(small, exact);
    }

    #[test]
    fn homogeneous_products(d1 in -2i32..3, d2 in 0i32..3, k in 0i32..3) {
        // u^a t^b z^c graded by a + b − c
        let f = &TruncSeries::term(Scalar::one(), &[(Var::U, d1 + k), (Var::Z, k)]) + &TruncSeries::term(Scalar::int(2), &[(Var::U, d1)]);
        let g = TruncSeries::term(Scalar::one(), &[(Var::T, d2)]);
        prop_assert_eq!((&f * &g).degree(&GRADING_UTZ), Ok(Some(d1 + d2)));
    }
}

#[test]
fn homogeneity_witness() {
    let f = TruncSeries::parse("u + z").unwrap();
    assert!(f.degree(&GRADING_UTZ).is_err());
}

#[test]
fn gaussian_coefficients() {
    let f = TruncSeries::parse("i*u").unwrap();
    assert_eq!(&f * &f, TruncSeries::parse("-u^2").unwrap());
}

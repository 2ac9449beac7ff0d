use proptest::prelude::*;
use weightsys_core::poly::{rat, ratio, rational_to_series, schur_one_part, TruncSeries};
use weightsys_core::{parse_poly, MPoly, Monomial, Var};

fn poly_strategy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0i32..3, 0i32..3, 0i32..2, -5i64..6, 1i64..4), 0..5).prop_map(|terms| {
        let mut p = MPoly::zero();
        for (a, b, c, num, den) in terms {
            let m = Monomial::from_pairs(vec![(Var::C, a), (Var::T, b), (Var::N, c)]);
            p += &MPoly::monomial(m, ratio(num, den));
        }
        p
    })
}

/// Polynomial in `t` only, used as a series numerator or denominator.
fn t_poly(coeffs: &[i64]) -> MPoly {
    let mut p = MPoly::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        p += &MPoly::var_pow(Var::T, k as i32).scale(&rat(c));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn parse_display_roundtrip(a in poly_strategy()) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn json_roundtrip(a in poly_strategy()) {
        let v = serde_json::to_value(&a).unwrap();
        let back: MPoly = serde_json::from_value(v).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_series_multiplies_back(
        num in prop::collection::vec(-4i64..5, 1..4),
        den_tail in prop::collection::vec(-4i64..5, 0..3),
        d0 in prop::sample::select(vec![-2i64, -1, 1, 3]),
    ) {
        let order = 8;
        let mut den = vec![d0];
        den.extend(den_tail);
        let (n, d) = (t_poly(&num), t_poly(&den));
        let s = rational_to_series(&n, &d, Var::T, order).unwrap();
        let back = s.mul(&TruncSeries::from_poly(&d, Var::T, order));
        prop_assert_eq!(back, TruncSeries::from_poly(&n, Var::T, order));
    }

    #[test]
    fn exp_log_inverse(coeffs in prop::collection::vec(-3i64..4, 1..6)) {
        let order = 6;
        let mut tail = vec![MPoly::zero()];
        tail.extend(coeffs.iter().map(|&c| MPoly::var(Var::C).scale(&rat(c))));
        tail.truncate(order + 1);
        let f = TruncSeries::from_coeffs(Var::T, tail, order);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
        let mut one_plus = f.clone();
        one_plus.coeffs[0] = MPoly::one();
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }
}

#[test]
fn schur_extreme_coefficients() {
    let mut fact = 1i64;
    for n in 1..=6 {
        fact *= n as i64;
        let s = schur_one_part(n);
        let p1n = Monomial::var(Var::P(1), n as i32);
        assert_eq!(s.coeff(&p1n), ratio(1, fact));
        if n > 1 {
            assert_eq!(s.coeff(&Monomial::var(Var::P(n as u16), 1)), ratio(1, n as i64));
        }
    }
}

#[test]
fn log_needs_unit_constant_term() {
    let f = TruncSeries::from_coeffs(Var::T, vec![MPoly::int(2), MPoly::one()], 3);
    assert!(f.log().is_err());
    assert!(rational_to_series(&MPoly::one(), &MPoly::var(Var::T), Var::T, 3).is_err());
}

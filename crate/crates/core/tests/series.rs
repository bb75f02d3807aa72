//! Truncated-series arithmetic, checked against independent brute-force
//! oracles: composition by naive polynomial substitution and inversion by
//! undetermined coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use jennings_core::series::Level;
use jennings_core::TruncatedSeries;

/// Dense polynomial composition oracle: substitute g into f term by term,
/// expanding the powers of g by schoolbook multiplication.
fn compose_oracle(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let n = f.trunc_order();
    assert_eq!(n, g.trunc_order());
    let mut gd = vec![BigInt::zero(); n];
    for d in 1..n {
        gd[d] = g.coeff(d);
    }
    // acc = g^j as a dense vector mod x^n.
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    let mut out = vec![BigInt::zero(); n];
    for j in 1..n {
        let mut next = vec![BigInt::zero(); n];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in gd.iter().enumerate().take(n - a) {
                if !cb.is_zero() {
                    next[a + b] += ca * cb;
                }
            }
        }
        acc = next;
        let fj = f.coeff(j);
        if !fj.is_zero() {
            for d in 0..n {
                out[d] += &fj * &acc[d];
            }
        }
    }
    assert!(out[0].is_zero());
    assert!(out[1].is_one());
    TruncatedSeries::from_coeffs(n, out.into_iter().enumerate().skip(2))
}

/// Inversion oracle by undetermined coefficients: solve f(h(x)) = x degree by
/// degree for the coefficients of h.
fn inverse_oracle(f: &TruncatedSeries) -> TruncatedSeries {
    let n = f.trunc_order();
    let mut h = TruncatedSeries::identity(n);
    for d in 2..n {
        let r = compose_oracle(f, &h);
        let c = r.coeff(d);
        if !c.is_zero() {
            // f(h + c' x^d) = f(h) + c' x^d + higher, so c' = -c fixes degree d.
            let terms = h
                .terms()
                .map(|(deg, co)| (deg, co.clone()))
                .chain(std::iter::once((d, -c)))
                .collect::<Vec<_>>();
            h = TruncatedSeries::from_coeffs(n, terms);
        }
    }
    h
}

fn s(text: &str) -> TruncatedSeries {
    TruncatedSeries::parse(text).unwrap()
}

#[test]
fn compose_matches_frozen_example() {
    let f = s("x + x^2 (mod x^5)");
    let g = s("x + x^3 (mod x^5)");
    assert_eq!(f.compose(&g).unwrap(), s("x + x^2 + x^3 + 2*x^4 (mod x^5)"));
}

#[test]
fn inverse_matches_frozen_examples() {
    assert_eq!(s("x + x^2 (mod x^4)").inverse(), s("x - x^2 + 2*x^3 (mod x^4)"));
    assert_eq!(s("x (mod x^9)").inverse(), s("x (mod x^9)"));
}

#[test]
fn commutator_matches_frozen_example() {
    let f = s("x + x^3 (mod x^6)");
    let g = s("x + x^2 (mod x^6)");
    assert_eq!(f.commutator(&g).unwrap(), s("x + x^4 - x^5 (mod x^6)"));
}

#[test]
fn power_matches_frozen_example() {
    let f = s("x + x^3 (mod x^6)");
    assert_eq!(f.power(2), s("x + 2*x^3 + 3*x^5 (mod x^6)"));
}

#[test]
fn level_of_identity_is_infinite() {
    assert_eq!(TruncatedSeries::identity(10).lvl(), Level::Infinite);
    assert_eq!(s("x + 4*x^7 (mod x^12)").lvl(), Level::Finite(7));
    assert!(Level::Infinite > Level::Finite(usize::MAX - 1));
}

#[test]
fn order_mismatch_is_reported() {
    let f = TruncatedSeries::identity(5);
    let g = TruncatedSeries::identity(6);
    assert!(f.compose(&g).is_err());
}

#[test]
fn truncate_refuses_extension() {
    let f = s("x + x^2 (mod x^5)");
    assert!(f.truncate(6).is_err());
    assert_eq!(f.truncate(3).unwrap(), s("x + x^2 (mod x^3)"));
}

#[test]
fn parse_display_round_trip() {
    for text in [
        "x (mod x^4)",
        "x + x^2 (mod x^7)",
        "x - 3*x^4 + 17*x^6 (mod x^9)",
        "x + 2*x^3 - x^7 (mod x^12)",
    ] {
        let f = s(text);
        assert_eq!(f.to_string(), text);
        assert_eq!(s(&f.to_string()), f);
    }
}

#[test]
fn json_round_trip() {
    let f = s("x - 3*x^4 + 17*x^6 (mod x^9)");
    assert_eq!(TruncatedSeries::from_json(&f.to_json()).unwrap(), f);
}

fn arb_series(trunc: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-4i64..=4, trunc.saturating_sub(2)).prop_map(move |cs| {
        TruncatedSeries::from_coeffs(
            trunc,
            cs.into_iter()
                .enumerate()
                .map(|(i, c)| (i + 2, BigInt::from(c))),
        )
    })
}

proptest! {
    #[test]
    fn compose_agrees_with_substitution_oracle(
        f in arb_series(10),
        g in arb_series(10),
    ) {
        prop_assert_eq!(f.compose(&g).unwrap(), compose_oracle(&f, &g));
    }

    #[test]
    fn inverse_agrees_with_undetermined_coefficients(f in arb_series(9)) {
        prop_assert_eq!(f.inverse(), inverse_oracle(&f));
    }

    #[test]
    fn composition_is_a_group(
        f in arb_series(9),
        g in arb_series(9),
        h in arb_series(9),
    ) {
        let id = TruncatedSeries::identity(9);
        // Associativity.
        prop_assert_eq!(
            f.compose(&g).unwrap().compose(&h).unwrap(),
            f.compose(&g.compose(&h).unwrap()).unwrap()
        );
        // Identity.
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
        // Inverses.
        prop_assert_eq!(f.compose(&f.inverse()).unwrap(), id.clone());
        prop_assert_eq!(f.inverse().compose(&f).unwrap(), id);
    }

    #[test]
    fn power_is_iterated_composition(f in arb_series(9), e in -5i64..=5) {
        let mut expect = TruncatedSeries::identity(9);
        let base = if e >= 0 { f.clone() } else { f.inverse() };
        for _ in 0..e.abs() {
            expect = expect.compose(&base).unwrap();
        }
        prop_assert_eq!(f.power(e), expect);
    }
}

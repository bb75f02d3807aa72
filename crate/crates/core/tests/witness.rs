//! Commutator-word certificates: frozen evaluation examples, the per-degree
//! builders and their domain checks, and the peeling round-trip.

use num_bigint::BigInt;

use jennings_core::group::{bounds, quotient_equal};
use jennings_core::series::Level;
use jennings_core::witness::{
    check_witness, comm, doubling_witness, even_witness, express_in_commutators, gen,
    lemma_witness, odd_witness, pow,
};
use jennings_core::{Error, TruncatedSeries, WitnessWord};

fn s(text: &str) -> TruncatedSeries {
    TruncatedSeries::parse(text).unwrap()
}

#[test]
fn evaluation_of_small_words() {
    assert_eq!(gen(3, 2).evaluate(5), s("x + 2*x^3 (mod x^5)"));
    assert_eq!(
        comm(gen(3, 1), gen(2, 1)).evaluate(6),
        s("x + x^3 (mod x^6)")
            .commutator(&s("x + x^2 (mod x^6)"))
            .unwrap()
    );
    assert_eq!(pow(gen(2, 1), -1).evaluate(4), s("x - x^2 + 2*x^3 (mod x^4)"));
    assert_eq!(
        WitnessWord::Prod(vec![gen(2, 1), gen(3, 1)]).evaluate(4),
        s("x + x^2 (mod x^4)").compose(&s("x + x^3 (mod x^4)")).unwrap()
    );
    assert!(WitnessWord::Prod(vec![]).evaluate(5).is_identity());
}

#[test]
fn even_witness_frozen_example() {
    let w = even_witness(2, 4, 5).unwrap();
    assert_eq!(w, comm(gen(3, BigInt::from(5)), gen(2, BigInt::from(1))));
    let v = w.evaluate(6);
    assert_eq!(v.coeff(4), BigInt::from(5));
    assert_eq!(v.coeff(5), BigInt::from(-5));
}

#[test]
fn even_witness_leading_degree_is_2k() {
    for k in 2..=8 {
        let v = even_witness(k, 2 * k, 3).unwrap().evaluate(2 * k + 1);
        assert_eq!(v.lvl(), Level::Finite(2 * k));
        assert_eq!(v.coeff(2 * k), BigInt::from(3));
    }
}

#[test]
fn even_witness_rejects_odd_degree() {
    assert!(matches!(even_witness(2, 5, 1), Err(Error::Domain(_))));
}

#[test]
fn doubling_witness_frozen_example() {
    let w = doubling_witness(2, 5, 1).unwrap();
    assert_eq!(w, comm(gen(4, BigInt::from(1)), gen(2, BigInt::from(1))));
    let v = w.evaluate(7);
    assert_eq!(v.coeff(5), BigInt::from(2));
    // C(4, 2) = 6 - 10 = -4 at degree ell(4, 2) = 6.
    assert_eq!(v.coeff(6), BigInt::from(-4));
}

#[test]
fn doubling_witness_coefficient_is_2_alpha() {
    for k in 2..=6usize {
        for alpha in [-3i64, -1, 2, 5] {
            let l = 2 * k + 1;
            let v = doubling_witness(k, l, alpha).unwrap().evaluate(l + 1);
            assert_eq!(v.coeff(l), BigInt::from(2 * alpha));
        }
    }
}

#[test]
fn doubling_witness_rejects_out_of_range() {
    assert!(doubling_witness(3, 5, 1).is_err());
}

#[test]
fn odd_witness_examples() {
    let v = odd_witness(2, 9, 1).unwrap().evaluate(10);
    assert_eq!(v.lvl(), Level::Finite(9));
    assert_eq!(v.coeff(9), BigInt::from(1));

    let v = odd_witness(2, 11, -2).unwrap().evaluate(12);
    assert_eq!(v.lvl(), Level::Finite(11));
    assert_eq!(v.coeff(11), BigInt::from(-2));
}

#[test]
fn lemma_witness_below_guarantee_is_an_error() {
    match lemma_witness(4, 15, 1) {
        Err(Error::BelowGuarantee { k, l, c }) => {
            assert_eq!((k, l, c), (4, 15, 16));
        }
        other => panic!("expected below-guarantee error, got {other:?}"),
    }
    // c_4 = 16, so 27 is fine.
    let v = lemma_witness(4, 27, 1).unwrap().evaluate(28);
    assert_eq!(v.lvl(), Level::Finite(27));
}

#[test]
fn lemma_witness_leading_terms() {
    for k in 2..=6usize {
        let c = bounds(k).unwrap().c;
        for l in c..c + 5 {
            for alpha in [-3i64, -1, 1, 2] {
                let w = lemma_witness(k, l, alpha).unwrap();
                let report = check_witness(&w, k, l + 1);
                assert!(report.valid, "k={k} l={l} alpha={alpha}");
                assert_eq!(report.target_degree, l);
                assert_eq!(report.target_coefficient, BigInt::from(alpha));
                // Derived-subgroup containment: lvl >= 2k.
                assert!(report.value.lvl() >= Level::Finite(2 * k));
            }
        }
    }
}

#[test]
fn check_witness_structural_rules() {
    // A bare generator proves nothing.
    assert!(!check_witness(&gen(5, 1), 2, 10).valid);
    // A commutator of admissible generators is valid with leading degree 4.
    let r = check_witness(&comm(gen(3, 1), gen(2, 1)), 2, 10);
    assert!(r.valid);
    assert_eq!(r.target_degree, 4);
    // Same word fails over J_3: the leaf of degree 2 is below k.
    assert!(!check_witness(&comm(gen(3, 1), gen(2, 1)), 3, 10).valid);
}

#[test]
fn express_peels_from_the_lowest_degree() {
    let f = s("x + x^8 (mod x^12)");
    let w = express_in_commutators(&f, 2, 12).unwrap();
    // First factor handles degree 8 = even witness over J_2.
    if let WitnessWord::Prod(parts) = &w {
        assert_eq!(parts[0], even_witness(2, 8, 1).unwrap());
    } else {
        panic!("expected a product, got {w}");
    }
    assert!(quotient_equal(&w.evaluate(12), &f, 2, 12).unwrap());
}

#[test]
fn express_rejects_low_level() {
    let f = s("x + x^5 (mod x^12)");
    assert!(matches!(
        express_in_commutators(&f, 2, 12),
        Err(Error::BelowGuarantee { .. })
    ));
}

#[test]
fn witness_json_round_trip() {
    let w = lemma_witness(5, 17, -2).unwrap();
    let back = WitnessWord::from_json(&w.to_json()).unwrap();
    assert_eq!(back, w);
    assert_eq!(back.evaluate(18), w.evaluate(18));
}

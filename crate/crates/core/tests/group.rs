//! Degree bounds, the commutator coefficient C(m, n), useful pairs, and
//! factorization into basic generators.

use num_bigint::BigInt;

use jennings_core::group::{
    bounds, c_coeff, ell, factor_into_generators, find_useful_pair, find_useful_pair_residue,
    quotient_equal,
};
use jennings_core::TruncatedSeries;

#[test]
fn bounds_match_the_case_table() {
    let b = bounds(5).unwrap();
    assert_eq!((b.c, b.d), (16, 12));
    let b = bounds(8).unwrap();
    assert_eq!((b.c, b.d), (28, 20));
    let b = bounds(2).unwrap();
    assert_eq!((b.c, b.d), (8, 6));
    // Full case split, k mod 4 = 3, 2, 1, 0.
    assert_eq!(bounds(3).unwrap().c, 10);
    assert_eq!(bounds(3).unwrap().d, 7);
    assert_eq!(bounds(6).unwrap().c, 20);
    assert_eq!(bounds(6).unwrap().d, 14);
    assert_eq!(bounds(9).unwrap().c, 28);
    assert_eq!(bounds(9).unwrap().d, 20);
    assert_eq!(bounds(4).unwrap().c, 16);
    assert_eq!(bounds(4).unwrap().d, 12);
    assert!(bounds(1).is_err());
}

#[test]
fn c_coefficient_values_and_parity() {
    assert_eq!(c_coeff(3, 2), -1);
    // binom(m,2) - (m-n)(m+n-1); odd exactly when m = 2, 3 mod 4.
    for m in 2i64..=30 {
        for n in 2..m {
            let expect = m * (m - 1) / 2 - (m - n) * (m + n - 1);
            assert_eq!(c_coeff(m, n), expect);
            assert_eq!(expect.rem_euclid(2) == 1, m.rem_euclid(4) == 2 || m.rem_euclid(4) == 3);
        }
    }
}

#[test]
fn ell_is_degree_of_the_second_term() {
    assert_eq!(ell(11, 6), 21);
    assert_eq!(ell(7, 3), 11);
    assert_eq!(ell(5, 2), 7);
}

#[test]
fn useful_pair_frozen_examples() {
    let p = find_useful_pair(21, 2).unwrap();
    assert_eq!((p.m, p.n), (11, 6));
    let p = find_useful_pair(11, 2).unwrap();
    assert_eq!((p.m, p.n), (7, 3));
    // l = 3k+2 for k = 3 mod 4 resolves to (k+4, k).
    for k in [3usize, 7, 11] {
        let p = find_useful_pair(3 * k + 2, k).unwrap();
        assert_eq!((p.m, p.n), (k + 4, k));
    }
}

#[test]
fn useful_pair_is_valid_and_odd_c() {
    for k in 2..=8usize {
        let c = bounds(k).unwrap().c;
        for l in (c..c + 30).filter(|l| l % 2 == 1) {
            match (find_useful_pair(l, k), find_useful_pair_residue(l, k)) {
                (Ok(p), Ok(q)) => {
                    for pair in [&p, &q] {
                        assert!(pair.is_valid(), "invalid pair for l={l}, k={k}");
                        assert_eq!(pair.ell(), l);
                        assert_eq!(c_coeff(pair.m as i64, pair.n as i64).rem_euclid(2), 1);
                    }
                }
                (Err(_), Err(_)) => {}
                (a, b) => panic!("finders disagree for l={l}, k={k}: {a:?} vs {b:?}"),
            }
        }
        assert!(find_useful_pair(2 * c, k).is_err(), "even l must be rejected");
    }
}

#[test]
fn factorization_example_and_round_trip() {
    let f = TruncatedSeries::parse("x + x^2 + x^3 (mod x^4)").unwrap();
    let factors = factor_into_generators(&f, 2, 4).unwrap();
    assert_eq!(
        factors,
        vec![(2, BigInt::from(1)), (3, BigInt::from(1))]
    );
    // Recompose and compare in the quotient.
    let g = TruncatedSeries::parse("x + 2*x^3 - x^5 + 4*x^6 (mod x^8)").unwrap();
    let factors = factor_into_generators(&g, 3, 8).unwrap();
    let mut acc = TruncatedSeries::identity(8);
    for (d, c) in factors {
        acc = acc
            .compose(&TruncatedSeries::monomial(8, d, c))
            .unwrap();
    }
    assert!(quotient_equal(&acc, &g, 3, 8).unwrap());
}

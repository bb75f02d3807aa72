//! Abelianization through the nilpotent quotient: normal forms, the relation
//! matrix, Smith normal form (self-checked via its transformation matrices),
//! the computed structure, and the two homomorphisms phi and psi.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use jennings_core::abelian::{
    abelianization, babenko_bogatyy_phi, compute, full_report, generator_image_order, normal_form,
    psi, relation_matrix, smith_normal_form, theorem_prediction,
};
use jennings_core::group::bounds;
use jennings_core::{AbelianStructure, ImageOrder, TruncatedSeries};

fn s(text: &str) -> TruncatedSeries {
    TruncatedSeries::parse(text).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn normal_form_of_a_generator_is_a_unit_vector() {
    // sigma_3 over J_2 at truncation 8: exponent vector e_3.
    let g = TruncatedSeries::sigma(8, 3);
    let nf = normal_form(&g, 2).unwrap();
    assert_eq!(nf.entries, big(&[0, 1, 0, 0, 0, 0]));
    // Composites factor uniquely.
    let f = s("x + 2*x^2 - x^5 (mod x^8)");
    let nf = normal_form(&f, 2).unwrap();
    let mut acc = TruncatedSeries::identity(8);
    for (i, e) in nf.entries.iter().enumerate() {
        let gen = TruncatedSeries::sigma(8, i + 2);
        acc = acc.compose(&gen.power_big(e)).unwrap();
    }
    assert_eq!(acc, f);
}

#[test]
fn relation_matrix_shape_for_k2() {
    // 6 generators sigma_2..sigma_7 at truncation 8 give 15 commutator rows.
    let m = relation_matrix(2).unwrap();
    assert_eq!(m.rows.len(), 15);
    for row in &m.rows {
        assert_eq!(row.entries.len(), 6);
    }
    // [sigma_i, sigma_j] has level >= i + j - 1, so earlier entries vanish.
    let mut idx = 0;
    for i in 2..8usize {
        for j in (i + 1)..8 {
            for d in 2..(i + j - 1).min(8) {
                assert!(
                    m.rows[idx].entries[d - 2].is_zero(),
                    "row [s_{i}, s_{j}] has unexpected entry at degree {d}"
                );
            }
            idx += 1;
        }
    }
}

#[test]
fn smith_normal_form_small_example() {
    let m = vec![big(&[2, 0]), big(&[0, 3])];
    let (d, _, _) = smith_normal_form(&m);
    assert_eq!(d[0][0], BigInt::one());
    assert_eq!(d[1][1], BigInt::from(6));
    assert!(d[0][1].is_zero() && d[1][0].is_zero());
}

#[test]
fn smith_normal_form_self_check_on_random_matrices() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..25 {
        let rows = rng.gen_range(3..=6);
        let cols = rng.gen_range(3..=6);
        let m: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
            .collect();
        let (d, u, v) = smith_normal_form(&m);
        // D = U * M * V.
        let mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            let n = a.len();
            let p = b[0].len();
            let inner = b.len();
            (0..n)
                .map(|i| {
                    (0..p)
                        .map(|j| (0..inner).map(|t| &a[i][t] * &b[t][j]).sum())
                        .collect()
                })
                .collect()
        };
        assert_eq!(mul(&mul(&u, &m), &v), d);
        // Diagonal with the divisibility chain.
        let mut prev: Option<BigInt> = None;
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(d[i][j].is_zero());
                }
            }
            if i < cols {
                let di = d[i][i].clone();
                assert!(di >= BigInt::zero());
                if let Some(p) = prev.take() {
                    if !di.is_zero() {
                        assert!(!p.is_zero(), "zero cannot divide {di}");
                        assert!((&di % &p).is_zero(), "{p} must divide {di}");
                    }
                }
                prev = Some(di);
            }
        }
    }
}

#[test]
fn abelianization_small_cases() {
    let expect = |free: usize, factors: &[i64]| AbelianStructure {
        free_rank: free,
        invariant_factors: big(factors),
    };
    assert_eq!(abelianization(2).unwrap(), expect(2, &[2, 2]));
    assert_eq!(abelianization(4).unwrap(), expect(4, &[2, 4]));
    assert_eq!(abelianization(7).unwrap(), expect(7, &[2, 2, 2, 2]));
}

#[test]
fn predictions_follow_the_case_split() {
    let expect = |free: usize, factors: &[i64]| AbelianStructure {
        free_rank: free,
        invariant_factors: big(factors),
    };
    assert_eq!(theorem_prediction(5).unwrap(), expect(5, &[2, 4]));
    assert_eq!(theorem_prediction(6).unwrap(), expect(6, &[2, 2, 2, 2]));
    assert_eq!(theorem_prediction(8).unwrap(), expect(8, &[2, 2, 2, 4]));
}

#[test]
fn generator_orders_split_at_2k() {
    for k in [2usize, 3, 4, 5] {
        let data = compute(k).unwrap();
        let c = bounds(k).unwrap().c;
        for i in k..c {
            let order = data.generator_image_order(i).unwrap();
            if i < 2 * k {
                assert_eq!(order, ImageOrder::Infinite, "k={k}, i={i}");
            } else {
                assert!(matches!(order, ImageOrder::Finite(_)), "k={k}, i={i}");
            }
        }
        // The standalone accessor agrees.
        assert_eq!(
            generator_image_order(k, 2 * k).unwrap(),
            data.generator_image_order(2 * k).unwrap()
        );
    }
}

#[test]
fn report_is_json_serializable() {
    let r = full_report(3).unwrap();
    assert!(r.matches_theorem);
    let v = r.to_json_value();
    assert_eq!(v["k"], 3);
    assert_eq!(v["free_rank"], 3);
    assert_eq!(v["matches_theorem"], true);
}

#[test]
fn psi_frozen_example_and_additivity() {
    // psi over J_2 maps to (alpha_2, 2*alpha_2^2 - 2*alpha_3).
    let f = s("x + x^2 + x^3 (mod x^8)");
    assert_eq!(psi(&f, 2).unwrap(), big(&[1, 0]));
    let g = s("x + 3*x^2 - x^3 (mod x^8)");
    let sum: Vec<BigInt> = psi(&f, 2)
        .unwrap()
        .iter()
        .zip(psi(&g, 2).unwrap())
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(psi(&f.compose(&g).unwrap(), 2).unwrap(), sum);
}

#[test]
fn phi_frozen_examples() {
    let phi = |text: &str| babenko_bogatyy_phi(&s(text)).unwrap();
    assert_eq!(
        phi("x + x^2 (mod x^8)"),
        (BigInt::one(), BigInt::from(-1), 0, 0)
    );
    assert_eq!(
        phi("x + x^3 (mod x^8)"),
        (BigInt::zero(), BigInt::one(), 1, 0)
    );
}

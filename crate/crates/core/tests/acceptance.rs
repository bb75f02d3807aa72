//! Acceptance gate: ten criteria, one pass/fail line each. Every criterion
//! collects its violations and prints a single verdict line; the assert fires
//! with the itemized violations on failure.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use jennings_core::abelian::{
    abelianization, babenko_bogatyy_phi, compute, psi, smith_normal_form, theorem_prediction,
};
use jennings_core::gamma::certify::{
    certify_appendix_theorem, certify_gamma_tables, certify_grid,
};
use jennings_core::gamma::{classify, enumerate_s};
use jennings_core::group::{bounds, c_coeff, ell, quotient_equal};
use jennings_core::series::Level;
use jennings_core::witness::{check_witness, express_in_commutators, lemma_witness};
use jennings_core::{ImageOrder, SClass, TruncatedSeries};

fn verdict(n: usize, name: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "criterion {n:2} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed:\n{}", failures.join("\n"));
}

fn random_series(rng: &mut StdRng, trunc: usize, min_deg: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        trunc,
        (min_deg..trunc).filter_map(|d| {
            if rng.gen_bool(0.7) {
                Some((d, BigInt::from(rng.gen_range(-3i64..=3))))
            } else {
                None
            }
        }),
    )
}

#[test]
fn criterion_01_theorem_reproduction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=16usize {
        let got = abelianization(k).unwrap();
        let want = theorem_prediction(k).unwrap();
        if got != want {
            failures.push(format!("k={k}: computed {got}, predicted {want}"));
        }
    }
    let elapsed = start.elapsed().as_secs();
    if elapsed >= 60 {
        failures.push(format!("runtime {elapsed}s exceeds the 60s budget"));
    }
    verdict(1, "theorem reproduction, k=2..16", failures);
}

#[test]
fn criterion_02_optimality_of_c_k() {
    let mut failures = Vec::new();
    for k in 2..=12usize {
        let c = bounds(k).unwrap().c;
        let data = compute(k).unwrap();
        let order = data.generator_image_order(c - 1).unwrap();
        if order == ImageOrder::Finite(BigInt::from(1)) {
            failures.push(format!(
                "k={k}: image of x + x^{} is zero, contradicting optimality",
                c - 1
            ));
        }
    }
    verdict(2, "optimality: nonzero image at degree c_k - 1", failures);
}

#[test]
fn criterion_03_witness_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let c = bounds(k).unwrap().c;
        for l in c..=c + 6 {
            for alpha in [-3i64, -2, -1, 1, 2, 3] {
                let word = match lemma_witness(k, l, alpha) {
                    Ok(w) => w,
                    Err(e) => {
                        failures.push(format!("k={k} l={l} alpha={alpha}: {e}"));
                        continue;
                    }
                };
                let report = check_witness(&word, k, l + 1);
                if !report.valid
                    || report.target_degree != l
                    || report.target_coefficient != BigInt::from(alpha)
                {
                    failures.push(format!(
                        "k={k} l={l} alpha={alpha}: got {}*x^{}, valid={}",
                        report.target_coefficient, report.target_degree, report.valid
                    ));
                }
            }
        }
        // Round-trip 50 random elements of J_{c_k} at N = c_k + 10.
        let mut rng = StdRng::seed_from_u64(k as u64);
        let n = c + 10;
        for t in 0..50 {
            let f = random_series(&mut rng, n, c);
            let word = match express_in_commutators(&f, k, n) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(format!("k={k} trial {t}: {e}"));
                    continue;
                }
            };
            if !quotient_equal(&word.evaluate(n), &f, k, n).unwrap() {
                failures.push(format!("k={k} trial {t}: round-trip mismatch for {f}"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs();
    if elapsed >= 120 {
        failures.push(format!("runtime {elapsed}s exceeds the 120s budget"));
    }
    verdict(3, "witness soundness and peeling round-trip", failures);
}

#[test]
fn criterion_04_leading_term_laws() {
    let mut failures = Vec::new();
    for m in 3..=12usize {
        for n in 2..m {
            let low = m + n - 1;
            let high = ell(m, n);
            let trunc = high + 2;
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    let f = TruncatedSeries::monomial(trunc, m, BigInt::from(a));
                    let g = TruncatedSeries::monomial(trunc, n, BigInt::from(b));
                    let comm = f.commutator(&g).unwrap();
                    let want_low = BigInt::from((m as i64 - n as i64) * a * b);
                    let want_high = BigInt::from(c_coeff(m as i64, n as i64) * a * b * b);
                    if comm.coeff(low) != want_low {
                        failures.push(format!(
                            "m={m} n={n} a={a} b={b}: coeff at {low} is {}, want {want_low}",
                            comm.coeff(low)
                        ));
                    }
                    if comm.coeff(high) != want_high {
                        failures.push(format!(
                            "m={m} n={n} a={a} b={b}: coeff at {high} is {}, want {want_high}",
                            comm.coeff(high)
                        ));
                    }
                }
            }
        }
    }
    verdict(4, "commutator leading-term laws on monomials", failures);
}

#[test]
fn criterion_05_commutator_containment() {
    let mut failures = Vec::new();
    for k in 2..=8usize {
        let trunc = 2 * k + 4;
        let mut rng = StdRng::seed_from_u64(100 + k as u64);
        for t in 0..500 {
            let f = random_series(&mut rng, trunc, k);
            let g = random_series(&mut rng, trunc, k);
            let comm = f.commutator(&g).unwrap();
            if comm.lvl() < Level::Finite(2 * k) {
                failures.push(format!("k={k} trial {t}: lvl([{f}, {g}]) = {:?}", comm.lvl()));
            }
        }
    }
    verdict(5, "lvl([f, g]) >= 2k on random pairs", failures);
}

#[test]
fn criterion_06_phi_homomorphism() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(6);
    let phi = |f: &TruncatedSeries| babenko_bogatyy_phi(f).unwrap();
    for t in 0..1000 {
        let f = random_series(&mut rng, 8, 2);
        let g = random_series(&mut rng, 8, 2);
        let (a1, a2, a3, a4) = phi(&f);
        let (b1, b2, b3, b4) = phi(&g);
        let sum = (a1 + b1, a2 + b2, (a3 + b3) % 2, (a4 + b4) % 2);
        if phi(&f.compose(&g).unwrap()) != sum {
            failures.push(format!("trial {t}: phi(f o g) != phi(f) + phi(g)"));
        }
        let (c1, c2, c3, c4) = phi(&f.commutator(&g).unwrap());
        if !c1.is_zero() || !c2.is_zero() || c3 != 0 || c4 != 0 {
            failures.push(format!("trial {t}: phi of a commutator is nonzero"));
        }
    }
    // Component orders consistent with the computed H1(J_2) = Z^2 + (Z/2)^2:
    // two free components, two order-2 components, all independently hit.
    let h1 = abelianization(2).unwrap();
    if h1.free_rank != 2 || h1.invariant_factors != vec![BigInt::from(2), BigInt::from(2)] {
        failures.push(format!("H1(J_2) = {h1}, expected Z^2 + (Z/2)^2"));
    }
    let hit3 = phi(&TruncatedSeries::sigma(8, 4)).2;
    let hit4 = phi(&TruncatedSeries::sigma(8, 7)).3;
    if hit3 != 1 || hit4 != 1 {
        failures.push("torsion components of phi are not surjective".to_string());
    }
    verdict(6, "phi: homomorphism, kills commutators", failures);
}

#[test]
fn criterion_07_psi_residue_map() {
    let mut failures = Vec::new();
    for k in 2..=10usize {
        let trunc = 2 * k + 2;
        let mut rng = StdRng::seed_from_u64(700 + k as u64);
        let trials = if k == 2 { 1000 } else { 200 };
        for t in 0..trials {
            let f = random_series(&mut rng, trunc, k);
            let g = random_series(&mut rng, trunc, k);
            let sum: Vec<BigInt> = psi(&f, k)
                .unwrap()
                .iter()
                .zip(psi(&g, k).unwrap())
                .map(|(a, b)| a + b)
                .collect();
            if psi(&f.compose(&g).unwrap(), k).unwrap() != sum {
                failures.push(format!("k={k} trial {t}: psi not additive"));
            }
            // Kernel triviality: psi(f) = 0 iff the class of f in the
            // truncation at 2k is trivial and the residue vanishes.
            let trivial = (k..=2 * k - 1).all(|d| f.coeff(d).is_zero());
            if psi(&f, k).unwrap().iter().all(|c| c.is_zero()) != trivial {
                failures.push(format!("k={k} trial {t}: kernel mismatch for {f}"));
            }
        }
        // Image index in Z^k is 2: Smith normal form of the generator images.
        let rows: Vec<Vec<BigInt>> = (k..=2 * k - 1)
            .map(|i| psi(&TruncatedSeries::sigma(trunc, i), k).unwrap())
            .collect();
        let (d, _, _) = smith_normal_form(&rows);
        let index: BigInt = (0..k).map(|i| d[i][i].clone()).product();
        if index != BigInt::from(2) {
            failures.push(format!("k={k}: image index {index}, want 2"));
        }
    }
    verdict(7, "psi: additive, trivial kernel, index 2", failures);
}

#[test]
fn criterion_08_appendix_certification() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 5..=9usize {
        for d in certify_appendix_theorem(k).unwrap() {
            failures.push(format!(
                "k={k} degree {}: claimed {}, oracle {}",
                d.degree, d.paper_expr, d.oracle_expr
            ));
        }
        for d in certify_grid(k).unwrap() {
            failures.push(format!(
                "k={k} grid {} degree {}: {} vs {}",
                d.operation, d.degree, d.paper_expr, d.oracle_expr
            ));
        }
        // Exhaustive classification of the expansion index set.
        let c = bounds(k).unwrap().c;
        for l in k..c {
            for v in enumerate_s(l, k).unwrap() {
                match classify(&v, l, k) {
                    SClass::Pure => {}
                    SClass::TypeA { i } | SClass::TypeB { i } => {
                        if !(k..c).contains(&i) {
                            failures.push(format!("k={k} l={l}: index {i} out of range"));
                        }
                    }
                    SClass::TypeC { i, j } => {
                        if !(i < j && (k..c).contains(&i) && (k..c).contains(&j)) {
                            failures.push(format!("k={k} l={l}: bad pair ({i}, {j})"));
                        }
                    }
                    SClass::Other => {
                        failures.push(format!("k={k} l={l}: unclassified index {:?}", v.v));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs();
    if elapsed >= 120 {
        failures.push(format!("runtime {elapsed}s exceeds the 120s budget"));
    }
    verdict(8, "banded composition laws certify, k=5..9", failures);
}

#[test]
fn criterion_09_printed_tables_adjudicated() {
    let mut failures = Vec::new();
    // Every printed coefficient either certifies against the oracle or is
    // itemized with both sides; nothing passes silently.
    for k in 2..=4usize {
        let discrepancies = certify_gamma_tables(k).unwrap();
        for d in &discrepancies {
            if d.paper_expr.is_empty() || d.oracle_expr.is_empty() {
                failures.push(format!("k={k}: discrepancy without both sides: {d:?}"));
            }
        }
        let expected = match k {
            2 => 0,
            3 => 1, // compose, degree 3
            _ => 2, // inverse and commutator, degree 11
        };
        if discrepancies.len() != expected {
            failures.push(format!(
                "k={k}: {} itemized discrepancies, expected {expected}: {discrepancies:?}",
                discrepancies.len()
            ));
        }
    }
    // Torsion parts match the direct computation.
    for (k, torsion) in [(2usize, vec![2i64, 2]), (3, vec![2, 2]), (4, vec![2, 4])] {
        let got = abelianization(k).unwrap().invariant_factors;
        let want: Vec<BigInt> = torsion.into_iter().map(BigInt::from).collect();
        if got != want {
            failures.push(format!("k={k}: torsion {got:?}, want {want:?}"));
        }
    }
    verdict(9, "printed tables certified or itemized; torsion", failures);
}

#[test]
fn criterion_10_torsion_boundary_and_orders() {
    let mut failures = Vec::new();
    for k in 2..=12usize {
        let c = bounds(k).unwrap().c;
        let data = compute(k).unwrap();
        let order = |i: usize| data.generator_image_order(i).unwrap();
        let le = |o: &ImageOrder, bound: i64| match o {
            ImageOrder::Infinite => false,
            ImageOrder::Finite(n) => n <= &BigInt::from(bound),
        };
        let divides = |o: &ImageOrder, m: i64| match o {
            ImageOrder::Infinite => false,
            ImageOrder::Finite(n) => (BigInt::from(m) % n).is_zero(),
        };
        for i in k..c {
            let o = order(i);
            if (o == ImageOrder::Infinite) != (i < 2 * k) {
                failures.push(format!("k={k}: order of degree {i} is {o}, boundary is 2k"));
            }
        }
        // Orders beyond the boundary.
        for l in (k + 2)..=(c - 1) / 2 {
            if 2 * l < c && order(2 * l) != ImageOrder::Finite(BigInt::from(1)) {
                failures.push(format!("k={k}: image at degree {} not zero", 2 * l));
            }
            if 2 * l + 1 < c && !le(&order(2 * l + 1), 2) {
                failures.push(format!("k={k}: order at degree {} exceeds 2", 2 * l + 1));
            }
        }
        // The two low odd degrees, by k mod 4.
        let o1 = order(2 * k + 1);
        if k % 4 == 3 {
            if !le(&o1, 2) {
                failures.push(format!("k={k}: |pi| at 2k+1 exceeds 2"));
            }
        } else if !divides(&o1, 4) {
            failures.push(format!("k={k}: |pi| at 2k+1 does not divide 4"));
        }
        if 2 * k + 3 < c {
            let o3 = order(2 * k + 3);
            if k % 4 == 0 {
                if !divides(&o3, 4) {
                    failures.push(format!("k={k}: |pi| at 2k+3 does not divide 4"));
                }
            } else if !le(&o3, 2) {
                failures.push(format!("k={k}: |pi| at 2k+3 exceeds 2"));
            }
        }
    }
    verdict(10, "torsion boundary at 2k and order bounds", failures);
}

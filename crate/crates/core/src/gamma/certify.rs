//! Certification of the closed-form Γ_k group laws against the
//! lift-compose-reduce ground truth. Two independent mechanisms:
//!
//! 1. Symbolic: run the composition kernels with indeterminate coefficients
//!    and compare coefficient polynomials — exactly for the low coordinates,
//!    mod 2 (with the Frobenius collapse) for the high ones. This proves the
//!    identity outright.
//! 2. Numeric grids, stratified by variable support: every monomial appearing
//!    in the truncation window has small support, so single/pair/triple
//!    strata pin the polynomial down while staying feasible.
//!
//! Mismatches are reported as structured discrepancies, never silently fixed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::formulas::{formula_poly, gamma_coordinates, GammaOp};
use super::sym::{var_a, var_b, Poly, SymSeries, VarId};
use super::{gamma_commutator, gamma_compose, gamma_inverse, high_odd_degrees, GammaElement};
use crate::error::Result;
use crate::group::bounds;

/// One disagreement between a printed/closed-form coefficient and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub k: usize,
    pub operation: String,
    pub degree: usize,
    pub paper_expr: String,
    pub oracle_expr: String,
}

impl Discrepancy {
    pub fn to_json_value(&self) -> Value {
        json!({
            "k": self.k,
            "operation": self.operation,
            "degree": self.degree,
            "paper": self.paper_expr,
            "oracle": self.oracle_expr,
        })
    }
}

/// The canonical-lift symbolic series for one side.
fn lift_series(k: usize, mk: fn(usize) -> VarId) -> Result<SymSeries> {
    let b = bounds(k)?;
    let mut degrees: Vec<usize> = (k..b.d).collect();
    degrees.extend(high_odd_degrees(&b));
    Ok(SymSeries::from_fn(b.c, degrees.into_iter(), |d| {
        Poly::var(mk(d))
    }))
}

/// A fully generic symbolic series with variables at every degree in [k, c_k).
fn full_series(k: usize, mk: fn(usize) -> VarId) -> Result<SymSeries> {
    let b = bounds(k)?;
    Ok(SymSeries::from_fn(b.c, k..b.c, |d| Poly::var(mk(d))))
}

/// Ground-truth coefficient polynomials of one Γ_k operation, per coordinate:
/// the symbolic kernel run on canonical lifts, reduced like `reduce` does.
pub fn oracle_polys(k: usize, op: GammaOp) -> Result<BTreeMap<usize, Poly>> {
    let b = bounds(k)?;
    let fa = lift_series(k, var_a)?;
    let result = match op {
        GammaOp::Compose => fa.compose(&lift_series(k, var_b)?),
        GammaOp::Inverse => fa.inverse(),
        GammaOp::Commutator => fa.commutator(&lift_series(k, var_b)?),
    };
    let mut out = BTreeMap::new();
    for l in gamma_coordinates(k)? {
        let p = result.coeff(l).clone();
        out.insert(l, if l >= b.d { p.mod2_collapse() } else { p });
    }
    Ok(out)
}

/// Compare every closed-form coefficient of the three Γ_k operations against
/// the symbolic oracle. Works for any k with formulas (2, 3, 4, and ≥ 5);
/// returns the itemized mismatches.
pub fn certify_gamma_tables(k: usize) -> Result<Vec<Discrepancy>> {
    let b = bounds(k)?;
    let mut out = Vec::new();
    for op in [GammaOp::Compose, GammaOp::Inverse, GammaOp::Commutator] {
        let oracle = oracle_polys(k, op)?;
        for l in gamma_coordinates(k)? {
            let paper = formula_poly(k, op, l)?;
            let oracle_p = &oracle[&l];
            let (lhs, rhs) = if l >= b.d {
                (paper.mod2_collapse(), oracle_p.clone())
            } else {
                (paper.clone(), oracle_p.clone())
            };
            if lhs != rhs {
                out.push(Discrepancy {
                    k,
                    operation: op.name().to_string(),
                    degree: l,
                    paper_expr: paper.to_string(),
                    oracle_expr: oracle_p.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Certify the exact banded composition theorem for k ≥ 5: every coefficient
/// of f∘g in degrees k..c_k, for fully generic f and g, equals the
/// Type-A/B/C expansion — as a polynomial identity.
pub fn certify_appendix_theorem(k: usize) -> Result<Vec<Discrepancy>> {
    let b = bounds(k)?;
    let h = full_series(k, var_a)?.compose(&full_series(k, var_b)?);
    let mut out = Vec::new();
    for l in k..b.c {
        let claimed = super::formulas::appendix_gamma_poly(k, l)?;
        let truth = h.coeff(l);
        if &claimed != truth {
            out.push(Discrepancy {
                k,
                operation: "appendix-compose".to_string(),
                degree: l,
                paper_expr: claimed.to_string(),
                oracle_expr: truth.to_string(),
            });
        }
    }
    Ok(out)
}

/// Deterministic support-stratified integer grid over the Γ_k coordinates:
/// all single-variable and pair assignments with values in `values`, plus all
/// triples at value 1. Returns assignments as (degree, side, value) triples
/// flattened into per-side elements.
fn grid_elements(k: usize, unary: bool) -> Result<Vec<(GammaElement, GammaElement)>> {
    let coords = gamma_coordinates(k)?;
    let b = bounds(k)?;
    let zero = GammaElement::zero(k)?;
    // A "slot" is (side, degree); side 0 = left, 1 = right.
    let sides: &[usize] = if unary { &[0] } else { &[0, 1] };
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for &s in sides {
        for &d in &coords {
            slots.push((s, d));
        }
    }
    let values_for = |d: usize| -> Vec<i64> {
        if d >= b.d {
            vec![1]
        } else {
            vec![1, 2, 3, -1]
        }
    };
    let set_coeff = |el: &mut GammaElement, d: usize, v: i64| {
        if d < b.d {
            el.low[d - k] = BigInt::from(v);
        } else {
            let idx = high_odd_degrees(&b).iter().position(|&x| x == d).unwrap();
            el.high_odd[idx] = (v.rem_euclid(2)) as u8;
        }
    };
    let mut out = Vec::new();
    // Zero point.
    out.push((zero.clone(), zero.clone()));
    // Singles and pairs.
    for (i, &(s1, d1)) in slots.iter().enumerate() {
        for v1 in values_for(d1) {
            let mut pair = (zero.clone(), zero.clone());
            set_coeff(if s1 == 0 { &mut pair.0 } else { &mut pair.1 }, d1, v1);
            out.push(pair);
        }
        for &(s2, d2) in slots.iter().skip(i + 1) {
            for v1 in values_for(d1) {
                for v2 in values_for(d2) {
                    let mut pair = (zero.clone(), zero.clone());
                    set_coeff(if s1 == 0 { &mut pair.0 } else { &mut pair.1 }, d1, v1);
                    set_coeff(if s2 == 0 { &mut pair.0 } else { &mut pair.1 }, d2, v2);
                    out.push(pair);
                }
            }
        }
    }
    // Triples at 1 (the support-3 monomials in range are multilinear).
    let m = slots.len();
    for i in 0..m {
        for j in (i + 1)..m {
            for t in (j + 1)..m {
                let mut pair = (zero.clone(), zero.clone());
                for &(s, d) in [&slots[i], &slots[j], &slots[t]] {
                    set_coeff(if s == 0 { &mut pair.0 } else { &mut pair.1 }, d, 1);
                }
                out.push(pair);
            }
        }
    }
    Ok(out)
}

/// Numeric grid certification: evaluate the closed forms and the
/// lift-compose-reduce oracle on the stratified grid and itemize mismatches.
pub fn certify_grid(k: usize) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    let record =
        |op: GammaOp, lhs: &GammaElement, rhs: &GammaElement, out: &mut Vec<Discrepancy>| {
            if lhs != rhs {
                let coords = gamma_coordinates(k).unwrap();
                for &l in &coords {
                    if lhs.coeff(l) != rhs.coeff(l) {
                        out.push(Discrepancy {
                            k,
                            operation: op.name().to_string(),
                            degree: l,
                            paper_expr: lhs.coeff(l).to_string(),
                            oracle_expr: rhs.coeff(l).to_string(),
                        });
                    }
                }
            }
        };
    for (a, b) in grid_elements(k, false)? {
        let f = super::formulas::apply_formula(GammaOp::Compose, &a, Some(&b))?;
        record(GammaOp::Compose, &f, &gamma_compose(&a, &b)?, &mut out);
        let f = super::formulas::apply_formula(GammaOp::Commutator, &a, Some(&b))?;
        record(GammaOp::Commutator, &f, &gamma_commutator(&a, &b)?, &mut out);
    }
    for (a, _) in grid_elements(k, true)? {
        let f = super::formulas::apply_formula(GammaOp::Inverse, &a, None)?;
        record(GammaOp::Inverse, &f, &gamma_inverse(&a)?, &mut out);
    }
    out.dedup();
    Ok(out)
}

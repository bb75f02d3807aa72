//! Closed-form group laws for Γ_k as coefficient polynomials: the generic
//! banded formulas for k ≥ 5 and the explicit printed tables for k ∈ {2,3,4}.
//! These are hypotheses; the certification layer compares every one of them
//! against the lift-compose-reduce ground truth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::sym::{var_a, var_b, Poly, VarId};
use super::{binomial, high_odd_degrees, GammaElement};
use crate::error::{Error, Result};
use crate::group::{bounds, Bounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaOp {
    Compose,
    Inverse,
    Commutator,
}

impl GammaOp {
    pub fn name(self) -> &'static str {
        match self {
            GammaOp::Compose => "compose",
            GammaOp::Inverse => "inverse",
            GammaOp::Commutator => "commutator",
        }
    }
}

/// The degrees carrying data in a Γ_k normal form: all of k..d_k, then the
/// odd degrees up to c_k.
pub fn gamma_coordinates(k: usize) -> Result<Vec<usize>> {
    let b = bounds(k)?;
    let mut out: Vec<usize> = (k..b.d).collect();
    out.extend(high_odd_degrees(&b));
    Ok(out)
}

/// Is the coordinate at degree `l` exact (below d_k) rather than mod 2?
pub fn is_exact_coordinate(k: usize, l: usize) -> Result<bool> {
    Ok(l < bounds(k)?.d)
}

fn iv(n: usize) -> BigInt {
    BigInt::from(n as u64)
}

/// Variable of the canonical H_k-lift: a plain variable below d_k and at odd
/// degrees, zero at even degrees ≥ d_k (killed coordinates), zero outside
/// [k, c_k).
fn lift_var(b: &Bounds, mk: fn(usize) -> VarId, i: usize) -> Poly {
    if i < b.k || i >= b.c || (i >= b.d && i % 2 == 0) {
        Poly::zero()
    } else {
        Poly::var(mk(i))
    }
}

/// Generic series variable (no H_k reduction), zero outside [k, c_k).
fn full_var(b: &Bounds, mk: fn(usize) -> VarId, i: usize) -> Poly {
    if i < b.k || i >= b.c {
        Poly::zero()
    } else {
        Poly::var(mk(i))
    }
}

/// Σ_{i=k}^{l−k+1} i·a_i·b_{l−i+1}, with the supplied variable accessors.
fn band_sum(
    b: &Bounds,
    l: usize,
    av: &dyn Fn(usize) -> Poly,
    bv: &dyn Fn(usize) -> Poly,
) -> Poly {
    let mut s = Poly::zero();
    if l + 1 < 2 * b.k {
        return s;
    }
    for i in b.k..=(l + 1 - b.k) {
        s = s.add(&av(i).mul(&bv(l - i + 1)).scale(&iv(i)));
    }
    s
}

/// The exact composition coefficient γ_l of f∘g in J_k^{c_k} for k ≥ 5, as a
/// polynomial in the full coefficient variables: the pure/linear terms plus
/// the Type-A, Type-B and Type-C contributions (tail support ≤ 2).
pub fn appendix_gamma_poly(k: usize, l: usize) -> Result<Poly> {
    let b = bounds(k)?;
    if k < 5 {
        return Err(Error::Domain(format!(
            "the banded composition theorem needs k >= 5, got {k}"
        )));
    }
    if !(k..b.c).contains(&l) {
        return Err(Error::Domain(format!("degree {l} outside [k, c_k)")));
    }
    let av = |i: usize| full_var(&b, var_a, i);
    let bv = |i: usize| full_var(&b, var_b, i);
    // α_l + β_l + Type A.
    let mut p = av(l).add(&bv(l)).add(&band_sum(&b, l, &av, &bv));
    // Type B: l' − 2 + 2i = l, contributing binom(l', 2)·a_{l'}·b_i².
    for i in b.k..b.c {
        if l + 2 < 2 * i {
            break;
        }
        let lp = l + 2 - 2 * i;
        if lp >= b.k && lp < b.c {
            let term = av(lp).mul(&bv(i)).mul(&bv(i)).scale(&binomial(lp, 2));
            p = p.add(&term);
        }
    }
    // Type C: l' − 2 + i + j = l with i < j, contributing l'(l'−1)·a_{l'}·b_i·b_j.
    for i in b.k..b.c {
        for j in (i + 1)..b.c {
            if l + 2 < i + j {
                break;
            }
            let lp = l + 2 - i - j;
            if lp >= b.k && lp < b.c {
                let coeff = iv(lp) * iv(lp - 1);
                let term = av(lp).mul(&bv(i)).mul(&bv(j)).scale(&coeff);
                p = p.add(&term);
            }
        }
    }
    Ok(p)
}

/// The Γ_k composition corollary coefficient at a coordinate degree `l`
/// (k ≥ 5), in canonical-lift variables. High coordinates are understood
/// mod 2 (comparison collapses them).
pub fn gamma_compose_poly(k: usize, l: usize) -> Result<Poly> {
    let b = bounds(k)?;
    if k < 5 {
        return table_poly(k, GammaOp::Compose, l);
    }
    let av = |i: usize| lift_var(&b, var_a, i);
    let bv = |i: usize| lift_var(&b, var_b, i);
    let mut p = av(l).add(&bv(l));
    if l >= 2 * k - 1 {
        p = p.add(&band_sum(&b, l, &av, &bv));
    }
    let sq = |x: &Poly| x.mul(x);
    if l == 3 * k - 2 && k % 2 == 1 {
        p = p.add(&av(k).mul(&sq(&bv(k))).scale(&binomial(k, 2)));
    }
    if l == 3 * k - 1 && k % 2 == 0 {
        p = p.add(&av(k + 1).mul(&sq(&bv(k))).scale(&binomial(k + 1, 2)));
    }
    if l == 3 * k && k % 2 == 1 {
        p = p.add(&av(k).mul(&sq(&bv(k + 1))).scale(&binomial(k, 2)));
        p = p.add(&av(k + 2).mul(&sq(&bv(k))).scale(&binomial(k + 2, 2)));
    }
    if l == 3 * k + 1 && k % 2 == 0 {
        p = p.add(&av(k + 1).mul(&sq(&bv(k + 1))).scale(&binomial(k + 1, 2)));
        p = p.add(&av(k + 3).mul(&sq(&bv(k))).scale(&binomial(k + 3, 2)));
    }
    if l == 3 * k + 3 && k % 4 == 0 {
        p = p.add(&av(k + 3).mul(&sq(&bv(k + 1))));
    }
    Ok(p)
}

/// The Γ_k inverse corollary coefficient at coordinate degree `l` (k ≥ 5).
pub fn gamma_inverse_poly(k: usize, l: usize) -> Result<Poly> {
    let b = bounds(k)?;
    if k < 5 {
        return table_poly(k, GammaOp::Inverse, l);
    }
    let av = |i: usize| lift_var(&b, var_a, i);
    let mut p = av(l).neg();
    if l >= 2 * k - 1 {
        p = p.add(&band_sum(&b, l, &av, &av));
    }
    let sq = |x: &Poly| x.mul(x);
    let cube = |x: &Poly| x.mul(x).mul(x);
    let one = BigInt::from(1);
    if l == 3 * k - 2 && k % 2 == 1 {
        p = p.add(&cube(&av(k)).scale(&(binomial(k, 2) + &one)));
    }
    if l == 3 * k - 1 && k % 2 == 0 {
        p = p.add(&av(k + 1).mul(&sq(&av(k))).scale(&binomial(k + 1, 2)));
    }
    if l == 3 * k && k % 2 == 1 {
        p = p.add(&av(k).mul(&sq(&av(k + 1))).scale(&binomial(k, 2)));
        p = p.add(&av(k + 2).mul(&sq(&av(k))).scale(&(binomial(k + 2, 2) + &one)));
    }
    if l == 3 * k + 1 && k % 2 == 0 {
        p = p.add(&cube(&av(k + 1)).scale(&(binomial(k + 1, 2) + &one)));
        p = p.add(&av(k + 3).mul(&sq(&av(k))).scale(&binomial(k + 3, 2)));
    }
    // l = 3k+3, k ≡ 0 (mod 4): nothing beyond −α_l + the band sum.
    Ok(p)
}

/// The Γ_k commutator corollary coefficient δ_l (k ≥ 5).
pub fn gamma_commutator_poly(k: usize, l: usize) -> Result<Poly> {
    let b = bounds(k)?;
    if k < 5 {
        return table_poly(k, GammaOp::Commutator, l);
    }
    let av = |i: usize| lift_var(&b, var_a, i);
    let bv = |i: usize| lift_var(&b, var_b, i);
    let mut p = Poly::zero();
    if l >= 2 * k && l < b.d {
        // Σ (2i − l − 1)·α_i·β_{l−i+1}, antisymmetric by construction.
        for i in b.k..=(l + 1 - b.k) {
            let coeff = BigInt::from(2 * i as i64 - l as i64 - 1);
            p = p.add(&av(i).mul(&bv(l - i + 1)).scale(&coeff));
        }
    }
    let sq = |x: &Poly| x.mul(x);
    let sym = |i: usize, j: usize| -> Poly {
        // α_i β_j² + β_i α_j²
        av(i).mul(&sq(&bv(j))).add(&bv(i).mul(&sq(&av(j))))
    };
    if l == 3 * k - 2 && k % 2 == 1 {
        p = p.add(&sym(k, k).scale(&binomial(k, 2)));
    }
    if l == 3 * k - 1 && k % 2 == 0 {
        p = p.add(&sym(k + 1, k).scale(&binomial(k + 1, 2)));
    }
    if l == 3 * k && k % 2 == 1 {
        p = p.add(&sym(k, k + 1).scale(&binomial(k, 2)));
        p = p.add(&sym(k + 2, k).scale(&binomial(k + 2, 2)));
    }
    if l == 3 * k + 1 && k % 2 == 0 {
        p = p.add(&sym(k + 3, k).scale(&binomial(k + 3, 2)));
    }
    if l == 3 * k + 3 && k % 4 == 0 {
        p = p.add(&sym(k + 3, k + 1));
    }
    Ok(p)
}

/// The closed-form coefficient for any k (tables for k ∈ {2,3,4}, generated
/// bands for k ≥ 5).
pub fn formula_poly(k: usize, op: GammaOp, l: usize) -> Result<Poly> {
    match op {
        GammaOp::Compose => gamma_compose_poly(k, l),
        GammaOp::Inverse => gamma_inverse_poly(k, l),
        GammaOp::Commutator => gamma_commutator_poly(k, l),
    }
}

/// The printed coefficient tables for Γ₂, Γ₃, Γ₄, transcribed verbatim
/// (including their irregularities — the certification layer adjudicates; a
/// unary inverse formula citing a β-coefficient is read as the matching α).
fn table_poly(k: usize, op: GammaOp, l: usize) -> Result<Poly> {
    let a = |i: usize| Poly::var(var_a(i));
    let b = |i: usize| Poly::var(var_b(i));
    let n = |c: i64| Poly::constant(BigInt::from(c));
    let sum = |ps: &[Poly]| ps.iter().fold(Poly::zero(), |acc, p| acc.add(p));
    let prod = |ps: &[Poly]| ps.iter().fold(Poly::one(), |acc, p| acc.mul(p));
    let missing = || {
        Error::Domain(format!(
            "no printed table entry for k={k}, {}, degree {l}",
            op.name()
        ))
    };
    let p = match (k, op, l) {
        // Γ₂: exact coordinates 2..5, mod-2 coordinate 7.
        (2, GammaOp::Compose, 2) => a(2).add(&b(2)),
        (2, GammaOp::Compose, 3) => sum(&[a(3), b(3), prod(&[n(2), a(2), b(2)])]),
        (2, GammaOp::Compose, 4) => sum(&[
            a(4),
            b(4),
            prod(&[n(3), a(3), b(2)]),
            prod(&[n(2), a(2), b(3)]),
            prod(&[a(2), b(2), b(2)]),
        ]),
        (2, GammaOp::Compose, 5) => sum(&[
            a(5),
            b(5),
            prod(&[n(4), a(4), b(2)]),
            prod(&[n(3), a(3), b(3)]),
            prod(&[n(2), a(2), b(4)]),
            prod(&[n(3), a(3), b(2), b(2)]),
            prod(&[n(2), a(2), b(2), b(3)]),
        ]),
        (2, GammaOp::Compose, 7) => sum(&[
            a(7),
            b(7),
            prod(&[a(5), b(3)]),
            prod(&[a(3), b(3)]),
            prod(&[a(3), b(5)]),
            prod(&[a(3), b(2), b(3)]),
        ]),
        (2, GammaOp::Inverse, 2) => a(2).neg(),
        (2, GammaOp::Inverse, 3) => a(3).neg().add(&prod(&[n(2), a(2), a(2)])),
        (2, GammaOp::Inverse, 4) => sum(&[
            a(4).neg(),
            prod(&[n(5), a(3), a(2)]),
            prod(&[n(-5), a(2), a(2), a(2)]),
        ]),
        (2, GammaOp::Inverse, 5) => sum(&[
            a(5).neg(),
            prod(&[n(6), a(4), a(2)]),
            prod(&[n(14), a(2), a(2), a(2), a(2)]),
            prod(&[n(3), a(3), a(3)]),
            prod(&[n(-21), a(3), a(2), a(2)]),
        ]),
        (2, GammaOp::Inverse, 7) => a(7),
        (2, GammaOp::Commutator, 2) | (2, GammaOp::Commutator, 3) => Poly::zero(),
        (2, GammaOp::Commutator, 4) => sum(&[
            prod(&[a(2), b(2), b(2).sub(&a(2))]),
            prod(&[a(3), b(2)]),
            prod(&[a(2), b(3)]).neg(),
        ]),
        (2, GammaOp::Commutator, 5) => sum(&[
            prod(&[
                n(2),
                a(2),
                b(2),
                sum(&[
                    prod(&[n(2), a(2).mul(&a(2)).sub(&b(2).mul(&b(2)))]),
                    prod(&[n(3), b(3).sub(&a(3))]),
                ]),
            ]),
            prod(&[n(2), a(4).mul(&b(2)).sub(&a(2).mul(&b(4)))]),
            prod(&[a(3), b(2), b(2)]).sub(&prod(&[b(3), a(2), a(2)])).neg(),
        ]),
        (2, GammaOp::Commutator, 7) => a(3).mul(&b(2)).sub(&a(2).mul(&b(3))),

        // Γ₃: exact coordinates 3..6, mod-2 coordinates 7 and 9.
        (3, GammaOp::Compose, 3) => a(3).add(&b(4)),
        (3, GammaOp::Compose, 4) => a(4).add(&b(4)),
        (3, GammaOp::Compose, 5) => sum(&[a(5), b(5), prod(&[n(3), a(3), b(3)])]),
        (3, GammaOp::Compose, 6) => sum(&[
            a(6),
            b(6),
            prod(&[n(4), a(4), b(3)]),
            prod(&[n(3), a(3), b(4)]),
        ]),
        (3, GammaOp::Compose, 7) => sum(&[
            a(7),
            b(7),
            prod(&[a(5), b(3)]),
            prod(&[a(3), b(3)]),
            prod(&[a(3), b(5)]),
        ]),
        (3, GammaOp::Compose, 9) => sum(&[
            a(9),
            b(9),
            prod(&[a(7), b(3)]),
            prod(&[a(5), b(5)]),
            prod(&[a(3), b(7)]),
            prod(&[a(3), b(3)]),
            prod(&[a(3), b(4)]),
        ]),
        (3, GammaOp::Inverse, 3) => a(3).neg(),
        (3, GammaOp::Inverse, 4) => a(4).neg(),
        (3, GammaOp::Inverse, 5) => a(5).neg().add(&prod(&[n(3), a(3), a(3)])),
        (3, GammaOp::Inverse, 6) => sum(&[
            a(6).neg(),
            prod(&[n(4), a(4), a(3)]),
            prod(&[n(3), a(3), a(4)]),
        ]),
        (3, GammaOp::Inverse, 7) => a(7),
        (3, GammaOp::Inverse, 9) => sum(&[
            a(9),
            a(3),
            a(5),
            prod(&[a(3), a(4)]),
            prod(&[a(3), a(5)]),
        ]),
        (3, GammaOp::Commutator, 3) | (3, GammaOp::Commutator, 4) | (3, GammaOp::Commutator, 5) => {
            Poly::zero()
        }
        (3, GammaOp::Commutator, 6) => a(4).mul(&b(3)).sub(&b(4).mul(&a(3))),
        (3, GammaOp::Commutator, 7) => Poly::zero(),
        (3, GammaOp::Commutator, 9) => a(4).mul(&b(3)).sub(&b(4).mul(&a(3))),

        // Γ₄: exact coordinates 4..11, mod-2 coordinates 13 and 15.
        (4, GammaOp::Compose, 4) => a(4).add(&b(4)),
        (4, GammaOp::Compose, 5) => a(5).add(&b(5)),
        (4, GammaOp::Compose, 6) => a(6).add(&b(6)),
        (4, GammaOp::Compose, 7) => sum(&[a(7), b(7), prod(&[n(4), a(4), b(4)])]),
        (4, GammaOp::Compose, 8) => sum(&[
            a(8),
            b(8),
            prod(&[n(5), a(5), b(4)]),
            prod(&[n(4), a(4), b(5)]),
        ]),
        (4, GammaOp::Compose, 9) => sum(&[
            a(9),
            b(9),
            prod(&[n(6), a(6), b(4)]),
            prod(&[n(5), a(5), b(5)]),
            prod(&[n(4), a(4), b(6)]),
        ]),
        (4, GammaOp::Compose, 10) => sum(&[
            a(10),
            b(10),
            prod(&[n(7), a(7), b(4)]),
            prod(&[n(6), a(6), b(5)]),
            prod(&[n(5), a(5), b(6)]),
            prod(&[n(4), a(4), b(7)]),
            prod(&[n(6), a(4), b(4), b(4)]),
        ]),
        (4, GammaOp::Compose, 11) => sum(&[
            a(11),
            b(11),
            prod(&[n(8), a(8), b(4)]),
            prod(&[n(7), a(7), b(5)]),
            prod(&[n(6), a(6), b(6)]),
            prod(&[n(5), a(5), b(7)]),
            prod(&[n(4), a(4), b(8)]),
            prod(&[n(10), a(5), b(4), b(4)]),
            prod(&[n(12), a(4), b(4), b(5)]),
        ]),
        (4, GammaOp::Compose, 13) => sum(&[
            a(13),
            b(13),
            prod(&[a(9), b(5)]),
            prod(&[a(7), b(7)]),
            prod(&[a(5), b(9)]),
            prod(&[a(7), b(4)]),
        ]),
        (4, GammaOp::Compose, 15) => sum(&[
            a(15),
            b(15),
            prod(&[a(11), b(5)]),
            prod(&[a(9), b(7)]),
            prod(&[a(7), b(9)]),
            prod(&[a(5), b(11)]),
            prod(&[a(7), b(5)]),
        ]),
        (4, GammaOp::Inverse, 4) => a(4).neg(),
        (4, GammaOp::Inverse, 5) => a(5).neg(),
        (4, GammaOp::Inverse, 6) => a(6).neg(),
        (4, GammaOp::Inverse, 7) => a(7).neg().add(&prod(&[n(4), a(4), a(4)])),
        (4, GammaOp::Inverse, 8) => a(8).neg().add(&prod(&[n(9), a(5), a(4)])),
        (4, GammaOp::Inverse, 9) => sum(&[
            a(9).neg(),
            prod(&[n(10), a(6), a(4)]),
            prod(&[n(5), a(5), a(5)]),
        ]),
        (4, GammaOp::Inverse, 10) => sum(&[
            a(10).neg(),
            prod(&[n(11), a(7), a(4)]),
            prod(&[n(11), a(6), a(5)]),
            prod(&[n(-22), a(4), a(4), a(4)]),
        ]),
        (4, GammaOp::Inverse, 11) => sum(&[
            a(11),
            prod(&[n(12), a(8), a(4)]),
            prod(&[n(12), a(7), a(5)]),
            prod(&[n(6), a(6), a(6)]),
            prod(&[n(-78), a(5), a(4), a(4)]),
        ]),
        (4, GammaOp::Inverse, 13) => sum(&[a(13), a(7), a(5), prod(&[a(7), a(4)])]),
        (4, GammaOp::Inverse, 15) => a(15),
        (4, GammaOp::Commutator, 4)
        | (4, GammaOp::Commutator, 5)
        | (4, GammaOp::Commutator, 6)
        | (4, GammaOp::Commutator, 7) => Poly::zero(),
        (4, GammaOp::Commutator, 8) => a(5).mul(&b(4)).sub(&b(5).mul(&a(4))),
        (4, GammaOp::Commutator, 9) => a(6).mul(&b(4)).sub(&b(6).mul(&a(4))).scale(&BigInt::from(2)),
        (4, GammaOp::Commutator, 10) => sum(&[
            a(7).mul(&b(4)).sub(&b(7).mul(&a(4))).scale(&BigInt::from(3)),
            a(6).mul(&b(5)).sub(&b(6).mul(&a(5))),
            prod(&[n(6), a(4), b(4), b(4).sub(&a(4))]),
        ]),
        (4, GammaOp::Commutator, 11) => sum(&[
            a(8).mul(&b(4)).sub(&b(8).mul(&a(4))).scale(&BigInt::from(4)),
            a(7).mul(&b(5)).sub(&b(7).mul(&a(5))).scale(&BigInt::from(2)),
            prod(&[a(5), b(4), b(4)])
                .sub(&prod(&[b(5), a(4), a(4)]))
                .scale(&BigInt::from(10)),
            prod(&[n(12), a(4), b(4), b(5).sub(&a(5))]),
        ]),
        (4, GammaOp::Commutator, 13) => a(7).mul(&b(4)).sub(&b(7).mul(&a(4))),
        (4, GammaOp::Commutator, 15) => a(7).mul(&b(5)).sub(&b(7).mul(&a(5))),
        _ => return Err(missing()),
    };
    Ok(p)
}

/// Evaluate a closed-form law numerically on Γ elements (the canonical lifts
/// supply the variable assignment); used by the grid certification.
pub fn apply_formula(
    op: GammaOp,
    a: &GammaElement,
    b: Option<&GammaElement>,
) -> Result<GammaElement> {
    let k = a.k;
    let bb = bounds(k)?;
    let fa = a.lift();
    let fb = b.map(|e| e.lift());
    if let Some(other) = b {
        if other.k != k {
            return Err(Error::Domain("gamma elements at different levels".into()));
        }
    }
    let assign = |v: VarId| -> BigInt {
        let i = (v / 2) as usize;
        if v % 2 == 0 {
            fa.coeff(i)
        } else {
            fb.as_ref().map(|f| f.coeff(i)).unwrap_or_else(BigInt::zero)
        }
    };
    let mut low = Vec::with_capacity(bb.d - k);
    for l in k..bb.d {
        low.push(formula_poly(k, op, l)?.eval(&assign));
    }
    let mut high_odd = Vec::new();
    for l in high_odd_degrees(&bb) {
        let v = formula_poly(k, op, l)?.eval(&assign);
        high_odd.push(if v.is_odd() { 1 } else { 0 });
    }
    Ok(GammaElement { k, low, high_odd })
}

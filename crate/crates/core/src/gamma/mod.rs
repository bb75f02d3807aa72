//! The reduced quotient Γ_k = J_k^{c_k}(Z)/H_k: normal forms, the
//! lift-compose-reduce group operations (the ground truth against which every
//! closed form is certified), and the multinomial composition machinery.

pub mod certify;
pub mod formulas;
pub mod sym;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{bounds, Bounds};
use crate::series::{Level, TruncatedSeries};

/// Normal form of a class in Γ_k: coefficients in degrees k ≤ i < d_k are
/// kept exactly; in degrees d_k ≤ i < c_k, odd-degree coefficients survive
/// mod 2 and even-degree coefficients are killed entirely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement {
    pub k: usize,
    /// Exact coefficients for degrees k, …, d_k − 1.
    pub low: Vec<BigInt>,
    /// Bits for the odd degrees d_k ≤ i < c_k, ascending.
    pub high_odd: Vec<u8>,
}

/// The odd degrees in [d, c), ascending.
pub fn high_odd_degrees(b: &Bounds) -> Vec<usize> {
    (b.d..b.c).filter(|i| i % 2 == 1).collect()
}

impl GammaElement {
    pub fn zero(k: usize) -> Result<Self> {
        let b = bounds(k)?;
        Ok(GammaElement {
            k,
            low: vec![BigInt::zero(); b.d - k],
            high_odd: vec![0; high_odd_degrees(&b).len()],
        })
    }

    pub fn is_zero(&self) -> bool {
        self.low.iter().all(|c| c.is_zero()) && self.high_odd.iter().all(|&b| b == 0)
    }

    pub fn bounds(&self) -> Bounds {
        bounds(self.k).expect("constructed with valid k")
    }

    /// The coefficient visible at degree `i`: exact below d_k, the mod-2 bit
    /// at odd degrees ≥ d_k, and zero at even degrees ≥ d_k.
    pub fn coeff(&self, i: usize) -> BigInt {
        let b = self.bounds();
        assert!((self.k..b.c).contains(&i), "degree {i} outside [k, c_k)");
        if i < b.d {
            self.low[i - self.k].clone()
        } else if i % 2 == 1 {
            BigInt::from(self.high_odd[(i - first_high_odd(&b)) / 2])
        } else {
            BigInt::zero()
        }
    }

    /// The canonical representative in J_k^{c_k}(Z): exact low coefficients,
    /// odd high coefficients in {0, 1}, even high coefficients 0.
    pub fn lift(&self) -> TruncatedSeries {
        let b = self.bounds();
        let mut pairs: Vec<(usize, BigInt)> = self
            .low
            .iter()
            .enumerate()
            .map(|(i, c)| (self.k + i, c.clone()))
            .collect();
        for (j, &bit) in self.high_odd.iter().enumerate() {
            pairs.push((first_high_odd(&b) + 2 * j, BigInt::from(bit)));
        }
        TruncatedSeries::from_coeffs(b.c, pairs)
    }
}

fn first_high_odd(b: &Bounds) -> usize {
    if b.d % 2 == 1 {
        b.d
    } else {
        b.d + 1
    }
}

/// Project a series onto its Γ_k normal form.
pub fn reduce(f: &TruncatedSeries, k: usize) -> Result<GammaElement> {
    let b = bounds(k)?;
    if f.trunc_order() < b.c {
        return Err(Error::Precision {
            need: b.c,
            have: f.trunc_order(),
        });
    }
    if f.lvl() < Level::Finite(k) {
        return Err(Error::Domain(format!(
            "series has level {} below k = {k}",
            f.lvl()
        )));
    }
    let low = (k..b.d).map(|i| f.coeff(i)).collect();
    let high_odd = high_odd_degrees(&b)
        .into_iter()
        .map(|i| if f.coeff(i).is_odd() { 1 } else { 0 })
        .collect();
    Ok(GammaElement { k, low, high_odd })
}

fn require_same_k(a: &GammaElement, b: &GammaElement) -> Result<()> {
    if a.k != b.k {
        return Err(Error::Domain(format!(
            "gamma elements at different levels: {} vs {}",
            a.k, b.k
        )));
    }
    Ok(())
}

/// Group law of Γ_k, computed as reduce(lift(a) ∘ lift(b)).
pub fn gamma_compose(a: &GammaElement, b: &GammaElement) -> Result<GammaElement> {
    require_same_k(a, b)?;
    reduce(&a.lift().compose(&b.lift())?, a.k)
}

/// Inverse in Γ_k, computed as reduce(lift(a)⁻¹).
pub fn gamma_inverse(a: &GammaElement) -> Result<GammaElement> {
    reduce(&a.lift().inverse(), a.k)
}

/// Commutator in Γ_k, computed as reduce([lift(a), lift(b)]).
pub fn gamma_commutator(a: &GammaElement, b: &GammaElement) -> Result<GammaElement> {
    require_same_k(a, b)?;
    reduce(&a.lift().commutator(&b.lift())?, a.k)
}

/// A multi-index v ∈ (Z_{≥0})^{m_k} with m_k = c_k − k + 1, weighted by
/// w^k = (1, k, k+1, …, c_k − 1): the exponent pattern of one monomial in the
/// multinomial expansion of g^l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    pub v: Vec<usize>,
}

impl MultiIndex {
    pub fn total(&self) -> usize {
        self.v.iter().sum()
    }

    /// v·w^k where w^k = (1, k, k+1, …, c_k − 1).
    pub fn weight(&self, k: usize) -> usize {
        self.v[0]
            + self
                .v
                .iter()
                .skip(1)
                .enumerate()
                .map(|(j, &e)| (k + j) * e)
                .sum::<usize>()
    }
}

/// Shape classification of a member of S_{l,k} (meaningful for k ≥ 5, where
/// the weight bound forces the tail support to be at most 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SClass {
    /// (l, 0, …, 0) — the pure power term α_l x^l.
    Pure,
    /// v₁ = l − 1 and one tail coordinate 1 at degree `i`: term l·α_l β_i.
    TypeA { i: usize },
    /// v₁ = l − 2 and one tail coordinate 2 at degree `i`: binom(l,2)·α_l β_i².
    TypeB { i: usize },
    /// v₁ = l − 2 and tail coordinates 1 at degrees `i` < `j`:
    /// l(l−1)·α_l β_i β_j.
    TypeC { i: usize, j: usize },
    /// Anything else (occurs only for k < 5).
    Other,
}

/// Classify a multi-index with |v| = l.
pub fn classify(v: &MultiIndex, l: usize, k: usize) -> SClass {
    debug_assert_eq!(v.total(), l);
    let tail: Vec<(usize, usize)> = v
        .v
        .iter()
        .skip(1)
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| (k + j, e))
        .collect();
    match (v.v[0], tail.as_slice()) {
        (v1, []) if v1 == l => SClass::Pure,
        (v1, [(i, 1)]) if v1 == l - 1 => SClass::TypeA { i: *i },
        (v1, [(i, 2)]) if v1 == l - 2 => SClass::TypeB { i: *i },
        (v1, [(i, 1), (j, 1)]) if v1 == l - 2 => SClass::TypeC { i: *i, j: *j },
        _ => SClass::Other,
    }
}

/// The finite set S_{l,k} = { v : |v| = l, v·w^k < c_k }, enumerated by
/// recursing over the tail coordinates (the weight bound prunes hard: each
/// unit of tail adds at least k − 1 to v·w^k − |v|).
pub fn enumerate_s(l: usize, k: usize) -> Result<Vec<MultiIndex>> {
    let b = bounds(k)?;
    if l < k {
        return Err(Error::Domain(format!("l must be >= k = {k}, got {l}")));
    }
    let m = b.c - k + 1;
    let mut out = Vec::new();
    let mut tail = vec![0usize; m - 1];
    // excess = v·w^k − |v|, which only the tail contributes to:
    // a unit at tail position j (degree k + j) contributes k + j − 1.
    fn rec(
        pos: usize,
        tail_sum: usize,
        excess: usize,
        l: usize,
        k: usize,
        c: usize,
        tail: &mut Vec<usize>,
        out: &mut Vec<MultiIndex>,
    ) {
        if pos == tail.len() {
            if tail_sum <= l && l + excess < c {
                let mut v = vec![l - tail_sum];
                v.extend_from_slice(tail);
                out.push(MultiIndex { v });
            }
            return;
        }
        let unit = k + pos - 1; // weight excess per unit at this position
        let mut e = 0;
        loop {
            let new_excess = excess + e * unit;
            if tail_sum + e > l || l + new_excess >= c {
                break;
            }
            tail[pos] = e;
            rec(pos + 1, tail_sum + e, new_excess, l, k, c, tail, out);
            e += 1;
        }
        tail[pos] = 0;
    }
    if l < b.c {
        rec(0, 0, 0, l, k, b.c, &mut tail, &mut out);
    }
    Ok(out)
}

/// Multinomial coefficient binom(l; v) = l! / ∏ v_i!.
pub fn multinomial(l: usize, v: &[usize]) -> BigInt {
    debug_assert_eq!(v.iter().sum::<usize>(), l);
    let mut result = BigInt::one();
    let mut remaining = l;
    for &e in v {
        result *= binomial(remaining, e);
        remaining -= e;
    }
    result
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= BigInt::from((n - i) as u64);
        den *= BigInt::from((i + 1) as u64);
    }
    num / den
}

/// Composition computed through the S_{l,k} expansion:
/// f∘g = x + Σ β_i x^i + Σ_l α_l Σ_{v ∈ S_{l,k}} binom(l; v) ∏ β_i^{v_i} x^{v·w}.
/// Must agree exactly with the substitution kernel.
pub fn multinomial_compose(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    k: usize,
) -> Result<TruncatedSeries> {
    let b = bounds(k)?;
    if f.trunc_order() != b.c || g.trunc_order() != b.c {
        return Err(Error::Precision {
            need: b.c,
            have: f.trunc_order().min(g.trunc_order()),
        });
    }
    if f.lvl() < Level::Finite(k) || g.lvl() < Level::Finite(k) {
        return Err(Error::Domain("both series must have level >= k".into()));
    }
    let mut pairs: Vec<(usize, BigInt)> = g.terms().map(|(d, c)| (d, c.clone())).collect();
    for (l, alpha) in f.terms() {
        for v in enumerate_s(l, k)? {
            let coeff = multinomial(l, &v.v);
            let mut term = alpha * coeff;
            for (j, &e) in v.v.iter().skip(1).enumerate() {
                if e > 0 {
                    let beta = g.coeff(k + j);
                    for _ in 0..e {
                        term *= &beta;
                    }
                }
            }
            if !term.is_zero() {
                pairs.push((v.weight(k), term));
            }
        }
    }
    Ok(TruncatedSeries::from_coeffs(b.c, pairs))
}

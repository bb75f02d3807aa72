//! Subgroup structure: the filtration J_k ⊇ J_{k+1} ⊇ ⋯, quotient classes,
//! the derived constants c_k and d_k, and the arithmetic of useful pairs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{Level, TruncatedSeries};

/// The derived degree bounds attached to a level `k ≥ 2`.
///
/// `c` is the smallest degree with `J_c(Z) ⊆ [J_k(Z), J_k(Z)]`; `d` is the
/// cutoff separating the exactly-tracked low coefficients from the mod-2 high
/// coefficients in the reduced quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub k: usize,
    pub c: usize,
    pub d: usize,
}

/// Compute `Bounds` for `k ≥ 2`.
pub fn bounds(k: usize) -> Result<Bounds> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be >= 2, got {k}")));
    }
    let c = match k % 4 {
        1 | 3 => 3 * k + 1,
        2 => 3 * k + 2,
        _ => 3 * k + 4,
    };
    let d = match k % 4 {
        3 => 2 * k + 1,
        1 | 2 => 2 * k + 2,
        _ => 2 * k + 4,
    };
    Ok(Bounds { k, c, d })
}

/// `C(m, n) = binom(m, 2) − (m − n)(m + n − 1)`, the coefficient of
/// `x^{m+2(n−1)}` in `[x + αx^m, x + βx^n]` (times `αβ²`).
pub fn c_coeff(m: i64, n: i64) -> i64 {
    m * (m - 1) / 2 - (m - n) * (m + n - 1)
}

/// `ℓ(m, n) = m + 2(n − 1)`, the degree where `C(m, n)` appears.
pub fn ell(m: usize, n: usize) -> usize {
    m + 2 * (n - 1)
}

/// A pair `(m, n)` with `m` odd and `m > n + 2`; `k`-useful means `n ≥ k`.
/// Pairs produced by the finders additionally have `C(m, n)` odd, i.e.
/// `m ≡ 3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UsefulPair {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl UsefulPair {
    pub fn is_valid(&self) -> bool {
        self.m % 2 == 1 && self.m > self.n + 2 && self.n >= self.k
    }

    pub fn ell(&self) -> usize {
        ell(self.m, self.n)
    }
}

/// Find a `k`-useful pair `(m, n)` with `ℓ(m, n) = l` and `C(m, n)` odd, by
/// scanning `n` downward from the largest value with `m > n + 2` (the balanced
/// end, where both generator levels are as high as possible) and accepting the
/// first `m ≡ 3 (mod 4)`.
pub fn find_useful_pair(l: usize, k: usize) -> Result<UsefulPair> {
    let li = l as i64;
    let ki = k as i64;
    if l % 2 == 0 {
        return Err(Error::Domain(format!("l must be odd, got {l}")));
    }
    // m = l − 2(n−1) > n + 2  ⟺  3n < l.
    let n_max = (li - 1) / 3;
    let mut n = n_max;
    while n >= ki.max(1) {
        let m = li - 2 * (n - 1);
        if m % 4 == 3 && m > n + 2 {
            return Ok(UsefulPair {
                m: m as usize,
                n: n as usize,
                k,
            });
        }
        n -= 1;
    }
    Err(Error::PairNotFound { l: li, k: ki })
}

/// The constructive residue-class pair finder: pick the pair from the residue
/// of `l` modulo 3 (and modulo 12 when `3 | l`), then repair with the
/// level-preserving shift `(m, n) → (m − 2, n + 1)` — once when the
/// construction lands on `m ≡ 1 (mod 4)` (the shift flips the parity of
/// `C(m, n)`), and twice at a time while `n < k`.
pub fn find_useful_pair_residue(l: usize, k: usize) -> Result<UsefulPair> {
    let li = l as i64;
    let ki = k as i64;
    if l % 2 == 0 {
        return Err(Error::Domain(format!("l must be odd, got {l}")));
    }
    let (mut m, mut n) = match li % 3 {
        0 => {
            // Odd multiples of 3 are 3 or 9 mod 12.
            if li % 12 == 9 {
                let s = (li - 9) / 12;
                let n = 4 * s + 2;
                (n + 5, n)
            } else {
                let s = (li - 3) / 12;
                let n = 4 * s - 1;
                (n + 8, n)
            }
        }
        1 => {
            let s = (li - 1) / 3;
            (s + 5, s - 1)
        }
        _ => {
            let s = (li - 2) / 3;
            (s + 6, s - 1)
        }
    };
    debug_assert_eq!(m + 2 * (n - 1), li);
    if m.rem_euclid(4) == 1 {
        m -= 2;
        n += 1;
    }
    while n < ki && m - 4 > n + 2 + 2 {
        m -= 4;
        n += 2;
    }
    if m.rem_euclid(4) == 3 && m > n + 2 && n >= ki {
        Ok(UsefulPair {
            m: m as usize,
            n: n as usize,
            k,
        })
    } else {
        Err(Error::PairNotFound { l: li, k: ki })
    }
}

fn require_level(f: &TruncatedSeries, k: usize) -> Result<()> {
    if f.lvl() < Level::Finite(k) {
        return Err(Error::Domain(format!(
            "series has level {} below k = {k}",
            f.lvl()
        )));
    }
    Ok(())
}

fn require_precision(f: &TruncatedSeries, l: usize) -> Result<()> {
    if f.trunc_order() < l {
        return Err(Error::Precision {
            need: l,
            have: f.trunc_order(),
        });
    }
    Ok(())
}

/// Do `f` and `g` represent the same class modulo `J_l`, i.e. do their
/// coefficients agree in every degree `k ≤ i < l`?
pub fn quotient_equal(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    k: usize,
    l: usize,
) -> Result<bool> {
    require_level(f, k)?;
    require_level(g, k)?;
    require_precision(f, l)?;
    require_precision(g, l)?;
    Ok((k.max(2)..l).all(|i| f.coeff(i) == g.coeff(i)))
}

/// Factor the class of `f` modulo `x^l` into basic generators: an ascending
/// list `[(n_j, γ_j)]` with `k ≤ n_j < l` such that composing the series
/// `x + γ_j x^{n_j}` left to right reproduces `f` modulo `x^l`. Zero
/// coefficients are omitted.
pub fn factor_into_generators(
    f: &TruncatedSeries,
    k: usize,
    l: usize,
) -> Result<Vec<(usize, BigInt)>> {
    require_level(f, k)?;
    require_precision(f, l)?;
    let mut r = f.truncate(l)?;
    let mut factors = Vec::new();
    for d in k.max(2)..l {
        let gamma = r.coeff(d);
        if gamma.is_zero() {
            continue;
        }
        let gen = TruncatedSeries::monomial(l, d, gamma.clone());
        r = gen.inverse().compose(&r)?;
        factors.push((d, gamma));
    }
    debug_assert!(r.is_identity());
    Ok(factors)
}

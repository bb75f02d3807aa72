//! Commutator-word certificates: explicit words in basic generators whose
//! evaluation proves that a given series lies in the derived subgroup
//! [J_k(Z), J_k(Z)]. The builders realize, degree by degree, the containment
//! J_{c_k}(Z) ⊆ [J_k(Z), J_k(Z)].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{bounds, c_coeff, find_useful_pair, UsefulPair};
use crate::series::{Level, TruncatedSeries};

/// A formal expression tree over basic generators `x + αx^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessWord {
    /// `x + αx^n`.
    Gen(usize, BigInt),
    /// `[w1, w2] = w1 ∘ w2 ∘ w1⁻¹ ∘ w2⁻¹`.
    Comm(Box<WitnessWord>, Box<WitnessWord>),
    /// `w^e` under composition, any integer `e`.
    Pow(Box<WitnessWord>, BigInt),
    /// Left-to-right composition of the children; empty product is `x`.
    Prod(Vec<WitnessWord>),
}

/// The result of checking a word: its evaluated value, leading term, and
/// whether the word is structurally a certificate over J_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub word: WitnessWord,
    pub value: TruncatedSeries,
    pub target_degree: usize,
    pub target_coefficient: BigInt,
    pub valid: bool,
}

pub fn gen(n: usize, alpha: impl Into<BigInt>) -> WitnessWord {
    WitnessWord::Gen(n, alpha.into())
}

pub fn comm(a: WitnessWord, b: WitnessWord) -> WitnessWord {
    WitnessWord::Comm(Box::new(a), Box::new(b))
}

pub fn pow(w: WitnessWord, e: impl Into<BigInt>) -> WitnessWord {
    WitnessWord::Pow(Box::new(w), e.into())
}

impl WitnessWord {
    /// Evaluate the word modulo `x^n`.
    pub fn evaluate(&self, n: usize) -> TruncatedSeries {
        match self {
            WitnessWord::Gen(d, a) => TruncatedSeries::monomial(n, *d, a.clone()),
            WitnessWord::Comm(l, r) => l
                .evaluate(n)
                .commutator(&r.evaluate(n))
                .expect("matching truncation"),
            WitnessWord::Pow(w, e) => w.evaluate(n).power_big(e),
            WitnessWord::Prod(ws) => {
                let mut acc = TruncatedSeries::identity(n);
                for w in ws {
                    acc = acc.compose(&w.evaluate(n)).expect("matching truncation");
                }
                acc
            }
        }
    }

    /// Does every path from the root to a generator leaf pass through a
    /// commutator node? (Equivalently: the word is built from products and
    /// powers of commutators.)
    fn commutator_covered(&self) -> bool {
        match self {
            WitnessWord::Gen(_, _) => false,
            WitnessWord::Comm(_, _) => true,
            WitnessWord::Pow(w, _) => w.commutator_covered(),
            WitnessWord::Prod(ws) => ws.iter().all(|w| w.commutator_covered()),
        }
    }

    /// Smallest generator degree appearing in the word, if any.
    fn min_gen_degree(&self) -> Option<usize> {
        match self {
            WitnessWord::Gen(d, _) => Some(*d),
            WitnessWord::Comm(l, r) => match (l.min_gen_degree(), r.min_gen_degree()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            WitnessWord::Pow(w, _) => w.min_gen_degree(),
            WitnessWord::Prod(ws) => ws.iter().filter_map(|w| w.min_gen_degree()).min(),
        }
    }

    /// Canonical JSON value.
    pub fn to_json_value(&self) -> Value {
        match self {
            WitnessWord::Gen(n, a) => json!({ "gen": [n, a.to_string()] }),
            WitnessWord::Comm(l, r) => {
                json!({ "comm": [l.to_json_value(), r.to_json_value()] })
            }
            WitnessWord::Pow(w, e) => {
                let e_val = match e.to_i64() {
                    Some(i) => json!(i),
                    None => json!(e.to_string()),
                };
                json!({ "pow": [w.to_json_value(), e_val] })
            }
            WitnessWord::Prod(ws) => {
                json!({ "prod": ws.iter().map(|w| w.to_json_value()).collect::<Vec<_>>() })
            }
        }
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .filter(|o| o.len() == 1)
            .ok_or_else(|| Error::Parse(format!("expected single-key object, got {v}")))?;
        let (key, body) = obj.iter().next().unwrap();
        match key.as_str() {
            "gen" => {
                let arr = body
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("gen expects [n, \"alpha\"]".into()))?;
                let n = arr[0]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("gen degree must be a non-negative integer".into()))?
                    as usize;
                let a = parse_bigint(&arr[1])?;
                Ok(WitnessWord::Gen(n, a))
            }
            "comm" => {
                let arr = body
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("comm expects [w1, w2]".into()))?;
                Ok(comm(
                    Self::from_json_value(&arr[0])?,
                    Self::from_json_value(&arr[1])?,
                ))
            }
            "pow" => {
                let arr = body
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("pow expects [w, e]".into()))?;
                Ok(WitnessWord::Pow(
                    Box::new(Self::from_json_value(&arr[0])?),
                    parse_bigint(&arr[1])?,
                ))
            }
            "prod" => {
                let arr = body
                    .as_array()
                    .ok_or_else(|| Error::Parse("prod expects a list".into()))?;
                Ok(WitnessWord::Prod(
                    arr.iter().map(Self::from_json_value).collect::<Result<_>>()?,
                ))
            }
            other => Err(Error::Parse(format!("unknown word kind {other:?}"))),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(Error::Parse(format!("bad integer {n}")))
            }
        }
        _ => Err(Error::Parse(format!("expected integer, got {v}"))),
    }
}

impl fmt::Display for WitnessWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessWord::Gen(n, a) => write!(f, "g({n},{a})"),
            WitnessWord::Comm(l, r) => write!(f, "[{l},{r}]"),
            WitnessWord::Pow(w, e) => write!(f, "({w})^{e}"),
            WitnessWord::Prod(ws) => {
                write!(f, "(")?;
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{w}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Certificate with value `x + αx^l + O(x^{3l/2 − 1})` for even `l ≥ 2k`:
/// the commutator `[x + αx^{l/2+1}, x + x^{l/2}]`.
pub fn even_witness(k: usize, l: usize, alpha: impl Into<BigInt>) -> Result<WitnessWord> {
    if l % 2 != 0 {
        return Err(Error::Domain(format!("even-degree witness needs even l, got {l}")));
    }
    if l < 2 * k {
        return Err(Error::Domain(format!(
            "even-degree witness needs l >= 2k = {}, got {l}",
            2 * k
        )));
    }
    Ok(comm(gen(l / 2 + 1, alpha), gen(l / 2, 1)))
}

/// Certificate with value `x + 2αx^l + ⋯` for odd `l` with `(l−1)/2 ≥ k`:
/// the commutator `[x + αx^{(l−1)/2+2}, x + x^{(l−1)/2}]`.
pub fn doubling_witness(k: usize, l: usize, alpha: impl Into<BigInt>) -> Result<WitnessWord> {
    if l % 2 != 1 {
        return Err(Error::Domain(format!("doubling witness needs odd l, got {l}")));
    }
    let half = (l - 1) / 2;
    if half < k {
        return Err(Error::Domain(format!(
            "doubling witness needs (l-1)/2 >= k = {k}, got {half}"
        )));
    }
    Ok(comm(gen(half + 2, alpha), gen(half, 1)))
}

/// The cancellation product for a specific pair: start from
/// `[x + αx^m, x + x^n]` = `x + (m−n)αx^{m+n−1} + C(m,n)αx^l + ⋯`, kill the
/// `x^{m+n−1}` term with the even/doubling witness of matching parity, then
/// correct the odd coefficient `C(m,n) = 2t + 1` down to `α` with a power of
/// the doubling witness at `l` itself.
fn odd_witness_for_pair(k: usize, pair: UsefulPair, alpha: &BigInt) -> Result<WitnessWord> {
    let (m, n) = (pair.m, pair.n);
    let l = pair.ell();
    let mut parts = vec![comm(gen(m, alpha.clone()), gen(n, 1))];
    let s = m + n - 1;
    let gap = BigInt::from(m as i64 - n as i64);
    if s % 2 == 0 {
        parts.push(pow(even_witness(k, s, alpha.clone())?, -gap));
    } else {
        debug_assert!(gap.is_even());
        parts.push(pow(doubling_witness(k, s, alpha.clone())?, -(gap / BigInt::from(2))));
    }
    let c = BigInt::from(c_coeff(m as i64, n as i64));
    debug_assert!(c.is_odd());
    let t = (c - BigInt::one()) / BigInt::from(2);
    if !t.is_zero() {
        parts.push(pow(doubling_witness(k, l, alpha.clone())?, -t));
    }
    Ok(WitnessWord::Prod(parts))
}

/// Certificate with value `x + αx^l + O(x^{l+1})` for odd `l`, via a
/// `k`-useful pair with `ℓ(m, n) = l` and odd `C(m, n)`.
pub fn odd_witness(k: usize, l: usize, alpha: impl Into<BigInt>) -> Result<WitnessWord> {
    let pair = find_useful_pair(l, k)?;
    odd_witness_for_pair(k, pair, &alpha.into())
}

/// Numeric cancellation driver: evaluate the partial word at order `l + 1`,
/// repeatedly kill the lowest nonzero term below `l` (even degrees with the
/// even-degree witness, odd degrees — whose coefficients must be even — with
/// the doubling witness), then correct the coefficient at `l` itself to `α`
/// (the deficit must be even). The lowest nonzero degree strictly increases
/// each round, so this terminates.
fn cancel_below_and_fix(
    k: usize,
    mut parts: Vec<WitnessWord>,
    l: usize,
    alpha: &BigInt,
) -> Result<WitnessWord> {
    let n = l + 1;
    loop {
        let v = WitnessWord::Prod(parts.clone()).evaluate(n);
        match v.lvl() {
            Level::Finite(e) if e < l => {
                let c = v.coeff(e);
                if e % 2 == 0 {
                    parts.push(even_witness(k, e, -c)?);
                } else {
                    if c.is_odd() {
                        return Err(Error::Domain(format!(
                            "cannot cancel odd coefficient {c} at odd degree {e}"
                        )));
                    }
                    parts.push(doubling_witness(k, e, -(c / BigInt::from(2)))?);
                }
            }
            Level::Finite(e) => {
                debug_assert_eq!(e, l);
                let deficit = alpha - v.coeff(l);
                if deficit.is_zero() {
                    return Ok(WitnessWord::Prod(parts));
                }
                if deficit.is_odd() {
                    return Err(Error::Domain(format!(
                        "cannot adjust coefficient at {l} by odd amount {deficit}"
                    )));
                }
                parts.push(doubling_witness(k, l, deficit / BigInt::from(2))?);
                return Ok(WitnessWord::Prod(parts));
            }
            Level::Infinite => {
                if alpha.is_zero() {
                    return Ok(WitnessWord::Prod(parts));
                }
                if alpha.is_odd() {
                    return Err(Error::Domain(format!(
                        "cannot reach odd coefficient {alpha} at degree {l} from zero"
                    )));
                }
                parts.push(doubling_witness(k, l, alpha.clone() / BigInt::from(2))?);
                return Ok(WitnessWord::Prod(parts));
            }
        }
    }
}

/// Certificate with value `x + αx^l + O(x^{l+1})` for any `l ≥ c_k`: even
/// degrees use the even-degree witness; high odd degrees the pair search; the
/// few odd degrees between `c_k` and `3k+4` follow the per-residue case table,
/// including the k ≡ 1 (mod 4) combination
/// `[x+αx^{k+2}, x+x^{k+1}]³ ∘ [x+αx^{k+3}, x+x^k]⁻¹`.
pub fn lemma_witness(k: usize, l: usize, alpha: impl Into<BigInt>) -> Result<WitnessWord> {
    let alpha = alpha.into();
    let b = bounds(k)?;
    if l < b.c {
        return Err(Error::BelowGuarantee { k, l, c: b.c });
    }
    if l % 2 == 0 {
        return even_witness(k, l, alpha);
    }
    if l >= 3 * k + 5 {
        return odd_witness(k, l, alpha);
    }
    // Odd l in {c_k, …, 3k+4}: hand-built cases by k mod 4.
    match k % 4 {
        3 => {
            let pair = if l == 3 * k + 2 {
                UsefulPair { m: k + 4, n: k, k }
            } else {
                debug_assert_eq!(l, 3 * k + 4);
                UsefulPair { m: k + 4, n: k + 1, k }
            };
            odd_witness_for_pair(k, pair, &alpha)
        }
        2 => {
            debug_assert_eq!(l, 3 * k + 3);
            odd_witness_for_pair(k, UsefulPair { m: k + 5, n: k, k }, &alpha)
        }
        1 => {
            if l == 3 * k + 4 {
                odd_witness_for_pair(k, UsefulPair { m: k + 6, n: k, k }, &alpha)
            } else {
                debug_assert_eq!(l, 3 * k + 2);
                let raw = vec![
                    pow(comm(gen(k + 2, alpha.clone()), gen(k + 1, 1)), 3),
                    pow(comm(gen(k + 3, alpha.clone()), gen(k, 1)), -1),
                ];
                cancel_below_and_fix(k, raw, l, &alpha)
            }
        }
        _ => unreachable!("k ≡ 0 (mod 4) has no odd degree in {{c_k, …, 3k+4}}"),
    }
}

/// Express `f` (with level ≥ c_k) as a product of commutator certificates,
/// exact modulo `x^N`: peel the lowest remaining term with `lemma_witness` and
/// divide it off on the left until the remainder is `x`.
pub fn express_in_commutators(
    f: &TruncatedSeries,
    k: usize,
    n: usize,
) -> Result<WitnessWord> {
    let b = bounds(k)?;
    if f.trunc_order() < n {
        return Err(Error::Precision {
            need: n,
            have: f.trunc_order(),
        });
    }
    if let Level::Finite(l) = f.lvl() {
        if l < b.c {
            return Err(Error::BelowGuarantee { k, l, c: b.c });
        }
    }
    let mut r = f.truncate(n)?;
    let mut parts = Vec::new();
    while let Level::Finite(l) = r.lvl() {
        let w = lemma_witness(k, l, r.coeff(l))?;
        r = w.evaluate(n).inverse().compose(&r)?;
        debug_assert!(r.lvl() > Level::Finite(l));
        parts.push(w);
    }
    Ok(WitnessWord::Prod(parts))
}

/// Validate a word as a commutator certificate over J_k and report its value
/// and leading term at truncation `n`. Invalid words are reported, not errors.
pub fn check_witness(w: &WitnessWord, k: usize, n: usize) -> WitnessReport {
    let structurally_ok = w.commutator_covered();
    let degrees_ok = w.min_gen_degree().map_or(true, |d| d >= k);
    let value = w.evaluate(n);
    let (target_degree, target_coefficient) = match value.lvl() {
        Level::Finite(d) => (d, value.coeff(d)),
        Level::Infinite => (0, BigInt::zero()),
    };
    WitnessReport {
        word: w.clone(),
        value,
        target_degree,
        target_coefficient,
        valid: structurally_ok && degrees_ok,
    }
}

//! Truncated formal power series of the shape `x + Σ_{i≥2} α_i x^i` with exact
//! integer coefficients, under composition.
//!
//! A [`TruncatedSeries`] stores coefficients for degrees `2 ≤ d < N` where `N`
//! is the truncation order; the linear coefficient is implicitly `1` and never
//! stored. Two series are equal iff they have the same truncation order and the
//! same stored coefficients (zero coefficients are never stored, so equality is
//! structural and canonical).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Poly = BTreeMap<usize, BigInt>;

/// The level of a series: the lowest degree `d ≥ 2` with a nonzero coefficient,
/// or [`Level::Infinite`] if there is none below the truncation order.
///
/// `Infinite` compares greater than every `Finite(_)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(d) => write!(f, "{d}"),
            Level::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// `x + Σ_{2 ≤ d < trunc} coeffs[d]·x^d`, an element of the group of formal
/// power series tangent to the identity, known modulo `x^trunc`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    trunc: usize,
    coeffs: Poly,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    trunc: usize,
    coeffs: BTreeMap<String, String>,
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            trunc: s.trunc,
            coeffs: s
                .coeffs
                .into_iter()
                .map(|(d, c)| (d.to_string(), c.to_string()))
                .collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.trunc < 2 {
            return Err(Error::Parse(format!(
                "truncation order must be >= 2, got {}",
                r.trunc
            )));
        }
        let mut coeffs = Poly::new();
        for (d, c) in r.coeffs {
            let d: usize = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree key {d:?}")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if d < 2 {
                return Err(Error::Parse(format!("degree {d} below 2")));
            }
            if d < r.trunc && !c.is_zero() {
                coeffs.insert(d, c);
            }
        }
        Ok(TruncatedSeries {
            trunc: r.trunc,
            coeffs,
        })
    }
}

impl TruncatedSeries {
    /// The identity `x (mod x^trunc)`.
    pub fn identity(trunc: usize) -> Self {
        assert!(trunc >= 2, "truncation order must be >= 2");
        TruncatedSeries {
            trunc,
            coeffs: Poly::new(),
        }
    }

    /// `x + coeff·x^deg (mod x^trunc)`. Degrees at or above the truncation
    /// order are invisible modulo `x^trunc` and are dropped.
    pub fn monomial(trunc: usize, deg: usize, coeff: BigInt) -> Self {
        assert!(trunc >= 2, "truncation order must be >= 2");
        assert!(deg >= 2, "monomial degree must be >= 2");
        let mut coeffs = Poly::new();
        if deg < trunc && !coeff.is_zero() {
            coeffs.insert(deg, coeff);
        }
        TruncatedSeries { trunc, coeffs }
    }

    /// The standard generator `σ_i = x + x^i (mod x^trunc)`.
    pub fn sigma(trunc: usize, i: usize) -> Self {
        Self::monomial(trunc, i, BigInt::one())
    }

    /// Build from `(degree, coefficient)` pairs; repeated degrees accumulate.
    pub fn from_coeffs<I>(trunc: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        assert!(trunc >= 2, "truncation order must be >= 2");
        let mut coeffs = Poly::new();
        for (d, c) in pairs {
            assert!(d >= 2, "coefficient degree must be >= 2");
            if d >= trunc || c.is_zero() {
                continue;
            }
            let e = coeffs.entry(d).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                coeffs.remove(&d);
            }
        }
        TruncatedSeries { trunc, coeffs }
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    /// The coefficient of `x^d`. Degree 1 reports `1`, degree 0 reports `0`;
    /// degrees at or above the truncation order are an error of the caller and
    /// panic.
    pub fn coeff(&self, d: usize) -> BigInt {
        assert!(d < self.trunc, "degree {d} not visible mod x^{}", self.trunc);
        match d {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => self.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero),
        }
    }

    /// Iterate over the stored `(degree, coefficient)` pairs, ascending degree.
    /// All coefficients are nonzero and all degrees lie in `[2, trunc)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree `≥ 2` with nonzero coefficient, or `Infinite` when the
    /// series equals `x` modulo `x^trunc`.
    pub fn lvl(&self) -> Level {
        match self.coeffs.keys().next() {
            Some(&d) => Level::Finite(d),
            None => Level::Infinite,
        }
    }

    /// Reduce modulo `x^m` for `2 ≤ m ≤ trunc`. Extending precision is
    /// impossible and reported as an error.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.trunc {
            return Err(Error::CannotExtend {
                have: self.trunc,
                want: m,
            });
        }
        if m < 2 {
            return Err(Error::Domain(format!(
                "truncation order must be >= 2, got {m}"
            )));
        }
        Ok(TruncatedSeries {
            trunc: m,
            coeffs: self.coeffs.range(..m).map(|(&d, c)| (d, c.clone())).collect(),
        })
    }

    /// Full polynomial including the linear term, for internal arithmetic.
    fn as_poly(&self) -> Poly {
        let mut p = self.coeffs.clone();
        p.insert(1, BigInt::one());
        p
    }

    fn from_poly(trunc: usize, mut p: Poly) -> Self {
        debug_assert_eq!(p.remove(&1), Some(BigInt::one()));
        debug_assert!(!p.contains_key(&0));
        p.retain(|_, c| !c.is_zero());
        TruncatedSeries { trunc, coeffs: p }
    }

    /// `f ∘ g`, i.e. `f(g(x))`, modulo `x^trunc`. Both operands must carry the
    /// same truncation order.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.trunc != g.trunc {
            return Err(Error::OrderMismatch {
                left: self.trunc,
                right: g.trunc,
            });
        }
        let n = self.trunc;
        let gp = g.as_poly();
        // f(g) = g + Σ_d f_d · g^d; build the powers of g incrementally,
        // visiting only the degrees actually stored in f.
        let mut acc = gp.clone();
        let mut pow = gp.clone();
        let mut pow_deg = 1usize;
        for (&d, c) in &self.coeffs {
            while pow_deg < d {
                pow = mul_trunc(&pow, &gp, n);
                pow_deg += 1;
            }
            for (&e, pc) in &pow {
                let entry = acc.entry(e).or_insert_with(BigInt::zero);
                *entry += c * pc;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self::from_poly(n, acc))
    }

    /// The compositional inverse: the unique `h` with `h ∘ f = f ∘ h = x`.
    pub fn inverse(&self) -> Self {
        let n = self.trunc;
        if self.coeffs.is_empty() {
            return self.clone();
        }
        // Solve h ∘ f = x for h = x + Σ b_j x^j. The coefficient of x^d gives
        //   f_d + Σ_{2 ≤ j ≤ d} b_j (f^j)_d = 0,   with (f^d)_d = 1,
        // so a single pass over d = 2..n determines every b_d, provided the
        // powers f^j (mod x^n) are tabulated once up front.
        let fp = self.as_poly();
        let mut powers: Vec<Poly> = Vec::with_capacity(n.saturating_sub(1));
        powers.push(fp.clone()); // powers[j-1] = f^j
        for _ in 2..n {
            let next = mul_trunc(powers.last().unwrap(), &fp, n);
            powers.push(next);
        }
        let mut b = Poly::new();
        for d in 2..n {
            let mut s = self.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero);
            for (&j, bj) in b.range(..d) {
                if let Some(c) = powers[j - 1].get(&d) {
                    s += bj * c;
                }
            }
            if !s.is_zero() {
                b.insert(d, -s);
            }
        }
        TruncatedSeries { trunc: n, coeffs: b }
    }

    /// `f^e` under composition, any integer exponent (negative via the
    /// inverse), by binary exponentiation.
    pub fn power(&self, e: i64) -> Self {
        self.power_big(&BigInt::from(e))
    }

    /// `f^e` for an arbitrary-precision exponent.
    pub fn power_big(&self, e: &BigInt) -> Self {
        if e.is_zero() || self.coeffs.is_empty() {
            return Self::identity(self.trunc);
        }
        let base = if e.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let mag = e.magnitude();
        let mut result: Option<TruncatedSeries> = None;
        let mut sq = base;
        let bits = mag.bits();
        for i in 0..bits {
            if mag.bit(i) {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.compose(&sq).expect("matching truncation"),
                });
            }
            if i + 1 < bits {
                sq = sq.compose(&sq).expect("matching truncation");
            }
        }
        result.expect("nonzero exponent")
    }

    /// The commutator `[f, g] = f ∘ g ∘ f⁻¹ ∘ g⁻¹`.
    pub fn commutator(&self, g: &Self) -> Result<Self> {
        self.compose(g)?
            .compose(&self.inverse())?
            .compose(&g.inverse())
    }

    /// Parse the plain-text form, e.g. `x + 2*x^3 - x^7 (mod x^12)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, trunc) = match s.rfind("(mod") {
            Some(i) => {
                let tail = s[i..].trim();
                let inner = tail
                    .strip_prefix("(mod")
                    .and_then(|t| t.trim_end().strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("bad modulus clause in {s:?}")))?
                    .trim();
                let n: usize = inner
                    .strip_prefix("x^")
                    .and_then(|t| t.trim().parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad modulus {inner:?}")))?;
                (&s[..i], n)
            }
            None => return Err(Error::Parse("missing (mod x^N) clause".into())),
        };
        Self::parse_body(body, trunc)
    }

    fn parse_body(body: &str, trunc: usize) -> Result<Self> {
        if trunc < 2 {
            return Err(Error::Parse(format!(
                "truncation order must be >= 2, got {trunc}"
            )));
        }
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        // Split on top-level + / - signs.
        let mut terms: Vec<(i32, String)> = Vec::new();
        let mut sign = 1i32;
        let mut cur = String::new();
        let mut chars = compact.chars().peekable();
        // Leading sign.
        if let Some(&c) = chars.peek() {
            if c == '+' || c == '-' {
                sign = if c == '-' { -1 } else { 1 };
                chars.next();
            }
        }
        for c in chars {
            if c == '+' || c == '-' {
                if cur.is_empty() {
                    return Err(Error::Parse("dangling sign".into()));
                }
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if c == '-' { -1 } else { 1 };
            } else {
                cur.push(c);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse("dangling sign".into()));
        }
        terms.push((sign, cur));

        let mut linear = BigInt::zero();
        let mut pairs: Vec<(usize, BigInt)> = Vec::new();
        for (sg, t) in terms {
            let (coeff, deg) = Self::parse_term(&t)?;
            let coeff = coeff * sg;
            match deg {
                0 => {
                    if !coeff.is_zero() {
                        return Err(Error::Parse(format!("constant term {coeff} not allowed")));
                    }
                }
                1 => linear += coeff,
                d => pairs.push((d, coeff)),
            }
        }
        if !linear.is_one() {
            return Err(Error::Parse(format!(
                "linear coefficient must be 1, got {linear}"
            )));
        }
        Ok(Self::from_coeffs(trunc, pairs))
    }

    /// One multiplicative term: `x`, `x^k`, `c`, `c*x^k`, or `cx^k`.
    fn parse_term(t: &str) -> Result<(BigInt, usize)> {
        if let Some(rest) = t.find('x') {
            let (cpart, xpart) = t.split_at(rest);
            let cpart = cpart.strip_suffix('*').unwrap_or(cpart);
            let coeff = if cpart.is_empty() {
                BigInt::one()
            } else {
                cpart
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {cpart:?}")))?
            };
            let deg = match xpart.strip_prefix('x') {
                Some("") => 1usize,
                Some(p) => p
                    .strip_prefix('^')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad power {xpart:?}")))?,
                None => unreachable!(),
            };
            Ok((coeff, deg))
        } else {
            let coeff: BigInt = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad term {t:?}")))?;
            Ok((coeff, 0))
        }
    }

    /// Serialize to the JSON form `{"trunc": N, "coeffs": {"d": "c", ...}}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x")?;
        for (&d, c) in &self.coeffs {
            let mag = c.abs();
            let sign = if c.is_negative() { '-' } else { '+' };
            if mag.is_one() {
                write!(f, " {sign} x^{d}")?;
            } else {
                write!(f, " {sign} {mag}*x^{d}")?;
            }
        }
        write!(f, " (mod x^{})", self.trunc)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of two polynomials, truncated below degree `n`.
fn mul_trunc(a: &Poly, b: &Poly, n: usize) -> Poly {
    let mut out = Poly::new();
    for (&da, ca) in a {
        if da >= n {
            break;
        }
        for (&db, cb) in b {
            let d = da + db;
            if d >= n {
                break;
            }
            let e = out.entry(d).or_insert_with(BigInt::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

//! A small exact multivariate-polynomial engine, used to run the composition
//! kernels with symbolic coefficients. Comparing the resulting coefficient
//! polynomials (exactly, or mod 2 with the Frobenius collapse x^e → x) turns
//! every closed-form group law into a proved polynomial identity rather than
//! a sampled one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A variable: coefficient `a_i` of the left operand or `b_i` of the right.
pub type VarId = u32;

pub fn var_a(i: usize) -> VarId {
    2 * i as VarId
}

pub fn var_b(i: usize) -> VarId {
    2 * i as VarId + 1
}

fn var_name(v: VarId) -> String {
    if v % 2 == 0 {
        format!("a{}", v / 2)
    } else {
        format!("b{}", v / 2)
    }
}

/// A power product of variables, sorted by id, all exponents ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    fn one() -> Self {
        Monomial(Vec::new())
    }

    fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Collapse every exponent to 1 (sound when comparing functions mod 2).
    fn frobenius_collapse(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, _)| (v, 1)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", var_name(*v))?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact integer multivariate polynomial in canonical form (no zero terms).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(BTreeMap<Monomial, BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::one(), c);
        }
        Poly(m)
    }

    pub fn var(v: VarId) -> Self {
        let mut m = BTreeMap::new();
        m.insert(Monomial::var(v), BigInt::one());
        Poly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &other.0 {
            let e = out.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                out.remove(m);
            }
        }
        Poly(out)
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let m = m1.mul(m2);
                let e = out.entry(m).or_insert_with(BigInt::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    /// The image of the polynomial as a function into Z/2: coefficients mod 2
    /// and exponents collapsed to 1 (x² ≡ x as a function mod 2). Equal
    /// collapses ⇔ equal mod-2 functions on all integer inputs.
    pub fn mod2_collapse(&self) -> Self {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in &self.0 {
            let e = out
                .entry(m.frobenius_collapse())
                .or_insert_with(BigInt::zero);
            *e += c;
        }
        out.retain(|_, c| c.is_odd());
        for c in out.values_mut() {
            *c = BigInt::one();
        }
        Poly(out)
    }

    /// Evaluate at an integer assignment.
    pub fn eval(&self, assign: &dyn Fn(VarId) -> BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.0 {
            let mut term = c.clone();
            for &(v, e) in &m.0 {
                let val = assign(v);
                for _ in 0..e {
                    term *= &val;
                }
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        total
    }

    /// Largest total degree of any monomial.
    pub fn total_degree(&self) -> u32 {
        self.0
            .keys()
            .map(|m| m.0.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    /// All variables appearing in the polynomial.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .0
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A truncated series x + Σ_{d≥2} p_d x^d whose coefficients are polynomials
/// in the symbolic variables; runs the same kernels as the integer series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSeries {
    pub trunc: usize,
    /// `coeffs[d]` is the coefficient of x^d; `coeffs[1]` is 1, `coeffs[0]` 0.
    pub coeffs: Vec<Poly>,
}

impl SymSeries {
    pub fn identity(trunc: usize) -> Self {
        assert!(trunc >= 2);
        let mut coeffs = vec![Poly::zero(); trunc];
        coeffs[1] = Poly::one();
        SymSeries { trunc, coeffs }
    }

    /// x + Σ_{d ∈ degrees} v(d)·x^d for a per-degree coefficient supplier.
    pub fn from_fn(trunc: usize, degrees: impl Iterator<Item = usize>, v: impl Fn(usize) -> Poly) -> Self {
        let mut s = Self::identity(trunc);
        for d in degrees {
            assert!((2..trunc).contains(&d));
            s.coeffs[d] = v(d);
        }
        s
    }

    pub fn coeff(&self, d: usize) -> &Poly {
        &self.coeffs[d]
    }

    fn mul_trunc(a: &[Poly], b: &[Poly], n: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); n];
        for (da, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (db, cb) in b.iter().enumerate().take(n.saturating_sub(da)) {
                if cb.is_zero() {
                    continue;
                }
                out[da + db] = out[da + db].add(&ca.mul(cb));
            }
        }
        out
    }

    pub fn compose(&self, g: &SymSeries) -> SymSeries {
        assert_eq!(self.trunc, g.trunc);
        let n = self.trunc;
        let mut acc = g.coeffs.clone();
        let mut pow = g.coeffs.clone();
        for d in 2..n {
            pow = Self::mul_trunc(&pow, &g.coeffs, n);
            if self.coeffs[d].is_zero() {
                continue;
            }
            for e in 0..n {
                if !pow[e].is_zero() {
                    acc[e] = acc[e].add(&self.coeffs[d].mul(&pow[e]));
                }
            }
        }
        SymSeries { trunc: n, coeffs: acc }
    }

    pub fn inverse(&self) -> SymSeries {
        let n = self.trunc;
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(n);
        powers.push(self.coeffs.clone()); // powers[j-1] = f^j
        for _ in 2..n {
            let next = Self::mul_trunc(powers.last().unwrap(), &self.coeffs, n);
            powers.push(next);
        }
        let mut b = vec![Poly::zero(); n];
        b[1] = Poly::one();
        for d in 2..n {
            let mut s = self.coeffs[d].clone();
            for j in 2..d {
                if !b[j].is_zero() && !powers[j - 1][d].is_zero() {
                    s = s.add(&b[j].mul(&powers[j - 1][d]));
                }
            }
            b[d] = s.neg();
        }
        SymSeries { trunc: n, coeffs: b }
    }

    pub fn power(&self, e: i64) -> SymSeries {
        if e == 0 {
            return Self::identity(self.trunc);
        }
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut mag = e.unsigned_abs();
        let mut result: Option<SymSeries> = None;
        let mut sq = base;
        while mag > 0 {
            if mag & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.compose(&sq),
                });
            }
            mag >>= 1;
            if mag > 0 {
                sq = sq.compose(&sq);
            }
        }
        result.unwrap()
    }

    pub fn commutator(&self, g: &SymSeries) -> SymSeries {
        self.compose(g).compose(&self.inverse()).compose(&g.inverse())
    }
}

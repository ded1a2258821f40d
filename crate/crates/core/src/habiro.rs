//! Truncated Habiro ring `Z[q] / ((1-q)(1-q^2)...(1-q^{N+1}))`.
//!
//! An element of level `N` is stored as its canonical remainder modulo the
//! Pochhammer product `(q;q)_{N+1}`. At this level evaluation at roots of
//! unity of order at most `N + 1` and the Taylor expansion at `q = 1`
//! modulo `(1-q)^{N+1}` are both exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclo_reduce, CyclotomicInteger};
use crate::error::{invalid, Error, Result};
use crate::poly::IntPoly;

/// `(1-q)(1-q^2)...(1-q^k)`; the empty product for `k = 0`.
pub fn q_pochhammer(k: usize) -> IntPoly {
    (1..=k).fold(IntPoly::one(), |acc, i| &acc * &IntPoly::one_minus_q_pow(i))
}

/// The ideal generator `(q;q)_{N+1}` of the level-`N` truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerModulus {
    level: usize,
    poly: IntPoly,
}

impl PochhammerModulus {
    pub fn new(level: usize) -> Self {
        PochhammerModulus {
            level,
            poly: q_pochhammer(level + 1),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// `(N+1)(N+2)/2`
    pub fn degree(&self) -> usize {
        (self.level + 1) * (self.level + 2) / 2
    }

    fn reduce(&self, p: &IntPoly) -> IntPoly {
        // leading coefficient is ±1
        p.rem(&self.poly).expect("Pochhammer products have unit leading coefficient")
    }
}

/// An element of the level-`N` truncation, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HabiroElement {
    level: usize,
    representative: IntPoly,
}

impl HabiroElement {
    /// Canonical class of an arbitrary integer polynomial.
    pub fn from_poly(p: &IntPoly, level: usize) -> Self {
        let modulus = PochhammerModulus::new(level);
        HabiroElement {
            level,
            representative: modulus.reduce(p),
        }
    }

    /// `Σ_k f_k(q) (1-q)(1-q^2)...(1-q^k)` for `k = 0..=len-1`.
    pub fn from_factorial_series(fs: &[IntPoly], level: usize) -> Result<Self> {
        if fs.len() > level + 1 {
            return invalid(format!(
                "{} factorial-series terms given for level {level}; at most {} are nonzero in the truncation",
                fs.len(),
                level + 1
            ));
        }
        let mut sum = IntPoly::zero();
        let mut pochhammer = IntPoly::one();
        for (k, f) in fs.iter().enumerate() {
            if k > 0 {
                pochhammer = &pochhammer * &IntPoly::one_minus_q_pow(k);
            }
            sum = &sum + &(f * &pochhammer);
        }
        Ok(Self::from_poly(&sum, level))
    }

    pub fn one(level: usize) -> Self {
        Self::from_poly(&IntPoly::one(), level)
    }

    pub fn zero(level: usize) -> Self {
        Self::from_poly(&IntPoly::zero(), level)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn representative(&self) -> &IntPoly {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return invalid(format!(
                "Habiro levels differ: {} vs {}",
                self.level, other.level
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self::from_poly(
            &(&self.representative + &other.representative),
            self.level,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self::from_poly(
            &(&self.representative - &other.representative),
            self.level,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self::from_poly(
            &(&self.representative * &other.representative),
            self.level,
        ))
    }

    /// Restriction to a lower level of the inverse system.
    pub fn lower_level(&self, level: usize) -> Result<Self> {
        if level > self.level {
            return Err(Error::PrecisionExceeded(format!(
                "cannot raise level {} to {level}",
                self.level
            )));
        }
        Ok(Self::from_poly(&self.representative, level))
    }

    /// Value at a primitive `n`-th root of unity.
    pub fn evaluate_at_root(&self, n: usize) -> Result<CyclotomicInteger> {
        if n == 0 {
            return invalid("root of unity of order 0");
        }
        if n > self.level + 1 {
            return Err(Error::PrecisionExceeded(format!(
                "evaluation at order {n} needs level at least {}, element has level {}",
                n - 1,
                self.level
            )));
        }
        cyclo_reduce(&self.representative, n)
    }

    /// Expansion in powers of `h = 1 - q`, modulo `h^{level+1}`.
    pub fn taylor_at_one(&self) -> OneMinusQSeries {
        let expanded = self.representative.substitute_one_minus();
        let truncation = self.level + 1;
        OneMinusQSeries {
            coefficients: (0..truncation).map(|k| expanded.coeff(k)).collect(),
        }
    }
}

impl fmt::Display for HabiroElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "habiro level={} fs=[{}]", self.level, self.representative)
    }
}

/// `[f0;f1;...]`, each `f_k` a coefficient list; `[]` is the empty series.
pub fn parse_factorial_series(s: &str) -> Result<Vec<IntPoly>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidArgument(format!("factorial series `{s}` must be bracketed")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(';').map(str::parse).collect()
}

pub fn factorial_series_string(fs: &[IntPoly]) -> String {
    let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(";"))
}

impl std::str::FromStr for HabiroElement {
    type Err = Error;

    /// `habiro level=5 fs=[1;0,1]`
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let (Some(&"habiro"), Some(level), Some(fs), None) = (
            toks.first(),
            toks.get(1).and_then(|t| t.strip_prefix("level=")),
            toks.get(2).and_then(|t| t.strip_prefix("fs=")),
            toks.get(3),
        ) else {
            return invalid(format!("expected `habiro level=<N> fs=[...]`, found `{s}`"));
        };
        let level = level
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad level `{level}`")))?;
        HabiroElement::from_factorial_series(&parse_factorial_series(fs)?, level)
    }
}

/// A truncated power series in `h = 1 - q` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneMinusQSeries {
    coefficients: Vec<BigInt>,
}

impl OneMinusQSeries {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        OneMinusQSeries { coefficients }
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Truncated Cauchy product; the shorter truncation wins.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let mut out = vec![BigInt::zero(); t];
        for (i, a) in self.coefficients.iter().enumerate().take(t) {
            for (j, b) in other.coefficients.iter().enumerate().take(t - i) {
                out[i + j] += a * b;
            }
        }
        OneMinusQSeries { coefficients: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        OneMinusQSeries {
            coefficients: (0..t)
                .map(|k| &self.coefficients[k] + &other.coefficients[k])
                .collect(),
        }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coefficients
            .iter()
            .enumerate()
            .all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() })
    }
}

impl fmt::Display for OneMinusQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

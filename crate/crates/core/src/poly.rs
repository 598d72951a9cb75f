//! Reliability polynomials in F-, N- and power-basis form.
//!
//! `Rel(p) = sum_i F_i p^(n-i) (1-p)^i`, where `F_i` counts the `i`-subsets of
//! vertices whose failure leaves a strongly connected induced subdigraph, and
//! `N_i = F_(n-i)` counts operational sets of size `i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact F-coefficients `F_0..=F_n` of a strongly connected node reliability polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReliabilityPolynomial {
    f: Vec<BigUint>,
}

impl ReliabilityPolynomial {
    /// Checks `F_i <= C(n,i)` and `F_n = 0`.
    pub fn new(f: Vec<BigUint>) -> Result<Self> {
        if f.len() < 2 {
            return Err(Error::InvalidParameter(
                "an F-vector needs at least F_0 and F_1".into(),
            ));
        }
        let n = f.len() - 1;
        for (i, c) in f.iter().enumerate() {
            if *c > binomial(n, i) {
                return Err(Error::InvalidParameter(format!(
                    "F_{i} = {c} exceeds C({n},{i})"
                )));
            }
        }
        if !f[n].is_zero() {
            return Err(Error::InvalidParameter(format!(
                "F_{n} must be 0 (the empty subdigraph is not strongly connected)"
            )));
        }
        Ok(ReliabilityPolynomial { f })
    }

    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn from_n_form(n_form: Vec<BigUint>) -> Result<Self> {
        let mut f = n_form;
        f.reverse();
        Self::new(f)
    }

    pub fn order(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f(&self) -> &[BigUint] {
        &self.f
    }

    pub fn f_coefficient(&self, i: usize) -> &BigUint {
        &self.f[i]
    }

    /// `N_i = F_(n-i)`.
    pub fn n_form(&self) -> Vec<BigUint> {
        self.f.iter().rev().cloned().collect()
    }

    pub fn evaluate(&self, p: &BigRational) -> Result<BigRational> {
        check_probability(p)?;
        let n = self.order();
        let q = BigRational::one() - p;
        let mut total = BigRational::zero();
        for (i, c) in self.f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = pow(p, n - i) * pow(&q, i) * BigRational::from_integer(BigInt::from(c.clone()));
            total += term;
        }
        Ok(total)
    }

    /// Expands every `F_i p^(n-i) (1-p)^i` into monomials.
    pub fn to_power_basis(&self) -> PowerPoly {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in self.f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = BigInt::from(c.clone());
            for j in 0..=i {
                let term = &c * BigInt::from(binomial(i, j));
                if j % 2 == 0 {
                    coeffs[n - i + j] += term;
                } else {
                    coeffs[n - i + j] -= term;
                }
            }
        }
        PowerPoly::new(coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson::from(self)).expect("polynomial serialises")
    }

    /// Parses `{"n": <int>, "F": ["<int>", ...]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: PolynomialJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }
}

impl fmt::Debug for ReliabilityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{:?}", self.f.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub n: usize,
    #[serde(rename = "F")]
    pub f: Vec<String>,
}

impl From<&ReliabilityPolynomial> for PolynomialJson {
    fn from(rp: &ReliabilityPolynomial) -> Self {
        PolynomialJson {
            n: rp.order(),
            f: rp.f.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for ReliabilityPolynomial {
    type Error = Error;

    fn try_from(raw: PolynomialJson) -> Result<Self> {
        if raw.f.len() != raw.n + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients for n = {}, found {}",
                raw.n + 1,
                raw.n,
                raw.f.len()
            )));
        }
        let f = raw
            .f
            .iter()
            .enumerate()
            .map(|(i, s)| {
                BigUint::from_str(s)
                    .map_err(|_| Error::Parse(format!("F[{i}] = {s:?} is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        ReliabilityPolynomial::new(f)
    }
}

/// Integer polynomial `sum_j c_j p^j`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PowerPoly {
    coeffs: Vec<BigInt>,
}

impl PowerPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        PowerPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PowerPoly { coeffs: Vec::new() }
    }

    /// Coefficients from degree 0 upward; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at `num/den` (`den > 0`), computed in integers.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Sign {
        sign_at(&self.coeffs, num, den)
    }

    pub fn sub(&self, other: &PowerPoly) -> PowerPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|j| self.coefficient(j) - other.coefficient(j))
            .collect();
        PowerPoly::new(coeffs)
    }

    pub fn neg(&self) -> PowerPoly {
        PowerPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &PowerPoly) -> PowerPoly {
        if self.is_zero() || other.is_zero() {
            return PowerPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerPoly::new(out)
    }
}

impl fmt::Display for PowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("p")?,
                (1, false) => write!(f, "{mag}p")?,
                (_, true) => write!(f, "p^{j}")?,
                (_, false) => write!(f, "{mag}p^{j}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Sign of `sum c_j (num/den)^j` for `den > 0`, via `sum c_j num^j den^(d-j)`.
pub(crate) fn sign_at(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> Sign {
    let Some((lead, rest)) = coeffs.split_last() else {
        return Sign::NoSign;
    };
    let mut acc = lead.clone();
    let mut den_pow = BigInt::one();
    for c in rest.iter().rev() {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    acc.sign()
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::ProbabilityOutOfRange(format_rational(p)));
    }
    Ok(())
}

/// Renders a rational as `"num/den"`, including integers (`"1/1"`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("{text:?} is not a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("{text:?} has a zero denominator")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = BigRational::new(num, den);
    Ok(if negative { -r } else { r })
}

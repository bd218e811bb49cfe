//! Arbitrary-precision rational scalars, combinatorial primitives and the
//! sparse exact-coefficient polynomial type.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The scalar field: arbitrary-precision rationals, always in canonical form
/// (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// `2^e` for any integer `e`, exact.
pub fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::from(2u32).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `k!` for `k >= 0`.
pub fn factorial(k: i64) -> Rational {
    assert!(k >= 0, "factorial of negative argument");
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Double factorial `k!!` with `0!! = 1!! = 1`.
pub fn double_factorial(k: i64) -> BigInt {
    assert!(k >= 0, "double factorial of negative argument");
    let mut acc = BigInt::one();
    let mut i = k;
    while i >= 2 {
        acc *= BigInt::from(i);
        i -= 2;
    }
    acc
}

/// Generalized binomial coefficient `C(r, k) = r(r-1)...(r-k+1) / k!` for a
/// rational upper argument and non-negative integer `k`.
pub fn binomial(r: &Rational, k: i64) -> Rational {
    assert!(k >= 0, "binomial with negative lower index");
    let mut num = Rational::one();
    for i in 0..k {
        num *= r - rat(i);
    }
    num / factorial(k)
}

/// Integer binomial coefficient, exact; zero when `0 <= n < k`, and defined
/// by the falling-factorial product for negative `n`.
pub fn bin(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    binomial(&rat(n), k)
}

/// Pochhammer symbol (rising factorial) extended to count `-1`:
/// `(x)_0 = 1`, `(x)_k = x(x+1)...(x+k-1)`, and `(x)_{-1} = 1/(x-1)`.
pub fn pochhammer(x: &Rational, k: i64) -> Result<Rational> {
    if k < -1 {
        return Err(Error::IndexOutOfDomain {
            what: "pochhammer count".into(),
            k,
            max: -1,
        });
    }
    if k == -1 {
        let shifted = x - Rational::one();
        if shifted.is_zero() {
            return Err(Error::PochhammerPole);
        }
        return Ok(shifted.recip());
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x + rat(i);
    }
    Ok(acc)
}

/// Parity attribute of a polynomial's exponent support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// A sparse univariate polynomial over the rationals. No stored coefficient
/// is zero; the zero polynomial stores nothing and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<i64, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Single term `c x^k`; collapses to zero when `c` is zero.
    pub fn term(k: i64, c: Rational) -> Self {
        assert!(k >= 0, "negative exponent");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest stored exponent; the zero polynomial has none.
    pub fn degree(&self) -> Result<i64> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Lowest stored exponent; the zero polynomial has none.
    pub fn min_degree(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroPolynomial)
    }

    /// Coefficient of `x^k` (zero when absent).
    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        assert!(k >= 0, "negative exponent");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, c * v)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn mul_xpow(&self, k: i64) -> Self {
        assert!(k >= 0);
        Self {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// Multiply by the linear factor `x + c`.
    pub fn mul_linear(&self, c: &Rational) -> Self {
        self.mul_xpow(1).add(&self.scale(c))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the sparse support, highest degree first.
        let mut acc = Rational::zero();
        let mut prev: Option<i64> = None;
        for (k, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                for _ in 0..(p - k) {
                    acc *= x;
                }
            }
            acc += c;
            prev = Some(*k);
        }
        if let Some(p) = prev {
            for _ in 0..p {
                acc *= x;
            }
        }
        acc
    }

    /// Keep only terms with exponent in `[l, u]`, intersected with the
    /// support window. An empty intersection is an error, not a zero
    /// polynomial.
    pub fn truncate(&self, u: i64, l: i64) -> Result<Self> {
        if u < l || l < 0 {
            return Err(Error::InvalidWindow { n: u, m: l, d: 1 });
        }
        let n = self.degree()?;
        let m = self.min_degree()?;
        let hi = u.min(n);
        let lo = l.max(m);
        if hi < lo {
            return Err(Error::EmptyTruncation { u, l, n, m });
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| (lo..=hi).contains(k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        })
    }

    /// Definite-parity attribute of the support. Errors on the zero
    /// polynomial, which carries no degree.
    pub fn parity(&self) -> Result<Parity> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let all_even = self.terms.keys().all(|k| k % 2 == 0);
        let all_odd = self.terms.keys().all(|k| k % 2 == 1);
        Ok(if all_even {
            Parity::Even
        } else if all_odd {
            Parity::Odd
        } else {
            Parity::None
        })
    }

    /// Split into (even, odd) parts; either may be zero.
    pub fn parity_split(&self) -> (Self, Self) {
        let even = Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| *k % 2 == 0)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        };
        let odd = Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| *k % 2 == 1)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        };
        (even, odd)
    }

    /// Degree/coefficient pair list, highest degree first.
    pub fn pairs(&self) -> Vec<(i64, Rational)> {
        self.terms.iter().rev().map(|(k, c)| (*k, c.clone())).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let coeff_is_one = mag.is_one();
            if *k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !coeff_is_one {
                    write!(f, "{mag}")?;
                }
                if *k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses signed terms of the form `c`, `cx`, `cx^k`, `x`, `x^k` with
    /// exact rational `c` written as `p/q` or an integer.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial text".into()));
        }
        let bytes = compact.as_bytes();
        let mut terms: Vec<(i64, Rational)> = Vec::new();
        let mut pos = 0usize;
        while pos < bytes.len() {
            let mut negative = false;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1;
                }
                _ => {}
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let num_text = &compact[start..pos];
            let mut coeff = if num_text.is_empty() {
                Rational::one()
            } else {
                Rational::from_str(num_text)
                    .map_err(|e| Error::Parse(format!("bad coefficient {num_text:?}: {e}")))?
            };
            if negative {
                coeff = -coeff;
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = compact[estart..pos]
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
                }
            } else if num_text.is_empty() {
                return Err(Error::Parse(format!(
                    "expected a term at offset {start} in {compact:?}"
                )));
            }
            terms.push((exp, coeff));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

/// Parse an exact rational written as `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Display-only decimal rendering with `digits` places, rounded half away
/// from zero. Never used in computation.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let doubled = &scaled + &scaled;
    let num = doubled.numer().clone();
    let den = doubled.denom().clone();
    let q = &num / &den; // truncated quotient of 2*scaled
    let rounded: BigInt = if q.is_negative() { (q - 1) / 2 } else { (q + 1) / 2 };
    let neg = rounded.is_negative();
    let mag = rounded.abs().to_string();
    let mag = if mag.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let split = mag.len() - digits as usize;
    let (int_part, frac_part) = mag.split_at(split);
    let body = if digits == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

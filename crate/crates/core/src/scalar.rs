//! Exact coefficient rings: arbitrary-precision rationals and sparse
//! multivariate polynomials over them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use serde::{Serialize, Serializer};

use crate::error::{ParseError, ScalarError};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Shorthand for building small rationals in code and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True when `q` is the square of a rational number.
pub fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coefficient ring used by coderivations.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// Text form used inside coderivation strings.
    fn coefficient_text(&self) -> String;

    /// Whether the value needs parentheses when written as a factor.
    fn is_compound(&self) -> bool;
}

impl Scalar for Rational {
    fn coefficient_text(&self) -> String {
        format_rational(self)
    }

    fn is_compound(&self) -> bool {
        false
    }
}

/// A power product of named variables. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Self::pow(name, 1)
    }

    pub fn pow(name: &str, exp: u32) -> Self {
        let mut exponents = BTreeMap::new();
        if exp > 0 {
            exponents.insert(name.to_string(), exp);
        }
        Monomial { exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.exponents.get(name).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.exponents.keys().map(String::as_str)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (v, e) in &other.exponents {
            *exponents.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exponents }
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// alphabetically first variable, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let vars: BTreeSet<&String> = self
                .exponents
                .keys()
                .chain(other.exponents.keys())
                .collect();
            for v in vars {
                let ord = self.exponent(v).cmp(&other.exponent(v));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(v, &e)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial with rational coefficients in named variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), Monomial::var(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().map(str::to_string))
            .collect()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc * self.clone())
    }

    /// Exact substitution of every variable.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, ScalarError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, &e) in &m.exponents {
                let x = point
                    .get(v)
                    .ok_or_else(|| ScalarError::UnassignedVariable(v.clone()))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes polynomials for some variables; unassigned ones remain.
    pub fn substitute(&self, map: &BTreeMap<String, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut value = Polynomial::constant(c.clone());
            for (v, &e) in &m.exponents {
                let factor = match map.get(v) {
                    Some(p) => p.pow(e),
                    None => Polynomial::term(Rational::one(), Monomial::pow(v, e)),
                };
                value = value * factor;
            }
            out += value;
        }
        out
    }

    /// Rebuilds the canonical form from the stored terms.
    pub fn canonicalize(&self) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn parse(s: &str) -> Result<Polynomial, ParseError> {
        crate::parse::parse_polynomial(s)
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl Scalar for Polynomial {
    fn coefficient_text(&self) -> String {
        self.to_string()
    }

    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn point(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(p("t") + p("-t"), Polynomial::zero());
        assert_eq!(p("t1 + 1") + p("t2"), p("t1 + t2 + 1"));
        assert_eq!(p("t^2 - 1") + p("1"), p("t^2"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("t + 1") * p("t - 1"), p("t^2 - 1"));
        assert_eq!(Polynomial::zero() * p("t1*t2 + 7"), Polynomial::zero());
        assert_eq!(p("t1") * p("t2"), p("t1*t2"));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("t^2 - 1").eval(&point(&[("t", int(1))])).unwrap(), int(0));
        assert_eq!(p("t^2 - 1").eval(&point(&[("t", int(3))])).unwrap(), int(8));
        let pt = point(&[("t1", int(2)), ("t2", rat(1, 2))]);
        assert_eq!(p("t1*t2").eval(&pt).unwrap(), int(1));
    }

    #[test]
    fn evaluation_reports_missing_variable() {
        let err = p("t1 + t2").eval(&point(&[("t1", int(1))])).unwrap_err();
        assert_eq!(err, ScalarError::UnassignedVariable("t2".into()));
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(p("3/4*t1 - 1 + t2*t1").to_string(), "t1*t2 + 3/4*t1 - 1");
        assert_eq!(p("t2 + t1 + t1^2").to_string(), "t1^2 + t1 + t2");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn squares_of_rationals() {
        assert!(is_rational_square(&rat(9, 4)));
        assert!(is_rational_square(&int(0)));
        assert!(!is_rational_square(&int(-4)));
        assert!(!is_rational_square(&rat(2, 9)));
    }
}

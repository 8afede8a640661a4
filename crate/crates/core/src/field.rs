//! Base fields for multiplication tables and linear algebra: the rationals
//! and small prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::{format_rational, int, is_rational_square, Rational};

/// How a monic quadratic `X^2 + bX + c` factors over the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    Repeated,
    Distinct,
    Irreducible,
}

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    fn quadratic_roots(b: &Self, c: &Self) -> QuadraticRoots;

    /// JSON form: a number when it fits, otherwise a string like `"3/4"`.
    fn to_json(&self) -> serde_json::Value;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_i64(n: i64) -> Self {
        int(n)
    }

    fn quadratic_roots(b: &Self, c: &Self) -> QuadraticRoots {
        let disc = b * b - int(4) * c;
        if disc.is_zero() {
            QuadraticRoots::Repeated
        } else if is_rational_square(&disc) {
            QuadraticRoots::Distinct
        } else {
            QuadraticRoots::Irreducible
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self.to_integer().to_i64() {
            Some(n) if self.is_integer() => n.into(),
            _ => format_rational(self).into(),
        }
    }
}

/// Residue class modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;

    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{P}");
        // Fermat: a^(p-2)
        let mut result = Fp::<P>::one();
        let mut base = *self;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn quadratic_roots(b: &Self, c: &Self) -> QuadraticRoots {
        let roots: Vec<Self> = Fp::<P>::elements()
            .filter(|x| (*x * *x + *b * *x + *c).is_zero())
            .collect();
        match roots.len() {
            0 => QuadraticRoots::Irreducible,
            1 => QuadraticRoots::Repeated,
            _ => QuadraticRoots::Distinct,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        self.0.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn prime_field_arithmetic() {
        type F5 = Fp<5>;
        assert_eq!(F5::new(3) * F5::new(4), F5::new(2));
        assert_eq!(F5::new(2).inv(), F5::new(3));
        assert_eq!(-F5::new(1), F5::new(4));
        assert_eq!(F5::new(-7), F5::new(3));
        for x in F5::elements().skip(1) {
            assert_eq!(x * x.inv(), F5::one());
        }
    }

    #[test]
    fn quadratic_factorization() {
        assert_eq!(
            Rational::quadratic_roots(&int(0), &int(-1)),
            QuadraticRoots::Distinct
        );
        assert_eq!(
            Rational::quadratic_roots(&int(0), &int(1)),
            QuadraticRoots::Irreducible
        );
        assert_eq!(
            Rational::quadratic_roots(&int(-2), &int(1)),
            QuadraticRoots::Repeated
        );
        assert_eq!(
            Rational::quadratic_roots(&rat(1, 2), &int(0)),
            QuadraticRoots::Distinct
        );
        // X^2 + X + 1 is irreducible over F_2, X^2 + 1 = (X + 1)^2.
        type F2 = Fp<2>;
        assert_eq!(
            F2::quadratic_roots(&F2::one(), &F2::one()),
            QuadraticRoots::Irreducible
        );
        assert_eq!(
            F2::quadratic_roots(&F2::zero(), &F2::one()),
            QuadraticRoots::Repeated
        );
        assert_eq!(
            F2::quadratic_roots(&F2::one(), &F2::zero()),
            QuadraticRoots::Distinct
        );
    }
}

//! Positive reals of the form `prod base_i ^ exponent_i` with rational bases
//! and rational exponents.
//!
//! Every bound value fits this shape, including those with irrational factors
//! such as `2^{7/8}` or a factorial raised to a fractional power. Comparison
//! against an integer is exact: both sides are raised to the least common
//! denominator of the exponents.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Signed, Zero};

use crate::math::log2_biguint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub base: BigRational,
    pub exponent: Ratio<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Magnitude {
    factors: Vec<Factor>,
}

impl Magnitude {
    pub fn one() -> Self {
        Magnitude::default()
    }

    pub fn integer(value: impl Into<BigUint>) -> Self {
        Magnitude::one().times(BigRational::from_integer(BigInt::from(value.into())), Ratio::one())
    }

    pub fn rational(value: BigRational) -> Self {
        Magnitude::one().times(value, Ratio::one())
    }

    /// Multiplies in `base ^ exponent`. Zero exponents are dropped, so a
    /// vanishing power of any base (including 0) contributes 1.
    ///
    /// # Panics
    ///
    /// If `base` is not positive while `exponent` is non-zero.
    pub fn times(mut self, base: BigRational, exponent: Ratio<i64>) -> Self {
        if exponent.is_zero() || base.is_one() {
            return self;
        }
        assert!(base.is_positive(), "magnitude bases must be positive");
        self.factors.push(Factor { base, exponent });
        self
    }

    pub fn times_int(self, base: impl Into<BigUint>, exponent: Ratio<i64>) -> Self {
        self.times(BigRational::from_integer(BigInt::from(base.into())), exponent)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The exact value when every exponent is an integer.
    pub fn exact(&self) -> Option<BigRational> {
        let mut acc = BigRational::one();
        for f in &self.factors {
            if !f.exponent.is_integer() {
                return None;
            }
            acc *= Pow::pow(&f.base, *f.exponent.numer() as i32);
        }
        Some(acc)
    }

    pub fn log2(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| {
                let l = log2_biguint(f.base.numer().magnitude()) - log2_biguint(f.base.denom().magnitude());
                *f.exponent.numer() as f64 / *f.exponent.denom() as f64 * l
            })
            .sum()
    }

    fn common_denominator(&self) -> i64 {
        self.factors.iter().fold(1i64, |acc, f| acc.lcm(f.exponent.denom()))
    }

    /// `self ^ L` for the common exponent denominator `L`, which is rational.
    fn raised(&self, l: i64) -> BigRational {
        let mut acc = BigRational::one();
        for f in &self.factors {
            let e = *f.exponent.numer() * (l / *f.exponent.denom());
            acc *= Pow::pow(&f.base, e as i32);
        }
        acc
    }

    /// Exact comparison with a positive integer.
    pub fn cmp_integer(&self, value: &BigUint) -> Ordering {
        let l = self.common_denominator();
        let lhs = self.raised(l);
        let rhs = BigRational::from_integer(BigInt::from(Pow::pow(value, l as u32)));
        lhs.cmp(&rhs)
    }

    /// Exact comparison between two magnitudes.
    pub fn cmp_magnitude(&self, other: &Magnitude) -> Ordering {
        let l = self.common_denominator().lcm(&other.common_denominator());
        self.raised(l).cmp(&other.raised(l))
    }

    /// The magnitude scaled by a rational factor.
    pub fn scaled(self, factor: BigRational) -> Self {
        self.times(factor, Ratio::one())
    }
}

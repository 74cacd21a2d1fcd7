//! Scalar abstractions.
//!
//! The combinatorial parts of the library (Newton identities, Bernoulli
//! convolution, generating-function recursions) only need an ordered field and
//! run unchanged over `f32`, `f64` and exact `BigRational`. The analytic parts
//! (Poisson masses, total variation, scheme construction) need a `Real`.

use std::fmt::Debug;
use std::iter::Sum;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, ToPrimitive, Zero};

/// An ordered field usable by the exact-capable algorithms.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// Conversion from an `f64`. Exact for binary floats in rational mode.
    fn from_f64(x: f64) -> Self;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Admissible deviation of a total mass from 1.
    fn norm_tolerance() -> Self;

    /// Sum of many terms: compensated for floats, exact for rationals.
    fn sum_of<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// Floating-point scalars (`f32` or `f64`).
pub trait Real: Scalar + Float + Sum + 'static {
    fn c(x: f64) -> Self {
        <Self as Scalar>::from_f64(x)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn norm_tolerance() -> Self {
        1e-10
    }
    fn sum_of<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        ksum(terms)
    }
}

impl Scalar for f32 {
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn from_i64(n: i64) -> Self {
        n as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn norm_tolerance() -> Self {
        1e-4
    }
    fn sum_of<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        ksum(terms)
    }
}

impl Real for f64 {}
impl Real for f32 {}

impl Scalar for BigRational {
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn norm_tolerance() -> Self {
        BigRational::zero()
    }
}

/// Kahan–Babuška (Neumaier) compensated accumulator.
#[derive(Debug, Clone, Copy)]
pub struct Compensated<T> {
    sum: T,
    carry: T,
}

impl<T: Float> Default for Compensated<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Float> Compensated<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Float> FromIterator<T> for Compensated<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Compensated::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn ksum<T: Float, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<Compensated<T>>().value()
}

/// Field sum through [`Scalar::sum_of`].
pub fn field_sum<T: Scalar, I: IntoIterator<Item = T>>(iter: I) -> T {
    T::sum_of(iter)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_beats_naive_on_harmonic_tail() {
        let n = 1_000_000;
        let terms: Vec<f64> = (1..=n).map(|i| 1.0 / (i as f64 * i as f64)).collect();
        let naive: f64 = terms.iter().sum();
        let comp = ksum(terms.iter().copied());
        // reverse-order naive summation is the accurate reference here
        let reference: f64 = terms.iter().rev().sum();
        assert!((comp - reference).abs() <= (naive - reference).abs());
        assert!((comp - reference).abs() < 1e-15);
    }

    #[test]
    fn rational_roundtrip() {
        let r = <BigRational as Scalar>::from_f64(0.375);
        assert_eq!(r, BigRational::new(3.into(), 8.into()));
        assert_eq!(Scalar::to_f64(&r), 0.375);
        assert!(<BigRational as Scalar>::norm_tolerance().is_zero());

    }
}

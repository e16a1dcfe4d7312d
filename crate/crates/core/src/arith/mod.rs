//! Scalar fields used by the reduction machinery.
//!
//! Everything downstream is written against [`Field`], so the same reduction
//! code runs over exact rationals and over rational functions in one
//! variable.

mod poly;
mod ratfunc;
mod rational;

use std::fmt;

use thiserror::Error;

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at x = {0}")]
    Pole(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Field operations shared by [`Rational`] and [`RationalFunction`].
///
/// Values are immutable; every operation returns a fresh canonical value.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self, ArithError>;
    fn is_zero(&self) -> bool;

    /// Sign information when the field is ordered; `None` otherwise.
    fn is_positive(&self) -> Option<bool> {
        None
    }

    /// `self·y / (self + y + z)`.
    fn delta(&self, y: &Self, z: &Self) -> Result<Self, ArithError> {
        self.mul(y).div(&self.add(y).add(z))
    }

    /// `(self·y + y·z + z·self) / self`.
    fn wye(&self, y: &Self, z: &Self) -> Result<Self, ArithError> {
        self.mul(y).add(&y.mul(z)).add(&z.mul(self)).div(self)
    }
}

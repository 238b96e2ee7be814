//! Exact scalars, polynomials and dense linear algebra over Q.

pub mod matrix;
pub mod multi;
pub mod poly;
pub mod rational;

pub use matrix::QMatrix;
pub use multi::MultiPoly;
pub use poly::UniPoly;
pub use rational::Rational;

use num_traits::Zero;

/// Commutative coefficient ring an algebra element can be taken over.
///
/// Implemented by [`Rational`] (concrete elements) and [`MultiPoly`]
/// (generic elements with symbolic coordinates).
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    /// Zero compatible with `self` (same number of indeterminates).
    fn zero_like(&self) -> Self;
    fn constant_like(&self, c: &Rational) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn constant_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

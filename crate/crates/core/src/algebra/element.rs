use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::rational::{format_rational, parse_rational};
use crate::scalar::Rational;

/// Coordinates of an algebra element in the basis of its algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = num_traits::One::one();
        e
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| crate::scalar::rational::int(c)).collect())
    }

    /// Parses a comma-separated literal such as `1,0,1/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coords))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    /// Panics on a dimension mismatch; see [`Element::try_add`].
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("element dimension mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("element dimension mismatch")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// `Σ c_i v_i` over equally sized elements.
    pub fn combination(dim: usize, terms: impl IntoIterator<Item = (Rational, Element)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(dim), |acc, (c, v)| acc.add(&v.scale(&c)))
    }
}

/// Comma-separated rational coordinates, the same form [`Element::parse`] reads.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::frac;

    #[test]
    fn literal_round_trip() {
        let e = Element::parse("1, -1/2,0").unwrap();
        assert_eq!(e.coords()[1], frac(-1, 2));
        assert_eq!(e.to_string(), "1,-1/2,0");
        assert!(Element::parse("1,,2").is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Element::zero(2);
        let b = Element::zero(3);
        assert_eq!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }
}

//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, pow, Rational};
use crate::error::{Error, Result};

/// Coefficients indexed by exponent. The leading coefficient is nonzero; the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// `p(c·X)`.
    pub fn compose_scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a * pow(c, k))
                .collect(),
        )
    }

    /// Euclidean division: `(q, r)` with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - d;
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * b;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders as e.g. `X^2 - 1/2*X - 1/2`, highest degree first.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (_, true) => f.write_str(&format_rational(&a))?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&a))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{frac, half};
    use proptest::prelude::*;

    fn x2_half() -> UniPoly {
        UniPoly::from_coeffs(vec![frac(-1, 2), frac(-1, 2), int(1)])
    }

    #[test]
    fn derivative_examples() {
        assert!(UniPoly::zero().derivative().is_zero());
        assert_eq!(
            x2_half().derivative(),
            UniPoly::from_coeffs(vec![frac(-1, 2), int(2)])
        );
    }

    #[test]
    fn remainder_examples() {
        let x3 = UniPoly::monomial(int(1), 3);
        let x3_x2 = UniPoly::from_ints(&[0, 0, -1, 1]);
        assert_eq!(x3.rem(&x3_x2).unwrap(), UniPoly::monomial(int(1), 2));
        let x = UniPoly::x();
        let x2 = UniPoly::monomial(int(1), 2);
        assert_eq!(x.rem(&x2).unwrap(), x);
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert!(a.rem(&b).unwrap().is_zero());
        assert_eq!(a.rem(&UniPoly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn display() {
        assert_eq!(x2_half().to_string(), "X^2 - 1/2*X - 1/2");
        assert_eq!(UniPoly::from_ints(&[0, -3]).to_string(), "-3*X");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_and_scale() {
        assert_eq!(x2_half().eval(&half()), frac(-1, 2));
        assert_eq!(
            x2_half().compose_scale(&int(2)),
            UniPoly::from_coeffs(vec![frac(-1, 2), int(-1), int(4)])
        );
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..7)
            .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn division_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|dr| dr < b.degree().unwrap()));
        }
    }
}

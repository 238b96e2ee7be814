//! Free commutative nonassociative polynomials in one indeterminate `X`.
//!
//! A [`MagmaPoly`] is a finite linear combination of canonical binary trees
//! ([`MagmaTerm`]). The text syntax is
//!
//! ```text
//! poly   := [sign] term { sign term }        sign := "+" | "-"
//! term   := [ rational "*" ] factor | rational
//! factor := atom [ "*" atom ]
//! atom   := "X" [ power ] | "(" poly ")"
//! power  := "^" integer | "^[" integer "]"
//! ```
//!
//! `X^k` is the principal power `X(X(...X))` and `X^[k]` the plenary power
//! `X^[k-1]X^[k-1]`. A `*` chain such as `X*X*X` is rejected: the product is
//! not associative, so groupings must be explicit.

mod parse;
mod term;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

pub use parse::{parse_poly, ParseError};
pub use term::MagmaTerm;

use crate::scalar::rational::format_rational;
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MagmaPoly {
    terms: BTreeMap<MagmaTerm, Rational>,
}

impl MagmaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: MagmaTerm) -> Self {
        Self::from_terms([(t, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MagmaTerm, Rational)>) -> Self {
        let mut p = Self::zero();
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    pub fn x() -> Self {
        Self::from_term(MagmaTerm::x())
    }

    pub fn principal_power(k: usize) -> Self {
        Self::from_term(MagmaTerm::principal_power(k))
    }

    pub fn plenary_power(k: usize) -> Self {
        Self::from_term(MagmaTerm::plenary_power(k))
    }

    /// `X²X² − 2X³ + X²`, the identity defining backcrossing algebras.
    pub fn backcrossing() -> Self {
        let x2 = MagmaTerm::principal_power(2);
        Self::from_terms([
            (MagmaTerm::product(&x2, &x2), Rational::one()),
            (MagmaTerm::principal_power(3), Rational::from_integer((-2).into())),
            (x2, Rational::one()),
        ])
    }

    pub fn add_term(&mut self, t: MagmaTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MagmaTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(MagmaTerm::degree).max().unwrap_or(0)
    }

    /// Sum of all term coefficients (the image of the identity under the weight).
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_split().len() <= 1
    }

    /// Decomposition by term degree.
    pub fn homogeneous_split(&self) -> BTreeMap<usize, MagmaPoly> {
        let mut out: BTreeMap<usize, MagmaPoly> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.degree()).or_default().add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(t, a)| (t.clone(), a * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Bilinear extension of the tree product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(MagmaTerm::product(a, b), ca * cb);
            }
        }
        out
    }

    /// Principal-power form `Σ c_k X^k`: the coefficients indexed by `k`
    /// (index 0 unused), or `None` if some term is not a principal power.
    pub fn principal_coefficients(&self) -> Option<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); self.degree() + 1];
        for (t, c) in &self.terms {
            coeffs[t.as_principal_power()?] = c.clone();
        }
        Some(coeffs)
    }
}

/// Highest degree first, e.g. `X^[3] - 2*X^3 + X^2`.
impl fmt::Display for MagmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format_rational(&a));
                out.push('*');
            }
            term::write_factor(t, &mut out);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MagmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MagmaPoly({self})")
    }
}

impl FromStr for MagmaPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_poly(s)
    }
}

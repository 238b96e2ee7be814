//! Sparse multivariate polynomials over Q, used as coordinates of a generic
//! algebra element `t_1 e_1 + ... + t_n e_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::Coefficient;

/// Map from exponent vectors to nonzero coefficients. All exponent vectors
/// have length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `t_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point has wrong arity");
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    fn arity(&self, other: &Self) -> usize {
        // zero polynomials built without context adopt the other's arity
        if self.terms.is_empty() {
            other.nvars.max(self.nvars)
        } else {
            debug_assert!(other.terms.is_empty() || other.nvars == self.nvars);
            self.nvars
        }
    }
}

impl Coefficient for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }

    fn constant_like(&self, c: &Rational) -> Self {
        Self::constant(self.nvars, c.clone())
    }

    fn is_zero_coeff(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nvars = self.arity(other);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nvars = self.arity(other);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity(other));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("t{i}") } else { format!("t{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{frac, int};

    #[test]
    fn arithmetic_cancels_exactly() {
        let t0 = MultiPoly::var(2, 0);
        let t1 = MultiPoly::var(2, 1);
        let sum = t0.add(&t1);
        let sq = sum.mul(&sum);
        let expanded = t0
            .mul(&t0)
            .add(&t0.mul(&t1).scale(&int(2)))
            .add(&t1.mul(&t1));
        assert_eq!(sq, expanded);
        assert!(sq.sub(&expanded).is_empty());
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.eval(&[int(1), frac(1, 2)]), frac(9, 4));
    }

    #[test]
    fn zero_adopts_arity() {
        let z = MultiPoly::zero(0);
        let t = MultiPoly::var(3, 2);
        assert_eq!(z.add(&t), t);
        assert_eq!(z.add(&t).nvars(), 3);
    }
}

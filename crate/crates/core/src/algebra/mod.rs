//! Finite-dimensional commutative algebras over Q equipped with a weight
//! (a nonzero algebra homomorphism `ω: A → Q`).

mod element;
mod identity;
pub mod io;

use std::collections::HashMap;

use num_traits::{One, Zero};

pub use element::Element;
pub use identity::{IdentityCheck, LowDegreeIdentity, Subalgebra};

use crate::error::{Error, Result};
use crate::magma::{MagmaPoly, MagmaTerm};
use crate::scalar::{Coefficient, QMatrix, Rational};

/// Structure constants `γ_ij^k` for `i ≤ j` together with the weight `ω(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAlgebra {
    names: Vec<String>,
    weight: Vec<Rational>,
    /// Dense `e_i e_j` for `i ≤ j`, indexed by [`pair_index`].
    table: Vec<Vec<Rational>>,
}

/// Outcome of [`WeightedAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub weight_nonzero: bool,
    /// Pairs `(i, j)` with `ω(e_i e_j) ≠ ω(e_i) ω(e_j)`.
    pub violations: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.weight_nonzero && self.violations.is_empty()
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..i hold dim, dim-1, ... entries
    i * dim - i * (i.saturating_sub(1)) / 2 - i + j
}

impl WeightedAlgebra {
    /// An algebra with all products zero. Names default to `e0, e1, ...`
    /// when `names` is empty.
    pub fn new(names: Vec<String>, weight: Vec<Rational>) -> Result<Self> {
        let dim = weight.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let names = if names.is_empty() {
            (0..dim).map(|i| format!("e{i}")).collect()
        } else {
            names
        };
        if names.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: names.len(),
            });
        }
        Ok(Self {
            names,
            weight,
            table: vec![vec![Rational::zero(); dim]; dim * (dim + 1) / 2],
        })
    }

    /// Sets `e_i e_j = e_j e_i = value`.
    pub fn with_product(mut self, i: usize, j: usize, value: Vec<Rational>) -> Result<Self> {
        let dim = self.dim();
        if i >= dim || j >= dim {
            return Err(Error::InvalidAlgebra(format!("basis index ({i},{j}) out of range")));
        }
        if value.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: value.len(),
            });
        }
        self.table[pair_index(dim, i, j)] = value;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.weight.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight_vector(&self) -> &[Rational] {
        &self.weight
    }

    /// `e_i e_j` in coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[pair_index(self.dim(), i, j)]
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn validate(&self) -> ValidationReport {
        let weight_nonzero = self.weight.iter().any(|w| !w.is_zero());
        let violations = self.homomorphism_violations(&self.weight);
        ValidationReport {
            weight_nonzero,
            violations,
        }
    }

    fn homomorphism_violations(&self, eta: &[Rational]) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if dot(eta, self.basis_product(i, j)) != &eta[i] * &eta[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether `η` is a nonzero algebra homomorphism `A → Q`.
    pub fn is_weight_homomorphism(&self, eta: &[Rational]) -> bool {
        eta.len() == self.dim()
            && eta.iter().any(|c| !c.is_zero())
            && self.homomorphism_violations(eta).is_empty()
    }

    pub fn weight<C: Coefficient>(&self, x: &[C]) -> C {
        let zero = x[0].zero_like();
        x.iter()
            .zip(&self.weight)
            .filter(|(_, w)| !w.is_zero())
            .fold(zero, |acc, (c, w)| acc.add(&c.scale(w)))
    }

    pub fn weight_of(&self, x: &Element) -> Rational {
        dot(&self.weight, x.coords())
    }

    /// Bilinear product over any coefficient ring.
    pub fn product_generic<C: Coefficient>(&self, x: &[C], y: &[C]) -> Vec<C> {
        let n = self.dim();
        let zero = x[0].zero_like();
        let mut out = vec![zero; n];
        for i in 0..n {
            for j in i..n {
                let gamma = self.basis_product(i, j);
                if gamma.iter().all(Zero::is_zero) {
                    continue;
                }
                let coef = if i == j {
                    x[i].mul(&y[i])
                } else {
                    x[i].mul(&y[j]).add(&x[j].mul(&y[i]))
                };
                if coef.is_zero_coeff() {
                    continue;
                }
                for (k, g) in gamma.iter().enumerate() {
                    if !g.is_zero() {
                        out[k] = out[k].add(&coef.scale(g));
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::new(self.product_generic(x.coords(), y.coords())))
    }

    /// Panics when an operand has the wrong dimension; see [`Self::try_mul`].
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.try_mul(x, y).expect("element does not belong to this algebra")
    }

    pub fn square(&self, x: &Element) -> Element {
        self.mul(x, x)
    }

    pub(crate) fn check(&self, x: &Element) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            })
        }
    }

    pub(crate) fn require_weight_one(&self, x: &Element) -> Result<()> {
        self.check(x)?;
        let w = self.weight_of(x);
        if w.is_one() {
            Ok(())
        } else {
            Err(Error::WeightNotOne(w.to_string()))
        }
    }

    /// `x^1 = x`, `x^k = x·x^(k-1)`.
    pub fn principal_power(&self, x: &Element, k: usize) -> Element {
        assert!(k >= 1, "powers start at 1");
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.mul(x, &acc);
        }
        acc
    }

    /// `x^[1] = x`, `x^[k] = x^[k-1]·x^[k-1]`.
    pub fn plenary_power(&self, x: &Element, k: usize) -> Element {
        assert!(k >= 1, "powers start at 1");
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.square(&acc);
        }
        acc
    }

    /// Matrix of `L_x: y ↦ xy`.
    pub fn left_mult_matrix(&self, x: &Element) -> QMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis(j)).into_coords())
            .collect();
        QMatrix::from_columns(&cols).expect("square by construction")
    }

    /// Value of a single tree at `x`, memoized over shared subtrees.
    fn eval_term<C: Coefficient>(&self, t: &MagmaTerm, x: &[C], memo: &mut HashMap<usize, Vec<C>>) -> Vec<C> {
        if let Some(v) = memo.get(&t.node_id()) {
            return v.clone();
        }
        let v = match t.factors() {
            None => x.to_vec(),
            Some((a, b)) => {
                let va = self.eval_term(a, x, memo);
                if a == b {
                    self.product_generic(&va, &va)
                } else {
                    let vb = self.eval_term(b, x, memo);
                    self.product_generic(&va, &vb)
                }
            }
        };
        memo.insert(t.node_id(), v.clone());
        v
    }

    /// `Σ ω(x)^(deg f − deg t) α_t t(x)` over the terms `α_t t` of `f`.
    pub fn eval_weighted_generic<C: Coefficient>(&self, f: &MagmaPoly, x: &[C]) -> Vec<C> {
        let zero = x[0].zero_like();
        let w = self.weight(x);
        let deg = f.degree();
        let mut w_pows = vec![zero.constant_like(&Rational::one())];
        for k in 1..=deg {
            let next = w_pows[k - 1].mul(&w);
            w_pows.push(next);
        }
        let mut memo = HashMap::new();
        let mut out = vec![zero; self.dim()];
        for (t, c) in f.terms() {
            let v = self.eval_term(t, x, &mut memo);
            let factor = w_pows[deg - t.degree()].scale(c);
            for (o, vi) in out.iter_mut().zip(&v) {
                *o = o.add(&vi.mul(&factor));
            }
        }
        out
    }

    /// Weight-homogenized value of `f` at `x`.
    pub fn eval_weighted(&self, f: &MagmaPoly, x: &Element) -> Element {
        Element::new(self.eval_weighted_generic(f, x.coords()))
    }

    /// Plain substitution `f(x) = Σ α_t t(x)`.
    pub fn eval(&self, f: &MagmaPoly, x: &Element) -> Element {
        let mut memo = HashMap::new();
        let mut out = Element::zero(self.dim());
        for (t, c) in f.terms() {
            let v = Element::new(self.eval_term(t, x.coords(), &mut memo));
            out = out.add(&v.scale(c));
        }
        out
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

//! Symbolic identity checking on a generic element, low-degree identity
//! spaces and generated subalgebras.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Element, WeightedAlgebra};
use crate::magma::{MagmaPoly, MagmaTerm};
use crate::scalar::matrix::{express_in_span, rank_of};
use crate::scalar::rational::int;
use crate::scalar::{Coefficient, MultiPoly, QMatrix, Rational};

/// Verdict of [`WeightedAlgebra::holds_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Concrete element at which the identity fails.
    pub witness: Option<Element>,
    /// Weighted value of the identity at the witness (nonzero).
    pub witness_value: Option<Element>,
}

/// `α X³ + β X² + γ X`, stored as `[α, β, γ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeIdentity(pub [Rational; 3]);

impl LowDegreeIdentity {
    pub fn to_poly(&self) -> MagmaPoly {
        let [a, b, c] = &self.0;
        MagmaPoly::from_terms([
            (MagmaTerm::principal_power(3), a.clone()),
            (MagmaTerm::principal_power(2), b.clone()),
            (MagmaTerm::x(), c.clone()),
        ])
    }
}

/// Subspace spanned by the principal powers of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    basis: Vec<Element>,
    closed: bool,
}

impl Subalgebra {
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether products of basis elements stay inside the span.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Coordinates of `v` in the basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &Element) -> Option<Vec<Rational>> {
        let vectors: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        express_in_span(&vectors, v.coords()).ok().flatten()
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.coordinates(v).is_some()
    }
}

fn generic_point(dim: usize) -> Vec<MultiPoly> {
    (0..dim).map(|i| MultiPoly::var(dim, i)).collect()
}

/// Integer grid values `0, 1, -1, 2, -2, ...`.
fn grid_value(i: usize) -> Rational {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        int(k)
    } else {
        int(-k)
    }
}

impl WeightedAlgebra {
    /// Decides whether `f` is an identity of the algebra by evaluating it at
    /// the generic element `Σ t_i e_i` with polynomial coordinates.
    pub fn holds_identity(&self, f: &MagmaPoly) -> IdentityCheck {
        let value = self.eval_weighted_generic(f, &generic_point(self.dim()));
        let Some(bad) = value.iter().find(|c| !c.is_zero_coeff()) else {
            return IdentityCheck {
                holds: true,
                witness: None,
                witness_value: None,
            };
        };
        let point = nonvanishing_point(bad);
        let witness = Element::new(point);
        let witness_value = self.eval_weighted(f, &witness);
        debug_assert!(!witness_value.is_zero());
        IdentityCheck {
            holds: false,
            witness: Some(witness),
            witness_value: Some(witness_value),
        }
    }

    /// Basis of all `(α, β, γ)` making `α X³ + β X² + γ X` an identity.
    /// Empty means the algebra satisfies no identity of degree below 4.
    pub fn low_degree_identity_space(&self) -> Vec<LowDegreeIdentity> {
        let x = generic_point(self.dim());
        let w = self.weight(&x);
        let x2 = self.product_generic(&x, &x);
        let x3 = self.product_generic(&x, &x2);
        let w2 = w.mul(&w);
        // lowest degree first, so free variables fall on the high powers
        let columns = [
            x.iter().map(|c| c.mul(&w2)).collect::<Vec<_>>(),
            x2.iter().map(|c| c.mul(&w)).collect::<Vec<_>>(),
            x3,
        ];
        // one equation per (coordinate, monomial)
        let mut rows: BTreeMap<(usize, Vec<u32>), [Rational; 3]> = BTreeMap::new();
        for (col, value) in columns.iter().enumerate() {
            for (k, poly) in value.iter().enumerate() {
                for (exps, c) in poly.terms() {
                    let row = rows
                        .entry((k, exps.to_vec()))
                        .or_insert_with(|| [Rational::zero(), Rational::zero(), Rational::zero()]);
                    row[col] += c;
                }
            }
        }
        let matrix = if rows.is_empty() {
            QMatrix::zeros(1, 3)
        } else {
            QMatrix::from_rows(rows.into_values().map(|r| r.to_vec()).collect()).expect("three columns")
        };
        matrix
            .kernel_basis()
            .into_iter()
            .map(|v| LowDegreeIdentity([v[2].clone(), v[1].clone(), v[0].clone()]))
            .collect()
    }

    /// Span of `x, x², ..., x^d`, where `x^(d+1)` is the first power
    /// depending linearly on the previous ones.
    pub fn generated_subalgebra(&self, x: &Element) -> Subalgebra {
        let mut basis: Vec<Element> = Vec::new();
        let mut current = x.clone();
        loop {
            let mut candidate: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords().to_vec()).collect();
            candidate.push(current.coords().to_vec());
            if rank_of(&candidate) <= basis.len() {
                break;
            }
            basis.push(current.clone());
            current = self.mul(x, &current);
        }
        let mut sub = Subalgebra {
            basis,
            closed: true,
        };
        let n = sub.dim();
        'outer: for i in 0..n {
            for j in i..n {
                let p = self.mul(&sub.basis[i], &sub.basis[j]);
                if !sub.contains(&p) {
                    sub.closed = false;
                    break 'outer;
                }
            }
        }
        sub
    }
}

/// A point of the integer grid where `p` does not vanish. The grid has more
/// values per variable than the largest exponent of `p`, so such a point exists.
fn nonvanishing_point(p: &MultiPoly) -> Vec<Rational> {
    let n = p.nvars();
    let width = (p.max_var_degree() as usize + 1).max(5);
    let mut digits = vec![0usize; n];
    loop {
        let point: Vec<Rational> = digits.iter().map(|&d| grid_value(d)).collect();
        if !p.eval(&point).is_zero() {
            return point;
        }
        // mixed-radix increment, first coordinate fastest
        let mut i = 0;
        loop {
            assert!(i < n, "nonzero polynomial vanished on its whole grid");
            digits[i] += 1;
            if digits[i] < width {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::scalar::rational::frac;

    #[test]
    fn identity_verdicts() {
        let a3 = samples::a3();
        assert!(a3.holds_identity(&MagmaPoly::backcrossing()).holds);
        let f: MagmaPoly = "X^3 - X^2".parse().unwrap();
        let check = a3.holds_identity(&f);
        assert!(!check.holds);
        assert_eq!(check.witness, Some(Element::from_ints(&[1, 0, 0])));
        assert_eq!(
            check.witness_value,
            Some(Element::new(vec![int(0), int(0), frac(1, 2)]))
        );
        assert!(samples::g2().holds_identity(&"X^2 - X".parse().unwrap()).holds);
    }

    #[test]
    fn low_degree_spaces() {
        assert!(samples::a3().low_degree_identity_space().is_empty());

        let g2 = samples::g2().low_degree_identity_space();
        assert_eq!(g2.len(), 2);
        assert_eq!(g2[0].to_poly().to_string(), "X^2 - X");
        let target = [int(0), int(1), int(-1)];
        let vectors: Vec<Vec<Rational>> = g2.iter().map(|v| v.0.to_vec()).collect();
        assert!(express_in_span(&vectors, &target).unwrap().is_some());

        let atr = samples::atr().low_degree_identity_space();
        assert_eq!(atr.len(), 1);
        let v = &atr[0].0;
        let scaled: Vec<Rational> = v.iter().map(|c| c / &v[0]).collect();
        assert_eq!(scaled, vec![int(1), frac(-1, 2), frac(-1, 2)]);
    }

    #[test]
    fn generated_subalgebras() {
        let a3 = samples::a3();
        let s = a3.generated_subalgebra(&a3.basis(0));
        assert_eq!(s.dim(), 3);
        assert!(s.is_closed());
        assert_eq!(s.basis()[2], a3.principal_power(&a3.basis(0), 3));

        let g2 = samples::g2();
        assert_eq!(g2.generated_subalgebra(&g2.basis(0)).dim(), 1);

        let atr = samples::atr();
        let s = atr.generated_subalgebra(&atr.basis(0));
        assert_eq!(s.dim(), 2);
        assert!(s.is_closed());
    }

    #[test]
    fn grid_order() {
        let vals: Vec<Rational> = (0..5).map(grid_value).collect();
        assert_eq!(vals, vec![int(0), int(1), int(-1), int(2), int(-2)]);
    }
}

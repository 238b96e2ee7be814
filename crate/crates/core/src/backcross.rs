//! Backcrossing structure: the `p_k` sequence of a weight-1 element, its
//! product table, the linearized defining identity, the mutation structure
//! of generated subalgebras and the principal/plenary power conversions.
//!
//! For `x` of weight 1 put `p_k = x^k − x^(k−1)` (with `x^0 = 0`). In a
//! backcrossing algebra
//!
//! ```text
//! p_1² = p_1 + p_2,   p_1 p_i = p_(i+1),   p_i p_j = 0   (i, j ≥ 2)
//! ```
//!
//! so `K<x>` is a mutation algebra `(K<x>, M, ω)` with `M(p_1) = p_1 + p_2`
//! and `M(p_k) = 2 p_(k+1)`.

use num_traits::{One, Zero};

use crate::algebra::{Element, LowDegreeIdentity, WeightedAlgebra};
use crate::error::{Error, Result};
use crate::magma::MagmaPoly;
use crate::mutation::MutationSpec;
use crate::scalar::matrix::express_in_span;
use crate::scalar::rational::{half, int, pow2};
use crate::scalar::{QMatrix, Rational};

/// Weak: the backcrossing identity holds. Strict: additionally no identity
/// of degree below 4 holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackcrossStatus {
    pub strict: bool,
    pub weak: bool,
    pub low_degree: Vec<LowDegreeIdentity>,
}

pub fn is_backcrossing(alg: &WeightedAlgebra) -> BackcrossStatus {
    let weak = alg.holds_identity(&MagmaPoly::backcrossing()).holds;
    let low_degree = alg.low_degree_identity_space();
    BackcrossStatus {
        strict: weak && low_degree.is_empty(),
        weak,
        low_degree,
    }
}

/// `p_1, ..., p_upto` for a weight-1 generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence {
    generator: Element,
    p: Vec<Element>,
}

impl PSequence {
    pub fn generator(&self) -> &Element {
        &self.generator
    }

    /// `p_k`, 1-based.
    pub fn get(&self, k: usize) -> &Element {
        &self.p[k - 1]
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.p
    }
}

pub fn p_sequence(alg: &WeightedAlgebra, x: &Element, upto: usize) -> Result<PSequence> {
    alg.require_weight_one(x)?;
    let mut p = Vec::with_capacity(upto);
    let mut prev = Element::zero(alg.dim());
    let mut power = x.clone();
    for _ in 0..upto {
        p.push(power.sub(&prev));
        let next = alg.mul(x, &power);
        prev = std::mem::replace(&mut power, next);
    }
    Ok(PSequence {
        generator: x.clone(),
        p,
    })
}

/// One relation of the product table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaRelation {
    /// `p_1² = p_1 + p_2`
    Square,
    /// `p_1 p_i = p_(i+1)`
    Shift(usize),
    /// `p_i p_j = 0`
    Annihilate(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub upto: usize,
    pub violations: Vec<LemmaRelation>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every relation of the table among `p_1, ..., p_upto`.
pub fn lemma_table_check(alg: &WeightedAlgebra, x: &Element, upto: usize) -> Result<LemmaReport> {
    let seq = p_sequence(alg, x, upto.max(1) + 1)?;
    let p = |k: usize| seq.get(k);
    let mut violations = Vec::new();
    if alg.square(p(1)) != p(1).add(p(2)) {
        violations.push(LemmaRelation::Square);
    }
    for i in 2..=upto {
        if alg.mul(p(1), p(i)) != *p(i + 1) {
            violations.push(LemmaRelation::Shift(i));
        }
    }
    for i in 2..=upto {
        for j in i..=upto {
            if !alg.mul(p(i), p(j)).is_zero() {
                violations.push(LemmaRelation::Annihilate(i, j));
            }
        }
    }
    Ok(LemmaReport { upto, violations })
}

/// `G(a, b) = 2ab − ω(a)b − ω(b)a`.
pub fn linearized_g(alg: &WeightedAlgebra, a: &Element, b: &Element) -> Result<Element> {
    let ab = alg.try_mul(a, b)?;
    Ok(ab
        .scale(&int(2))
        .sub(&b.scale(&alg.weight_of(a)))
        .sub(&a.scale(&alg.weight_of(b))))
}

/// `G(x,y)G(z,t) + G(x,z)G(y,t) + G(x,t)G(y,z)`, the full linearization of
/// `(x² − ω(x)x)² = 0`.
pub fn linearized_r(alg: &WeightedAlgebra, x: &Element, y: &Element, z: &Element, t: &Element) -> Result<Element> {
    let g = |a: &Element, b: &Element| linearized_g(alg, a, b);
    let r1 = alg.mul(&g(x, y)?, &g(z, t)?);
    let r2 = alg.mul(&g(x, z)?, &g(y, t)?);
    let r3 = alg.mul(&g(x, t)?, &g(y, z)?);
    Ok(r1.add(&r2).add(&r3))
}

/// Mutation structure `(K<x>, M, ω)` on the basis `p_1, ..., p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationExtraction {
    generator: Element,
    p_basis: Vec<Element>,
    matrix: QMatrix,
    eta: Vec<Rational>,
}

impl MutationExtraction {
    pub fn generator(&self) -> &Element {
        &self.generator
    }

    /// `p_1, ..., p_n` in ambient coordinates.
    pub fn p_basis(&self) -> &[Element] {
        &self.p_basis
    }

    pub fn dim(&self) -> usize {
        self.p_basis.len()
    }

    /// Column `j` holds the p-coordinates of `M(p_(j+1))`.
    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// The weight restricted to `K<x>`, in p-coordinates: `(1, 0, ..., 0)`.
    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn to_spec(&self) -> MutationSpec {
        MutationSpec::new(self.matrix.clone(), self.eta.clone()).expect("square by construction")
    }

    /// p-coordinates of an ambient element of `K<x>`.
    pub fn coordinates(&self, v: &Element) -> Option<Vec<Rational>> {
        let vectors: Vec<Vec<Rational>> = self.p_basis.iter().map(|b| b.coords().to_vec()).collect();
        express_in_span(&vectors, v.coords()).ok().flatten()
    }

    pub fn to_ambient(&self, coords: &[Rational]) -> Element {
        let dim = self.generator.dim();
        Element::combination(dim, coords.iter().cloned().zip(self.p_basis.iter().cloned()))
    }

    /// Applies `M` to an ambient element of `K<x>`.
    pub fn apply(&self, v: &Element) -> Option<Element> {
        let c = self.coordinates(v)?;
        Some(self.to_ambient(&self.matrix.mul_vec(&c).ok()?))
    }

    /// `M` in the ambient basis, available when `K<x>` is the whole algebra.
    pub fn ambient_matrix(&self) -> Option<QMatrix> {
        let n = self.generator.dim();
        if self.dim() != n {
            return None;
        }
        let basis_change =
            QMatrix::from_columns(&self.p_basis.iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>()).ok()?;
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let ej = Element::basis(n, j);
                let c = basis_change.solve(ej.coords()).ok()?;
                let image = basis_change.mul_vec(&self.matrix.mul_vec(&c).ok()?).ok()?;
                Some(image)
            })
            .collect::<Option<_>>()?;
        QMatrix::from_columns(&cols).ok()
    }
}

/// The mutation structure of `K<x>` for a weight-1 element `x`.
pub fn extract_mutation(alg: &WeightedAlgebra, x: &Element) -> Result<MutationExtraction> {
    alg.require_weight_one(x)?;
    let sub = alg.generated_subalgebra(x);
    let n = sub.dim();
    let report = lemma_table_check(alg, x, n)?;
    if !report.passes() {
        return Err(Error::LemmaViolation(format!("{:?}", report.violations)));
    }
    let seq = p_sequence(alg, x, n + 1)?;
    let p_basis: Vec<Element> = seq.as_slice()[..n].to_vec();
    let vectors: Vec<Vec<Rational>> = p_basis.iter().map(|b| b.coords().to_vec()).collect();
    let coords = |v: &Element| -> Result<Vec<Rational>> {
        express_in_span(&vectors, v.coords())?
            .ok_or_else(|| Error::LemmaViolation("K<x> is not closed under the product".into()))
    };
    let mut columns = Vec::with_capacity(n);
    columns.push(coords(&seq.get(1).add(seq.get(2)))?);
    for k in 2..=n {
        columns.push(coords(&seq.get(k + 1).scale(&int(2)))?);
    }
    let matrix = QMatrix::from_columns(&columns)?;
    let eta: Vec<Rational> = p_basis.iter().map(|p| alg.weight_of(p)).collect();
    let extraction = MutationExtraction {
        generator: x.clone(),
        p_basis,
        matrix,
        eta,
    };
    verify_mutation_structure(alg, &extraction)?;
    Ok(extraction)
}

/// `η∘M = η` and `p_i p_j = ½[ω(p_j)M(p_i) + ω(p_i)M(p_j)]` on all pairs.
fn verify_mutation_structure(alg: &WeightedAlgebra, ext: &MutationExtraction) -> Result<()> {
    if ext.matrix.left_mul_vec(&ext.eta)? != ext.eta {
        return Err(Error::LemmaViolation("weight is not invariant under M".into()));
    }
    let n = ext.dim();
    let images: Vec<Element> = (0..n).map(|j| ext.to_ambient(&ext.matrix.column(j))).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = alg.mul(&ext.p_basis[i], &ext.p_basis[j]);
            let rhs = images[i]
                .scale(&ext.eta[j])
                .add(&images[j].scale(&ext.eta[i]))
                .scale(&half());
            if lhs != rhs {
                return Err(Error::LemmaViolation(format!(
                    "p_{} p_{} does not follow the mutation product",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// `x^(k+1)` recomputed from plenary powers:
/// `2^(1−k) x^[k+1] + Σ_{i=1}^{k−1} 2^(−i) x^[i+1]`.
pub fn principal_from_plenary(alg: &WeightedAlgebra, x: &Element, k: usize) -> Result<Element> {
    alg.require_weight_one(x)?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut acc = alg.plenary_power(x, k + 1).scale(&pow2(1 - k as i64));
    let mut plenary = x.clone();
    for i in 1..k {
        plenary = alg.square(&plenary);
        acc = acc.add(&plenary.scale(&pow2(-(i as i64))));
    }
    Ok(acc)
}

/// `x^[k+1]` recomputed from principal powers:
/// `2^(k−1) x^(k+1) − Σ_{i=2}^{k} 2^(i−2) x^i`.
pub fn plenary_from_principal(alg: &WeightedAlgebra, x: &Element, k: usize) -> Result<Element> {
    alg.require_weight_one(x)?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut powers = vec![x.clone()];
    for _ in 1..=k {
        let next = alg.mul(x, powers.last().expect("nonempty"));
        powers.push(next);
    }
    // powers[i] = x^(i+1)
    let mut acc = powers[k].scale(&pow2(k as i64 - 1));
    for i in 2..=k {
        acc = acc.sub(&powers[i - 1].scale(&pow2(i as i64 - 2)));
    }
    Ok(acc)
}

/// `f(x)·g(x)` for `f(x), g(x)` in the kernel of the weight.
pub fn ker_omega_product_check(alg: &WeightedAlgebra, x: &Element, f: &MagmaPoly, g: &MagmaPoly) -> Result<Element> {
    alg.require_weight_one(x)?;
    let fx = alg.eval(f, x);
    if !alg.weight_of(&fx).is_zero() {
        return Err(Error::NotInWeightKernel(format!("f(x) = {fx}")));
    }
    let gx = alg.eval(g, x);
    if !alg.weight_of(&gx).is_zero() {
        return Err(Error::NotInWeightKernel(format!("g(x) = {gx}")));
    }
    Ok(alg.mul(&fx, &gx))
}

/// Whether `x` has weight exactly one.
pub fn has_unit_weight(alg: &WeightedAlgebra, x: &Element) -> bool {
    alg.weight_of(x).is_one()
}

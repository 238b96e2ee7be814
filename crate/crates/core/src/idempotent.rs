//! Idempotents of weight 1 in generated subalgebras `K<x>`.
//!
//! Writing `e = p_1 + Σ_{i=2}^{n} λ_i p_i` in the basis of the `p_k`, the
//! product table turns `e² = e` into a linear system in the `λ_i`. When
//! `K<x>` satisfies the train identity `x^(n+1) = Σ α_i x^i`, i.e.
//! `p_(n+1) = Σ c_k p_k` with `c_k = Σ_{i≥k} α_i − 1`, the system is
//!
//! ```text
//! −λ_2 + 2c_2 λ_n = −1
//! 2λ_(k−1) − λ_k + 2c_k λ_n = 0      (3 ≤ k ≤ n)
//! ```
//!
//! with determinant `(−2)^n T(½)`.

use num_traits::{One, Zero};

use crate::algebra::{Element, WeightedAlgebra};
use crate::backcross::{extract_mutation, p_sequence};
use crate::error::{Error, Result};
use crate::magma::MagmaPoly;
use crate::scalar::rational::{half, int, pow2};
use crate::scalar::{QMatrix, Rational, UniPoly};
use crate::theta::{principal_identity, theta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SquareShortcut,
    TrainSystem,
    TheoremPath,
    FixedPoint,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SquareShortcut => "square-shortcut",
            Method::TrainSystem => "train-system",
            Method::TheoremPath => "theorem-path",
            Method::FixedPoint => "fixed-point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSolution {
    /// `λ_2, ..., λ_n`.
    pub lambdas: Vec<Rational>,
    /// Determinant of the linear system (1 for an empty system).
    pub determinant: Rational,
    pub idempotent: Element,
    pub method: Method,
    /// Train polynomial the system was built from.
    pub train_polynomial: Option<UniPoly>,
}

/// `x²` when `x³ = x²`: the backcrossing identity then gives
/// `x²x² = 2x³ − x² = x²`.
pub fn idempotent_from_square(alg: &WeightedAlgebra, x: &Element) -> Result<Option<Element>> {
    alg.require_weight_one(x)?;
    let x2 = alg.square(x);
    if alg.mul(x, &x2) != x2 {
        return Ok(None);
    }
    if alg.square(&x2) != x2 {
        return Err(Error::Precondition("x³ = x² but x² is not idempotent: not a backcrossing algebra".into()));
    }
    Ok(Some(x2))
}

/// Solves `e² = e` in `K<x>` from the train polynomial `T` of degree
/// `n = dim K<x>`. `T` is normalized to be monic.
pub fn train_system_idempotent(alg: &WeightedAlgebra, x: &Element, t: &UniPoly) -> Result<IdempotentSolution> {
    alg.require_weight_one(x)?;
    let Some(n) = t.degree().filter(|&n| n >= 1) else {
        return Err(Error::Precondition("train polynomial must have positive degree".into()));
    };
    let t = t.monic();
    let t_half = t.eval(&half());
    if t_half.is_zero() {
        return Err(Error::CriterionFails("T(1/2)=0".into()));
    }
    let f = principal_identity(&t);
    if !alg.eval(&f, x).is_zero() {
        return Err(Error::Precondition(format!("train identity {f} does not hold at x")));
    }
    let ext = extract_mutation(alg, x)?;
    if ext.dim() != n {
        return Err(Error::Precondition(format!(
            "dim K<x> = {} differs from deg T = {n}",
            ext.dim()
        )));
    }
    // T = X^n − Σ α_i X^(i−1), c_k = Σ_{i≥k} α_i − 1
    let alpha: Vec<Rational> = (1..=n).map(|i| -t.coeff(i - 1)).collect();
    let c = |k: usize| -> Rational { alpha[k - 1..].iter().sum::<Rational>() - int(1) };

    let seq = p_sequence(alg, x, n + 1)?;
    let expected = Element::combination(x.dim(), (1..=n).map(|k| (c(k), seq.get(k).clone())));
    if *seq.get(n + 1) != expected {
        return Err(Error::Internal("p_(n+1) disagrees with the train identity".into()));
    }

    let (lambdas, determinant) = if n == 1 {
        (Vec::new(), Rational::one())
    } else {
        let m = n - 1;
        let mut rows = vec![vec![Rational::zero(); m]; m];
        let mut rhs = vec![Rational::zero(); m];
        for k in 2..=n {
            let r = k - 2;
            rows[r][k - 2] -= int(1);
            if k >= 3 {
                rows[r][k - 3] += int(2);
            }
            rows[r][n - 2] += int(2) * c(k);
        }
        rhs[0] = int(-1);
        let system = QMatrix::from_rows(rows)?;
        let det = system.determinant()?;
        if det.is_zero() {
            return Err(Error::Internal("singular system although T(1/2) is nonzero".into()));
        }
        (system.solve(&rhs)?, det)
    };
    let idempotent = seq.get(1).add(&Element::combination(
        x.dim(),
        lambdas.iter().cloned().zip((2..=n).map(|k| seq.get(k).clone())),
    ));
    if alg.square(&idempotent) != idempotent || !alg.weight_of(&idempotent).is_one() {
        return Err(Error::Internal(format!("{idempotent} is not an idempotent of weight 1")));
    }
    Ok(IdempotentSolution {
        lambdas,
        determinant,
        idempotent,
        method: Method::TrainSystem,
        train_polynomial: Some(t),
    })
}

/// `M^k(y)` in principal powers of `y`, as coefficients of `y^j`:
/// `y` for `k = 0`, else `2^(k−1) y^(k+1) − Σ_{i=2}^{k} 2^(i−2) y^i`.
fn mutation_power_in_principal(k: usize) -> UniPoly {
    if k == 0 {
        return UniPoly::x();
    }
    let mut p = UniPoly::monomial(pow2(k as i64 - 1), k + 1);
    for i in 2..=k {
        p = p - UniPoly::monomial(pow2(i as i64 - 2), i);
    }
    p
}

/// The train polynomial carried by a non-homogeneous identity `f`: `D(M)(y)`
/// rewritten in principal powers of `y` is a multiple of `y·T(y)` with `T`
/// monic.
pub fn derived_train_polynomial(f: &MagmaPoly) -> Result<UniPoly> {
    let report = theta(f)?;
    if report.degenerate {
        return Err(Error::CriterionFails("reduction polynomial is zero".into()));
    }
    let g = report
        .d
        .coeffs()
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |acc, (k, c)| acc + mutation_power_in_principal(k).scale(c));
    let g = g.monic();
    let (t, r) = g.div_rem(&UniPoly::x())?;
    debug_assert!(r.is_zero());
    Ok(t)
}

/// Idempotent of `K<x>` from an identity `f` satisfied by the algebra,
/// provided `θ'(½) ≠ 0` and `dim K<x> = deg θ`.
pub fn theorem_idempotent(alg: &WeightedAlgebra, x: &Element, f: &MagmaPoly) -> Result<IdempotentSolution> {
    alg.require_weight_one(x)?;
    if f.degree() < 2 || f.is_homogeneous() {
        return Err(Error::Precondition(format!(
            "{f} must be non-homogeneous of degree at least 2"
        )));
    }
    if !alg.holds_identity(f).holds {
        return Err(Error::Precondition(format!("the algebra does not satisfy {f}")));
    }
    let report = theta(f)?;
    match report.criterion() {
        None => return Err(Error::CriterionFails("reduction polynomial is zero".into())),
        Some(c) if c.is_zero() => return Err(Error::CriterionFails("theta'(1/2)=0".into())),
        Some(_) => {}
    }
    if f.degree() == 2 {
        let e = idempotent_from_square(alg, x)?
            .ok_or_else(|| Error::Internal("x² is not idempotent under a quadratic identity".into()))?;
        return Ok(IdempotentSolution {
            lambdas: Vec::new(),
            determinant: Rational::one(),
            idempotent: e,
            method: Method::SquareShortcut,
            train_polynomial: None,
        });
    }
    let t = derived_train_polynomial(f)?;
    let mut solution = train_system_idempotent(alg, x, &t)?;
    solution.method = Method::TheoremPath;
    Ok(solution)
}

/// All weight-1 idempotents of `K<x>`: the affine set `base + span(directions)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    pub base: Option<Element>,
    pub directions: Vec<Element>,
}

impl IdempotentFamily {
    pub fn is_empty(&self) -> bool {
        self.base.is_none()
    }

    pub fn is_unique(&self) -> bool {
        self.base.is_some() && self.directions.is_empty()
    }

    /// The base point followed by `base + d` for each direction.
    pub fn representatives(&self) -> Vec<Element> {
        let Some(base) = &self.base else {
            return Vec::new();
        };
        std::iter::once(base.clone())
            .chain(self.directions.iter().map(|d| base.add(d)))
            .collect()
    }
}

/// In `K<x>` the square of `e` is `ω(e) M(e)`, so the weight-1 idempotents
/// are the fixed points of `M` of weight 1.
pub fn fixed_point_idempotent(alg: &WeightedAlgebra, x: &Element) -> Result<IdempotentFamily> {
    let ext = extract_mutation(alg, x)?;
    let n = ext.dim();
    let kernel = ext.matrix().sub(&QMatrix::identity(n))?.kernel_basis();
    let eta = ext.eta();
    let weight = |v: &[Rational]| -> Rational { v.iter().zip(eta).map(|(a, b)| a * b).sum() };
    let Some(pos) = kernel.iter().position(|v| !weight(v).is_zero()) else {
        return Ok(IdempotentFamily {
            base: None,
            directions: Vec::new(),
        });
    };
    let w = weight(&kernel[pos]);
    let base: Vec<Rational> = kernel[pos].iter().map(|a| a / &w).collect();
    let directions: Vec<Element> = kernel
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, v)| {
            let wv = weight(v);
            let d: Vec<Rational> = v.iter().zip(&base).map(|(a, b)| a - &wv * b).collect();
            ext.to_ambient(&d)
        })
        .collect();
    let family = IdempotentFamily {
        base: Some(ext.to_ambient(&base)),
        directions,
    };
    for e in family.representatives() {
        if alg.square(&e) != e || !alg.weight_of(&e).is_one() {
            return Err(Error::Internal(format!("{e} is not an idempotent of weight 1")));
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::build_mutation_for_identity;
    use crate::samples;
    use crate::scalar::rational::frac;

    #[test]
    fn square_shortcut() {
        let g2 = samples::g2();
        let a = g2.basis(0);
        assert_eq!(idempotent_from_square(&g2, &a).unwrap(), Some(a.clone()));
        let a3 = samples::a3();
        assert_eq!(idempotent_from_square(&a3, &a3.basis(0)).unwrap(), None);
        let atr = samples::atr();
        let u = Element::new(vec![int(1), half()]);
        assert_eq!(idempotent_from_square(&atr, &u).unwrap(), Some(u));
    }

    #[test]
    fn train_system_on_atr() {
        let atr = samples::atr();
        let t = UniPoly::from_coeffs(vec![frac(-1, 2), frac(-1, 2), int(1)]);
        let s = train_system_idempotent(&atr, &atr.basis(0), &t).unwrap();
        assert_eq!(s.lambdas, vec![half()]);
        assert_eq!(s.determinant, int(-2));
        assert_eq!(s.determinant, int(4) * t.eval(&half()));
        assert_eq!(s.idempotent, Element::new(vec![int(1), half()]));
    }

    #[test]
    fn train_system_on_a3() {
        let a3 = samples::a3();
        let t = UniPoly::from_ints(&[0, 0, -1, 1]);
        let s = train_system_idempotent(&a3, &a3.basis(0), &t).unwrap();
        assert_eq!(s.lambdas, vec![int(1), int(2)]);
        assert_eq!(s.determinant, int(1));
        assert_eq!(s.idempotent, Element::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn theorem_path() {
        let a3 = samples::a3();
        let f: MagmaPoly = "X^[4] - X^[3]".parse().unwrap();
        assert_eq!(derived_train_polynomial(&f).unwrap(), UniPoly::from_ints(&[0, 0, -1, 1]));
        let s = theorem_idempotent(&a3, &a3.basis(0), &f).unwrap();
        assert_eq!(s.method, Method::TheoremPath);
        assert_eq!(s.idempotent, Element::from_ints(&[1, 1, 1]));

        let atr = samples::atr();
        let f: MagmaPoly = "X^3 - 1/2*X^2 - 1/2*X".parse().unwrap();
        let s = theorem_idempotent(&atr, &atr.basis(0), &f).unwrap();
        assert_eq!(s.idempotent, Element::new(vec![int(1), half()]));
        assert!(matches!(
            theorem_idempotent(&atr, &atr.basis(0), &MagmaPoly::backcrossing()),
            Err(Error::CriterionFails(_))
        ));
    }

    #[test]
    fn derived_polynomial_matches_criterion() {
        for text in ["X^[4] - X^[3]", "X^3 - 1/2*X^2 - 1/2*X", "X^[3] - 1/2*X^[2] - 1/2*X"] {
            let f: MagmaPoly = text.parse().unwrap();
            let r = theta(&f).unwrap();
            let t = derived_train_polynomial(&f).unwrap();
            let d = r.d.degree().unwrap();
            let scale = int(1) / (r.d.leading().unwrap() * pow2(d as i64 - 1));
            assert_eq!(t.eval(&half()), -frac(1, 4) * scale * &r.criterion_value, "{text}");
        }
    }

    #[test]
    fn fixed_points() {
        let atr = samples::atr();
        let fam = fixed_point_idempotent(&atr, &atr.basis(0)).unwrap();
        assert!(fam.is_unique());
        assert_eq!(fam.base, Some(Element::new(vec![int(1), half()])));

        let a3 = samples::a3();
        let fam = fixed_point_idempotent(&a3, &a3.basis(0)).unwrap();
        assert!(fam.is_unique());
        assert_eq!(fam.base, Some(Element::from_ints(&[1, 1, 1])));

        let g2 = samples::g2();
        let fam = fixed_point_idempotent(&g2, &g2.basis(0)).unwrap();
        assert_eq!(fam.representatives(), vec![g2.basis(0)]);
    }

    #[test]
    fn criterion_failure_without_idempotent() {
        // T = (X − 1)(X − ½)
        let f: MagmaPoly = "X^3 - 3/2*X^2 + 1/2*X".parse().unwrap();
        let spec = build_mutation_for_identity(&f).unwrap();
        let alg = spec.to_algebra().unwrap();
        let x = Element::basis(alg.dim(), 0).scale(&(int(1) / &spec.eta()[0]));
        assert!(matches!(
            theorem_idempotent(&alg, &x, &f),
            Err(Error::CriterionFails(_))
        ));
        let t = UniPoly::from_coeffs(vec![half(), frac(-3, 2), int(1)]);
        assert!(matches!(
            train_system_idempotent(&alg, &x, &t),
            Err(Error::CriterionFails(m)) if m == "T(1/2)=0"
        ));
        assert!(fixed_point_idempotent(&alg, &x).unwrap().is_empty());
    }
}

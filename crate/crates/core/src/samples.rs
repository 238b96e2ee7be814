//! Small named algebras used throughout the docs and tests.

use crate::algebra::WeightedAlgebra;
use crate::scalar::rational::{frac, int};
use crate::scalar::Rational;

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// Basis `e, n1, n2` with `e² = e + n1`, `e·n1 = ½ n2`, all other products
/// zero, weight `(1, 0, 0)`. The mutation algebra of
/// `M(e) = e + n1, M(n1) = n2, M(n2) = 0`.
pub fn a3() -> WeightedAlgebra {
    a3_with_weight(vec![int(1), int(0), int(0)])
}

/// The `a3` products with an arbitrary (possibly invalid) weight vector.
pub fn a3_with_weight(weight: Vec<Rational>) -> WeightedAlgebra {
    WeightedAlgebra::new(names(&["e", "n1", "n2"]), weight)
        .and_then(|a| a.with_product(0, 0, vec![int(1), int(1), int(0)]))
        .and_then(|a| a.with_product(0, 1, vec![int(0), int(0), frac(1, 2)]))
        .expect("valid literal")
}

/// `a3` with the extra product `n1² = n2`; still weighted, no longer backcrossing.
pub fn a3_corrupted() -> WeightedAlgebra {
    a3().with_product(1, 1, vec![int(0), int(0), int(1)])
        .expect("valid literal")
}

/// Gametic algebra on `a, b`: `e_i e_j = ½ e_i + ½ e_j`, weight `(1, 1)`.
pub fn g2() -> WeightedAlgebra {
    WeightedAlgebra::new(names(&["a", "b"]), vec![int(1), int(1)])
        .and_then(|a| a.with_product(0, 0, vec![int(1), int(0)]))
        .and_then(|a| a.with_product(0, 1, vec![frac(1, 2), frac(1, 2)]))
        .and_then(|a| a.with_product(1, 1, vec![int(0), int(1)]))
        .expect("valid literal")
}

/// Train algebra on `e, n`: `e² = e + n`, `e·n = −½ n`, `n² = 0`,
/// weight `(1, 0)`. Satisfies `x³ = ½ x² + ½ x` on weight-1 elements.
pub fn atr() -> WeightedAlgebra {
    WeightedAlgebra::new(names(&["e", "n"]), vec![int(1), int(0)])
        .and_then(|a| a.with_product(0, 0, vec![int(1), int(1)]))
        .and_then(|a| a.with_product(0, 1, vec![int(0), frac(-1, 2)]))
        .expect("valid literal")
}

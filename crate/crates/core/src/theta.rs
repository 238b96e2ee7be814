//! Reduction of one-variable identities to polynomials in the mutation
//! operator, the criterion polynomial `θ` and identity dependence.
//!
//! In a mutation algebra every nonassociative monomial `t` of degree `d`
//! evaluated at `x` with `ω(x) = 1` equals `v_t(M)(x)` for a polynomial
//! `v_t` of degree below `d`:
//!
//! ```text
//! v_X = 1,   v_(t1 t2) = ½ X (v_t1 + v_t2)
//! ```
//!
//! For `f = Σ α_t t` put `D = Σ α_t v_t`, `θ(X) = D(2X)`. An idempotent
//! criterion reads off `θ'(½) = 2D'(1)`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{Element, WeightedAlgebra};
use crate::backcross::{extract_mutation, MutationExtraction};
use crate::error::{Error, Result};
use crate::magma::{MagmaPoly, MagmaTerm};
use crate::scalar::rational::{half, int};
use crate::scalar::{QMatrix, Rational, UniPoly};

fn reduce_memo(t: &MagmaTerm, memo: &mut HashMap<usize, UniPoly>) -> UniPoly {
    if let Some(v) = memo.get(&t.node_id()) {
        return v.clone();
    }
    let v = match t.factors() {
        None => UniPoly::one(),
        Some((a, b)) => {
            let sum = reduce_memo(a, memo) + reduce_memo(b, memo);
            (&UniPoly::x() * &sum).scale(&half())
        }
    };
    memo.insert(t.node_id(), v.clone());
    v
}

/// The polynomial `v_t` with `t(x) = v_t(M)(x)` whenever `ω(x) = 1`.
pub fn reduce_term(t: &MagmaTerm) -> UniPoly {
    reduce_memo(t, &mut HashMap::new())
}

/// `D = Σ α_t v_t`.
pub fn reduce_on_mutation(f: &MagmaPoly) -> UniPoly {
    let mut memo = HashMap::new();
    f.terms().fold(UniPoly::zero(), |acc, (t, c)| acc + reduce_memo(t, &mut memo).scale(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub d: UniPoly,
    /// `θ(X) = D(2X)`.
    pub theta: UniPoly,
    /// `θ'(½)`; zero when degenerate.
    pub criterion_value: Rational,
    /// `D = 0`: the identity holds in every mutation algebra and says
    /// nothing about idempotents.
    pub degenerate: bool,
}

impl ThetaReport {
    /// `θ'(½)` unless the report is degenerate.
    pub fn criterion(&self) -> Option<&Rational> {
        (!self.degenerate).then_some(&self.criterion_value)
    }

    /// Whether the criterion guarantees an idempotent.
    pub fn guarantees_idempotent(&self) -> bool {
        self.criterion().is_some_and(|c| !c.is_zero())
    }
}

pub fn theta(f: &MagmaPoly) -> Result<ThetaReport> {
    if f.is_zero() {
        return Err(Error::Precondition("zero identity".into()));
    }
    let d = reduce_on_mutation(f);
    let theta = d.compose_scale(&int(2));
    let criterion_value = theta.derivative().eval(&half());
    Ok(ThetaReport {
        degenerate: d.is_zero(),
        d,
        theta,
        criterion_value,
    })
}

/// For a monic train polynomial `T` with `T(1) = 0`, compares `θ'(½)` of
/// `f = X·T` (principal powers, `X·X^k = X^(k+1)`) with `−4 T(½)`.
/// Returns `(θ'(½), −4 T(½))`.
pub fn theta_prime_identity_check(t: &UniPoly) -> Result<(Rational, Rational)> {
    if t.degree().unwrap_or(0) == 0 || !t.is_monic() {
        return Err(Error::Precondition(format!("{t} is not a monic polynomial of positive degree")));
    }
    let at_one = t.eval(&int(1));
    if !at_one.is_zero() {
        return Err(Error::Precondition(format!("{t} does not vanish at 1 (value {at_one})")));
    }
    let f = principal_identity(t);
    let report = theta(&f)?;
    Ok((report.criterion_value, -int(4) * t.eval(&half())))
}

/// `Σ t_k X^(k+1)` for `T = Σ t_k X^k`.
pub fn principal_identity(t: &UniPoly) -> MagmaPoly {
    MagmaPoly::from_terms(
        t.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (MagmaTerm::principal_power(k + 1), c.clone())),
    )
}

/// Which alternative produced the dependent combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependenceCase {
    /// Some `μ_k ≡ 0 mod μ_M`.
    Vanishing,
    /// `μ_k ≡ μ_l mod μ_M` for `k < l`.
    Coincident,
    /// A nontrivial linear relation among the residues.
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceReport {
    pub case: DependenceCase,
    /// `(index into the family, coefficient)`, nonzero coefficients only.
    pub combination: Vec<(usize, Rational)>,
    /// `μ_k mod μ_M` for each family member.
    pub residues: Vec<UniPoly>,
    pub minimal_polynomial: UniPoly,
    /// `Σ λ_k f_k`, an identity of `K<x>`.
    pub identity: MagmaPoly,
}

/// Finds an identity of `K<x>` among linear combinations of `family`:
/// reduces each member to `μ_k`, takes residues modulo the minimal
/// polynomial `μ_M` of the mutation operator of `K<x>`, and looks for a
/// vanishing residue, two equal residues or a linear relation, in that
/// order.
pub fn identity_dependence(alg: &WeightedAlgebra, x: &Element, family: &[MagmaPoly]) -> Result<DependenceReport> {
    let ext = extract_mutation(alg, x)?;
    let mu = ext.matrix().minimal_polynomial()?;
    let deg = mu.degree().expect("minimal polynomial is nonzero");
    if family.len() < deg {
        return Err(Error::InsufficientFamily(format!(
            "{} identities for a minimal polynomial of degree {deg}",
            family.len()
        )));
    }
    let residues = family
        .iter()
        .map(|f| reduce_on_mutation(f).rem(&mu))
        .collect::<Result<Vec<_>>>()?;
    let (case, combination) = find_dependence(&residues, deg)?;
    let identity = combination
        .iter()
        .fold(MagmaPoly::zero(), |acc, (k, c)| acc.add(&family[*k].scale(c)));
    verify_on_subalgebra(&ext, &identity)?;
    Ok(DependenceReport {
        case,
        combination,
        residues,
        minimal_polynomial: mu,
        identity,
    })
}

fn find_dependence(residues: &[UniPoly], deg: usize) -> Result<(DependenceCase, Vec<(usize, Rational)>)> {
    if let Some(k) = residues.iter().position(UniPoly::is_zero) {
        return Ok((DependenceCase::Vanishing, vec![(k, int(1))]));
    }
    for l in 0..residues.len() {
        for k in 0..l {
            if residues[k] == residues[l] {
                return Ok((DependenceCase::Coincident, vec![(l, int(1)), (k, int(-1))]));
            }
        }
    }
    let columns: Vec<Vec<Rational>> = residues
        .iter()
        .map(|r| (0..deg).map(|i| r.coeff(i)).collect())
        .collect();
    let kernel = QMatrix::from_columns(&columns)?.kernel_basis();
    let Some(v) = kernel.into_iter().next() else {
        return Err(Error::InsufficientFamily(
            "residues are pairwise distinct, nonzero and linearly independent".into(),
        ));
    };
    let combination = v
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok((DependenceCase::Linear, combination))
}

fn verify_on_subalgebra(ext: &MutationExtraction, f: &MagmaPoly) -> Result<()> {
    let sub = ext.to_spec().to_algebra()?;
    if sub.holds_identity(f).holds {
        Ok(())
    } else {
        Err(Error::Internal(format!("{f} is not an identity of K<x>")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::scalar::rational::frac;

    fn poly(text: &str) -> MagmaPoly {
        text.parse().unwrap()
    }

    #[test]
    fn term_values() {
        assert_eq!(reduce_term(&MagmaTerm::x()), UniPoly::one());
        assert_eq!(reduce_term(&MagmaTerm::principal_power(2)), UniPoly::x());
        assert_eq!(
            reduce_term(&MagmaTerm::principal_power(3)),
            UniPoly::from_coeffs(vec![int(0), half(), half()])
        );
        assert_eq!(reduce_term(&MagmaTerm::plenary_power(5)), UniPoly::monomial(int(1), 4));
        for k in 1..8 {
            let v = reduce_term(&MagmaTerm::principal_power(k));
            assert_eq!(v.eval(&int(1)), int(1));
            assert_eq!(v.degree(), Some(k - 1));
        }
    }

    #[test]
    fn backcrossing_reduces_to_zero() {
        let r = theta(&MagmaPoly::backcrossing()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.criterion(), None);
    }

    #[test]
    fn plenary_example() {
        let r = theta(&poly("X^[4] - X^[3]")).unwrap();
        assert_eq!(r.d, UniPoly::from_ints(&[0, 0, -1, 1]));
        assert_eq!(r.theta, UniPoly::from_ints(&[0, 0, -4, 8]));
        assert_eq!(r.criterion_value, int(2));
        assert!(r.guarantees_idempotent());

        let r = theta(&poly("X^[3] - 1/2*X^[2] - 1/2*X")).unwrap();
        assert_eq!(r.theta, UniPoly::from_coeffs(vec![frac(-1, 2), int(-1), int(4)]));
        assert_eq!(r.criterion_value, int(3));
    }

    #[test]
    fn train_identity_values() {
        let t = UniPoly::from_coeffs(vec![frac(-1, 2), frac(-1, 2), int(1)]);
        assert_eq!(theta_prime_identity_check(&t).unwrap(), (int(2), int(2)));
        let t = UniPoly::from_coeffs(vec![half(), frac(-3, 2), int(1)]);
        assert_eq!(theta_prime_identity_check(&t).unwrap(), (int(0), int(0)));
        let shifted = UniPoly::from_coeffs(vec![half(), int(1)]);
        assert!(matches!(theta_prime_identity_check(&shifted), Err(Error::Precondition(_))));
    }

    #[test]
    fn dependence_in_atr() {
        let atr = samples::atr();
        let family = [poly("X"), poly("X^2"), poly("X^3")];
        let r = identity_dependence(&atr, &atr.basis(0), &family).unwrap();
        assert_eq!(r.case, DependenceCase::Linear);
        assert_eq!(r.minimal_polynomial, UniPoly::from_ints(&[-1, 0, 1]));
        let scale = r.identity.terms().next_back().map(|(_, c)| c.clone()).unwrap();
        assert_eq!(r.identity.scale(&(int(1) / scale)), poly("X^3 - 1/2*X^2 - 1/2*X"));
        assert!(atr.holds_identity(&r.identity).holds);

        let short = [poly("X^2"), poly("X^3")];
        assert!(matches!(
            identity_dependence(&atr, &atr.basis(0), &short),
            Err(Error::InsufficientFamily(_))
        ));
    }

    #[test]
    fn dependence_in_a3() {
        let a3 = samples::a3();
        let e = a3.basis(0);
        let family: Vec<MagmaPoly> = (1..=4).map(MagmaPoly::plenary_power).collect();
        let r = identity_dependence(&a3, &e, &family).unwrap();
        assert_eq!(r.case, DependenceCase::Coincident);
        assert_eq!(r.identity.to_string(), "X^[4] - X^[3]");

        let three: Vec<MagmaPoly> = (1..=3).map(MagmaPoly::plenary_power).collect();
        assert!(matches!(
            identity_dependence(&a3, &e, &three),
            Err(Error::InsufficientFamily(_))
        ));
    }

    fn term_from_bits(bits: &mut u64, depth: usize) -> MagmaTerm {
        let leaf = depth == 0 || *bits & 1 == 0;
        *bits >>= 1;
        if leaf {
            return MagmaTerm::x();
        }
        let a = term_from_bits(bits, depth - 1);
        let b = term_from_bits(bits, depth - 1);
        MagmaTerm::product(&a, &b)
    }

    proptest::proptest! {
        #[test]
        fn reduced_terms_have_unit_sum(seed in proptest::prelude::any::<u64>()) {
            let mut bits = seed;
            let t = term_from_bits(&mut bits, 4);
            let v = reduce_term(&t);
            proptest::prop_assert_eq!(v.eval(&int(1)), int(1));
            proptest::prop_assert!(v.degree().unwrap() < t.degree());
        }

        #[test]
        fn reduction_is_linear(s1 in proptest::prelude::any::<u64>(), s2 in proptest::prelude::any::<u64>(), a in -5i64..5, b in -5i64..5) {
            let (mut x, mut y) = (s1, s2);
            let f = MagmaPoly::from_terms([(term_from_bits(&mut x, 3), int(1))]);
            let g = MagmaPoly::from_terms([(term_from_bits(&mut y, 3), int(1))]);
            let combined = f.scale(&int(a)).add(&g.scale(&int(b)));
            let expected = reduce_on_mutation(&f).scale(&int(a)) + reduce_on_mutation(&g).scale(&int(b));
            proptest::prop_assert_eq!(reduce_on_mutation(&combined), expected);
        }
    }
}

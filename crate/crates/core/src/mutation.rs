//! Mutation algebras.
//!
//! A linear map `M` and a form `η` with `η∘M = η` define the product
//! `xy = ½[η(y)M(x) + η(x)M(y)]`, a weighted algebra with weight `η`.
//!
//! Mutation files are JSON; `M[i][j]` is the coefficient of `e_i` in `M(e_j)`:
//!
//! ```json
//! {"dim": 2, "M": [["1", "0"], ["1", "-1"]], "eta": ["1", "0"]}
//! ```

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, WeightedAlgebra};
use crate::error::{Error, Result};
use crate::magma::MagmaPoly;
use crate::scalar::rational::{format_rational, half, parse_rational};
use crate::scalar::{QMatrix, Rational};
use crate::theta::{reduce_on_mutation, reduce_term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationSpec {
    matrix: QMatrix,
    eta: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MutationReport {
    pub eta_nonzero: bool,
    pub matrix_nonzero: bool,
    pub eta_invariant: bool,
}

impl MutationReport {
    pub fn is_valid(&self) -> bool {
        self.eta_nonzero && self.matrix_nonzero && self.eta_invariant
    }
}

impl MutationSpec {
    /// Checks shapes only; see [`MutationSpec::validate`] for `η∘M = η`.
    pub fn new(matrix: QMatrix, eta: Vec<Rational>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if eta.len() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: eta.len(),
            });
        }
        Ok(Self { matrix, eta })
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn validate(&self) -> MutationReport {
        MutationReport {
            eta_nonzero: self.eta.iter().any(|c| !c.is_zero()),
            matrix_nonzero: !self.matrix.is_zero(),
            eta_invariant: self.matrix.left_mul_vec(&self.eta).expect("square") == self.eta,
        }
    }

    pub fn apply(&self, v: &Element) -> Result<Element> {
        Ok(Element::new(self.matrix.mul_vec(v.coords())?))
    }

    pub fn to_algebra(&self) -> Result<WeightedAlgebra> {
        algebra_from_mutation(self)
    }
}

/// The weighted algebra `(A, M, η)`. Fails with `InvalidMutation` when `η`
/// is zero or not `M`-invariant.
pub fn algebra_from_mutation(spec: &MutationSpec) -> Result<WeightedAlgebra> {
    let report = spec.validate();
    if !report.eta_nonzero {
        return Err(Error::InvalidMutation("eta is zero".into()));
    }
    if !report.matrix_nonzero {
        return Err(Error::InvalidMutation("M is zero".into()));
    }
    if !report.eta_invariant {
        return Err(Error::InvalidMutation("eta∘M differs from eta".into()));
    }
    let n = spec.dim();
    let images: Vec<Element> = (0..n).map(|j| Element::new(spec.matrix.column(j))).collect();
    let mut alg = WeightedAlgebra::new(Vec::new(), spec.eta.clone())?;
    for i in 0..n {
        for j in i..n {
            let v = images[i]
                .scale(&spec.eta[j])
                .add(&images[j].scale(&spec.eta[i]))
                .scale(&half());
            if !v.is_zero() {
                alg = alg.with_product(i, j, v.into_coords())?;
            }
        }
    }
    Ok(alg)
}

/// A mutation algebra satisfying `f`, with `M` of minimal polynomial the
/// monic reduction `D` of `f`. When `D = 0` every mutation algebra
/// satisfies `f` and a cyclic permutation is returned.
pub fn build_mutation_for_identity(f: &MagmaPoly) -> Result<MutationSpec> {
    if f.is_zero() {
        return Err(Error::Precondition("zero identity".into()));
    }
    let d = reduce_on_mutation(f);
    let spec = if d.is_zero() {
        let highest = f
            .terms()
            .filter_map(|(t, _)| reduce_term(t).degree())
            .max()
            .unwrap_or(0);
        cyclic(highest.max(2))
    } else {
        let monic = d.monic();
        let deg = monic.degree().expect("nonzero");
        if deg == 0 {
            return Err(Error::Precondition(format!(
                "no mutation algebra satisfies {f}: its reduction is a nonzero constant"
            )));
        }
        if !monic.eval(&Rational::one()).is_zero() {
            return Err(Error::Precondition(format!(
                "no weighted algebra satisfies {f}: coefficient sum {} is nonzero",
                f.coefficient_sum()
            )));
        }
        let c = companion(monic.coeffs());
        let eta = c
            .transpose()
            .sub(&QMatrix::identity(deg))?
            .kernel_basis()
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("companion matrix without eigenvalue 1".into()))?;
        MutationSpec::new(c, eta)?
    };
    let alg = spec.to_algebra()?;
    if !alg.holds_identity(f).holds {
        return Err(Error::Internal(format!("constructed algebra does not satisfy {f}")));
    }
    Ok(spec)
}

/// Permutation `e_i -> e_(i+1 mod n)` with `η = (1, ..., 1)`.
fn cyclic(n: usize) -> MutationSpec {
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        rows[(j + 1) % n][j] = Rational::one();
    }
    let m = QMatrix::from_rows(rows).expect("square");
    MutationSpec::new(m, vec![Rational::one(); n]).expect("square")
}

/// Companion matrix of the monic polynomial with coefficients `coeffs`
/// (constant first): `e_i -> e_(i+1)`, `e_(d−1) -> −Σ c_k e_k`.
fn companion(coeffs: &[Rational]) -> QMatrix {
    let d = coeffs.len() - 1;
    let mut rows = vec![vec![Rational::zero(); d]; d];
    for j in 0..d - 1 {
        rows[j + 1][j] = Rational::one();
    }
    for (k, c) in coeffs[..d].iter().enumerate() {
        rows[k][d - 1] = -c;
    }
    QMatrix::from_rows(rows).expect("square")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MutationFile {
    pub dim: usize,
    #[serde(rename = "M")]
    pub m: Vec<Vec<String>>,
    pub eta: Vec<String>,
}

impl MutationFile {
    pub fn to_spec(&self) -> Result<MutationSpec> {
        if self.m.len() != self.dim || self.m.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Format(format!("M must be {0}x{0}", self.dim)));
        }
        if self.eta.len() != self.dim {
            return Err(Error::Format(format!("eta must have {} entries", self.dim)));
        }
        let rows = self
            .m
            .iter()
            .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let eta = self.eta.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        let matrix = if self.dim == 0 {
            QMatrix::zeros(0, 0)
        } else {
            QMatrix::from_rows(rows)?
        };
        MutationSpec::new(matrix, eta)
    }

    pub fn from_spec(spec: &MutationSpec) -> Self {
        Self {
            dim: spec.dim(),
            m: spec
                .matrix
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            eta: spec.eta.iter().map(format_rational).collect(),
        }
    }
}

pub fn mutation_from_json(text: &str) -> Result<MutationSpec> {
    let file: MutationFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_spec()
}

pub fn mutation_to_json(spec: &MutationSpec) -> String {
    serde_json::to_string_pretty(&MutationFile::from_spec(spec)).expect("serializable")
}

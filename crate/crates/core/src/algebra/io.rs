//! JSON algebra files.
//!
//! ```json
//! {"dim": 3, "basis_names": ["e", "n1", "n2"], "weight": ["1", "0", "0"],
//!  "products": {"0,0": {"0": "1", "1": "1"}, "0,1": {"2": "1/2"}}}
//! ```
//!
//! Indices are 0-based, keys `"i,j"` require `i <= j`, and absent pairs
//! multiply to zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::WeightedAlgebra;
use crate::error::{Error, Result};
use crate::scalar::rational::{format_rational, parse_rational};
use crate::scalar::Rational;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub basis_names: Vec<String>,
    pub weight: Vec<String>,
    #[serde(default)]
    pub products: BTreeMap<String, BTreeMap<String, String>>,
}

fn parse_index(s: &str, dim: usize) -> Result<usize> {
    let i: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("bad basis index {s:?}")))?;
    if i >= dim {
        return Err(Error::Format(format!("basis index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<WeightedAlgebra> {
        if self.weight.len() != self.dim {
            return Err(Error::Format(format!(
                "weight has {} entries, expected {}",
                self.weight.len(),
                self.dim
            )));
        }
        let weight = self
            .weight
            .iter()
            .map(|w| parse_rational(w))
            .collect::<Result<Vec<_>>>()?;
        let mut alg = WeightedAlgebra::new(self.basis_names.clone(), weight)?;
        for (key, entries) in &self.products {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("product key {key:?} is not \"i,j\"")))?;
            let (i, j) = (parse_index(a, self.dim)?, parse_index(b, self.dim)?);
            if i > j {
                return Err(Error::Format(format!("product key {key:?} must have i <= j")));
            }
            let mut value = vec![Rational::zero(); self.dim];
            for (k, c) in entries {
                value[parse_index(k, self.dim)?] = parse_rational(c)?;
            }
            alg = alg.with_product(i, j, value)?;
        }
        Ok(alg)
    }

    /// Normalized form: only nonzero entries, reduced rationals.
    pub fn from_algebra(alg: &WeightedAlgebra) -> Self {
        let n = alg.dim();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let entries: BTreeMap<String, String> = alg
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k.to_string(), format_rational(c)))
                    .collect();
                if !entries.is_empty() {
                    products.insert(format!("{i},{j}"), entries);
                }
            }
        }
        Self {
            dim: n,
            basis_names: alg.names().to_vec(),
            weight: alg.weight_vector().iter().map(format_rational).collect(),
            products,
        }
    }
}

pub fn algebra_from_json(text: &str) -> Result<WeightedAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_algebra()
}

pub fn algebra_to_json(alg: &WeightedAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn reads_a3() {
        let text = r#"{"dim": 3, "basis_names": ["e","n1","n2"], "weight": ["1","0","0"],
            "products": {"0,0": {"0": "1", "1": "1"}, "0,1": {"2": "1/2"}}}"#;
        assert_eq!(algebra_from_json(text).unwrap(), samples::a3());
    }

    #[test]
    fn round_trip_is_stable() {
        for alg in [samples::a3(), samples::g2(), samples::atr()] {
            let text = algebra_to_json(&alg);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back, alg);
            assert_eq!(algebra_to_json(&back), text);
        }
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            r#"{"dim": 2, "weight": ["1"]}"#,
            r#"{"dim": 2, "weight": ["1","0"], "products": {"1,0": {"0": "1"}}}"#,
            r#"{"dim": 2, "weight": ["1","0"], "products": {"0,2": {"0": "1"}}}"#,
            r#"{"dim": 2, "weight": ["1","x"]}"#,
            r#"{"dim": 2, "weight": ["1","0"], "extra": 1}"#,
        ];
        for text in bad {
            assert!(algebra_from_json(text).is_err(), "{text}");
        }
    }
}

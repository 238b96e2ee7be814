//! Dense exact matrices over Q and the elimination routines built on them.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Row-major `rows × cols` grid of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: QMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rational::int(v)).collect())
                .collect(),
        )
        .expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Row vector times matrix: `vᵀ·self`.
    pub fn left_mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.transpose().mul_vec(v)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        self.require_square()?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `p(self)` by Horner's scheme.
    pub fn eval_poly(&self, p: &UniPoly) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column with that
    /// free coordinate set to 1 and the other free coordinates 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.reduced[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let delta = &factor * &m[(c, j)];
                    m[(i, j)] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Unique solution of `self·v = rhs`; fails when singular or inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        self.require_square()?;
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        if !self.determinant()?.is_zero() {
            let mut cols: Vec<Vec<Rational>> = (0..self.cols).map(|j| self.column(j)).collect();
            cols.push(rhs.to_vec());
            let ech = QMatrix::from_columns(&cols)?.rref();
            return Ok((0..self.rows)
                .map(|i| ech.reduced[(i, self.cols)].clone())
                .collect());
        }
        Err(Error::Singular)
    }

    /// Monic generator of the annihilating ideal, found as the first linear
    /// dependence among `I, M, M², ...` (vectorized).
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        self.require_square()?;
        let mut powers: Vec<Vec<Rational>> = vec![QMatrix::identity(self.rows).data];
        let mut current = QMatrix::identity(self.rows);
        loop {
            current = current.mul(self)?;
            if let Some(c) = express_in_span(&powers, &current.data)? {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Rational::one());
                return Ok(UniPoly::from_coeffs(coeffs));
            }
            powers.push(current.data.clone());
        }
    }
}

/// Coordinates `c` with `Σ c_j vectors[j] = target`, or `None` when `target`
/// lies outside the span. Free coordinates are set to zero.
pub fn express_in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if vectors.is_empty() {
        return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
    }
    let mut cols = vectors.to_vec();
    cols.push(target.to_vec());
    let ech = QMatrix::from_columns(&cols)?.rref();
    let n = vectors.len();
    if ech.pivots.contains(&n) {
        return Ok(None);
    }
    let mut coords = vec![Rational::zero(); n];
    for (r, &p) in ech.pivots.iter().enumerate() {
        coords[p] = ech.reduced[(r, n)].clone();
    }
    Ok(Some(coords))
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_columns(vectors).map_or(0, |m| m.rank())
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;
    use proptest::prelude::*;

    /// Columns are images: M(e) = e + n1, M(n1) = n2, M(n2) = 0.
    fn a3_mutation() -> QMatrix {
        QMatrix::from_i64(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0]])
    }

    #[test]
    fn kernel_examples() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        let k = QMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let shifted = a3_mutation().sub(&QMatrix::identity(3)).unwrap();
        assert_eq!(shifted.kernel_basis(), vec![vec![int(1), int(1), int(1)]]);
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(
            QMatrix::identity(2).minimal_polynomial().unwrap(),
            UniPoly::from_ints(&[-1, 1])
        );
        let jordan = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            jordan.minimal_polynomial().unwrap(),
            UniPoly::from_ints(&[0, 0, 1])
        );
        let m = a3_mutation();
        assert_eq!(
            m.minimal_polynomial().unwrap(),
            UniPoly::from_ints(&[0, 0, -1, 1])
        );
        // oracle: M³ = M² and M² ≠ M
        assert_eq!(m.pow(3).unwrap(), m.pow(2).unwrap());
        assert_ne!(m.pow(2).unwrap(), m);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(QMatrix::identity(4).determinant().unwrap(), int(1));
        let swap = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant().unwrap(), int(-1));
        assert!(QMatrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn solve_and_span() {
        let a = QMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let v = a.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(a.mul_vec(&v).unwrap(), vec![int(3), int(5)]);
        assert_eq!(
            QMatrix::zeros(2, 2).solve(&[int(1), int(0)]),
            Err(Error::Singular)
        );
        let span = vec![vec![int(1), int(0), int(1)]];
        assert_eq!(
            express_in_span(&span, &[int(2), int(0), int(2)]).unwrap(),
            Some(vec![int(2)])
        );
        assert_eq!(express_in_span(&span, &[int(0), int(1), int(0)]).unwrap(), None);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = QMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                QMatrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix(4)) {
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len(), m.cols() - m.rank());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn minimal_polynomial_annihilates(m in arb_matrix(3)) {
            prop_assume!(m.is_square());
            let mu = m.minimal_polynomial().unwrap();
            prop_assert!(mu.is_monic());
            prop_assert!(m.eval_poly(&mu).unwrap().is_zero());
            // no monic polynomial of lower degree annihilates m: I..M^{d-1} independent
            let d = mu.degree().unwrap();
            let powers: Vec<Vec<Rational>> = (0..d)
                .map(|k| m.pow(k).unwrap().to_rows().concat())
                .collect();
            prop_assert_eq!(rank_of(&powers), d);
        }
    }
}

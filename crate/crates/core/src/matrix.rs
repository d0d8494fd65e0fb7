//! Small dense exact matrices, row-major.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;

use crate::scalar::SurdSum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SurdSum>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![SurdSum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { SurdSum::one() } else { SurdSum::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> SurdSum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn try_from_fn<E>(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<SurdSum, E>,
    ) -> Result<Self, E> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c)?);
            }
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &SurdSum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: SurdSum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[SurdSum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &SurdSum) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SurdSum::is_zero)
    }

    /// Positions of nonzero entries, row-major.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(SurdSum::to_f64).collect())
            .collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    /// Matrix of the rows picked by `pick(r)` from either `self` or `other`.
    pub fn interleave_rows(&self, other: &ExactMatrix, from_self: impl Fn(usize) -> bool) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows, self.cols, |r, c| {
            if from_self(r) {
                self.get(r, c).clone()
            } else {
                other.get(r, c).clone()
            }
        })
    }
}

impl Mul<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        ExactMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols)
                .filter(|&k| !self.get(r, k).is_zero() && !rhs.get(k, c).is_zero())
                .map(|k| self.get(r, k) * rhs.get(k, c))
                .sum()
        })
    }
}

impl Add<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl Sub<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_fn(2, 2, |r, c| SurdSum::integer((r * 2 + c) as i64));
        let at = a.transpose();
        assert_eq!(at.get(0, 1), &SurdSum::integer(2));
        let p = &a * &at;
        assert_eq!(p.get(0, 0), &SurdSum::integer(1));
        assert_eq!(p.get(1, 1), &SurdSum::integer(13));
        assert!((&p - &p).is_zero());
        assert!(!a.is_upper_triangular());
        assert!(ExactMatrix::identity(3).is_upper_triangular());
    }

    #[test]
    fn display_rows() {
        let m = ExactMatrix::from_fn(1, 2, |_, c| if c == 0 { SurdSum::sqrt(2) } else { SurdSum::zero() });
        assert_eq!(m.to_string(), "[sqrt(2), 0]\n");
    }
}

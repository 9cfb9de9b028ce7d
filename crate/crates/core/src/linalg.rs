//! Exact linear algebra over the rationals and the integers.
//!
//! Matrices are small (a few dozen rows at most), so plain Gauss-Jordan
//! elimination over `BigRational` is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Consistent but with a nontrivial nullspace of the given dimension.
    Underdetermined(usize),
    Inconsistent,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        RatMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigRational) {
        self.data[r * self.cols + c] += v;
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot columns.
    fn rref(&mut self, col_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..col_limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let cols = m.cols;
        m.rref(cols).len()
    }

    /// Basis of the right nullspace `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let cols = m.cols;
        let pivots = m.rref(cols);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self.get(r, c).is_zero())
                    .map(|c| self.get(r, c) * &x[c])
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn solve(&self, rhs: &[BigRational]) -> Solution {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for (r, b) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b.clone());
        }
        let pivots = aug.rref(self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|r| !aug.get(r, self.cols).is_zero()) {
            return Solution::Inconsistent;
        }
        if rank < self.cols {
            return Solution::Underdetermined(self.cols - rank);
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Solution::Unique(x)
    }
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_nonnegative(v: &BigRational) -> bool {
    !v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = RatMatrix::from_rows(vec![
            vec![r(1, 1), r(2, 1), r(3, 1)],
            vec![r(2, 1), r(4, 1), r(6, 1)],
            vec![r(0, 1), r(1, 1), r(1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_cases() {
        let m = RatMatrix::from_rows(vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(-1, 1)]]);
        assert_eq!(
            m.solve(&[r(1, 1), r(0, 1)]),
            Solution::Unique(vec![r(1, 2), r(1, 2)])
        );
        let m = RatMatrix::from_rows(vec![vec![r(1, 1), r(1, 1)], vec![r(2, 1), r(2, 1)]]);
        assert_eq!(m.solve(&[r(1, 1), r(3, 1)]), Solution::Inconsistent);
        assert_eq!(m.solve(&[r(1, 1), r(2, 1)]), Solution::Underdetermined(1));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        assert_eq!(det_bareiss(ints(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(
            det_bareiss(ints(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])),
            BigInt::from(-3)
        );
        assert_eq!(det_bareiss(ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(det_bareiss(vec![]), BigInt::one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 5), BigInt::from(126));
        assert_eq!(binomial(16, 7), BigInt::from(11440));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}

//! Dense integer and rational matrices, just enough exact linear algebra
//! for Smith normal form, rank computations and small inverses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix over `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = BigRational::from_integer(self[(i, j)].clone());
            }
        }
        out
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: returns `(U, D, V)` with `U * M * V = D`, `U` and `V`
/// unimodular, and `D` diagonal with a divisibility chain
/// `d_1 | d_2 | ...` of non-negative entries.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        loop {
            // pick the nonzero pivot of least absolute value in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && pivot.map_or(true, |p| d[(i, j)].abs() < d[p].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block is zero, done
                return finish_chain(u, d, v, t);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide every entry of the trailing block
            let mut bad: Option<usize> = None;
            'outer: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_chain(u, d, v, n)
}

fn finish_chain(
    mut u: IntMatrix,
    mut d: IntMatrix,
    v: IntMatrix,
    upto: usize,
) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..upto {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Row-major dense matrix over `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let c = m.cols;
                m.data.swap(row * c + j, p * c + j);
            }
            let inv = m[(row, col)].clone();
            for i in 0..m.rows {
                if i != row && !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &inv;
                    for j in col..m.cols {
                        let t = &f * &m[(row, j)];
                        m[(i, j)] -= t;
                    }
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            inv[(i, i)] = BigRational::one();
        }
        for col in 0..n {
            let p = (col..n).find(|&i| !m[(i, col)].is_zero())?;
            for j in 0..n {
                m.data.swap(col * n + j, p * n + j);
                inv.data.swap(col * n + j, p * n + j);
            }
            let pivot = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] /= pivot.clone();
                inv[(col, j)] /= pivot.clone();
            }
            for i in 0..n {
                if i != col && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in 0..n {
                        let a = &f * &m[(col, j)];
                        m[(i, j)] -= a;
                        let b = &f * &inv[(col, j)];
                        inv[(i, j)] -= b;
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unimodular(m: &IntMatrix) -> bool {
        m.det().abs() == BigInt::one()
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let (_, d, _) = smith_normal_form(&m);
        assert_eq!(d, IntMatrix::identity(2));
    }

    #[test]
    fn snf_2x2() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        assert!(is_unimodular(&u));
        assert!(is_unimodular(&v));
        assert_eq!(d[(0, 0)], BigInt::from(2));
        assert_eq!(d[(1, 1)], BigInt::from(4));
        assert!(d[(0, 1)].is_zero() && d[(1, 0)].is_zero());
    }

    #[test]
    fn snf_zero() {
        let m = IntMatrix::from_i64(&[&[0]]);
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), d);
        assert!(d[(0, 0)].is_zero());
    }

    #[test]
    fn snf_empty() {
        let m = IntMatrix::zero(0, 0);
        let (_, d, _) = smith_normal_form(&m);
        assert_eq!(d.rows, 0);
    }

    #[test]
    fn rat_rank_and_inverse() {
        let one = BigRational::one;
        let m = RatMatrix::from_rows(vec![
            vec![one(), one() + one()],
            vec![one() + one() + one(), one() + one() + one() + one()],
        ]);
        assert_eq!(m.rank(), 2);
        let inv = m.inverse().unwrap();
        let prod: Vec<BigRational> = inv.mul_vec(&[one(), one() + one() + one()]);
        // inv * (1,3)^T recovers the solution of m x = (1,3)^T being x=(1,0)
        assert_eq!(prod, vec![one(), BigRational::zero()]);
    }
}

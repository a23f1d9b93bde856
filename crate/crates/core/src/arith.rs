//! Arbitrary-precision integer and rational linear algebra.
//!
//! Everything here is exact. Integers are [`num_bigint::BigInt`] and
//! rationals are [`num_rational::BigRational`], which is always kept in
//! lowest terms with a positive denominator.
//!
//! The central routine is [`hnf_column`], a column-style Hermite normal form
//! with the unimodular transform that produced it. The lattice layer reads
//! both the integer solution set of `A x = b` and the canonical special basis
//! off this one decomposition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Shorthand used all over the crate and its tests.
pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn ints(vs: &[i64]) -> Vec<Integer> {
    vs.iter().map(|&v| int(v)).collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

pub fn to_rational(v: &[Integer]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Dense row-major matrix of big integers. Dimensions are fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Integer::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Fails if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Integer>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of machine integers.
    ///
    /// Panics on ragged input; intended for literals in tests and examples.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend(row.iter().map(|&v| int(v)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Integer>]) -> Result<Self> {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {nrows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Integer>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Integer] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Result<Vec<Integer>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// Max squared Euclidean column norm (0 for a matrix without columns).
    pub fn max_column_norm_sq(&self) -> Integer {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j) * self.get(i, j)).sum::<Integer>())
            .max()
            .unwrap_or_else(Integer::zero)
    }

    // Column operations used by the HNF. `apply_*` act on every row.

    fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_column_multiple(&mut self, dst: usize, src: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src) * q;
            self.data[i * self.cols + dst] -= s;
        }
    }

    /// (col[p], col[q]) <- (s*col[p] + t*col[q], x*col[p] + y*col[q])
    fn combine_columns(&mut self, p: usize, q: usize, s: &Integer, t: &Integer, x: &Integer, y: &Integer) {
        for i in 0..self.rows {
            let cp = self.get(i, p).clone();
            let cq = self.get(i, q).clone();
            self.data[i * self.cols + p] = s * &cp + t * &cq;
            self.data[i * self.cols + q] = x * &cp + y * &cq;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (k, v) in self.row(i).iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Extended Euclid: `(g, s, t)` with `a*s + b*t = g` and `g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Integer::one(), Integer::zero());
    let (mut old_t, mut t) = (Integer::zero(), Integer::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Column-style Hermite normal form `H` together with a unimodular `U`
/// such that `input * U = H`.
///
/// For a full-row-rank `m x n` input, `H = [L | 0]` where `L` is lower
/// triangular with positive diagonal and `0 <= L[i][j] < L[i][i]` for `j < i`.
/// The last `n - m` columns of `U` form a basis of the integer kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

impl HnfResult {
    /// The pivots `H[i][i]`, `i < m`.
    pub fn pivots(&self) -> Vec<Integer> {
        (0..self.h.rows()).map(|i| self.h.get(i, i).clone()).collect()
    }
}

/// Computes the canonical column HNF of a full-row-rank matrix.
pub fn hnf_column(m: &IntMatrix) -> Result<HnfResult> {
    let rows = m.rows();
    let cols = m.cols();
    if rows > cols {
        return Err(Error::RankDeficient);
    }
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);

    for i in 0..rows {
        for j in (i + 1)..cols {
            let b = h.get(i, j).clone();
            if b.is_zero() {
                continue;
            }
            let a = h.get(i, i).clone();
            if a.is_zero() {
                h.swap_columns(i, j);
                u.swap_columns(i, j);
                continue;
            }
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                h.sub_column_multiple(j, i, &q);
                u.sub_column_multiple(j, i, &q);
                continue;
            }
            // det [[s, b/g], [t, -a/g]] = -1, so the step is unimodular.
            let (g, s, t) = ext_gcd(&a, &b);
            let bg = &b / &g;
            let ag = -(&a / &g);
            h.combine_columns(i, j, &s, &t, &bg, &ag);
            u.combine_columns(i, j, &s, &t, &bg, &ag);
        }
        let pivot = h.get(i, i).clone();
        if pivot.is_zero() {
            return Err(Error::RankDeficient);
        }
        if pivot.is_negative() {
            h.negate_column(i);
            u.negate_column(i);
        }
        let pivot = h.get(i, i).clone();
        for j in 0..i {
            let q = h.get(i, j).div_floor(&pivot);
            h.sub_column_multiple(j, i, &q);
            u.sub_column_multiple(j, i, &q);
        }
    }
    Ok(HnfResult { h, u })
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &IntMatrix) -> Result<Integer> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Integer::one());
    }
    let mut a: Vec<Vec<Integer>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Integer::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// gcd of all maximal (`m x m`) minors of an `m x n` matrix of full row rank.
///
/// Unimodular column operations preserve this gcd, and the only nonzero
/// maximal minor of `[L | 0]` is `det L`, so the value is the pivot product.
pub fn gcd_max_minors(a: &IntMatrix, m: usize) -> Result<Integer> {
    if a.rows() != m {
        return Err(Error::DimensionMismatch(format!("expected {m} rows, got {}", a.rows())));
    }
    let hnf = hnf_column(a)?;
    Ok(hnf.pivots().iter().product())
}

/// Rank via fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<Integer>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (top, f) = (a[r][c].clone(), a[i][c].clone());
            for j in c..m.cols() {
                let v = &a[i][j] * &top - &a[r][j] * &f;
                a[i][j] = v;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Exact solution of `B x = v` for nonsingular square `B`.
pub fn solve_rational(b: &IntMatrix, v: &[Integer]) -> Result<Vec<Rational>> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let n = b.rows();
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("rhs length {} for {n}x{n} system", v.len())));
    }
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = to_rational(b.row(i));
            row.push(Rational::from_integer(v[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=n {
                let s = &f * &a[c][j];
                a[i][j] -= s;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Exact inverse of a nonsingular square matrix, returned row by row.
pub fn inverse_rational(b: &IntMatrix) -> Result<Vec<Vec<Rational>>> {
    let n = b.rows();
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut e = vec![Integer::zero(); n];
            e[j] = Integer::one();
            solve_rational(b, &e)
        })
        .collect::<Result<_>>()?;
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Integer]) -> Integer {
    dot(a, a)
}

pub fn rat_dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Converts a rational vector to integers, or `None` if any entry is fractional.
pub fn to_integer_vec(v: &[Rational]) -> Option<Vec<Integer>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf_shape(m: &IntMatrix, r: &HnfResult) {
        assert_eq!(m.mul(&r.u).unwrap(), r.h);
        assert_eq!(det_exact(&r.u).unwrap().abs(), Integer::one());
        for i in 0..m.rows() {
            assert!(r.h.get(i, i).is_positive());
            for j in 0..i {
                assert!(!r.h.get(i, j).is_negative() && r.h.get(i, j) < r.h.get(i, i));
            }
            for j in i + 1..m.cols() {
                assert!(r.h.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn hnf_identity() {
        let i2 = IntMatrix::identity(2);
        let r = hnf_column(&i2).unwrap();
        assert_eq!(r.h, i2);
        assert_eq!(r.u, i2);
    }

    #[test]
    fn hnf_row_two_three() {
        let m = IntMatrix::from_rows(&[[2, 3]]);
        let r = hnf_column(&m).unwrap();
        assert_eq!(r.h, IntMatrix::from_rows(&[[1, 0]]));
        assert_eq!(r.u, IntMatrix::from_rows(&[[-1, 3], [1, -2]]));
        assert_eq!(det_exact(&r.u).unwrap(), int(-1));
    }

    #[test]
    fn hnf_positive_diagonal_is_fixed() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let r = hnf_column(&m).unwrap();
        assert_eq!(r.h, m);
        assert_eq!(r.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_left_of_pivot() {
        let m = IntMatrix::from_rows(&[[4, 6, 2], [-3, 7, 11]]);
        let r = hnf_column(&m).unwrap();
        check_hnf_shape(&m, &r);
    }

    #[test]
    fn hnf_zero_leading_entry() {
        let m = IntMatrix::from_rows(&[[0, 1, 2], [0, 0, 3]]);
        let r = hnf_column(&m).unwrap();
        check_hnf_shape(&m, &r);
    }

    #[test]
    fn hnf_rank_deficient() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        assert_eq!(hnf_column(&m), Err(Error::RankDeficient));
        let tall = IntMatrix::from_rows(&[[1], [2]]);
        assert_eq!(hnf_column(&tall), Err(Error::RankDeficient));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_exact(&IntMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(det_exact(&IntMatrix::from_rows(&[[2, 1], [1, 2]])).unwrap(), int(3));
        assert_eq!(det_exact(&IntMatrix::from_rows(&[[1, 2], [2, 4]])).unwrap(), int(0));
        assert_eq!(det_exact(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), int(-1));
        assert!(matches!(
            det_exact(&IntMatrix::from_rows(&[[1, 2, 3]])),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn gcd_of_minors() {
        let a = IntMatrix::from_rows(&[[2, 0, 1], [0, 2, 1]]);
        assert_eq!(gcd_max_minors(&a, 2).unwrap(), int(2));
        assert_eq!(gcd_max_minors(&IntMatrix::from_rows(&[[5, 2, 3]]), 1).unwrap(), int(1));
        let padded = IntMatrix::from_rows(&[[1, 0, 17], [0, 1, -9]]);
        assert_eq!(gcd_max_minors(&padded, 2).unwrap(), int(1));
        let a = IntMatrix::from_rows(&[[3, 0, 1], [0, 3, 1]]);
        assert_eq!(gcd_max_minors(&a, 2).unwrap(), int(3));
    }

    #[test]
    fn rational_solves() {
        let v = ints(&[4, -7]);
        assert_eq!(solve_rational(&IntMatrix::identity(2), &v).unwrap(), to_rational(&v));
        let b = IntMatrix::from_rows(&[[2, 0], [0, 4]]);
        assert_eq!(solve_rational(&b, &ints(&[1, 2])).unwrap(), vec![rat(1, 2), rat(1, 2)]);
        let b = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert_eq!(solve_rational(&b, &ints(&[3, 1])).unwrap(), vec![rat(2, 1), rat(1, 1)]);
        let s = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(solve_rational(&s, &ints(&[1, 1])), Err(Error::Singular));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]])), 1);
        assert_eq!(rank(&IntMatrix::from_rows(&[[0, 1, 2], [0, 0, 3]])), 2);
        assert_eq!(rank(&IntMatrix::zeros(2, 2)), 0);
    }

    #[test]
    fn ext_gcd_signs() {
        for (a, b) in [(2, 3), (-4, 6), (0, -5), (7, 0), (-3, -9)] {
            let (g, s, t) = ext_gcd(&int(a), &int(b));
            assert_eq!(int(a) * s + int(b) * t, g);
            assert_eq!(g, int(a).gcd(&int(b)));
        }
    }
}

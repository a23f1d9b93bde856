//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's elimination code: determinants come
//! from permutation expansion or rational Gaussian elimination, and gcds of
//! minors come from enumerating column subsets.

#![allow(dead_code)]

use diophantine_box::{IntMatrix, Integer, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Determinant by cofactor expansion along the first row. Fine up to ~8x8.
pub fn det_cofactor(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i128;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
                let term = m[0][c] * det_cofactor(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det_gauss(m: &IntMatrix) -> Integer {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Integer::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

pub fn to_i128_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_i128().expect("small entry")).collect()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// gcd of all maximal minors, by enumeration.
pub fn minor_gcd(m: &IntMatrix) -> Integer {
    let rows = to_i128_rows(m);
    let k = m.rows();
    let mut g = 0i128;
    for cols in subsets(m.cols(), k) {
        let sub: Vec<Vec<i128>> = rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
        g = g.gcd(&det_cofactor(&sub));
    }
    Integer::from(g)
}

/// `A x = b` has an integer solution iff appending `b` leaves the gcd of
/// the maximal minors unchanged (full row rank `A`).
pub fn integer_feasible_by_minors(a: &IntMatrix, b: &[Integer]) -> bool {
    let mut cols = a.columns();
    cols.push(b.to_vec());
    let ab = IntMatrix::from_columns(a.rows(), &cols).unwrap();
    minor_gcd(a) == minor_gcd(&ab)
}

pub fn is_nonnegative(v: &[Integer]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Column HNF shape: `[L | 0]`, `L` lower triangular, positive diagonal,
/// entries left of the diagonal reduced into `[0, pivot)`.
pub fn is_canonical_hnf(h: &IntMatrix) -> bool {
    let m = h.rows();
    for i in 0..m {
        let p = h.get(i, i);
        if !p.is_positive() {
            return false;
        }
        for j in 0..h.cols() {
            let v = h.get(i, j);
            let ok = if j < i { !v.is_negative() && v < p } else if j > i { v.is_zero() } else { true };
            if !ok {
                return false;
            }
        }
    }
    true
}

//! Depth-first enumeration of nonnegative integer solutions, used as ground
//! truth on small instances.

use num_traits::ToPrimitive;

use crate::arith::{IntMatrix, Integer};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Upper bound tried for every variable.
    pub per_variable_bound: u64,
    /// Maximum number of search nodes before giving up.
    pub node_cap: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { per_variable_bound: 1_000, node_cap: 5_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found(Vec<Integer>),
    /// No solution with every variable inside its bound. `conclusive` is true
    /// only when a sign-definite row bounds every variable below the budget,
    /// so that the search covered the whole (bounded) solution polyhedron.
    NoneWithinBounds { conclusive: bool },
    Exhausted,
}

struct Search<'a> {
    cols: Vec<Vec<i128>>,
    bounds: Vec<i128>,
    /// Rows (after sign normalisation) with all entries positive.
    positive_rows: &'a [usize],
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn dfs(&mut self, j: usize, residual: &mut [i128], x: &mut Vec<i128>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return None;
        }
        let n = self.cols.len();
        if j + 1 == n {
            return Some(self.finish(residual, x));
        }
        let mut v = 0i128;
        while v <= self.bounds[j] {
            if self.positive_rows.iter().any(|&i| residual[i] < 0) {
                break;
            }
            x.push(v);
            match self.dfs(j + 1, residual, x) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            x.pop();
            for (r, a) in residual.iter_mut().zip(&self.cols[j]) {
                *r -= a;
            }
            v += 1;
        }
        for (r, a) in residual.iter_mut().zip(&self.cols[j]) {
            *r += a * v;
        }
        Some(false)
    }

    /// Last variable is determined by the residual.
    fn finish(&self, residual: &[i128], x: &mut Vec<i128>) -> bool {
        let col = self.cols.last().expect("n >= 1");
        let value = match col.iter().position(|&a| a != 0) {
            Some(i) => {
                if residual[i] % col[i] != 0 {
                    return false;
                }
                residual[i] / col[i]
            }
            None => 0,
        };
        if value < 0 || value > *self.bounds.last().expect("n >= 1") {
            return false;
        }
        if residual.iter().zip(col).all(|(r, a)| *r == a * value) {
            x.push(value);
            true
        } else {
            false
        }
    }
}

fn to_i128(v: &Integer) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::Input(format!("value {v} too large for enumeration")))
}

/// Searches for `x >= 0` with `A x = b`, each `x_j` in `[0, bound_j]`.
pub fn brute_force_solve(a: &IntMatrix, b: &[Integer], budget: EnumerationBudget) -> Result<BruteForceOutcome> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!("b has length {}, A has {m} rows", b.len())));
    }
    if n == 0 {
        let ok = b.iter().all(|v| v.to_i128() == Some(0));
        return Ok(if ok { BruteForceOutcome::Found(Vec::new()) } else { BruteForceOutcome::NoneWithinBounds { conclusive: true } });
    }
    let mut rows: Vec<Vec<i128>> = (0..m).map(|i| a.row(i).iter().map(to_i128).collect()).collect::<Result<_>>()?;
    let mut rhs: Vec<i128> = b.iter().map(to_i128).collect::<Result<_>>()?;
    let cap = budget.per_variable_bound as i128;
    let mut bounds = vec![cap; n];
    let mut positive_rows = Vec::new();
    for i in 0..m {
        if rows[i].iter().all(|&v| v < 0) {
            rows[i].iter_mut().for_each(|v| *v = -*v);
            rhs[i] = -rhs[i];
        }
        if rows[i].iter().all(|&v| v > 0) {
            if rhs[i] < 0 {
                return Ok(BruteForceOutcome::NoneWithinBounds { conclusive: true });
            }
            for (bd, &v) in bounds.iter_mut().zip(&rows[i]) {
                *bd = (*bd).min(rhs[i] / v);
            }
            positive_rows.push(i);
        }
    }
    let conclusive = positive_rows.iter().any(|&i| rows[i].iter().all(|&v| rhs[i] / v <= cap));

    let cols: Vec<Vec<i128>> = (0..n).map(|j| (0..m).map(|i| rows[i][j]).collect()).collect();
    let mut search = Search { cols, bounds, positive_rows: &positive_rows, nodes: 0, cap: budget.node_cap };
    let mut residual = rhs;
    let mut x = Vec::with_capacity(n);
    Ok(match search.dfs(0, &mut residual, &mut x) {
        Some(true) => BruteForceOutcome::Found(x.into_iter().map(Integer::from).collect()),
        Some(false) => BruteForceOutcome::NoneWithinBounds { conclusive },
        None => BruteForceOutcome::Exhausted,
    })
}

/// Every nonnegative solution within the budget; test helper for tiny systems.
pub fn enumerate_all(a: &IntMatrix, b: &[Integer], bound: u64) -> Result<Vec<Vec<Integer>>> {
    let n = a.cols();
    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    loop {
        let xi: Vec<Integer> = x.iter().map(|&v| Integer::from(v)).collect();
        if a.mul_vec(&xi)? == b {
            out.push(xi);
        }
        let mut k = 0;
        while k < n && x[k] == bound {
            x[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        x[k] += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ints;
    use crate::solver::verify;

    #[test]
    fn found_single_row() {
        let a = IntMatrix::from_rows(&[[2, 3]]);
        let r = brute_force_solve(&a, &ints(&[7]), EnumerationBudget::default()).unwrap();
        assert_eq!(r, BruteForceOutcome::Found(ints(&[2, 1])));
    }

    #[test]
    fn none_below_smallest_entry() {
        let a = IntMatrix::from_rows(&[[2, 3]]);
        let r = brute_force_solve(&a, &ints(&[1]), EnumerationBudget::default()).unwrap();
        assert_eq!(r, BruteForceOutcome::NoneWithinBounds { conclusive: true });
    }

    #[test]
    fn two_rows_found_and_full_set() {
        let a = IntMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        let b = ints(&[2, 2]);
        match brute_force_solve(&a, &b, EnumerationBudget::default()).unwrap() {
            BruteForceOutcome::Found(x) => assert!(verify(&a, &b, &x).unwrap()),
            other => panic!("expected a solution, got {other:?}"),
        }
        let mut all = enumerate_all(&a, &b, 3).unwrap();
        all.sort();
        assert_eq!(all, vec![ints(&[0, 0, 2]), ints(&[1, 1, 1]), ints(&[2, 2, 0])]);
    }

    #[test]
    fn unbounded_polyhedron_is_inconclusive() {
        // No integer solutions, but the real solution set is unbounded.
        let a = IntMatrix::from_rows(&[[2, -2]]);
        let r = brute_force_solve(&a, &ints(&[1]), EnumerationBudget { per_variable_bound: 20, node_cap: 10_000 }).unwrap();
        assert_eq!(r, BruteForceOutcome::NoneWithinBounds { conclusive: false });
        let a = IntMatrix::from_rows(&[[1, -1]]);
        let r = brute_force_solve(&a, &ints(&[3]), EnumerationBudget { per_variable_bound: 20, node_cap: 10_000 }).unwrap();
        assert_eq!(r, BruteForceOutcome::Found(ints(&[3, 0])));
    }

    #[test]
    fn negative_row_is_normalised() {
        let a = IntMatrix::from_rows(&[[-2, -3]]);
        let r = brute_force_solve(&a, &ints(&[-7]), EnumerationBudget::default()).unwrap();
        assert_eq!(r, BruteForceOutcome::Found(ints(&[2, 1])));
    }

    #[test]
    fn node_cap_exhausts() {
        let a = IntMatrix::from_rows(&[[7, 11, 13, 17]]);
        let budget = EnumerationBudget { per_variable_bound: 1_000, node_cap: 10 };
        assert_eq!(brute_force_solve(&a, &ints(&[5]), budget).unwrap(), BruteForceOutcome::NoneWithinBounds { conclusive: true });
        assert_eq!(brute_force_solve(&a, &ints(&[900]), budget).unwrap(), BruteForceOutcome::Exhausted);
    }
}

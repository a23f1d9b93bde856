//! Box-reduction solver for `A x = b`, `x >= 0`, `x` integer.
//!
//! With `A = (B | N)` and `B` nonsingular, the integer points of
//! `{A x = b}` project bijectively onto an affine lattice `z + Λ(A)` in the
//! last `n - m` coordinates. The solver
//!
//! 0. decides integer feasibility from the column HNF of `A`,
//! 1. takes `z` as the projection of some integer solution,
//! 2. reduces `z` against the special basis of `Λ(A)`, leaving the unique
//!    representative `w` of the coset in the box `[0, v_11) x ... x [0, v_dd)`,
//! 3. lifts back with `u = B⁻¹ (b - N w)`.
//!
//! `w` is always nonnegative. `u` is nonnegative whenever `b` is deep enough
//! inside `C_B` (see [`crate::cone::deep_cone_condition`]); outside that
//! region the lift is still an integer solution but may have negative entries,
//! and [`SolveOutcome::IntegerOnly`] says nothing about whether a
//! nonnegative solution exists.

use num_traits::{Signed, Zero};

use crate::arith::{det_exact, hnf_column, rank, solve_rational, to_integer_vec, IntMatrix, Integer};
use crate::cone::{deep_cone_condition, ConditionReport};
use crate::error::{Error, Result};
use crate::lattice::{lattice_determinant, project_drop_m, reduce_into_box, solution_set_from_hnf, special_basis, SolutionSet, SpecialBasis};

/// One system `A x = b` with an optional choice of basis columns (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub a: IntMatrix,
    pub b: Vec<Integer>,
    pub basis_cols: Option<Vec<usize>>,
}

impl ProblemInstance {
    pub fn new(a: IntMatrix, b: Vec<Integer>) -> Result<Self> {
        if a.rows() == 0 || a.rows() >= a.cols() {
            return Err(Error::DimensionMismatch(format!("need 0 < m < n, got {}x{}", a.rows(), a.cols())));
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!("b has length {}, A has {} rows", b.len(), a.rows())));
        }
        Ok(ProblemInstance { a, b, basis_cols: None })
    }

    pub fn with_basis_cols(mut self, cols: Vec<usize>) -> Self {
        self.basis_cols = Some(cols);
        self
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    IntegerInfeasible,
    Nonnegative(Vec<Integer>),
    /// An integer solution with a negative entry. This does not mean the
    /// system has no nonnegative solution.
    IntegerOnly(Vec<Integer>, ConditionReport),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&[Integer]> {
        match self {
            SolveOutcome::IntegerInfeasible => None,
            SolveOutcome::Nonnegative(x) | SolveOutcome::IntegerOnly(x, _) => Some(x),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        matches!(self, SolveOutcome::Nonnegative(_))
    }
}

/// `A` split as `(B | N)` after moving the basis columns to the front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub basis_cols: Vec<usize>,
    /// Column order used internally: basis columns, then the rest ascending.
    pub order: Vec<usize>,
    pub b_mat: IntMatrix,
    pub n_mat: IntMatrix,
    pub det_b: Integer,
}

impl Partition {
    pub fn new(a: &IntMatrix, basis_cols: &[usize]) -> Result<Self> {
        let m = a.rows();
        let mut seen = vec![false; a.cols()];
        if basis_cols.len() != m {
            return Err(Error::Input(format!("expected {m} basis columns, got {}", basis_cols.len())));
        }
        for &c in basis_cols {
            if c >= a.cols() || seen[c] {
                return Err(Error::Input(format!("invalid or repeated basis column {}", c + 1)));
            }
            seen[c] = true;
        }
        let order: Vec<usize> = basis_cols.iter().copied().chain((0..a.cols()).filter(|&j| !seen[j])).collect();
        let b_mat = a.select_columns(basis_cols);
        let det_b = det_exact(&b_mat)?;
        if det_b.is_zero() {
            return Err(Error::Singular);
        }
        let n_mat = a.select_columns(&order[m..]);
        Ok(Partition { basis_cols: basis_cols.to_vec(), order, b_mat, n_mat, det_b })
    }

    /// `A` with columns in [`Partition::order`].
    pub fn permuted(&self) -> IntMatrix {
        let m = self.b_mat.rows();
        let n = self.order.len();
        let mut out = IntMatrix::zeros(m, n);
        for i in 0..m {
            for k in 0..m {
                out.set(i, k, self.b_mat.get(i, k).clone());
            }
            for k in m..n {
                out.set(i, k, self.n_mat.get(i, k - m).clone());
            }
        }
        out
    }

    /// Maps a vector in internal column order back to the original order.
    pub fn unpermute(&self, xp: &[Integer]) -> Vec<Integer> {
        let mut x = vec![Integer::zero(); xp.len()];
        for (k, &j) in self.order.iter().enumerate() {
            x[j] = xp[k].clone();
        }
        x
    }
}

/// Greedy leftmost set of `m` linearly independent columns.
pub fn select_basis_columns(a: &IntMatrix) -> Result<Vec<usize>> {
    let m = a.rows();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    for j in 0..a.cols() {
        if chosen.len() == m {
            break;
        }
        chosen.push(j);
        if rank(&a.select_columns(&chosen)) < chosen.len() {
            chosen.pop();
        }
    }
    if chosen.len() < m {
        return Err(Error::RankDeficient);
    }
    Ok(chosen)
}

/// The partition used for an instance: explicit columns if given, else greedy.
pub fn partition(inst: &ProblemInstance) -> Result<Partition> {
    let cols = match &inst.basis_cols {
        Some(c) => c.clone(),
        None => select_basis_columns(&inst.a)?,
    };
    Partition::new(&inst.a, &cols)
}

/// Intermediate values of one solver run, in internal column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveTrace {
    pub partition: Partition,
    pub gcd_a: Integer,
    pub special_basis: Option<SpecialBasis>,
    /// `det Λ(A)`; equals `|det B| / gcd(A)`.
    pub lattice_det: Option<Integer>,
    pub z: Vec<Integer>,
    pub y: Vec<Integer>,
    pub w: Vec<Integer>,
    pub u: Vec<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub trace: SolveTrace,
}

pub fn solve(inst: &ProblemInstance) -> Result<SolveOutcome> {
    solve_detailed(inst).map(|r| r.outcome)
}

pub fn solve_detailed(inst: &ProblemInstance) -> Result<SolveReport> {
    let m = inst.m();
    let n = inst.n();
    if inst.b.len() != m || m >= n {
        return Err(Error::DimensionMismatch(format!("invalid instance dimensions {m}x{n}")));
    }
    let part = partition(inst)?;
    let ap = part.permuted();
    let hnf = hnf_column(&ap)?;
    let gcd_a: Integer = hnf.pivots().iter().product();
    let mut trace = SolveTrace {
        partition: part,
        gcd_a,
        special_basis: None,
        lattice_det: None,
        z: Vec::new(),
        y: Vec::new(),
        w: Vec::new(),
        u: Vec::new(),
    };

    // Step 0
    let rep = match solution_set_from_hnf(&hnf, &inst.b)? {
        SolutionSet::IntegerInfeasible => {
            return Ok(SolveReport { outcome: SolveOutcome::IntegerInfeasible, trace });
        }
        SolutionSet::Feasible(rep) => rep,
    };

    // Step 1
    let z = rep.particular[m..].to_vec();

    // Step 2
    let projected = project_drop_m(&rep.kernel_basis.columns(), m)?;
    let sb = special_basis(&IntMatrix::from_columns(n - m, &projected)?)?;
    let (y, w) = reduce_into_box(&sb, &z)?;

    // Step 3
    let part = &trace.partition;
    let nw = part.n_mat.mul_vec(&w)?;
    let rhs: Vec<Integer> = inst.b.iter().zip(&nw).map(|(b, s)| b - s).collect();
    let u = to_integer_vec(&solve_rational(&part.b_mat, &rhs)?)
        .expect("lift of a point of the projected affine lattice is integral");
    let xp: Vec<Integer> = u.iter().chain(&w).cloned().collect();
    let x = part.unpermute(&xp);
    assert_eq!(inst.a.mul_vec(&x)?, inst.b, "lifted point must solve A x = b");

    let outcome = if u.iter().all(|v| !v.is_negative()) {
        SolveOutcome::Nonnegative(x)
    } else {
        let report = deep_cone_condition(&part.b_mat, &part.n_mat, &trace.gcd_a, &inst.b)?;
        SolveOutcome::IntegerOnly(x, report)
    };
    trace.lattice_det = Some(lattice_determinant(&sb));
    trace.special_basis = Some(sb);
    trace.z = z;
    trace.y = y;
    trace.w = w;
    trace.u = u;
    Ok(SolveReport { outcome, trace })
}

/// `A x = b` exactly and `x >= 0`.
pub fn verify(a: &IntMatrix, b: &[Integer], x: &[Integer]) -> Result<bool> {
    if b.len() != a.rows() || x.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, b has length {}, x has length {}",
            a.rows(),
            a.cols(),
            b.len(),
            x.len()
        )));
    }
    Ok(x.iter().all(|v| !v.is_negative()) && a.mul_vec(x)? == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ints};

    fn inst(rows: &[&[i64]], b: &[i64]) -> ProblemInstance {
        ProblemInstance::new(IntMatrix::from_rows(rows), ints(b)).unwrap()
    }

    #[test]
    fn basis_selection() {
        assert_eq!(select_basis_columns(&IntMatrix::from_rows(&[[5, 2, 3]])).unwrap(), vec![0]);
        assert_eq!(select_basis_columns(&IntMatrix::from_rows(&[[0, 1, 2], [0, 0, 3]])).unwrap(), vec![1, 2]);
        assert_eq!(select_basis_columns(&IntMatrix::from_rows(&[[1, 0, 7], [0, 1, 7]])).unwrap(), vec![0, 1]);
        assert_eq!(select_basis_columns(&IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]])), Err(Error::RankDeficient));
    }

    #[test]
    fn solve_nonnegative_example() {
        let r = solve_detailed(&inst(&[&[5, 2, 3]], &[4])).unwrap();
        assert_eq!(r.outcome, SolveOutcome::Nonnegative(ints(&[0, 2, 0])));
        assert_eq!(r.trace.w, ints(&[2, 0]));
        assert_eq!(r.trace.special_basis.unwrap().vectors(), vec![ints(&[5, 0]), ints(&[1, 1])]);
    }

    #[test]
    fn solve_infeasible_example() {
        assert_eq!(solve(&inst(&[&[2, 4]], &[3])).unwrap(), SolveOutcome::IntegerInfeasible);
    }

    #[test]
    fn solve_integer_only_example() {
        match solve(&inst(&[&[5, 2, 3]], &[1])).unwrap() {
            SolveOutcome::IntegerOnly(x, report) => {
                assert_eq!(x, ints(&[-1, 3, 0]));
                assert!(!report.holds);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn solve_respects_explicit_basis() {
        // Basis column 2 (value 2): the lattice {x : 5 x1 + 3 x2 ≡ 0 mod 2}.
        let i = inst(&[&[5, 2, 3]], &[4]).with_basis_cols(vec![1]);
        let r = solve_detailed(&i).unwrap();
        let x = r.outcome.solution().unwrap().to_vec();
        assert!(verify(&i.a, &i.b, &x).unwrap());
        assert_eq!(r.trace.lattice_det, Some(int(2)));
    }

    #[test]
    fn solve_rejects_singular_basis() {
        let i = inst(&[&[1, 2, 3], &[2, 4, 1]], &[1, 1]).with_basis_cols(vec![0, 1]);
        assert_eq!(solve(&i), Err(Error::Singular));
        let i = inst(&[&[1, 2, 3], &[2, 4, 6]], &[1, 2]);
        assert_eq!(solve(&i), Err(Error::RankDeficient));
    }

    #[test]
    fn solve_non_leading_basis() {
        let i = inst(&[&[0, 1, 2], &[0, 0, 3]], &[4, 3]);
        let x = solve(&i).unwrap();
        assert_eq!(x.solution().map(|x| i.a.mul_vec(x).unwrap()), Some(ints(&[4, 3])));
    }

    #[test]
    fn verify_examples() {
        let a = IntMatrix::from_rows(&[[5, 2, 3]]);
        assert!(verify(&a, &ints(&[4]), &ints(&[0, 2, 0])).unwrap());
        assert!(!verify(&a, &ints(&[1]), &ints(&[-1, 3, 0])).unwrap());
        assert!(verify(&a, &ints(&[0]), &ints(&[0, 0, 0])).unwrap());
        assert!(verify(&a, &ints(&[0]), &ints(&[0, 0])).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(ProblemInstance::new(IntMatrix::from_rows(&[[1, 2], [3, 4]]), ints(&[1, 1])).is_err());
        assert!(ProblemInstance::new(IntMatrix::from_rows(&[[1, 2]]), ints(&[1, 1])).is_err());
    }
}

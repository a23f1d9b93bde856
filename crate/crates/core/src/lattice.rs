//! Integer solution lattices of `A x = b` and reduction into the
//! Gram–Schmidt box of a basis.
//!
//! `Γ(A, b)` is represented as a particular solution plus a basis of the
//! integer kernel (both read off the column HNF of `A`). Dropping the first
//! `m` coordinates of the kernel basis gives a basis of the projected lattice
//! `Λ(A) ⊆ Z^{n-m}`, which [`special_basis`] brings into its unique
//! lower-triangular form. Reducing a point against that basis lands it in the
//! axis-aligned box `[0, v_11) x ... x [0, v_dd)`.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{hnf_column, to_rational, HnfResult, IntMatrix, Integer, Rational};
use crate::error::{Error, Result};

/// `Γ(A, b) = particular + span_Z(kernel_basis columns)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeRep {
    pub particular: Vec<Integer>,
    /// `n x (n - m)`, one kernel basis vector per column.
    pub kernel_basis: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    IntegerInfeasible,
    Feasible(AffineLatticeRep),
}

/// Integer points of `{x : A x = b}`, or a proof that there are none.
pub fn integer_solution_set(a: &IntMatrix, b: &[Integer]) -> Result<SolutionSet> {
    let hnf = hnf_column(a)?;
    solution_set_from_hnf(&hnf, b)
}

/// Same as [`integer_solution_set`] but reuses a column HNF of `A`.
pub fn solution_set_from_hnf(hnf: &HnfResult, b: &[Integer]) -> Result<SolutionSet> {
    let m = hnf.h.rows();
    let n = hnf.h.cols();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!("b has length {}, A has {m} rows", b.len())));
    }
    // Forward substitution on the lower-triangular pivot block.
    let mut y = vec![Integer::zero(); n];
    for i in 0..m {
        let mut rhs = b[i].clone();
        for j in 0..i {
            rhs -= hnf.h.get(i, j) * &y[j];
        }
        let (q, r) = rhs.div_rem(hnf.h.get(i, i));
        if !r.is_zero() {
            return Ok(SolutionSet::IntegerInfeasible);
        }
        y[i] = q;
    }
    let particular = hnf.u.mul_vec(&y)?;
    let kernel_cols: Vec<usize> = (m..n).collect();
    Ok(SolutionSet::Feasible(AffineLatticeRep {
        particular,
        kernel_basis: hnf.u.select_columns(&kernel_cols),
    }))
}

/// Forgets the first `m` coordinates of every vector.
pub fn project_drop_m(vectors: &[Vec<Integer>], m: usize) -> Result<Vec<Vec<Integer>>> {
    vectors
        .iter()
        .map(|v| {
            if v.len() <= m {
                Err(Error::DimensionMismatch(format!(
                    "cannot drop {m} coordinates from a vector of length {}",
                    v.len()
                )))
            } else {
                Ok(v[m..].to_vec())
            }
        })
        .collect()
}

/// The unique basis `g_1, ..., g_d` with `g_i = v_i1 e_1 + ... + v_ii e_i`,
/// `v_ii > 0` and `0 <= v_ij < v_jj` for `i > j`.
///
/// Row `i` of `v` holds the coordinates of `g_i`, so `v` is lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBasis {
    v: IntMatrix,
}

impl SpecialBasis {
    pub fn dim(&self) -> usize {
        self.v.rows()
    }

    /// Coefficient matrix, row `i` = `g_i`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn vector(&self, i: usize) -> Vec<Integer> {
        self.v.row(i).to_vec()
    }

    pub fn vectors(&self) -> Vec<Vec<Integer>> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    /// Side lengths `v_11, ..., v_dd` of the box.
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.dim()).map(|i| self.v.get(i, i).clone()).collect()
    }

    /// Basis vectors as matrix columns.
    pub fn as_columns(&self) -> IntMatrix {
        self.v.transpose()
    }

    /// Checks the defining shape constraints.
    pub fn is_valid(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            let vii = self.v.get(i, i);
            vii.is_positive()
                && (0..i).all(|j| {
                    let vij = self.v.get(i, j);
                    !vij.is_negative() && vij < self.v.get(j, j)
                })
                && (i + 1..d).all(|j| self.v.get(i, j).is_zero())
        })
    }

    /// True when the box `[0, v_11) x ... x [0, v_dd)` contains `w`.
    pub fn box_contains(&self, w: &[Integer]) -> bool {
        w.len() == self.dim()
            && w.iter().zip(self.diagonal()).all(|(x, side)| !x.is_negative() && *x < side)
    }
}

/// Brings a full-rank square basis (one vector per column) into special form.
///
/// The special form is the row-style HNF with coordinates and vectors both
/// renumbered back to front, so we reverse the coordinates, take the column
/// HNF, and read the columns back in reverse.
pub fn special_basis(basis: &IntMatrix) -> Result<SpecialBasis> {
    if !basis.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "special basis needs a square basis, got {}x{}",
            basis.rows(),
            basis.cols()
        )));
    }
    let d = basis.rows();
    let mut reversed = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            reversed.set(i, j, basis.get(d - 1 - i, j).clone());
        }
    }
    let hnf = hnf_column(&reversed).map_err(|e| match e {
        Error::RankDeficient => Error::Singular,
        other => other,
    })?;
    let mut v = IntMatrix::zeros(d, d);
    for k in 0..d {
        let gi = d - 1 - k;
        for coord in 0..d {
            v.set(gi, coord, hnf.h.get(d - 1 - coord, k).clone());
        }
    }
    Ok(SpecialBasis { v })
}

/// `det(Λ) = v_11 ... v_dd`.
pub fn lattice_determinant(basis: &SpecialBasis) -> Integer {
    basis.diagonal().iter().product()
}

/// Exact Gram–Schmidt data for `b_1, ..., b_k`:
/// `ĝ_i = b_i - Σ_{j<i} μ_ij ĝ_j`, `μ_ij = (b_i · ĝ_j) / |ĝ_j|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSchmidtData {
    pub orthogonal: Vec<Vec<Rational>>,
    /// `mu[i][j]` for `j < i`; `mu[i]` has length `i`.
    pub mu: Vec<Vec<Rational>>,
    pub norms_sq: Vec<Rational>,
}

impl GramSchmidtData {
    /// Coordinates of `x` along the orthogonal vectors; errors if `x` is outside their span.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let lambda: Vec<Rational> = self
            .orthogonal
            .iter()
            .zip(&self.norms_sq)
            .map(|(g, n)| crate::arith::rat_dot(x, g) / n)
            .collect();
        let mut rebuilt = vec![Rational::zero(); x.len()];
        for (l, g) in lambda.iter().zip(&self.orthogonal) {
            for (r, gc) in rebuilt.iter_mut().zip(g) {
                *r += l * gc;
            }
        }
        if rebuilt != x {
            return Err(Error::DimensionMismatch("point is not in the span of the basis".into()));
        }
        Ok(lambda)
    }
}

pub fn gram_schmidt(basis: &[Vec<Integer>]) -> Result<GramSchmidtData> {
    let dim = basis.first().map_or(0, Vec::len);
    if basis.iter().any(|b| b.len() != dim) {
        return Err(Error::DimensionMismatch("basis vectors differ in length".into()));
    }
    let mut orthogonal: Vec<Vec<Rational>> = Vec::with_capacity(basis.len());
    let mut norms_sq: Vec<Rational> = Vec::with_capacity(basis.len());
    let mut mu = Vec::with_capacity(basis.len());
    for b in basis {
        let bq = to_rational(b);
        let mut g = bq.clone();
        let mut row = Vec::with_capacity(orthogonal.len());
        for (gj, nj) in orthogonal.iter().zip(&norms_sq) {
            let m = crate::arith::rat_dot(&bq, gj) / nj;
            for (gc, gjc) in g.iter_mut().zip(gj) {
                *gc -= &m * gjc;
            }
            row.push(m);
        }
        let n = crate::arith::rat_dot(&g, &g);
        if n.is_zero() {
            return Err(Error::Singular);
        }
        orthogonal.push(g);
        norms_sq.push(n);
        mu.push(row);
    }
    Ok(GramSchmidtData { orthogonal, mu, norms_sq })
}

/// `x = y + w` with `y` in the lattice and every Gram–Schmidt coordinate of
/// `w` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxReduction {
    pub y: Vec<Integer>,
    pub w: Vec<Rational>,
    /// Integer multipliers: `y = Σ multipliers[i] * b_i`.
    pub multipliers: Vec<Integer>,
    /// Gram–Schmidt coordinates of `w`.
    pub box_coordinates: Vec<Rational>,
}

impl BoxReduction {
    pub fn w_integer(&self) -> Option<Vec<Integer>> {
        crate::arith::to_integer_vec(&self.w)
    }
}

/// Back-to-front floor sweep: subtract `⌊λ_i⌋ b_i` for `i = d, ..., 1`,
/// updating the remaining coordinates through `μ`.
pub fn box_reduce(basis: &[Vec<Integer>], x: &[Rational]) -> Result<BoxReduction> {
    let dim = basis.first().map_or(x.len(), Vec::len);
    if x.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "point has length {}, basis vectors have length {dim}",
            x.len()
        )));
    }
    let gs = gram_schmidt(basis)?;
    let mut lambda = gs.coordinates(x)?;
    let mut multipliers = vec![Integer::zero(); basis.len()];
    for i in (0..basis.len()).rev() {
        let k = lambda[i].floor().to_integer();
        if k.is_zero() {
            continue;
        }
        let kq = Rational::from_integer(k.clone());
        lambda[i] -= &kq;
        for j in 0..i {
            let s = &kq * &gs.mu[i][j];
            lambda[j] -= s;
        }
        multipliers[i] = k;
    }
    let mut y = vec![Integer::zero(); dim];
    for (k, b) in multipliers.iter().zip(basis) {
        for (yc, bc) in y.iter_mut().zip(b) {
            *yc += k * bc;
        }
    }
    let w = x
        .iter()
        .zip(&y)
        .map(|(xc, yc)| xc - Rational::from_integer(yc.clone()))
        .collect();
    debug_assert!(lambda.iter().all(|l| !l.is_negative() && *l < Rational::one()));
    Ok(BoxReduction { y, w, multipliers, box_coordinates: lambda })
}

/// Reduces an integer point against a special basis; the remainder is integer.
pub fn reduce_into_box(basis: &SpecialBasis, z: &[Integer]) -> Result<(Vec<Integer>, Vec<Integer>)> {
    let red = box_reduce(&basis.vectors(), &to_rational(z))?;
    let w = red.w_integer().expect("integer point reduced against an integer basis");
    Ok((red.y, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd_max_minors, det_exact, int, ints, rat};

    fn feasible(set: SolutionSet) -> AffineLatticeRep {
        match set {
            SolutionSet::Feasible(rep) => rep,
            SolutionSet::IntegerInfeasible => panic!("expected a feasible system"),
        }
    }

    fn check_rep(a: &IntMatrix, b: &[Integer], rep: &AffineLatticeRep) {
        assert_eq!(a.mul_vec(&rep.particular).unwrap(), b);
        let prod = a.mul(&rep.kernel_basis).unwrap();
        assert!(prod.entries().iter().all(Zero::is_zero));
    }

    #[test]
    fn solution_set_single_row() {
        let a = IntMatrix::from_rows(&[[2, 3]]);
        let rep = feasible(integer_solution_set(&a, &ints(&[1])).unwrap());
        check_rep(&a, &ints(&[1]), &rep);
        assert_eq!(rep.particular, ints(&[-1, 1]));
        assert_eq!(rep.kernel_basis.column(0), ints(&[3, -2]));
    }

    #[test]
    fn solution_set_infeasible() {
        let a = IntMatrix::from_rows(&[[2, 4]]);
        assert_eq!(integer_solution_set(&a, &ints(&[3])).unwrap(), SolutionSet::IntegerInfeasible);
    }

    #[test]
    fn solution_set_two_rows() {
        let a = IntMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        let rep = feasible(integer_solution_set(&a, &ints(&[2, 2])).unwrap());
        check_rep(&a, &ints(&[2, 2]), &rep);
        assert_eq!(rep.particular, ints(&[2, 2, 0]));
        assert_eq!(rep.kernel_basis.column(0), ints(&[-1, -1, 1]));
    }

    #[test]
    fn solution_set_wrong_rhs_length() {
        let a = IntMatrix::from_rows(&[[2, 3]]);
        assert!(matches!(integer_solution_set(&a, &ints(&[1, 2])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn projection() {
        assert_eq!(project_drop_m(&[ints(&[5, 2, 3])], 1).unwrap(), vec![ints(&[2, 3])]);
        assert_eq!(project_drop_m(&[ints(&[1, 2, 3, 4])], 2).unwrap(), vec![ints(&[3, 4])]);
        assert!(project_drop_m(&[ints(&[1, 2])], 2).is_err());

        let a = IntMatrix::from_rows(&[[3, 0, 1], [0, 3, 1]]);
        let rep = feasible(integer_solution_set(&a, &ints(&[0, 0])).unwrap());
        let k = rep.kernel_basis.column(0);
        // The kernel is spanned by ±(1, 1, -3).
        assert!(k == ints(&[1, 1, -3]) || k == ints(&[-1, -1, 3]));
        let p = project_drop_m(&[ints(&[1, 1, -3])], 2).unwrap();
        assert_eq!(p, vec![ints(&[-3])]);
    }

    #[test]
    fn special_basis_examples() {
        let id = special_basis(&IntMatrix::identity(2)).unwrap();
        assert_eq!(id.vectors(), vec![ints(&[1, 0]), ints(&[0, 1])]);

        let cols = IntMatrix::from_columns(2, &[ints(&[5, 0]), ints(&[-4, 1])]).unwrap();
        let sb = special_basis(&cols).unwrap();
        assert_eq!(sb.vectors(), vec![ints(&[5, 0]), ints(&[1, 1])]);
        assert!(sb.is_valid());

        let cols = IntMatrix::from_columns(2, &[ints(&[1, 1]), ints(&[2, 0])]).unwrap();
        let sb = special_basis(&cols).unwrap();
        assert_eq!(sb.vectors(), vec![ints(&[2, 0]), ints(&[1, 1])]);
        assert_eq!(lattice_determinant(&sb), int(2));
    }

    #[test]
    fn special_basis_is_idempotent_and_rejects_singular() {
        let cols = IntMatrix::from_rows(&[[3, 7, -2], [1, 4, 5], [0, 2, 9]]);
        let sb = special_basis(&cols).unwrap();
        assert!(sb.is_valid());
        assert_eq!(special_basis(&sb.as_columns()).unwrap(), sb);
        assert_eq!(lattice_determinant(&sb), det_exact(&cols).unwrap().abs());
        let singular = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(special_basis(&singular), Err(Error::Singular));
    }

    #[test]
    fn gram_schmidt_examples() {
        let gs = gram_schmidt(&[ints(&[2, 0]), ints(&[0, 3])]).unwrap();
        assert_eq!(gs.orthogonal, vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]]);
        assert_eq!(gs.mu[1], vec![rat(0, 1)]);

        let gs = gram_schmidt(&[ints(&[5, 0]), ints(&[1, 1])]).unwrap();
        assert_eq!(gs.orthogonal[1], vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(gs.mu[1][0], rat(1, 5));

        let gs = gram_schmidt(&[ints(&[1, 1]), ints(&[0, 1])]).unwrap();
        assert_eq!(gs.orthogonal[0], vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(gs.mu[1][0], rat(1, 2));
        assert_eq!(gs.orthogonal[1], vec![rat(-1, 2), rat(1, 2)]);

        assert_eq!(gram_schmidt(&[ints(&[1, 2]), ints(&[2, 4])]), Err(Error::Singular));
    }

    #[test]
    fn box_reduce_examples() {
        let basis = vec![ints(&[5, 0]), ints(&[1, 1])];
        let r = box_reduce(&basis, &to_rational(&ints(&[7, 0]))).unwrap();
        assert_eq!(r.y, ints(&[5, 0]));
        assert_eq!(r.w_integer().unwrap(), ints(&[2, 0]));

        let r = box_reduce(&basis, &to_rational(&ints(&[3, 0]))).unwrap();
        assert_eq!(r.y, ints(&[0, 0]));
        assert_eq!(r.w_integer().unwrap(), ints(&[3, 0]));

        let r = box_reduce(&basis, &to_rational(&ints(&[-1, -1]))).unwrap();
        assert_eq!(r.y, ints(&[-1, -1]));
        assert_eq!(r.w_integer().unwrap(), ints(&[0, 0]));

        assert!(matches!(
            box_reduce(&basis, &to_rational(&ints(&[1, 2, 3]))),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn box_reduce_rational_point_non_orthogonal_basis() {
        let basis = vec![ints(&[1, 1]), ints(&[0, 1])];
        let x = vec![rat(7, 3), rat(-5, 2)];
        let r = box_reduce(&basis, &x).unwrap();
        assert!(r.box_coordinates.iter().all(|l| !l.is_negative() && *l < Rational::one()));
        let rebuilt: Vec<Rational> =
            r.w.iter().zip(&r.y).map(|(w, y)| w + Rational::from_integer(y.clone())).collect();
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn box_reduce_rejects_point_outside_span() {
        let basis = vec![ints(&[1, 0, 0])];
        assert!(box_reduce(&basis, &to_rational(&ints(&[1, 1, 0]))).is_err());
    }

    #[test]
    fn projected_lattice_determinant_matches_minor_ratio() {
        let a = IntMatrix::from_rows(&[[5, 2, 3]]);
        let rep = feasible(integer_solution_set(&a, &ints(&[0])).unwrap());
        let proj = project_drop_m(&rep.kernel_basis.columns(), 1).unwrap();
        let sb = special_basis(&IntMatrix::from_columns(2, &proj).unwrap()).unwrap();
        assert_eq!(sb.vectors(), vec![ints(&[5, 0]), ints(&[1, 1])]);
        assert_eq!(lattice_determinant(&sb) * gcd_max_minors(&a, 1).unwrap(), int(5));
    }
}

//! Exact membership and depth tests for the simplicial cone `C_B`.
//!
//! `C_B = {y : B⁻¹ y >= 0}` has one facet hyperplane per row `r_i` of `B⁻¹`.
//! The Euclidean distance from an interior point `y` to the boundary is the
//! smallest facet distance `(B⁻¹ y)_i / |r_i|`: the ball of that radius
//! satisfies every facet inequality, and walking from `y` straight towards
//! the nearest facet hyperplane leaves the cone no later than it reaches that
//! hyperplane. So `y ∈ C_B(t)` iff `(B⁻¹ y)_i >= t |r_i|` for every `i`,
//! and squaring both sides (after a sign check) keeps the test radical-free.
//!
//! Every verdict here is exact. [`t_size_bound`] is the one
//! floating-point value, and it only feeds human-readable reports.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{det_exact, inverse_rational, rat_dot, to_rational, IntMatrix, Integer, Rational};
use crate::error::{Error, Result};

/// Per-facet comparison, in squared distance units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetMargin {
    /// 0-based facet (row of `B⁻¹`).
    pub facet: usize,
    /// Squared distance from the tested point to the facet hyperplane.
    pub lhs_sq: Rational,
    /// Squared required distance.
    pub rhs_sq: Rational,
    /// Whether the tested point is on the inner side of the facet.
    pub lhs_nonnegative: bool,
    /// Sign of the required distance (only negative for shifted cones).
    pub rhs_nonnegative: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    pub per_facet: Vec<FacetMargin>,
    /// Squared threshold: `l_N² (D - 1)²` for the deep-cone test,
    /// the squared shift factor `s²` for the shifted-cone test.
    pub t_squared: Rational,
}

impl ConditionReport {
    fn from_facets(per_facet: Vec<FacetMargin>, t_squared: Rational) -> Self {
        ConditionReport { holds: per_facet.iter().all(|f| f.passes), per_facet, t_squared }
    }
}

fn check_basis(b: &IntMatrix) -> Result<()> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    Ok(())
}

/// Coordinates of `y` in the basis `B`, i.e. `B⁻¹ y`.
fn cone_coordinates(inv: &[Vec<Rational>], y: &[Integer]) -> Vec<Rational> {
    let yq = to_rational(y);
    inv.iter().map(|row| rat_dot(row, &yq)).collect()
}

fn row_norms_sq(inv: &[Vec<Rational>]) -> Vec<Rational> {
    inv.iter().map(|row| rat_dot(row, row)).collect()
}

/// `y ∈ C_B`, tested exactly through `B⁻¹ y >= 0`.
pub fn in_cone(b: &IntMatrix, y: &[Integer]) -> Result<bool> {
    check_basis(b)?;
    if y.len() != b.rows() {
        return Err(Error::DimensionMismatch(format!("point of length {} for {} rows", y.len(), b.rows())));
    }
    let inv = inverse_rational(b)?;
    Ok(cone_coordinates(&inv, y).iter().all(|c| !c.is_negative()))
}

/// True when every column of `n` lies in `C_B`, i.e. `C_B = C_(B|N)`.
pub fn cone_contains_columns(b: &IntMatrix, n: &IntMatrix) -> Result<bool> {
    for col in n.columns() {
        if !in_cone(b, &col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `D = |det B| / gcd(A)`, the determinant of the projected lattice.
pub fn lattice_index(b: &IntMatrix, gcd_a: &Integer) -> Result<Rational> {
    if !gcd_a.is_positive() {
        return Err(Error::Input(format!("gcd(A) must be positive, got {gcd_a}")));
    }
    let det = det_exact(b)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok(Rational::new(det.abs(), gcd_a.clone()))
}

/// Does `b` lie at distance at least `l_N (|det B| / gcd(A) - 1)` from the
/// boundary of `C_B`?
pub fn deep_cone_condition(b_mat: &IntMatrix, n_mat: &IntMatrix, gcd_a: &Integer, b: &[Integer]) -> Result<ConditionReport> {
    check_basis(b_mat)?;
    if b.len() != b_mat.rows() {
        return Err(Error::DimensionMismatch(format!("b has length {}, B has {} rows", b.len(), b_mat.rows())));
    }
    let d = lattice_index(b_mat, gcd_a)?;
    let l_n_sq = Rational::from_integer(n_mat.max_column_norm_sq());
    let excess = d - Rational::from_integer(1.into());
    let t_squared = l_n_sq * &excess * &excess;

    let inv = inverse_rational(b_mat)?;
    let coords = cone_coordinates(&inv, b);
    let facets = coords
        .iter()
        .zip(row_norms_sq(&inv))
        .enumerate()
        .map(|(i, (c, rn))| {
            let lhs_sq = c * c / rn;
            let lhs_nonnegative = !c.is_negative();
            FacetMargin {
                facet: i,
                passes: lhs_nonnegative && lhs_sq >= t_squared,
                lhs_sq,
                rhs_sq: t_squared.clone(),
                lhs_nonnegative,
                rhs_nonnegative: true,
            }
        })
        .collect();
    Ok(ConditionReport::from_facets(facets, t_squared))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftedConeCheck {
    Applicable(ConditionReport),
    /// Some column of `N` lies outside `C_B`, so `C_B != C_A`.
    NotApplicable,
}

impl ShiftedConeCheck {
    pub fn holds(&self) -> Option<bool> {
        match self {
            ShiftedConeCheck::Applicable(r) => Some(r.holds),
            ShiftedConeCheck::NotApplicable => None,
        }
    }
}

/// Two-row test `b ∈ s v + C_A` with `v` the column sum of `A` and
/// `s = l_B l_N (|det B| - 1) / |det B|`, valid when `C_B = C_A`.
///
/// Per facet this is `(B⁻¹ b)_i >= s (B⁻¹ v)_i`; both sides are reported
/// divided by `|r_i|` so the numbers are squared distances.
pub fn shifted_cone_condition_m2(a: &IntMatrix, b_mat: &IntMatrix, n_mat: &IntMatrix, b: &[Integer]) -> Result<ShiftedConeCheck> {
    if a.rows() != 2 {
        return Err(Error::WrongM(a.rows()));
    }
    check_basis(b_mat)?;
    if b_mat.rows() != 2 || n_mat.rows() != 2 || b.len() != 2 {
        return Err(Error::DimensionMismatch("two-row test needs 2-row B, N and b".into()));
    }
    let det = det_exact(b_mat)?.abs();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if !cone_contains_columns(b_mat, n_mat)? {
        return Ok(ShiftedConeCheck::NotApplicable);
    }
    let v: Vec<Integer> = (0..2).map(|i| a.row(i).iter().sum()).collect();
    let q = Rational::from_integer(b_mat.max_column_norm_sq() * n_mat.max_column_norm_sq());
    let det_q = Rational::from_integer(det);
    let factor = (&det_q - Rational::from_integer(1.into())) / &det_q;
    let shift_sq = &q * &factor * &factor;

    let inv = inverse_rational(b_mat)?;
    let cb = cone_coordinates(&inv, b);
    let cv = cone_coordinates(&inv, &v);
    let facets = cb
        .iter()
        .zip(&cv)
        .zip(row_norms_sq(&inv))
        .enumerate()
        .map(|(i, ((c, dv), rn))| {
            let e = &factor * dv;
            let lhs_sq = c * c / &rn;
            let rhs_sq = &q * &e * &e / &rn;
            let lhs_nonnegative = !c.is_negative();
            let rhs_nonnegative = !e.is_negative();
            // c >= sqrt(q) e
            let passes = if rhs_nonnegative {
                lhs_nonnegative && lhs_sq >= rhs_sq
            } else {
                lhs_nonnegative || lhs_sq <= rhs_sq
            };
            FacetMargin { facet: i, lhs_sq, rhs_sq, lhs_nonnegative, rhs_nonnegative, passes }
        })
        .collect();
    Ok(ShiftedConeCheck::Applicable(ConditionReport::from_facets(facets, shift_sq)))
}

/// `p(m, n) = 2^{-1/2} (n - m)^{1/2} n^{1/2}`.
pub fn p_factor(m: usize, n: usize) -> f64 {
    ((n - m) as f64).sqrt() * (n as f64).sqrt() / std::f64::consts::SQRT_2
}

/// Approximate cone-shift bound `2^{(n-m)/2 - 1} p(m, n) sqrt(det(A Aᵀ))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TBoundDiagnostic {
    pub det_aat: Integer,
    pub p: f64,
    pub bound: f64,
}

pub fn t_size_bound(m: usize, n: usize, a: &IntMatrix) -> Result<TBoundDiagnostic> {
    if a.rows() != m || a.cols() != n || m >= n {
        return Err(Error::DimensionMismatch(format!(
            "expected an {m}x{n} matrix with m < n, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let det_aat = det_exact(&a.mul(&a.transpose())?)?;
    if det_aat.is_zero() {
        return Err(Error::RankDeficient);
    }
    let p = p_factor(m, n);
    let exp = ((n - m) as f64) / 2.0 - 1.0;
    let det_f = det_aat.to_f64().unwrap_or(f64::INFINITY);
    Ok(TBoundDiagnostic { bound: exp.exp2() * p * det_f.sqrt(), det_aat, p })
}

/// Smallest distance of `y` to a facet hyperplane of `C_B`, squared and signed by side.
pub fn facet_distance_sq(b: &IntMatrix, y: &[Integer]) -> Result<Vec<Rational>> {
    let inv = inverse_rational(b)?;
    Ok(cone_coordinates(&inv, y)
        .iter()
        .zip(row_norms_sq(&inv))
        .map(|(c, rn)| {
            let d = c * c / rn;
            if c.is_negative() { -d } else { d }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ints, rat};

    #[test]
    fn in_cone_examples() {
        let i2 = IntMatrix::identity(2);
        assert!(in_cone(&i2, &ints(&[1, 1])).unwrap());
        assert!(!in_cone(&i2, &ints(&[-1, 0])).unwrap());
        let b = IntMatrix::from_rows(&[[2, 1], [1, 2]]);
        assert!(in_cone(&b, &ints(&[3, 3])).unwrap());
        assert!(!in_cone(&b, &ints(&[3, 0])).unwrap());
        assert_eq!(in_cone(&IntMatrix::from_rows(&[[1, 2], [2, 4]]), &ints(&[1, 1])), Err(Error::Singular));
    }

    #[test]
    fn deep_cone_diagonal_example() {
        let b = IntMatrix::from_rows(&[[3, 0], [0, 3]]);
        let n = IntMatrix::from_rows(&[[1], [1]]);
        let r = deep_cone_condition(&b, &n, &int(3), &ints(&[3, 3])).unwrap();
        assert!(r.holds);
        assert_eq!(r.t_squared, rat(8, 1));
        assert!(r.per_facet.iter().all(|f| f.lhs_sq == rat(9, 1)));

        let r = deep_cone_condition(&b, &n, &int(3), &ints(&[2, 3])).unwrap();
        assert!(!r.holds);
        assert_eq!(r.per_facet[0].lhs_sq, rat(4, 1));
        assert!(!r.per_facet[0].passes);
        assert!(r.per_facet[1].passes);
    }

    #[test]
    fn deep_cone_with_zero_threshold_is_cone_membership() {
        let b = IntMatrix::from_rows(&[[2, 1], [1, 3]]);
        let n = IntMatrix::from_rows(&[[7, 1], [4, 9]]);
        let gcd = det_exact(&b).unwrap().abs();
        for y in [[0, 0], [2, 1], [1, 3], [3, 4], [-1, 2], [5, -1], [1, 0]] {
            let y = ints(&y);
            let r = deep_cone_condition(&b, &n, &gcd, &y).unwrap();
            assert_eq!(r.t_squared, rat(0, 1));
            assert_eq!(r.holds, in_cone(&b, &y).unwrap());
        }
    }

    #[test]
    fn deep_cone_identity_basis() {
        let b = IntMatrix::identity(3);
        let n = IntMatrix::from_rows(&[[100], [-40], [7]]);
        assert!(deep_cone_condition(&b, &n, &int(1), &ints(&[0, 5, 0])).unwrap().holds);
        assert!(!deep_cone_condition(&b, &n, &int(1), &ints(&[0, -5, 0])).unwrap().holds);
    }

    #[test]
    fn deep_cone_rejects_bad_gcd() {
        let b = IntMatrix::identity(2);
        let n = IntMatrix::from_rows(&[[1], [1]]);
        assert!(deep_cone_condition(&b, &n, &int(0), &ints(&[1, 1])).is_err());
    }

    #[test]
    fn shifted_cone_examples() {
        let a = IntMatrix::from_rows(&[[2, 0, 1], [0, 2, 1]]);
        let b = IntMatrix::from_rows(&[[2, 0], [0, 2]]);
        let n = IntMatrix::from_rows(&[[1], [1]]);
        let ShiftedConeCheck::Applicable(r) = shifted_cone_condition_m2(&a, &b, &n, &ints(&[7, 7])).unwrap() else {
            panic!("cone equality should hold");
        };
        assert!(r.holds);
        assert_eq!(r.t_squared, rat(9, 2));
        assert_eq!(r.per_facet[0].lhs_sq, rat(49, 1));
        assert_eq!(r.per_facet[0].rhs_sq, rat(81, 2));
        let r = shifted_cone_condition_m2(&a, &b, &n, &ints(&[6, 6])).unwrap();
        assert_eq!(r.holds(), Some(false));
    }

    #[test]
    fn shifted_cone_unit_determinant_is_membership() {
        let a = IntMatrix::from_rows(&[[1, 1, 2], [0, 1, 1]]);
        let b = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let n = IntMatrix::from_rows(&[[2], [1]]);
        for y in [[3, 1], [0, 0], [1, 2], [5, 0]] {
            let y = ints(&y);
            let r = shifted_cone_condition_m2(&a, &b, &n, &y).unwrap();
            assert_eq!(r.holds(), Some(in_cone(&b, &y).unwrap()));
        }
    }

    #[test]
    fn shifted_cone_not_applicable_and_wrong_m() {
        let a = IntMatrix::from_rows(&[[1, 0, -1], [0, 1, 1]]);
        let b = IntMatrix::identity(2);
        let n = IntMatrix::from_rows(&[[-1], [1]]);
        assert_eq!(shifted_cone_condition_m2(&a, &b, &n, &ints(&[4, 4])).unwrap(), ShiftedConeCheck::NotApplicable);
        let a1 = IntMatrix::from_rows(&[[1, 2, 3]]);
        assert_eq!(
            shifted_cone_condition_m2(&a1, &IntMatrix::identity(1), &IntMatrix::from_rows(&[[2, 3]]), &ints(&[1])),
            Err(Error::WrongM(1))
        );
    }

    #[test]
    fn t_bound_values() {
        let r = t_size_bound(1, 2, &IntMatrix::from_rows(&[[2, 3]])).unwrap();
        assert_eq!(r.det_aat, int(13));
        assert!((r.bound - 2.5495097567963922).abs() < 1e-12);
        assert!((p_factor(2, 4) - 2.0).abs() < 1e-12);
        for m in 1..6 {
            assert!((p_factor(m, m + 1) - ((m as f64 + 1.0) / 2.0).sqrt()).abs() < 1e-12);
        }
        assert_eq!(
            t_size_bound(2, 3, &IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]])).unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn facet_distances() {
        let b = IntMatrix::from_rows(&[[3, 0], [0, 3]]);
        assert_eq!(facet_distance_sq(&b, &ints(&[2, -3])).unwrap(), vec![rat(4, 1), rat(-9, 1)]);
    }
}

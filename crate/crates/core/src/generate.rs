//! Seeded random instances.
//!
//! Generation is a pure function of the configuration and the seed
//! (ChaCha8 stream), so the same arguments always produce the same instance.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{det_exact, gcd_max_minors, inverse_rational, rat_dot, to_rational, IntMatrix, Integer, Rational};
use crate::cone::{deep_cone_condition, lattice_index};
use crate::error::{Error, Result};
use crate::solver::ProblemInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// `b = A x` for a random `x >= 0`.
    Feasible,
    /// As `Feasible`, then shifted by `B k` until `b` is deep in `C_B`.
    Deep,
    /// `b` on a facet of `C_B`.
    Boundary,
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "feasible" => Ok(GenMode::Feasible),
            "deep" => Ok(GenMode::Deep),
            "boundary" => Ok(GenMode::Boundary),
            other => Err(Error::Input(format!("unknown mode `{other}` (feasible, deep, boundary)"))),
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenMode::Feasible => "feasible",
            GenMode::Deep => "deep",
            GenMode::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub m: usize,
    pub n: usize,
    /// Entries of `A` are drawn from `[-max_entry, max_entry]`, or `[1, max_entry]` when `positive`.
    pub max_entry: i64,
    pub mode: GenMode,
    pub positive: bool,
    /// Coordinates of the random nonnegative point used to build `b`.
    pub max_coord: i64,
}

impl GenConfig {
    pub fn new(m: usize, n: usize, mode: GenMode) -> Self {
        GenConfig { m, n, max_entry: 20, mode, positive: false, max_coord: 5 }
    }
}

const MAX_ATTEMPTS: usize = 1_000;

pub fn generate_instance(cfg: &GenConfig, seed: u64) -> Result<ProblemInstance> {
    if cfg.m == 0 || cfg.m >= cfg.n {
        return Err(Error::Input(format!("need 0 < m < n, got m={} n={}", cfg.m, cfg.n)));
    }
    if cfg.max_entry < 1 || cfg.max_coord < 0 {
        return Err(Error::Input("max entry must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<usize> = (0..cfg.m).collect();
    for _ in 0..MAX_ATTEMPTS {
        let lo = if cfg.positive { 1 } else { -cfg.max_entry };
        let data: Vec<Integer> = (0..cfg.m * cfg.n).map(|_| Integer::from(rng.gen_range(lo..=cfg.max_entry))).collect();
        let a = IntMatrix::from_vec(cfg.m, cfg.n, data)?;
        let b_mat = a.select_columns(&basis);
        if det_exact(&b_mat)?.is_zero() {
            continue;
        }
        let b = match cfg.mode {
            GenMode::Feasible => random_image(&a, cfg.max_coord, &mut rng)?,
            GenMode::Deep => {
                let b = random_image(&a, cfg.max_coord, &mut rng)?;
                deepen(&a, &b_mat, b)?
            }
            GenMode::Boundary => {
                let facet = rng.gen_range(0..cfg.m);
                let c: Vec<Integer> = (0..cfg.m)
                    .map(|i| if i == facet { Integer::zero() } else { Integer::from(rng.gen_range(0..=cfg.max_coord)) })
                    .collect();
                b_mat.mul_vec(&c)?
            }
        };
        return ProblemInstance::new(a, b);
    }
    Err(Error::Input(format!("no nonsingular basis after {MAX_ATTEMPTS} attempts")))
}

fn random_image(a: &IntMatrix, max_coord: i64, rng: &mut ChaCha8Rng) -> Result<Vec<Integer>> {
    let x: Vec<Integer> = (0..a.cols()).map(|_| Integer::from(rng.gen_range(0..=max_coord))).collect();
    a.mul_vec(&x)
}

/// Adds the smallest `B k`, `k >= 0` integer, that puts `b` deep in `C_B`.
/// Adding columns of `B` keeps an integer feasible `b` feasible.
pub fn deepen(a: &IntMatrix, b_mat: &IntMatrix, b: Vec<Integer>) -> Result<Vec<Integer>> {
    let m = b_mat.rows();
    let rest: Vec<usize> = (m..a.cols()).collect();
    let n_mat = a.select_columns(&rest);
    let gcd = gcd_max_minors(a, m)?;
    let excess = lattice_index(b_mat, &gcd)? - Rational::from_integer(1.into());
    let t_sq = Rational::from_integer(n_mat.max_column_norm_sq()) * &excess * &excess;
    let inv = inverse_rational(b_mat)?;
    let coords: Vec<Rational> = inv.iter().map(|row| rat_dot(row, &to_rational(&b))).collect();
    let k: Vec<Integer> = coords
        .iter()
        .zip(&inv)
        .map(|(c, row)| min_shift(c, &(&t_sq * rat_dot(row, row))))
        .collect();
    let shift = b_mat.mul_vec(&k)?;
    let out: Vec<Integer> = b.iter().zip(&shift).map(|(x, s)| x + s).collect();
    let report = deep_cone_condition(b_mat, &n_mat, &gcd, &out)?;
    assert!(report.holds, "shifted right-hand side must satisfy the deep-cone test");
    Ok(out)
}

/// Smallest integer `k >= 0` with `c + k >= 0` and `(c + k)² >= q`.
fn min_shift(c: &Rational, q: &Rational) -> Integer {
    let ok = |k: &Integer| {
        let v = c + Rational::from_integer(k.clone());
        !v.is_negative() && &v * &v >= *q
    };
    // Lower estimate: sqrt(floor(q)) - ceil(c) - 1, clamped at zero.
    let root = q.floor().to_integer().sqrt();
    let mut k = root - c.ceil().to_integer() - Integer::from(1);
    if k.is_negative() {
        k = Integer::zero();
    }
    while !ok(&k) {
        k += 1;
    }
    k
}

// How far `b` must sit inside the basis cone for the lift to be nonnegative.
//
// ```bash
// cargo run --example deep_cone_check
// ```

use std::error::Error;

use diophantine_box::arith::{gcd_max_minors, ints};
use diophantine_box::cone::{t_size_bound, deep_cone_condition, facet_distance_sq, in_cone};
use diophantine_box::IntMatrix;

pub fn run() -> Result<(), Box<dyn Error>> {
    let a = IntMatrix::from_rows(&[[3, 0, 1], [0, 3, 1]]);
    let b_mat = a.select_columns(&[0, 1]);
    let n_mat = a.select_columns(&[2]);
    let g = gcd_max_minors(&a, 2)?;

    for b in [ints(&[3, 3]), ints(&[2, 3]), ints(&[-1, 5])] {
        let report = deep_cone_condition(&b_mat, &n_mat, &g, &b)?;
        println!("b = {b:?}: in cone {}, deep {}", in_cone(&b_mat, &b)?, report.holds);
        for f in &report.per_facet {
            println!(
                "  facet {}: distance² {} vs required {} -> {}",
                f.facet + 1,
                f.lhs_sq,
                f.rhs_sq,
                if f.passes { "ok" } else { "short" }
            );
        }
    }

    let d = facet_distance_sq(&b_mat, &ints(&[6, 9]))?;
    println!("squared facet distances of (6, 9): {:?}", d.iter().map(ToString::to_string).collect::<Vec<_>>());

    let t = t_size_bound(2, 3, &a)?;
    println!("floating-point size bound ≈ {:.3} (det A Aᵀ = {})", t.bound, t.det_aat);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// The two-row shifted-cone test and its relation to the deep-cone test.
//
// ```bash
// cargo run --example shifted_cone_m2
// ```

use std::error::Error;

use diophantine_box::arith::{gcd_max_minors, ints};
use diophantine_box::cone::{deep_cone_condition, shifted_cone_condition_m2, ShiftedConeCheck};
use diophantine_box::IntMatrix;

pub fn run() -> Result<(), Box<dyn Error>> {
    // Columns 1 and 3 span the cone of all columns.
    let a = IntMatrix::from_rows(&[[5, 3, 1], [1, 2, 4]]);
    let b_mat = a.select_columns(&[0, 2]);
    let n_mat = a.select_columns(&[1]);
    let g = gcd_max_minors(&a, 2)?;
    println!("gcd(A) = {g}");

    let mut held = 0;
    for b in [ints(&[40, 40]), ints(&[150, 140]), ints(&[180, 140]), ints(&[400, 300])] {
        let shifted = shifted_cone_condition_m2(&a, &b_mat, &n_mat, &b)?;
        let deep = deep_cone_condition(&b_mat, &n_mat, &g, &b)?;
        match &shifted {
            ShiftedConeCheck::Applicable(r) => println!(
                "b = {b:?}: shifted {} (s² = {}), deep {}",
                r.holds, r.t_squared, deep.holds
            ),
            ShiftedConeCheck::NotApplicable => println!("b = {b:?}: not applicable"),
        }
        if shifted.holds() == Some(true) {
            assert!(deep.holds);
            held += 1;
        }
    }
    assert!(held > 0);

    // With a basis that does not span the whole cone the test does not apply.
    let other = shifted_cone_condition_m2(&a, &a.select_columns(&[0, 1]), &a.select_columns(&[2]), &ints(&[40, 40]))?;
    assert_eq!(other, ShiftedConeCheck::NotApplicable);
    println!("basis (1, 2): {other:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// Column Hermite normal form, the integer kernel, and the gcd of maximal minors.
//
// ```bash
// cargo run --example hermite_normal_form
// ```

use std::error::Error;

use diophantine_box::arith::{det_exact, gcd_max_minors, hnf_column};
use diophantine_box::lattice::{integer_solution_set, SolutionSet};
use diophantine_box::{IntMatrix, Integer};

pub fn run() -> Result<(), Box<dyn Error>> {
    let a = IntMatrix::from_rows(&[[4, 6, 10, 3], [2, 9, 1, 7]]);
    let hnf = hnf_column(&a)?;
    println!("A =\n{a:?}");
    println!("H = A U =\n{:?}", hnf.h);
    println!("U =\n{:?}", hnf.u);
    assert_eq!(a.mul(&hnf.u)?, hnf.h);
    assert_eq!(det_exact(&hnf.u)?.magnitude(), &1u32.into());

    let g = gcd_max_minors(&a, a.rows())?;
    println!("gcd of 2x2 minors = {g} (product of pivots {:?})", hnf.pivots());

    let b: Vec<Integer> = [7, 3].map(Integer::from).to_vec();
    match integer_solution_set(&a, &b)? {
        SolutionSet::IntegerInfeasible => println!("A x = {b:?} has no integer solution"),
        SolutionSet::Feasible(rep) => {
            println!("particular solution {:?}", rep.particular);
            assert_eq!(a.mul_vec(&rep.particular)?, b);
            for col in rep.kernel_basis.columns() {
                println!("kernel vector {col:?}");
                assert!(a.mul_vec(&col)?.iter().all(|v| *v == Integer::from(0)));
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

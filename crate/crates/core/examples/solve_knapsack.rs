// Solving `A x = b` and reading the outcome.
//
// ```bash
// cargo run --example solve_knapsack
// ```

use std::error::Error;

use diophantine_box::arith::ints;
use diophantine_box::solver::solve_detailed;
use diophantine_box::{solve, verify, IntMatrix, ProblemInstance, SolveOutcome};

fn describe(inst: &ProblemInstance) -> Result<(), Box<dyn Error>> {
    match solve(inst)? {
        SolveOutcome::Nonnegative(x) => {
            assert!(verify(&inst.a, &inst.b, &x)?);
            println!("b = {:?}: nonnegative solution {x:?}", inst.b);
        }
        SolveOutcome::IntegerOnly(x, report) => {
            // Not a proof of infeasibility; the deep-cone test simply did not apply.
            println!("b = {:?}: integer solution {x:?}, deep-cone test holds: {}", inst.b, report.holds);
        }
        SolveOutcome::IntegerInfeasible => println!("b = {:?}: no integer solution", inst.b),
    }
    Ok(())
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let a = IntMatrix::from_rows(&[[5, 2, 3]]);
    for b in [4, 1, 23, 100] {
        describe(&ProblemInstance::new(a.clone(), ints(&[b]))?)?;
    }

    describe(&ProblemInstance::new(IntMatrix::from_rows(&[[2, 4]]), ints(&[3]))?)?;

    let two_rows = IntMatrix::from_rows(&[[3, 1, 4, 2], [1, 5, 2, 3]]);
    let inst = ProblemInstance::new(two_rows, ints(&[40, 38]))?;
    describe(&inst)?;

    // The trace exposes every intermediate value.
    let report = solve_detailed(&inst)?;
    let t = &report.trace;
    println!(
        "basis columns {:?}, gcd(A) = {}, det = {:?}, z = {:?}, w = {:?}, u = {:?}",
        t.partition.basis_cols, t.gcd_a, t.lattice_det, t.z, t.w, t.u
    );

    // Choosing a different basis changes the guarantee region.
    let with_cols = inst.clone().with_basis_cols(vec![2, 3]);
    describe(&with_cols)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

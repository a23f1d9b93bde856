// Cross-checking the solver against exhaustive search on small systems.
//
// ```bash
// cargo run --example brute_force_oracle
// ```

use std::error::Error;

use diophantine_box::arith::ints;
use diophantine_box::oracle::{brute_force_solve, enumerate_all, BruteForceOutcome, EnumerationBudget};
use diophantine_box::{solve, IntMatrix, ProblemInstance, SolveOutcome};

pub fn run() -> Result<(), Box<dyn Error>> {
    let a = IntMatrix::from_rows(&[[4, 7, 9], [3, 1, 5]]);
    let budget = EnumerationBudget { per_variable_bound: 200, node_cap: 1_000_000 };
    let (mut agree, mut solver_missed) = (0, 0);
    for b0 in (0..60).step_by(3) {
        for b1 in (0..30).step_by(2) {
            let b = ints(&[b0, b1]);
            let oracle = brute_force_solve(&a, &b, budget)?;
            let outcome = solve(&ProblemInstance::new(a.clone(), b.clone())?)?;
            match (&oracle, &outcome) {
                (BruteForceOutcome::Found(_), SolveOutcome::Nonnegative(_)) => agree += 1,
                (BruteForceOutcome::NoneWithinBounds { conclusive: true }, o) => {
                    assert!(!o.is_nonnegative());
                    agree += 1;
                }
                (BruteForceOutcome::Found(_), _) => solver_missed += 1,
                _ => {}
            }
        }
    }
    // Misses are expected near the boundary of the cone, where no guarantee applies.
    println!("agree on {agree} right-hand sides; {solver_missed} feasible ones outside the guaranteed region");

    let all = enumerate_all(&IntMatrix::from_rows(&[[2, 3, 5]]), &ints(&[10]), 5)?;
    println!("all nonnegative solutions of 2x + 3y + 5z = 10: {all:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

// Single-row tools: gcd chain, Brauer's bound and the exact Frobenius number.
//
// ```bash
// cargo run --example frobenius_brauer
// ```

use std::error::Error;

use diophantine_box::arith::ints;
use diophantine_box::frobenius::{box_shape, brauer_g, f_chain, frobenius_number_dp, DEFAULT_DP_CAP};
use diophantine_box::{solve, IntMatrix, ProblemInstance};

pub fn run() -> Result<(), Box<dyn Error>> {
    for a in [ints(&[3, 5]), ints(&[6, 10, 15]), ints(&[12, 17, 23, 31])] {
        let chain = f_chain(&a)?;
        let g = brauer_g(&a)?;
        let f = frobenius_number_dp(&a, DEFAULT_DP_CAP)?;
        let shape: Vec<String> = box_shape(&a)?.iter().map(ToString::to_string).collect();
        println!("a = {a:?}: f = {:?}, G = {g}, F = {f}, box {shape:?}", chain.values());
        assert!(f <= g);

        // Every right-hand side above G is solved without search.
        let row = IntMatrix::from_vec(1, a.len(), a.clone())?;
        for k in 1..=25 {
            let inst = ProblemInstance::new(row.clone(), vec![&g + k])?;
            assert!(solve(&inst)?.is_nonnegative());
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

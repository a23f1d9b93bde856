// Reducing a lattice basis to its lower-triangular special form and folding
// points into the Gram–Schmidt box.
//
// ```bash
// cargo run --example special_basis_box
// ```

use std::error::Error;

use diophantine_box::arith::{ints, to_rational};
use diophantine_box::lattice::{box_reduce, gram_schmidt, lattice_determinant, reduce_into_box, special_basis};
use diophantine_box::IntMatrix;

pub fn run() -> Result<(), Box<dyn Error>> {
    // Basis vectors as columns.
    let basis = IntMatrix::from_columns(3, &[ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])])?;
    let sb = special_basis(&basis)?;
    println!("special basis (row i = g_i):\n{:?}", sb.matrix());
    println!("box sides {:?}, det = {}", sb.diagonal(), lattice_determinant(&sb));
    assert!(sb.is_valid());

    let gs = gram_schmidt(&sb.vectors())?;
    println!("Gram–Schmidt norms² {:?}", gs.norms_sq.iter().map(ToString::to_string).collect::<Vec<_>>());

    for z in [ints(&[17, -4, 9]), ints(&[-30, 2, 55]), ints(&[0, 0, 0])] {
        let (y, w) = reduce_into_box(&sb, &z)?;
        println!("z = {z:?} -> y = {y:?} (lattice) + w = {w:?} (box)");
        assert!(sb.box_contains(&w));
    }

    // The general routine also reduces rational points.
    let point = to_rational(&ints(&[7, 8, 9]));
    let r = box_reduce(&basis.columns(), &point)?;
    println!(
        "box coordinates of (7, 8, 9) in the original basis: {:?}",
        r.box_coordinates.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

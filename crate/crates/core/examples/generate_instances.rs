// Seeded instance generation and JSON files.
//
// ```bash
// cargo run --example generate_instances
// ```

use std::error::Error;

use diophantine_box::cli::files::InstanceFile;
use diophantine_box::cli::{generate_instance_json, solve_to_result};
use diophantine_box::generate::{generate_instance, GenConfig, GenMode};

pub fn run() -> Result<(), Box<dyn Error>> {
    for mode in [GenMode::Feasible, GenMode::Deep, GenMode::Boundary] {
        let cfg = GenConfig::new(2, 4, mode);
        let inst = generate_instance(&cfg, 7)?;
        let (result, code) = solve_to_result(&inst, false)?;
        println!("{mode}: b = {:?} -> {} (exit {code})", inst.b, result.status);
    }

    let mut cfg = GenConfig::new(1, 4, GenMode::Deep);
    cfg.positive = true;
    cfg.max_entry = 12;
    let text = generate_instance_json(&cfg, 2024)?;
    assert_eq!(text, generate_instance_json(&cfg, 2024)?);
    print!("{text}");

    let back = InstanceFile::parse(&text)?.to_instance()?;
    let (result, _) = solve_to_result(&back, false)?;
    print!("{}", result.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

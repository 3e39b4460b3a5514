// The variant x sort grid over the bundled benchmark fixtures, printed as a
// table and as CSV.

use std::error::Error;
use std::path::Path;

use dsopforge::cli::{cmd_bench, render_table, RunOptions};
use dsopforge::{SortPolicy, Variant};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/bench");
    let variants = [Variant::Dsop1, Variant::Dsop3, Variant::Dsop5];
    let report = cmd_bench(&dir, &variants, &SortPolicy::ALL, &RunOptions::default())?;
    print!("{}", render_table(&report.rows));
    println!();
    print!("{}", report.to_csv()?);
    assert!(report.failures.is_empty());
    assert!(report.rows.iter().all(|r| r.verified));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

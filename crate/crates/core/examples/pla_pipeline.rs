// PLA text in, per-output DSOP, PLA text out; then the same through the
// command driver with verification and stats.

use std::error::Error;

use dsopforge::cli::{cmd_dsop, RunOptions};
use dsopforge::pla::split_outputs;
use dsopforge::{dsop, parse_pla, write_pla, DsopConfig, PlaType};

const INPUT: &str = "\
# two outputs sharing a product
.i 4
.o 2
.ilb a b c d
.ob f g
.type fd
0-0- 10
-1-1 11
01-- 10
1-1- 1-
.e
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let pla = parse_pla(INPUT)?;
    let functions = split_outputs(&pla);
    let covers = functions
        .iter()
        .map(|f| dsop(f, &DsopConfig::default()))
        .collect::<Result<Vec<_>, _>>()?;
    for (j, (f, d)) in functions.iter().zip(&covers).enumerate() {
        println!("output {j}: on {}  dc {}  ->  {d}", f.on, f.dc);
    }
    print!("{}", write_pla(&covers, &[], Some(&pla.labels), PlaType::F)?);

    let opts = RunOptions {
        verify: true,
        ..RunOptions::default()
    };
    let out = cmd_dsop("two_outputs", &pla, &opts)?;
    println!("{}", serde_json::to_string_pretty(&out.stats)?);
    assert!(out.stats.verified);
    assert_eq!(out.pla.declared_products, Some(out.stats.dsop_size));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

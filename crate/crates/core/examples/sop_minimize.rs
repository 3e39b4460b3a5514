// The SOP minimizer that starts every outer pass, and its building blocks.

use std::error::Error;

use dsopforge::sop::{expand_cube, irredundant};
use dsopforge::{build_sop, Cover, FunctionSpec, MinimizerBackend};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let valid = Cover::parse(4, &["0-0-", "01--"])?;
    let grown = expand_cube(&"0100".parse()?, &valid)?;
    println!("expand 0100 in {valid} -> {grown}");
    assert_eq!(grown.to_string(), "01--");

    let p = Cover::parse(3, &["0-1", "11-", "-11"])?;
    let kept = irredundant(&p, &p);
    println!("irredundant {p} -> {kept}");
    assert_eq!(kept.len(), 2);

    // on = {000}, dc = {001, 010, 011}: the don't cares let 000 grow to 0--
    let f = FunctionSpec::new(Cover::parse(3, &["000"])?, Cover::parse(3, &["001", "01-"])?)?;
    for backend in [MinimizerBackend::Builtin, MinimizerBackend::Identity] {
        println!("{backend}: {}", build_sop(&f, &backend)?);
    }
    assert_eq!(build_sop(&f, &MinimizerBackend::Builtin)?.to_string(), "{0--}");

    // what DSOPFORGE_MINIMIZER would select
    println!("from environment: {}", MinimizerBackend::from_env());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

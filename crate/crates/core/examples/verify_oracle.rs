// Brute-force contract checks, sampling above the enumeration cap, and the
// exact minimum-size solver.

use std::error::Error;

use dsopforge::verify::{verify_dsop_with, VerifyOptions};
use dsopforge::{dsop, exact_min_dsop, verify_dsop, Cover, DsopConfig, FunctionSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FunctionSpec::completely_specified(Cover::parse(3, &["1--", "-1-"])?);

    let overlapping = f.on.clone();
    let report = verify_dsop(&f, &overlapping)?;
    println!("the SOP itself: {report}");
    assert!(!report.ok);
    assert_eq!(report.overlapping_pairs, vec![(0, 1)]);

    let d = dsop(&f, &DsopConfig::default())?;
    println!("heuristic {d}: {}", verify_dsop(&f, &d)?);

    let exact = exact_min_dsop(&f, 5)?;
    println!("exact minimum {exact}");
    assert!(d.len() >= exact.len());

    // 30 inputs is past the default cap: a seeded sample is checked instead
    let wide = FunctionSpec::completely_specified(Cover::parse(30, &["1".repeat(15) + &"-".repeat(15)])?);
    let opts = VerifyOptions {
        samples: 10_000,
        ..VerifyOptions::default()
    };
    let report = verify_dsop_with(&wide, &wide.on, &opts)?;
    println!("30 inputs: {report}");
    assert!(report.ok && report.sampling.is_some());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

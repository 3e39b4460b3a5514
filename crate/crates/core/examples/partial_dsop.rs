// Partial DSOP: points of one part covered exactly once, points of the
// other part any number of times.

use std::error::Error;

use dsopforge::verify::verify_partial_dsop;
use dsopforge::{partial_break, partial_dsop, Cover, DsopConfig, FunctionSpec, PartialSpec, SortPolicy, Variant};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = PartialSpec::new(
        FunctionSpec::completely_specified(Cover::parse(4, &["011-", "1101"])?),
        FunctionSpec::completely_specified(Cover::parse(4, &["0-0-", "1-1-"])?),
    )?;

    let p = "01--".parse()?;
    for q in ["-1-1", "0-0-", "0110"] {
        let out = partial_break(&q.parse()?, &p, &spec)?;
        println!("break {q} by {p}: {out:?}");
    }

    let d = partial_dsop(&spec, &DsopConfig::new(Variant::Dsop1, SortPolicy::DimensionWeight))?;
    let report = verify_partial_dsop(&spec, &d)?;
    println!("cover {d}: {report}");
    assert_eq!(d.len(), 4);
    assert!(report.ok);
    // the two shared-part cubes overlap each other, which plain DSOP forbids
    assert!(!d.is_pairwise_disjoint());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

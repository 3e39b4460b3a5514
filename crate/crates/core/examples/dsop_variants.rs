// All five variants under both sort policies on one function, with the
// per-pass counters of each run.

use std::error::Error;

use dsopforge::{dsop_run, verify_dsop, Cover, DsopConfig, FunctionSpec, SortPolicy, Variant};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = FunctionSpec::completely_specified(Cover::parse(4, &["0-0-", "-1-1", "01--", "1-1-"])?);
    for variant in Variant::ALL {
        for sort in SortPolicy::ALL {
            let run = dsop_run(&f, &DsopConfig::new(variant, sort))?;
            assert!(verify_dsop(&f, &run.cover)?.ok);
            let cubes: Vec<String> = run.cover.iter().map(ToString::to_string).collect();
            println!(
                "DSOP-{} {sort}: {} cubes in {} passes  [{}]",
                variant.number(),
                run.cover.len(),
                run.passes.len(),
                cubes.join(" ")
            );
            for (i, p) in run.passes.iter().enumerate() {
                println!(
                    "    pass {i}: sop {} isolated {} selected {} carried {}",
                    p.sop_size, p.isolated, p.selected, p.carried
                );
            }
        }
    }

    let run = dsop_run(&f, &DsopConfig::new(Variant::Dsop1, SortPolicy::DimensionWeight))?;
    assert_eq!(run.cover.len(), 4);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

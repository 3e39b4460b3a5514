// Cube intersection, containment, disjoint sharp and cover tautology.

use std::error::Error;

use dsopforge::{Cover, Cube};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q: Cube = "0-0-".parse()?;
    let p: Cube = "-1-1".parse()?;

    let meet = q.intersect(&p)?.expect("the cubes overlap");
    println!("{q} ∩ {p} = {meet}");
    assert_eq!(meet.to_string(), "0101");
    println!("literals shared: {}", q.common_literal_count(&p)?);

    let frags = q.disjoint_sharp(&p)?;
    println!("{q} # {p} = {}", join(&frags));
    assert_eq!(join(&frags), "000- 0100");
    // one fragment per literal of p that q does not already carry
    assert_eq!(frags.len(), p.literal_count() - q.common_literal_count(&p)?);

    let cover = Cover::parse(3, &["0--", "1-0", "-11"])?;
    println!("{cover} tautology: {}", cover.is_tautology());
    assert!(!cover.is_tautology());
    let missing: Cube = "101".parse()?;
    println!("contains {missing}: {}", cover.contains_cube(&missing)?);
    assert!(!cover.contains_cube(&missing)?);

    let whole = cover.union(&Cover::parse(3, &["1-1"])?)?;
    assert!(whole.is_tautology());
    println!("after adding 1-1: tautology {}", whole.is_tautology());
    Ok(())
}

fn join(cubes: &[Cube]) -> String {
    cubes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

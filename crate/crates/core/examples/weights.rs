// Cube weights on a four-cube cover and the order each sort policy picks.

use std::error::Error;

use dsopforge::engine::{sort_cubes, weight_all};
use dsopforge::{Cover, SortPolicy};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // A = ¬x1¬x3, B = x2x4, C = ¬x1x2, D = x1x3
    let cover = Cover::parse(4, &["0-0-", "-1-1", "01--", "1-1-"])?;
    let weighted = weight_all(&cover);
    for (name, w) in ["A", "B", "C", "D"].iter().zip(&weighted) {
        println!("w({name}) = {:>2}   {}", w.weight, w.cube);
    }
    let weights: Vec<i64> = weighted.iter().map(|w| w.weight).collect();
    assert_eq!(weights, [1, 2, 0, 1]);

    for policy in SortPolicy::ALL {
        let order = sort_cubes(weighted.clone(), policy);
        let cubes: Vec<String> = order.iter().map(|w| w.cube.to_string()).collect();
        println!("{policy}: {}", cubes.join(" "));
        assert_eq!(cubes.first().map(String::as_str), Some("01--"));
        assert_eq!(cubes.last().map(String::as_str), Some("-1-1"));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// `x1x2 + x3x4 + ...`: m products whose smallest disjoint cover has
// 2^m - 1 cubes.

use std::error::Error;

use dsopforge::verify::chain_family;
use dsopforge::{dsop, exact_min_dsop, DsopConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for m in 1..=3 {
        let f = chain_family(m);
        let heuristic = dsop(&f, &DsopConfig::default())?;
        let exact = exact_min_dsop(&f, 2 * m)?;
        println!(
            "m={m}: sop {}  dsop {}  exact {}  2^m-1 = {}",
            f.on.len(),
            heuristic.len(),
            exact.len(),
            (1 << m) - 1
        );
        assert_eq!(exact.len(), (1 << m) - 1);
        assert_eq!(heuristic.len(), exact.len());
    }
    for m in 4..=6 {
        let size = dsop(&chain_family(m), &DsopConfig::default())?.len();
        println!("m={m}: dsop {size}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

#![allow(dead_code)]

use dsopforge::{Cover, Cube, FunctionSpec, PartialSpec, Trit};
use rand::Rng;

pub fn random_cube(rng: &mut impl Rng, n: usize, free: f64) -> Cube {
    let trits: Vec<Trit> = (0..n)
        .map(|_| {
            if rng.gen_bool(free) {
                Trit::Free
            } else if rng.gen_bool(0.5) {
                Trit::One
            } else {
                Trit::Zero
            }
        })
        .collect();
    Cube::from_trits(&trits)
}

pub fn random_cover(rng: &mut impl Rng, n: usize, k: usize, free: f64) -> Cover {
    Cover::from_cubes(n, (0..k).map(|_| random_cube(rng, n, free))).unwrap()
}

/// Points of `a` outside `b`, as disjoint pieces of each cube of `a`.
pub fn minus(a: &Cover, b: &Cover) -> Cover {
    let mut out = Vec::new();
    for cube in a {
        let mut pieces = vec![cube.clone()];
        for r in b {
            pieces = pieces
                .into_iter()
                .flat_map(|q| match q.intersect(r).unwrap() {
                    Some(_) => q.disjoint_sharp(r).unwrap(),
                    None => vec![q],
                })
                .collect();
        }
        out.extend(pieces);
    }
    Cover::from_cubes(a.n(), out).unwrap()
}

/// Pairwise-disjoint cover with roughly `k` cubes.
pub fn disjoint_cover(rng: &mut impl Rng, n: usize, k: usize, free: f64) -> Cover {
    let mut acc = Cover::new(n);
    for _ in 0..k {
        let c = Cover::from_cubes(n, [random_cube(rng, n, free)]).unwrap();
        acc = acc.union(&minus(&c, &acc)).unwrap();
    }
    acc
}

pub fn random_spec(rng: &mut impl Rng, max_n: usize) -> FunctionSpec {
    let n = rng.gen_range(1..=max_n);
    let free = rng.gen_range(0.2..0.8);
    let k = rng.gen_range(0..=6);
    let on = random_cover(rng, n, k, free);
    let dc = if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=4);
        minus(&random_cover(rng, n, k, free), &on)
    } else {
        Cover::new(n)
    };
    FunctionSpec::new(on, dc).unwrap()
}

pub fn random_partial<R: Rng>(rng: &mut R, max_n: usize) -> PartialSpec {
    let n = rng.gen_range(1..=max_n);
    let free = rng.gen_range(0.2..0.8);
    let mut taken = Cover::new(n);
    let mut part = |rng: &mut R, k| {
        let c = minus(&random_cover(rng, n, k, free), &taken);
        taken = taken.union(&c).unwrap();
        c
    };
    let k = rng.gen_range(0..=4);
    let d_on = part(rng, k);
    let d_dc = if rng.gen_bool(0.3) { part(rng, 2) } else { Cover::new(n) };
    let k = rng.gen_range(0..=4);
    let s_on = part(rng, k);
    let s_dc = if rng.gen_bool(0.3) { part(rng, 2) } else { Cover::new(n) };
    PartialSpec::new(
        FunctionSpec::new(d_on, d_dc).unwrap(),
        FunctionSpec::new(s_on, s_dc).unwrap(),
    )
    .unwrap()
}

/// Minterm indicator vector of a cover (bit i of the index = variable i).
pub fn points(c: &Cover) -> Vec<bool> {
    let mut v = vec![false; 1 << c.n()];
    for cube in c {
        for m in cube.minterms() {
            v[m as usize] = true;
        }
    }
    v
}

//! Ground-truth checks for synthesized covers.
//!
//! Up to the enumeration cap every minterm is classified and its cover
//! multiplicity compared against the contract of its class. Above the cap a
//! seeded random sample of minterms is checked instead and the report says
//! so. Pairwise disjointness of DSOP results is always checked exactly, on
//! the cubes themselves.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{Cover, FunctionSpec, DEFAULT_ENUM_LIMIT};
use crate::cube::{Cube, Trit};
use crate::error::{Error, Result};
use crate::partial::PartialSpec;

const MAX_RECORDED: usize = 64;

/// Largest `n` the exact solver supports (points fit a `u128` mask).
pub const EXACT_MAX_VARS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Dsop,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    ExactlyOnce,
    AtMostOnce,
    AtLeastOnce,
    Never,
}

impl Constraint {
    fn holds(self, count: u32) -> bool {
        match self {
            Constraint::ExactlyOnce => count == 1,
            Constraint::AtMostOnce => count <= 1,
            Constraint::AtLeastOnce => count >= 1,
            Constraint::Never => count == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "as_string")]
    pub minterm: Cube,
    pub expected: Constraint,
    pub observed: u32,
}

fn as_string<S: serde::Serializer>(c: &Cube, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub mode: VerifyMode,
    /// First violations found (at most 64 are kept).
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    /// Index pairs of result cubes that intersect (DSOP mode).
    pub overlapping_pairs: Vec<(usize, usize)>,
    /// Present when the check was sampled rather than exhaustive.
    pub sampling: Option<Sampling>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "ok")?;
        } else {
            write!(
                f,
                "{} minterm violations, {} overlapping pairs",
                self.violation_count,
                self.overlapping_pairs.len()
            )?;
            if let Some(v) = self.violations.first() {
                write!(f, " (first: {} expected {:?}, covered {}x)", v.minterm, v.expected, v.observed)?;
            }
        }
        if let Some(s) = self.sampling {
            write!(f, " [sampled {} points, seed {}]", s.samples, s.seed)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_enum: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_enum: DEFAULT_ENUM_LIMIT,
            samples: 1_000_000,
            seed: 0x5eed_d50f,
        }
    }
}

/// Checks that `d` is a DSOP of `f`.
pub fn verify_dsop(f: &FunctionSpec, d: &Cover) -> Result<VerificationReport> {
    verify_dsop_with(f, d, &VerifyOptions::default())
}

pub fn verify_dsop_with(f: &FunctionSpec, d: &Cover, opts: &VerifyOptions) -> Result<VerificationReport> {
    same_n(f.n(), d)?;
    let classes = [
        (&f.on, Some(Constraint::ExactlyOnce)),
        (&f.dc, Some(Constraint::AtMostOnce)),
    ];
    let mut report = check_points(f.n(), &classes, d, VerifyMode::Dsop, opts);
    report.overlapping_pairs = d.overlapping_pairs().collect();
    report.ok = report.violation_count == 0 && report.overlapping_pairs.is_empty();
    Ok(report)
}

/// Checks the partial-DSOP contract: `sop_d.on` exactly once, `sop_d.dc`
/// at most once, `sop_s.on` at least once, `sop_s.dc` free, off never.
pub fn verify_partial_dsop(spec: &PartialSpec, d: &Cover) -> Result<VerificationReport> {
    verify_partial_dsop_with(spec, d, &VerifyOptions::default())
}

pub fn verify_partial_dsop_with(
    spec: &PartialSpec,
    d: &Cover,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    same_n(spec.n(), d)?;
    let classes = [
        (&spec.sop_d().on, Some(Constraint::ExactlyOnce)),
        (&spec.sop_d().dc, Some(Constraint::AtMostOnce)),
        (&spec.sop_s().on, Some(Constraint::AtLeastOnce)),
        (&spec.sop_s().dc, None),
    ];
    let mut report = check_points(spec.n(), &classes, d, VerifyMode::Partial, opts);
    report.ok = report.violation_count == 0;
    Ok(report)
}

fn same_n(n: usize, d: &Cover) -> Result<()> {
    if d.n() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: n, right: d.n() })
    }
}

/// Class index of a point: position in `classes`, or `classes.len()` for
/// off. Later classes win on overlap.
fn classify(point: &Cube, classes: &[Class]) -> usize {
    classes
        .iter()
        .rposition(|(cover, _)| cover.iter().any(|c| c.includes(point)))
        .unwrap_or(classes.len())
}

/// `None` marks points whose multiplicity is unconstrained.
type Class<'a> = (&'a Cover, Option<Constraint>);

fn constraint_of(class: usize, classes: &[Class]) -> Option<Constraint> {
    classes.get(class).map_or(Some(Constraint::Never), |&(_, c)| c)
}

fn check_points(
    n: usize,
    classes: &[Class],
    d: &Cover,
    mode: VerifyMode,
    opts: &VerifyOptions,
) -> VerificationReport {
    let mut report = VerificationReport {
        ok: false,
        mode,
        violations: Vec::new(),
        violation_count: 0,
        overlapping_pairs: Vec::new(),
        sampling: None,
    };
    let mut record = |point: &dyn Fn() -> Cube, expected: Constraint, observed: u32| {
        report.violation_count += 1;
        if report.violations.len() < MAX_RECORDED {
            report.violations.push(Violation {
                minterm: point(),
                expected,
                observed,
            });
        }
    };

    if n <= opts.max_enum && n <= 32 {
        let counts = d.minterm_counts(opts.max_enum).expect("n within the cap");
        let mut class = vec![classes.len() as u8; 1usize << n];
        for (k, (cover, _)) in classes.iter().enumerate() {
            for cube in cover.iter() {
                for m in cube.minterms() {
                    class[m as usize] = k as u8;
                }
            }
        }
        for (m, (&k, &count)) in class.iter().zip(counts.as_slice()).enumerate() {
            if let Some(expected) = constraint_of(k as usize, classes) {
                if !expected.holds(count as u32) {
                    record(&|| Cube::minterm(n, m as u64), expected, count as u32);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let trits: Vec<Trit> = (0..n)
                .map(|_| if rng.gen::<bool>() { Trit::One } else { Trit::Zero })
                .collect();
            let point = Cube::from_trits(&trits);
            let count = d.iter().filter(|c| c.includes(&point)).count() as u32;
            let k = classify(&point, classes);
            if let Some(expected) = constraint_of(k, classes) {
                if !expected.holds(count) {
                    record(&|| point.clone(), expected, count);
                }
            }
        }
        report.sampling = Some(Sampling {
            samples: opts.samples,
            seed: opts.seed,
        });
    }
    report
}

fn point_mask(cube: &Cube) -> u128 {
    cube.minterms().fold(0u128, |acc, m| acc | 1u128 << m)
}

fn all_cubes(n: usize) -> Vec<Cube> {
    let mut out = vec![Cube::universe(n)];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|c| [Trit::Free, Trit::Zero, Trit::One].map(|t| c.with(i, t)))
            .collect();
    }
    out
}

/// Minimum-size DSOP of `f` by exhaustive search, for `n <= max_n`.
///
/// Candidates are all implicants of `on ∪ dc` touching `on`; sizes
/// `k = 1, 2, ...` are tried in turn, so the first solution is minimum.
pub fn exact_min_dsop(f: &FunctionSpec, max_n: usize) -> Result<Cover> {
    let n = f.n();
    let limit = max_n.min(EXACT_MAX_VARS);
    if n > limit {
        return Err(Error::Capacity { n, limit });
    }
    let on: u128 = f.on.iter().map(point_mask).fold(0, |a, b| a | b);
    let care: u128 = on | f.dc.iter().map(point_mask).fold(0, |a, b| a | b);
    if on == 0 {
        return Ok(Cover::new(n));
    }
    let mut implicants: Vec<(Cube, u128)> = all_cubes(n)
        .into_iter()
        .map(|c| {
            let m = point_mask(&c);
            (c, m)
        })
        .filter(|&(_, m)| m & !care == 0 && m & on != 0)
        .collect();
    // big cubes first so good solutions surface early at each depth
    implicants.sort_by(|a, b| b.1.count_ones().cmp(&a.1.count_ones()).then_with(|| a.0.cmp(&b.0)));

    let points = 1usize << n;
    let by_point: Vec<Vec<usize>> = (0..points)
        .map(|m| {
            (0..implicants.len())
                .filter(|&i| implicants[i].1 >> m & 1 == 1)
                .collect()
        })
        .collect();
    let largest = implicants[0].1.count_ones();

    let search = Search {
        implicants: &implicants,
        by_point: &by_point,
        largest,
    };
    for k in 1..=on.count_ones() as usize {
        let mut chosen = Vec::with_capacity(k);
        if search.run(on, 0, k, &mut chosen) {
            let cubes = chosen.into_iter().map(|i| implicants[i].0.clone()).collect();
            return Ok(Cover::from_vec_unchecked(n, cubes));
        }
    }
    unreachable!("the on-set minterms themselves form a DSOP")
}

struct Search<'a> {
    implicants: &'a [(Cube, u128)],
    by_point: &'a [Vec<usize>],
    largest: u32,
}

impl Search<'_> {
    fn run(&self, uncovered: u128, used: u128, budget: usize, chosen: &mut Vec<usize>) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0 || uncovered.count_ones() > self.largest * budget as u32 {
            return false;
        }
        let m = uncovered.trailing_zeros() as usize;
        for &i in &self.by_point[m] {
            let mask = self.implicants[i].1;
            if mask & used != 0 {
                continue;
            }
            chosen.push(i);
            if self.run(uncovered & !mask, used | mask, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// `x1x2 + x3x4 + ... + x_{2m-1}x_{2m}`: `m` products whose minimum DSOP
/// needs `2^m - 1` cubes.
pub fn chain_family(m: usize) -> FunctionSpec {
    assert!(m >= 1, "chain_family needs m >= 1");
    let n = 2 * m;
    let cubes = (0..m).map(|i| {
        Cube::universe(n)
            .with(2 * i, Trit::One)
            .with(2 * i + 1, Trit::One)
    });
    FunctionSpec::completely_specified(Cover::from_cubes(n, cubes).expect("uniform width"))
}

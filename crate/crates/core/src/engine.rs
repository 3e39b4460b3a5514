//! Cube weights, the two sort policies and the DSOP synthesis loop.
//!
//! Each outer pass re-minimizes what is left to cover, moves the cubes that
//! overlap nothing straight into the result, then repeatedly selects the
//! head of the weighted order. Every remaining cube that overlaps the
//! selected one is split with disjoint sharp; what happens to the fragments
//! is decided by the [`Variant`]. Fragments parked in the side buffer are
//! re-split against every later selection and become the on-set of the next
//! pass.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cover::{Cover, FunctionSpec};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::sop::{build_sop, MinimizerBackend};

/// Fragment-handling policy applied after each split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Variant {
    /// Fragments go to the side buffer.
    Dsop1,
    /// As 1, then cubes overlapping the split cube are re-weighted and the
    /// pool re-sorted.
    Dsop2,
    /// Fragments and every pool cube overlapping the split cube leave the
    /// pool for the next pass.
    Dsop3,
    /// A lone fragment stays in the pool; full re-weight and re-sort.
    Dsop4,
    /// The biggest fragment stays in the pool; full re-weight and re-sort.
    Dsop5,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Dsop1,
        Variant::Dsop2,
        Variant::Dsop3,
        Variant::Dsop4,
        Variant::Dsop5,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

impl TryFrom<u8> for Variant {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        Variant::ALL
            .get((v as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| format!("variant must be 1..=5, got {v}"))
    }
}

impl From<Variant> for u8 {
    fn from(v: Variant) -> u8 {
        v.number()
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v: u8 = s.trim().parse().map_err(|_| format!("variant must be 1..=5, got `{s}`"))?;
        Variant::try_from(v)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Ordering of the weighted pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SortPolicy {
    /// Decreasing dimension, then increasing weight.
    #[serde(rename = "dw")]
    DimensionWeight,
    /// Increasing weight, then decreasing dimension.
    #[serde(rename = "wd")]
    WeightDimension,
}

impl SortPolicy {
    pub const ALL: [SortPolicy; 2] = [SortPolicy::DimensionWeight, SortPolicy::WeightDimension];

    pub fn as_str(self) -> &'static str {
        match self {
            SortPolicy::DimensionWeight => "dw",
            SortPolicy::WeightDimension => "wd",
        }
    }
}

impl FromStr for SortPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dw" => Ok(SortPolicy::DimensionWeight),
            "wd" => Ok(SortPolicy::WeightDimension),
            _ => Err(format!("sort must be dw or wd, got `{s}`")),
        }
    }
}

impl fmt::Display for SortPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsopConfig {
    pub variant: Variant,
    pub sort: SortPolicy,
    /// Skip cubes that touch no point of the original on-set.
    pub drop_dc_only: bool,
    pub backend: MinimizerBackend,
    pub max_outer_iterations: usize,
}

impl Default for DsopConfig {
    fn default() -> Self {
        DsopConfig {
            variant: Variant::Dsop3,
            sort: SortPolicy::DimensionWeight,
            drop_dc_only: false,
            backend: MinimizerBackend::Builtin,
            max_outer_iterations: 10_000,
        }
    }
}

impl DsopConfig {
    pub fn new(variant: Variant, sort: SortPolicy) -> DsopConfig {
        DsopConfig {
            variant,
            sort,
            ..DsopConfig::default()
        }
    }

    pub fn with_backend(mut self, backend: MinimizerBackend) -> DsopConfig {
        self.backend = backend;
        self
    }

    pub fn with_drop_dc_only(mut self, on: bool) -> DsopConfig {
        self.drop_dc_only = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCube {
    pub cube: Cube,
    /// `-1` when the cube overlaps no peer.
    pub weight: i64,
}

/// Extra fragments forced on `q` if `p` is selected:
/// `literal_count(p) - common_literal_count(p, q) - 1`.
pub fn relative_weight(p: &Cube, q: &Cube) -> Result<i64> {
    if p.intersect(q)?.is_none() {
        return Err(Error::contract(format!("relative_weight on disjoint cubes {p} and {q}")));
    }
    Ok(rel_weight(p, q))
}

fn rel_weight(p: &Cube, q: &Cube) -> i64 {
    p.literal_count() as i64 - p.shared_literals(q) as i64 - 1
}

fn weight_against<'a>(p: &Cube, peers: impl Iterator<Item = &'a Cube>) -> i64 {
    let mut touched = false;
    let mut total = 0;
    for q in peers.filter(|q| q.overlaps(p)) {
        touched = true;
        total += rel_weight(p, q);
    }
    if touched {
        total
    } else {
        -1
    }
}

/// Weight of every cube against the other cubes of `p`.
pub fn weight_all(p: &Cover) -> Vec<WeightedCube> {
    let cubes = p.cubes();
    cubes
        .iter()
        .enumerate()
        .map(|(i, c)| WeightedCube {
            cube: c.clone(),
            weight: weight_against(
                c,
                cubes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q),
            ),
        })
        .collect()
}

fn compare(policy: SortPolicy, a: (&Cube, i64), b: (&Cube, i64)) -> Ordering {
    let by_dim = b.0.dimension().cmp(&a.0.dimension());
    let by_weight = a.1.cmp(&b.1);
    let primary = match policy {
        SortPolicy::DimensionWeight => by_dim.then(by_weight),
        SortPolicy::WeightDimension => by_weight.then(by_dim),
    };
    primary.then_with(|| a.0.cmp(b.0))
}

/// Stable sort by the policy's key pair, remaining ties by trit string.
pub fn sort_cubes(mut w: Vec<WeightedCube>, policy: SortPolicy) -> Vec<WeightedCube> {
    w.sort_by(|a, b| compare(policy, (&a.cube, a.weight), (&b.cube, b.weight)));
    w
}

/// True iff `p` touches no point of `original_on`.
pub fn covers_only_dc(p: &Cube, original_on: &Cover) -> Result<bool> {
    Ok(!original_on.intersects_cube(p)?)
}

/// Disjoint cover of `f`: every on-point exactly once, nothing outside
/// `on ∪ dc`.
pub fn dsop(f: &FunctionSpec, cfg: &DsopConfig) -> Result<Cover> {
    Ok(dsop_run(f, cfg)?.cover)
}

/// [`dsop`] plus per-pass bookkeeping.
pub fn dsop_run(f: &FunctionSpec, cfg: &DsopConfig) -> Result<DsopRun> {
    run(
        Problem {
            on: f.on.clone(),
            first_dc: f.dc.clone(),
            original_on: f.on.clone(),
            rule: Rule::Disjoint,
        },
        cfg,
    )
}

/// Counters for one outer pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PassSummary {
    /// Cubes returned by the SOP minimizer.
    pub sop_size: usize,
    /// Cubes overlapping no peer, accepted without weighting.
    pub isolated: usize,
    /// Cubes taken from the head of the weighted pool.
    pub selected: usize,
    /// Cubes skipped as don't-care only.
    pub dropped: usize,
    /// Fragments handed to the next pass.
    pub carried: usize,
    /// Result size at the end of the pass.
    pub result_len: usize,
}

#[derive(Clone, Debug)]
pub struct DsopRun {
    pub cover: Cover,
    /// The SOP built by the first pass, empty for an empty on-set.
    pub initial_sop: Cover,
    pub passes: Vec<PassSummary>,
}

impl DsopRun {
    pub fn initial_sop_size(&self) -> usize {
        self.initial_sop.len()
    }
}

/// Result of splitting `q` after `p` was selected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BreakOutcome {
    /// `q` may keep overlapping `p` and stays where it is.
    Keep,
    /// `q` is replaced by `fragments`; `reusable` cubes are already covered
    /// points that may be covered again.
    Split {
        fragments: Vec<Cube>,
        reusable: Vec<Cube>,
    },
}

impl BreakOutcome {
    pub fn is_kept(&self) -> bool {
        matches!(self, BreakOutcome::Keep)
    }

    pub fn fragments(&self) -> &[Cube] {
        match self {
            BreakOutcome::Keep => &[],
            BreakOutcome::Split { fragments, .. } => fragments,
        }
    }

    pub fn reusable(&self) -> &[Cube] {
        match self {
            BreakOutcome::Keep => &[],
            BreakOutcome::Split { reusable, .. } => reusable,
        }
    }
}

pub(crate) enum Rule {
    Disjoint,
    /// `shared` = points that may be covered many times, `exact` = points
    /// that must be covered at most once.
    Partial {
        shared: Cover,
        exact: Cover,
        shared_dc: Cover,
    },
}

impl Rule {
    pub(crate) fn split(&self, q: &Cube, p: &Cube) -> BreakOutcome {
        let Some(pi) = q.meet(p) else {
            return BreakOutcome::Split {
                fragments: vec![q.clone()],
                reusable: Vec::new(),
            };
        };
        match self {
            Rule::Disjoint => BreakOutcome::Split {
                fragments: q.sharp_by(&pi),
                reusable: Vec::new(),
            },
            Rule::Partial { shared, exact, .. } => {
                if shared.covers(&pi) {
                    BreakOutcome::Keep
                } else if exact.covers(&pi) {
                    BreakOutcome::Split {
                        fragments: q.sharp_by(&pi),
                        reusable: Vec::new(),
                    }
                } else {
                    BreakOutcome::Split {
                        fragments: q.sharp_by(&pi),
                        reusable: shared.iter().filter_map(|s| s.meet(&pi)).collect(),
                    }
                }
            }
        }
    }
}

pub(crate) struct Problem {
    pub on: Cover,
    /// Don't cares seen by the first minimization only.
    pub first_dc: Cover,
    pub original_on: Cover,
    pub rule: Rule,
}

struct Entry {
    id: u64,
    cube: Cube,
    weight: i64,
}

/// The weighted, sorted pool `P` of the current pass.
struct Pool {
    entries: Vec<Entry>,
    next_id: u64,
    policy: SortPolicy,
}

impl Pool {
    fn new(cubes: Vec<Cube>, policy: SortPolicy) -> Pool {
        let mut pool = Pool {
            entries: Vec::with_capacity(cubes.len()),
            next_id: 0,
            policy,
        };
        for c in cubes {
            pool.insert(c);
        }
        pool
    }

    fn insert(&mut self, cube: Cube) {
        self.entries.push(Entry {
            id: self.next_id,
            cube,
            weight: -1,
        });
        self.next_id += 1;
    }

    fn position(&self, id: u64) -> Option<usize> {
        self.entries.iter().position(|e| e.id == id)
    }

    fn take(&mut self, id: u64) -> Option<Cube> {
        self.position(id).map(|i| self.entries.remove(i).cube)
    }

    fn pop_front(&mut self) -> Option<Cube> {
        (!self.entries.is_empty()).then(|| self.entries.remove(0).cube)
    }

    fn ids_overlapping(&self, cube: &Cube) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| e.cube.overlaps(cube))
            .map(|e| e.id)
            .collect()
    }

    fn weight_of(&self, idx: usize) -> i64 {
        let me = &self.entries[idx];
        weight_against(
            &me.cube,
            self.entries.iter().filter(|e| e.id != me.id).map(|e| &e.cube),
        )
    }

    fn reweight(&mut self, ids: &[u64]) {
        for &id in ids {
            if let Some(i) = self.position(id) {
                self.entries[i].weight = self.weight_of(i);
            }
        }
    }

    fn reweight_all(&mut self) {
        let weights: Vec<i64> = (0..self.entries.len()).map(|i| self.weight_of(i)).collect();
        for (e, w) in self.entries.iter_mut().zip(weights) {
            e.weight = w;
        }
    }

    fn sort(&mut self) {
        let policy = self.policy;
        self.entries
            .sort_by(|a, b| compare(policy, (&a.cube, a.weight), (&b.cube, b.weight)));
    }
}

/// Picks the fragment with the largest dimension, ties to the smallest
/// trit string.
fn biggest(fragments: &[Cube]) -> Option<usize> {
    (0..fragments.len()).min_by(|&a, &b| {
        fragments[b]
            .dimension()
            .cmp(&fragments[a].dimension())
            .then_with(|| fragments[a].cmp(&fragments[b]))
    })
}

fn opt(variant: Variant, q: &Cube, mut fragments: Vec<Cube>, pool: &mut Pool, side: &mut Vec<Cube>) {
    match variant {
        Variant::Dsop1 => side.extend(fragments),
        Variant::Dsop2 => {
            side.extend(fragments);
            let touched = pool.ids_overlapping(q);
            pool.reweight(&touched);
            pool.sort();
        }
        Variant::Dsop3 => {
            side.extend(fragments);
            for id in pool.ids_overlapping(q) {
                side.extend(pool.take(id));
            }
        }
        Variant::Dsop4 => {
            if fragments.len() == 1 {
                pool.insert(fragments.pop().expect("one fragment"));
            } else {
                side.extend(fragments);
            }
            pool.reweight_all();
            pool.sort();
        }
        Variant::Dsop5 => {
            if let Some(b) = biggest(&fragments) {
                pool.insert(fragments.swap_remove(b));
                side.extend(fragments);
            }
            pool.reweight_all();
            pool.sort();
        }
    }
}

pub(crate) fn run(problem: Problem, cfg: &DsopConfig) -> Result<DsopRun> {
    let n = problem.on.n();
    let mut result: Vec<Cube> = Vec::new();
    let mut passes = Vec::new();
    let mut on = problem.on;
    let mut dc = problem.first_dc;
    let mut reusable: Vec<Cube> = Vec::new();
    let mut initial_sop = Cover::new(n);
    let keep = |c: &Cube| !cfg.drop_dc_only || problem.original_on.touches(c);

    while !on.is_empty() {
        if passes.len() >= cfg.max_outer_iterations {
            return Err(Error::Progress(cfg.max_outer_iterations));
        }
        let mut pass = PassSummary::default();
        let sop = build_sop(&FunctionSpec { on, dc }, &cfg.backend)?;
        pass.sop_size = sop.len();
        if passes.is_empty() {
            initial_sop = sop.clone();
        }

        let mut isolated = vec![true; sop.len()];
        for (i, j) in sop.overlapping_pairs() {
            isolated[i] = false;
            isolated[j] = false;
        }
        let mut rest = Vec::new();
        for (c, alone) in sop.into_cubes().into_iter().zip(isolated) {
            if !alone {
                rest.push(c);
            } else if keep(&c) {
                pass.isolated += 1;
                result.push(c);
            } else {
                pass.dropped += 1;
            }
        }

        let mut pool = Pool::new(rest, cfg.sort);
        pool.reweight_all();
        pool.sort();
        let mut side: Vec<Cube> = Vec::new();

        while let Some(p) = pool.pop_front() {
            if !keep(&p) {
                pass.dropped += 1;
                continue;
            }
            pass.selected += 1;
            for id in pool.ids_overlapping(&p) {
                let Some(i) = pool.position(id) else {
                    continue;
                };
                match problem.rule.split(&pool.entries[i].cube, &p) {
                    BreakOutcome::Keep => {}
                    BreakOutcome::Split {
                        fragments,
                        reusable: r,
                    } => {
                        let q = pool.entries.remove(i).cube;
                        reusable.extend(r);
                        opt(cfg.variant, &q, fragments, &mut pool, &mut side);
                    }
                }
            }
            let mut next = Vec::with_capacity(side.len());
            for r in side.drain(..) {
                if !r.overlaps(&p) {
                    next.push(r);
                    continue;
                }
                match problem.rule.split(&r, &p) {
                    BreakOutcome::Keep => next.push(r),
                    BreakOutcome::Split {
                        fragments,
                        reusable: extra,
                    } => {
                        next.extend(fragments);
                        reusable.extend(extra);
                    }
                }
            }
            side = next;
            result.push(p);
        }

        pass.carried = side.len();
        pass.result_len = result.len();
        passes.push(pass);
        on = Cover::from_vec_unchecked(n, side);
        dc = match &problem.rule {
            Rule::Disjoint => Cover::new(n),
            Rule::Partial { shared_dc, .. } => {
                reusable = Cover::from_vec_unchecked(n, std::mem::take(&mut reusable))
                    .normalize()
                    .into_cubes();
                let mut cubes = shared_dc.cubes().to_vec();
                cubes.extend(reusable.iter().cloned());
                Cover::from_vec_unchecked(n, cubes).normalize()
            }
        };
    }

    Ok(DsopRun {
        cover: Cover::from_vec_unchecked(n, result),
        initial_sop,
        passes,
    })
}

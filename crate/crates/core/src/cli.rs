//! Command drivers behind the `dsopforge` binary: per-output synthesis of
//! PLA files and a benchmark grid runner.
//!
//! Outputs are processed on a bounded rayon pool and merged back in output
//! order, so the emitted PLA and stats do not depend on the worker count.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{Cover, FunctionSpec};
use crate::engine::{dsop_run, DsopConfig, DsopRun, SortPolicy, Variant};
use crate::error::Error;
use crate::partial::{partial_dsop_run, PartialSpec};
use crate::pla::{merged_product_count, parse_pla, split_outputs, PlaFile, PlaType};
use crate::verify::{verify_dsop_with, verify_partial_dsop_with, VerificationReport, VerifyOptions};

/// How SOPs are minimized; reported in every stats record because the
/// builtin backend never shares cubes across outputs.
pub const SOP_MODE: &str = "per-output";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Run(#[from] Error),
    #[error("output {output}: verification failed: {report}")]
    Verification {
        output: usize,
        report: Box<VerificationReport>,
    },
}

impl CliError {
    /// 2 for unusable input, 3 for a failing minimizer backend, 4 for a
    /// result that does not verify, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        let source = match self {
            CliError::Verification { .. } => return 4,
            CliError::Input { source, .. } | CliError::Run(source) => source,
        };
        match source {
            Error::Backend { .. } => 3,
            Error::Parse { .. }
            | Error::Io(_)
            | Error::InvalidTrit { .. }
            | Error::OverlappingSpec(_)
            | Error::DimensionMismatch { .. }
            | Error::Capacity { .. } => 2,
            Error::Contract(_) | Error::Progress(_) => 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub config: DsopConfig,
    pub verify: bool,
    pub verify_options: VerifyOptions,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

/// One stats record; also one row of a benchmark table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub benchmark: String,
    pub inputs: usize,
    pub outputs: usize,
    /// Distinct cubes of the first minimized SOP over all outputs.
    pub sop_size: usize,
    /// Distinct cubes of the emitted cover over all outputs.
    pub dsop_size: usize,
    pub variant: u8,
    pub sort: &'static str,
    pub drop_dc_only: bool,
    pub backend: &'static str,
    pub sop_mode: &'static str,
    pub elapsed_ms: f64,
    /// True only when verification ran and every output passed.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub pla: PlaFile,
    pub stats: RunStats,
    /// One report per output when verification was requested.
    pub reports: Vec<VerificationReport>,
}

pub fn read_pla(path: &Path) -> Result<PlaFile, CliError> {
    let input = |source| CliError::Input {
        path: path.to_path_buf(),
        source,
    };
    let text = fs::read_to_string(path).map_err(|e| input(e.into()))?;
    parse_pla(&text).map_err(input)
}

fn benchmark_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(work()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::contract(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

enum Job {
    Dsop(FunctionSpec),
    Partial(PartialSpec),
}

impl Job {
    fn run(&self, cfg: &DsopConfig) -> crate::Result<DsopRun> {
        match self {
            Job::Dsop(f) => dsop_run(f, cfg),
            Job::Partial(spec) => partial_dsop_run(spec, cfg),
        }
    }

    fn verify(&self, d: &Cover, opts: &VerifyOptions) -> crate::Result<VerificationReport> {
        match self {
            Job::Dsop(f) => verify_dsop_with(f, d, opts),
            Job::Partial(spec) => verify_partial_dsop_with(spec, d, opts),
        }
    }
}

fn execute(name: String, source: &PlaFile, jobs: Vec<Job>, opts: &RunOptions) -> Result<RunOutput, CliError> {
    let cfg = &opts.config;
    let start = Instant::now();
    let runs: Vec<crate::Result<DsopRun>> = in_pool(opts.jobs, || jobs.par_iter().map(|j| j.run(cfg)).collect())?;
    let runs = runs.into_iter().collect::<crate::Result<Vec<_>>>()?;
    let elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;

    let mut reports = Vec::new();
    if opts.verify {
        let checked: Vec<crate::Result<VerificationReport>> = in_pool(opts.jobs, || {
            jobs.par_iter()
                .zip(&runs)
                .map(|(j, r)| j.verify(&r.cover, &opts.verify_options))
                .collect()
        })?;
        for (output, report) in checked.into_iter().enumerate() {
            let report = report?;
            if !report.ok {
                return Err(CliError::Verification {
                    output,
                    report: Box::new(report),
                });
            }
            reports.push(report);
        }
    }

    let sops: Vec<Cover> = runs.iter().map(|r| r.initial_sop.clone()).collect();
    let covers: Vec<Cover> = runs.into_iter().map(|r| r.cover).collect();
    let pla = PlaFile::from_covers(&covers, &[], Some(&source.labels), PlaType::F)?;
    let stats = RunStats {
        benchmark: name,
        inputs: source.num_inputs,
        outputs: source.num_outputs,
        sop_size: merged_product_count(&sops),
        dsop_size: merged_product_count(&covers),
        variant: cfg.variant.number(),
        sort: cfg.sort.as_str(),
        drop_dc_only: cfg.drop_dc_only,
        backend: cfg.backend.kind(),
        sop_mode: SOP_MODE,
        elapsed_ms,
        verified: opts.verify,
    };
    Ok(RunOutput { pla, stats, reports })
}

/// DSOP of every output of `pla`.
pub fn cmd_dsop(name: impl Into<String>, pla: &PlaFile, opts: &RunOptions) -> Result<RunOutput, CliError> {
    let jobs = split_outputs(pla).into_iter().map(Job::Dsop).collect();
    execute(name.into(), pla, jobs, opts)
}

pub fn cmd_dsop_file(path: &Path, opts: &RunOptions) -> Result<RunOutput, CliError> {
    cmd_dsop(benchmark_name(path), &read_pla(path)?, opts)
}

/// Where a single benchmark's don't-care set goes in partial mode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DcPolicy {
    /// Don't cares stay with the exact part: a plain DSOP.
    Once,
    /// Don't cares become the shared part: covered any number of times.
    #[default]
    Many,
}

impl std::str::FromStr for DcPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "once" => Ok(DcPolicy::Once),
            "many" => Ok(DcPolicy::Many),
            _ => Err(format!("unknown dc policy `{s}` (expected once or many)")),
        }
    }
}

/// Partial DSOP with the exact and shared parts read from two PLAs of the
/// same shape; output `j` of one pairs with output `j` of the other.
pub fn cmd_pdsop(
    name: impl Into<String>,
    sop_d: &PlaFile,
    sop_s: &PlaFile,
    opts: &RunOptions,
) -> Result<RunOutput, CliError> {
    if sop_d.num_inputs != sop_s.num_inputs {
        return Err(Error::DimensionMismatch {
            left: sop_d.num_inputs,
            right: sop_s.num_inputs,
        }
        .into());
    }
    if sop_d.num_outputs != sop_s.num_outputs {
        return Err(Error::contract(format!(
            "output counts differ: {} vs {}",
            sop_d.num_outputs, sop_s.num_outputs
        ))
        .into());
    }
    let jobs = split_outputs(sop_d)
        .into_iter()
        .zip(split_outputs(sop_s))
        .map(|(d, s)| PartialSpec::new(d, s).map(Job::Partial))
        .collect::<crate::Result<Vec<_>>>()?;
    execute(name.into(), sop_d, jobs, opts)
}

/// Partial DSOP of one benchmark: its on-set is the exact part and its
/// don't cares are placed according to `policy`.
pub fn cmd_pdsop_single(
    name: impl Into<String>,
    pla: &PlaFile,
    policy: DcPolicy,
    opts: &RunOptions,
) -> Result<RunOutput, CliError> {
    let jobs = split_outputs(pla)
        .into_iter()
        .map(|f| {
            let n = f.n();
            let (d, s) = match policy {
                DcPolicy::Once => (f, FunctionSpec::completely_specified(Cover::new(n))),
                DcPolicy::Many => (
                    FunctionSpec::completely_specified(f.on),
                    FunctionSpec::new(Cover::new(n), f.dc)?,
                ),
            };
            PartialSpec::new(d, s).map(Job::Partial)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    execute(name.into(), pla, jobs, opts)
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchFailure {
    pub benchmark: String,
    pub variant: u8,
    pub sort: &'static str,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BenchReport {
    pub rows: Vec<RunStats>,
    pub failures: Vec<BenchFailure>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::contract(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::contract(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Exit code of the first failure, 0 when every run succeeded.
    pub fn exit_code(&self) -> i32 {
        self.failures.first().map_or(0, |f| f.exit_code)
    }
}

/// `*.pla` files of `dir`, sorted by name.
pub fn pla_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let input = |e: std::io::Error| CliError::Input {
        path: dir.to_path_buf(),
        source: e.into(),
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(input)? {
        let path = entry.map_err(input)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "pla") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs every file of `dir` under every (variant, sort) pair, verifying each
/// result. Rows come out ordered by file name, then variant, then sort.
pub fn cmd_bench(
    dir: &Path,
    variants: &[Variant],
    sorts: &[SortPolicy],
    opts: &RunOptions,
) -> Result<BenchReport, CliError> {
    let files = pla_files(dir)?;
    let parsed: Vec<(String, Result<PlaFile, CliError>)> = files
        .iter()
        .map(|p| (benchmark_name(p), read_pla(p)))
        .collect();
    let mut grid = Vec::new();
    for (i, _) in parsed.iter().enumerate() {
        for &v in variants {
            for &s in sorts {
                grid.push((i, v, s));
            }
        }
    }
    let outcomes: Vec<Result<RunStats, CliError>> = in_pool(opts.jobs, || {
        grid.par_iter()
            .map(|&(i, variant, sort)| {
                let (name, pla) = &parsed[i];
                let pla = pla.as_ref().map_err(|e| CliError::Run(Error::contract(e.to_string())))?;
                let cell = RunOptions {
                    config: DsopConfig {
                        variant,
                        sort,
                        ..opts.config.clone()
                    },
                    verify: true,
                    verify_options: opts.verify_options,
                    jobs: None,
                };
                cmd_dsop(name.clone(), pla, &cell).map(|out| out.stats)
            })
            .collect()
    })?;

    let mut report = BenchReport::default();
    for (&(i, variant, sort), outcome) in grid.iter().zip(outcomes) {
        match outcome {
            Ok(row) => report.rows.push(row),
            Err(e) => {
                // unreadable files keep their own exit code
                let e = match &parsed[i].1 {
                    Err(original) => original,
                    Ok(_) => &e,
                };
                report.failures.push(BenchFailure {
                    benchmark: parsed[i].0.clone(),
                    variant: variant.number(),
                    sort: sort.as_str(),
                    exit_code: e.exit_code(),
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// Plain-text pivot of benchmark rows: one line per (benchmark, sort), one
/// `size/ms` column per variant.
pub fn render_table(rows: &[RunStats]) -> String {
    let mut variants: Vec<u8> = rows.iter().map(|r| r.variant).collect();
    variants.sort_unstable();
    variants.dedup();
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in rows {
        let key = (r.benchmark.as_str(), r.sort);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }

    let mut out = String::new();
    let _ = write!(out, "{:<16} {:>4} {:>4} {:<4} {:>7}", "benchmark", "in", "out", "sort", "sop");
    for v in &variants {
        let _ = write!(out, " {:>14}", format!("DSOP-{v}"));
    }
    out.push('\n');
    for (bench, sort) in keys {
        let cells: Vec<&RunStats> = rows.iter().filter(|r| r.benchmark == bench && r.sort == sort).collect();
        let first = cells[0];
        let _ = write!(
            out,
            "{:<16} {:>4} {:>4} {:<4} {:>7}",
            bench, first.inputs, first.outputs, sort, first.sop_size
        );
        for v in &variants {
            let cell = cells
                .iter()
                .find(|r| r.variant == *v)
                .map_or_else(|| "-".to_string(), |r| format!("{}/{:.1}", r.dsop_size, r.elapsed_ms));
            let _ = write!(out, " {cell:>14}");
        }
        out.push('\n');
    }
    out
}

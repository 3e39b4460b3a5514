use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dsopforge::cli::{self, CliError, DcPolicy, RunOptions, RunOutput};
use dsopforge::cover::DEFAULT_ENUM_LIMIT;
use dsopforge::verify::VerifyOptions;
use dsopforge::{DsopConfig, MinimizerBackend, SortPolicy, Variant};

#[derive(Parser)]
#[command(name = "dsopforge", version, about = "Disjoint SOP synthesis for PLA files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Disjoint cover of every output.
    Dsop {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Partial DSOP: SOP_D points once, SOP_S points any number of times.
    Pdsop {
        /// Exact part, or a single benchmark with --dc-policy.
        sop_d: PathBuf,
        /// Shared part.
        sop_s: Option<PathBuf>,
        /// Single-file mode: where the benchmark's don't cares go.
        #[arg(long, value_name = "once|many", default_value = "many")]
        dc_policy: DcPolicy,
        #[command(flatten)]
        common: Common,
    },
    /// Variant x sort grid over every .pla file of a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        variants: Vec<Variant>,
        #[arg(long, value_delimiter = ',', default_value = "dw,wd")]
        sorts: Vec<SortPolicy>,
        /// Write rows as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Write rows and failures as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "3")]
    variant: Variant,
    #[arg(long, default_value = "dw")]
    sort: SortPolicy,
    /// Skip cubes that cover only don't-care points.
    #[arg(long)]
    drop_dc_only: bool,
    /// builtin, identity or external:PATH (default: $DSOPFORGE_MINIMIZER, else builtin).
    #[arg(long)]
    minimizer: Option<MinimizerBackend>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    verify: bool,
    /// Enumerate all minterms up to this many inputs; sample above.
    #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT)]
    max_enum: usize,
    /// Output PLA (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Stats JSON (default: stderr).
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            config: DsopConfig::new(self.variant, self.sort)
                .with_drop_dc_only(self.drop_dc_only)
                .with_backend(self.minimizer.clone().unwrap_or_else(MinimizerBackend::from_env)),
            verify: self.verify,
            verify_options: VerifyOptions {
                max_enum: self.max_enum,
                ..VerifyOptions::default()
            },
            jobs: self.jobs,
        }
    }
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

fn emit(out: RunOutput, common: &Common) -> Result<(), CliError> {
    let stats = serde_json::to_string_pretty(&out.stats).expect("stats serialize");
    match &common.output {
        Some(path) => write_to(path, &out.pla.to_string())?,
        None => print!("{}", out.pla),
    }
    match &common.stats {
        Some(path) => write_to(path, &format!("{stats}\n")),
        None => {
            eprintln!("{stats}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Dsop { input, common } => {
            emit(cli::cmd_dsop_file(&input, &common.options())?, &common)?;
        }
        Command::Pdsop {
            sop_d,
            sop_s,
            dc_policy,
            common,
        } => {
            let d = cli::read_pla(&sop_d)?;
            let name = sop_d
                .file_stem()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let out = match sop_s {
                Some(path) => cli::cmd_pdsop(name, &d, &cli::read_pla(&path)?, &common.options())?,
                None => cli::cmd_pdsop_single(name, &d, dc_policy, &common.options())?,
            };
            emit(out, &common)?;
        }
        Command::Bench {
            dir,
            variants,
            sorts,
            csv,
            json,
            common,
        } => {
            let report = cli::cmd_bench(&dir, &variants, &sorts, &common.options())?;
            print!("{}", cli::render_table(&report.rows));
            for f in &report.failures {
                eprintln!("{} DSOP-{} {}: {}", f.benchmark, f.variant, f.sort, f.message);
            }
            if let Some(path) = csv {
                write_to(&path, &report.to_csv()?)?;
            }
            if let Some(path) = json {
                write_to(&path, &format!("{}\n", report.to_json()))?;
            }
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dsopforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

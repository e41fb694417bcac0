//! Command-line front end. All report logic lives in `widthlab::cli`; this
//! file only parses arguments, loads input files, routes output, and maps
//! verdicts to exit codes: 0 for pass, 1 for a failed check, 2 for usage or
//! input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use widthlab::bounds::BoundParams;
use widthlab::cli::{
    cmd_bounds, cmd_growth, cmd_trace, cmd_vc, cmd_verify, cmd_width, parse_points_list,
    parse_usize_list, OutputFormat, VerifyConfig,
};
use widthlab::enumerate::GrowthMode;
use widthlab::hyper::{Mode, Threshold};
use widthlab::model::{Domain, SampleCollection, StepFunction};
use widthlab::scalar::Scalar;

#[derive(Parser)]
#[command(
    name = "widthlab",
    version,
    about = "Margin widths, trace counts, and growth caps for alternating step functions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Canonical,
    Random,
}

impl From<ModeArg> for GrowthMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => GrowthMode::Exhaustive,
            ModeArg::Canonical => GrowthMode::Canonical,
            ModeArg::Random => GrowthMode::Random,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Upper end of the domain [0, B], as a rational (e.g. 7 or 7/2).
    #[arg(long = "B")]
    b: String,
    /// Margin level, as a positive rational.
    #[arg(long)]
    gamma: String,
    /// Accept widths exactly at the margin level.
    #[arg(long)]
    non_strict: bool,
    /// Require widths strictly above the margin level (the default).
    #[arg(long, conflicts_with = "non_strict")]
    strict: bool,
}

impl ThresholdArgs {
    fn build(&self) -> Result<(Domain, Threshold), String> {
        let b = parse_scalar("B", &self.b)?;
        let gamma = parse_scalar("gamma", &self.gamma)?;
        let domain = Domain::new(b).map_err(|e| e.to_string())?;
        let mode = if self.non_strict {
            Mode::NonStrict
        } else {
            Mode::Strict
        };
        let t = Threshold::new(gamma, mode).map_err(|e| e.to_string())?;
        Ok((domain, t))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate signed and absolute widths of a step function at points.
    Width {
        /// JSON file holding the step function.
        #[arg(long)]
        function: PathBuf,
        /// Comma-separated evaluation points.
        #[arg(long)]
        points: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count the distinct threshold vectors a collection admits and compare
    /// against the exact cap.
    Trace {
        /// JSON file holding the sample collection.
        #[arg(long)]
        collection: PathBuf,
        #[command(flatten)]
        threshold: ThresholdArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the seeded self-check suite.
    Verify {
        /// Base seed for all randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Case-count multiplier for every check; must be at least 1.
        #[arg(long, default_value_t = 10)]
        budget: usize,
        /// Probe spacing for the pattern-oracle check (rational); defaults
        /// to one thirty-second of each instance's domain.
        #[arg(long)]
        delta: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for vector-count maximizers and compare against the cap,
    /// one CSV row per requested support size.
    Growth {
        #[command(flatten)]
        threshold: ThresholdArgs,
        /// Points per sample.
        #[arg(long)]
        ell: usize,
        /// Support sizes, comma-separated (e.g. 6 or 4,5,6).
        #[arg(long)]
        m: String,
        /// Search mode.
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Maximum number of candidate families to evaluate per row.
        #[arg(long, default_value_t = 64)]
        budget: usize,
        /// Seed for the random mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the run-bounded string class against its closed-form size and
    /// dimension.
    Vc {
        /// Maximum number of maximal 1-runs.
        #[arg(long = "K")]
        k: usize,
        /// String length.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report the exact cap and its closed-form estimate for one
    /// parameter set.
    Bounds {
        #[command(flatten)]
        threshold: ThresholdArgs,
        /// Points per sample.
        #[arg(long)]
        ell: usize,
        /// Support size.
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_scalar(name: &str, text: &str) -> Result<Scalar, String> {
    text.parse()
        .map_err(|e| format!("invalid {name} {text:?}: {e}"))
}

fn load_step_function(path: &Path) -> Result<StepFunction, String> {
    let data =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&data)
        .map_err(|e| format!("cannot parse step function {}: {e}", path.display()))
}

fn load_collection(path: &Path) -> Result<SampleCollection, String> {
    let data =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&data)
        .map_err(|e| format!("cannot parse sample collection {}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>, bool), String> {
    match cli.cmd {
        Cmd::Width {
            function,
            points,
            output,
        } => {
            let h = load_step_function(&function)?;
            let pts = parse_points_list(&points).map_err(|e| e.to_string())?;
            let (report, pass) =
                cmd_width(&h, &pts, output.format.into()).map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
        Cmd::Trace {
            collection,
            threshold,
            output,
        } => {
            let z = load_collection(&collection)?;
            let (domain, t) = threshold.build()?;
            let (report, pass) =
                cmd_trace(&z, &domain, &t, output.format.into()).map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
        Cmd::Verify {
            seed,
            budget,
            delta,
            output,
        } => {
            let delta = delta.map(|d| parse_scalar("delta", &d)).transpose()?;
            let config = VerifyConfig {
                seed,
                budget,
                delta,
            };
            let (report, pass) =
                cmd_verify(&config, output.format.into()).map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
        Cmd::Growth {
            threshold,
            ell,
            m,
            mode,
            budget,
            seed,
            output,
        } => {
            let (domain, t) = threshold.build()?;
            let ms = parse_usize_list(&m).map_err(|e| e.to_string())?;
            let (report, pass) = cmd_growth(
                &domain,
                &t,
                ell,
                &ms,
                mode.into(),
                budget,
                seed,
                output.format.into(),
            )
            .map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
        Cmd::Vc { k, n, output } => {
            let (report, pass) = cmd_vc(k, n, output.format.into()).map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
        Cmd::Bounds {
            threshold,
            ell,
            m,
            output,
        } => {
            let (domain, t) = threshold.build()?;
            let params = BoundParams::new(domain.upper().clone(), t.gamma().clone(), ell, m)
                .map_err(|e| e.to_string())?;
            let (report, pass) =
                cmd_bounds(&params, output.format.into()).map_err(|e| e.to_string())?;
            Ok((report, output.out, pass))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    widthlab::configure_workers_from_env();
    match run(cli) {
        Ok((report, out, pass)) => {
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &report) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        process::exit(2);
                    }
                }
                None => print!("{report}"),
            }
            process::exit(if pass { 0 } else { 1 });
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            process::exit(2);
        }
    }
}

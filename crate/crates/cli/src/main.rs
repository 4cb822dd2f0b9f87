//! `kmarkov`: order selection, parameter inference and entropy-rate sweeps
//! for k-th order Markov chains.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmarkov::experiments::{
    reproduce, run_compare, run_entropy, run_infer, simulate, ExperimentConfig, FigureId, HyperPolicy, Mode,
    NGrid, OrderPrior, OutputFormat, Source, OUT_DIR_ENV,
};
use kmarkov::seqio::SequenceLayout;
use kmarkov::{Alphabet, Error, OrderRange};

#[derive(Parser)]
#[command(
    name = "kmarkov",
    version,
    about = "Bayesian inference of k-th order Markov chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = "kmarkov-out")]
    out: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads (default: one per processor).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Posterior summaries and marginal densities per (N, k).
    Infer(SweepArgs),
    /// Posterior probabilities over orders per N.
    Compare(SweepArgs),
    /// Expected energy, its variance and the entropy rate of Q per (N, k).
    Entropy(SweepArgs),
    /// Write one seeded realization of a process.
    Simulate {
        /// golden-mean, even, sns, or a .json process file.
        #[arg(long)]
        source: String,
        /// Sequence length.
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Output file (default: <out>/<source>_N<n>_seed<seed>.txt).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Regenerate the data behind one figure (2 to 10).
    Reproduce {
        #[arg(long)]
        figure: u8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DataMode {
    Average,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prior {
    Uniform,
    Penalty,
}

#[derive(Args)]
struct SweepArgs {
    /// golden-mean, even, sns, or a .json process file.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    source: Option<String>,
    /// Observed sequence file (plain text, or CSV with --column).
    #[arg(long)]
    input: Option<PathBuf>,
    /// CSV column holding the symbols.
    #[arg(long, requires = "input")]
    column: Option<String>,
    /// Alphabet symbols in index order, e.g. "01" (default: sorted distinct symbols).
    #[arg(long, requires = "input")]
    alphabet: Option<String>,
    #[arg(long, value_enum, default_value_t = DataMode::Average)]
    mode: DataMode,
    /// Required in sample mode.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[arg(long)]
    n_start: Option<usize>,
    #[arg(long)]
    n_stop: Option<usize>,
    #[arg(long)]
    n_step: Option<usize>,
    /// Use a logarithmic grid with this many points per decade instead of --n-step.
    #[arg(long, conflicts_with = "n_step")]
    n_per_decade: Option<usize>,
    /// Uniform Dirichlet hyperparameter.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// CSV of context,symbol,fake_count overriding --alpha entries.
    #[arg(long)]
    fake_counts: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Prior::Uniform)]
    prior: Prior,
    /// Mass of the equal-tail confidence regions.
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    /// Points per marginal density grid (0 disables density output).
    #[arg(long, default_value_t = 512)]
    density_points: usize,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn sweep_config(
    args: SweepArgs,
    out: &Path,
    format: OutputFormat,
    jobs: Option<usize>,
) -> Result<ExperimentConfig, Error> {
    let is_file = args.input.is_some();
    let source = match (args.source, args.input) {
        (Some(spec), None) => Source::process(&spec)?,
        (None, Some(path)) => Source::Sequence {
            path,
            layout: args
                .column
                .map_or(SequenceLayout::PlainText, SequenceLayout::CsvColumn),
            alphabet: args.alphabet.as_deref().map(Alphabet::parse).transpose()?,
        },
        _ => return Err(Error::Config("give exactly one of --source and --input".into())),
    };
    let mut cfg = ExperimentConfig::new(source, out);
    cfg.mode = match (args.mode, args.seed) {
        (DataMode::Average, _) => Mode::Average,
        (DataMode::Sample, Some(seed)) => Mode::Sample { seed },
        (DataMode::Sample, None) => return Err(Error::Config("sample mode requires --seed".into())),
    };
    cfg.orders = OrderRange::new(args.k_min, args.k_max)?;
    let explicit = args.n_start.is_some()
        || args.n_stop.is_some()
        || args.n_step.is_some()
        || args.n_per_decade.is_some();
    let (start, stop) = (args.n_start.unwrap_or(100), args.n_stop.unwrap_or(1000));
    cfg.grid = match (explicit, is_file, args.n_per_decade) {
        (false, true, _) => NGrid::Full,
        (_, _, Some(per_decade)) => NGrid::Log {
            start,
            stop,
            per_decade,
        },
        _ => NGrid::Linear {
            start,
            stop,
            step: args.n_step.unwrap_or(5),
        },
    };
    cfg.hyper = match args.fake_counts {
        Some(path) => HyperPolicy::FakeCounts {
            path,
            default: args.alpha,
        },
        None => HyperPolicy::Uniform(args.alpha),
    };
    cfg.prior = match args.prior {
        Prior::Uniform => OrderPrior::Uniform,
        Prior::Penalty => OrderPrior::Penalty,
    };
    cfg.confidence = args.confidence;
    cfg.format = format;
    cfg.jobs = jobs;
    cfg.density_points = args.density_points;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, Error> {
    let Cli {
        command,
        out,
        format,
        jobs,
    } = cli;
    if jobs == Some(0) {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let format = format.into();
    match command {
        Command::Infer(args) => run_infer(&sweep_config(args, &out, format, jobs)?),
        Command::Compare(args) => run_compare(&sweep_config(args, &out, format, jobs)?),
        Command::Entropy(args) => run_entropy(&sweep_config(args, &out, format, jobs)?),
        Command::Simulate {
            source,
            n,
            seed,
            output,
        } => {
            let src = Source::process(&source)?;
            let path = output.unwrap_or_else(|| {
                let stem = Path::new(&source)
                    .file_stem()
                    .map_or_else(|| source.clone(), |s| s.to_string_lossy().into_owned());
                out.join(format!("{stem}_N{n}_seed{seed}.txt"))
            });
            Ok(vec![simulate(&src, n, seed, &path)?])
        }
        Command::Reproduce { figure } => reproduce(FigureId::new(figure)?, &out, jobs, format),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error kind={} message={:?}", e.kind(), e.to_string());
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}

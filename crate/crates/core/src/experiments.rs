//! Parameter sweeps over sample size and order, written as CSV or JSON tables.
//!
//! Every command resolves its configuration into count tables for each
//! `(N, k)` grid point, evaluates the grid on a worker pool, and writes the
//! results from a single thread in grid order so output is independent of the
//! number of workers.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::comparison::{compare_penalized, compare_uniform, map_order, OrderPosterior, OrderRange};
use crate::counts::{
    count_words, decode_code, uniform_hyper, Alphabet, CountTable, HyperTable, SymbolSequence,
    TransitionTable, DEFAULT_MAX_ENTRIES,
};
use crate::entropy::{
    asymptotic_energy, energy_variance, expected_energy, hmu_of, kl_of, q_from, weighted_energy,
};
use crate::error::{Error, Result};
use crate::inference::{confidence_region, log_evidence, marginal, posterior};
use crate::processes::{
    markov_approximation, sample_sequence, word_distribution, BuiltinProcess, LabeledHmm,
};
use crate::seqio::{read_sequence, SequenceLayout};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "KMARKOV_OUT";

/// Where the data comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Builtin(BuiltinProcess),
    /// A process loaded from a JSON description.
    Hmm {
        label: String,
        hmm: LabeledHmm,
    },
    /// An observed sequence on disk.
    Sequence {
        path: PathBuf,
        layout: SequenceLayout,
        alphabet: Option<Alphabet>,
    },
}

impl Source {
    /// A builtin name, or a path to a JSON process description.
    pub fn process(spec: &str) -> Result<Self> {
        if let Ok(b) = spec.parse::<BuiltinProcess>() {
            return Ok(Source::Builtin(b));
        }
        let path = Path::new(spec);
        if path.extension().is_some_and(|e| e == "json") {
            return Ok(Source::Hmm {
                label: spec.to_string(),
                hmm: LabeledHmm::load_json(path)?,
            });
        }
        Err(Error::Config(format!(
            "unknown source '{spec}' (expected golden-mean, even, sns or a .json process file)"
        )))
    }

    fn hmm(&self) -> Option<LabeledHmm> {
        match self {
            Source::Builtin(b) => Some(b.hmm()),
            Source::Hmm { hmm, .. } => Some(hmm.clone()),
            Source::Sequence { .. } => None,
        }
    }
}

/// How counts are produced from a process source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Exact mean counts `(N - k) p(h^k s)`.
    Average,
    /// Counts from prefixes of one seeded realization.
    Sample { seed: u64 },
}

/// Sample sizes to sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum NGrid {
    Linear {
        start: usize,
        stop: usize,
        step: usize,
    },
    /// `start · 10^(i/per_decade)` rounded, up to `stop`.
    Log {
        start: usize,
        stop: usize,
        per_decade: usize,
    },
    List(Vec<usize>),
    /// The full length of a sequence source.
    Full,
}

impl NGrid {
    fn values(&self, full: Option<usize>) -> Result<Vec<usize>> {
        let values: Vec<usize> = match *self {
            NGrid::Linear { start, stop, step } => {
                if step == 0 {
                    return Err(Error::Config("N grid step must be positive".into()));
                }
                (start..=stop).step_by(step).collect()
            }
            NGrid::Log {
                start,
                stop,
                per_decade,
            } => {
                if start == 0 || per_decade == 0 {
                    return Err(Error::Config(
                        "log N grid needs start > 0 and per_decade > 0".into(),
                    ));
                }
                let mut out: Vec<usize> = Vec::new();
                for i in 0.. {
                    let v = (start as f64 * 10f64.powf(i as f64 / per_decade as f64)).round() as usize;
                    if v > stop {
                        break;
                    }
                    if out.last() != Some(&v) {
                        out.push(v);
                    }
                }
                out
            }
            NGrid::List(ref v) => v.clone(),
            NGrid::Full => {
                vec![full.ok_or_else(|| Error::Config("the full-length grid needs a sequence source".into()))?]
            }
        };
        if values.is_empty() {
            return Err(Error::Config("N grid is empty".into()));
        }
        Ok(values)
    }
}

/// Dirichlet hyperparameters per order.
#[derive(Debug, Clone, PartialEq)]
pub enum HyperPolicy {
    /// The same `α` for every `(h^k, s)`.
    Uniform(f64),
    /// A CSV of `context,symbol,fake_count`; rows whose context has length `k`
    /// replace the default `α` at order `k`.
    FakeCounts { path: PathBuf, default: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPrior {
    #[default]
    Uniform,
    Penalty,
}

impl OrderPrior {
    pub fn name(self) -> &'static str {
        match self {
            OrderPrior::Uniform => "uniform",
            OrderPrior::Penalty => "penalty",
        }
    }
}

impl FromStr for OrderPrior {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(OrderPrior::Uniform),
            "penalty" | "penalized" => Ok(OrderPrior::Penalty),
            other => Err(Error::Config(format!("unknown order prior '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: Source,
    pub mode: Mode,
    pub orders: OrderRange,
    pub grid: NGrid,
    pub hyper: HyperPolicy,
    pub prior: OrderPrior,
    pub confidence: f64,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    /// Worker threads; `None` uses one per processor.
    pub jobs: Option<usize>,
    /// Points per marginal density grid; 0 skips density files.
    pub density_points: usize,
}

impl ExperimentConfig {
    /// Average counts, orders 1–4, `N = 100..=1000` step 5, `α = 1`.
    pub fn new(source: Source, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            source,
            mode: Mode::Average,
            orders: OrderRange::new(1, 4).expect("valid default range"),
            grid: NGrid::Linear {
                start: 100,
                stop: 1000,
                step: 5,
            },
            hyper: HyperPolicy::Uniform(1.0),
            prior: OrderPrior::Uniform,
            confidence: 0.95,
            out_dir: out_dir.into(),
            format: OutputFormat::Csv,
            jobs: None,
            density_points: 512,
        }
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) if v.is_finite() => {
                serde_json::from_str(&format_number(*v)).expect("formatted number is valid JSON")
            }
            Cell::Num(v) => Value::String(format_number(*v)),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    /// Writes `dir/stem.{csv,json}`.
    pub fn write(&self, dir: &Path, stem: &str, format: OutputFormat) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("{stem}.{}", format.extension()));
        match format {
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush().map_err(|e| Error::io(&path, e))?;
            }
            OutputFormat::Json => {
                let records: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect()
                    })
                    .collect();
                let mut text = serde_json::to_string_pretty(&records)?;
                text.push('\n');
                fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
            }
        }
        Ok(path)
    }
}

/// `%.12g`-style rendering; non-finite values print as `inf`, `-inf`, `nan`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (11 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Deserialize)]
struct FakeCountRow {
    context: String,
    symbol: String,
    fake_count: f64,
}

/// Fake-count rows keyed by `(context, symbol)` codes, grouped per order.
fn read_fake_counts(path: &Path, alphabet: &Alphabet) -> Result<Vec<(Vec<usize>, usize, f64)>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for row in reader.deserialize() {
        let row: FakeCountRow = row?;
        let context = row
            .context
            .trim()
            .chars()
            .map(|c| alphabet.index_of(c))
            .collect::<Result<Vec<_>>>()?;
        let mut sym = row.symbol.trim().chars();
        let symbol = match (sym.next(), sym.next()) {
            (Some(c), None) => alphabet.index_of(c)?,
            _ => {
                return Err(Error::Config(format!(
                    "fake count symbol must be one character, got {:?}",
                    row.symbol
                )))
            }
        };
        if context.is_empty() {
            return Err(Error::Config("fake count context must be nonempty".into()));
        }
        if !seen.insert((context.clone(), symbol)) {
            return Err(Error::Config(format!(
                "duplicate fake count for context {:?} symbol {:?}",
                row.context, row.symbol
            )));
        }
        out.push((context, symbol, row.fake_count));
    }
    Ok(out)
}

fn hyper_for(
    k: usize,
    a: usize,
    policy: &HyperPolicy,
    fake: &[(Vec<usize>, usize, f64)],
) -> Result<HyperTable> {
    match policy {
        HyperPolicy::Uniform(alpha) => uniform_hyper(k, a, *alpha),
        HyperPolicy::FakeCounts { default, .. } => {
            let base = uniform_hyper(k, a, *default)?;
            let mut values = base.as_slice().to_vec();
            for (context, symbol, count) in fake.iter().filter(|(c, _, _)| c.len() == k) {
                let code = context.iter().fold(0, |acc, &s| acc * a + s);
                values[code * a + symbol] = *count;
            }
            HyperTable::from_vec(k, a, values)
        }
    }
}

enum Data {
    /// Joint probabilities of length-`k+1` words, aligned with the orders.
    Exact(Vec<Vec<f64>>),
    Sequence(SymbolSequence),
}

/// A configuration resolved into everything the grid workers need.
struct Prepared {
    alphabet: Alphabet,
    orders: Vec<usize>,
    grid: Vec<usize>,
    data: Data,
    hypers: Vec<HyperTable>,
    truth: Option<Vec<TransitionTable>>,
    true_hmu: Option<f64>,
}

impl Prepared {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        if !(cfg.confidence > 0.0 && cfg.confidence < 1.0) {
            return Err(Error::Config(format!(
                "confidence must lie in (0, 1), got {}",
                cfg.confidence
            )));
        }
        let hmm = cfg.source.hmm();
        let (alphabet, sequence) = match &cfg.source {
            Source::Sequence {
                path,
                layout,
                alphabet,
            } => {
                if let Mode::Sample { .. } = cfg.mode {
                    return Err(Error::Config("sample mode needs a process source".into()));
                }
                let (alpha, seq) = read_sequence(path, layout, alphabet.as_ref())?;
                (alpha, Some(seq))
            }
            _ => (hmm.as_ref().expect("process source").alphabet().clone(), None),
        };
        let a = alphabet.size();
        let orders = cfg.orders.admissible(a, DEFAULT_MAX_ENTRIES)?;
        let k_max = *orders.last().expect("admissible orders are nonempty");
        let grid = cfg.grid.values(sequence.as_ref().map(SymbolSequence::len))?;
        if let Some(&n) = grid.iter().find(|&&n| n <= k_max) {
            return Err(Error::Config(format!(
                "N = {n} must exceed the largest order {k_max}"
            )));
        }
        let fake = match &cfg.hyper {
            HyperPolicy::FakeCounts { path, .. } => read_fake_counts(path, &alphabet)?,
            HyperPolicy::Uniform(_) => Vec::new(),
        };
        let hypers = orders
            .iter()
            .map(|&k| hyper_for(k, a, &cfg.hyper, &fake))
            .collect::<Result<Vec<_>>>()?;
        let n_max = *grid.iter().max().expect("grid is nonempty");
        let data = match (sequence, &hmm, cfg.mode) {
            (Some(seq), _, _) => {
                if n_max > seq.len() {
                    return Err(Error::Config(format!(
                        "N = {n_max} exceeds the sequence length {}",
                        seq.len()
                    )));
                }
                Data::Sequence(seq)
            }
            (None, Some(hmm), Mode::Average) => Data::Exact(
                orders
                    .iter()
                    .map(|&k| word_distribution(hmm, k + 1))
                    .collect::<Result<_>>()?,
            ),
            (None, Some(hmm), Mode::Sample { seed }) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Data::Sequence(sample_sequence(hmm, n_max, &mut rng)?)
            }
            (None, None, _) => unreachable!("non-sequence sources carry a process"),
        };
        let truth = match &hmm {
            Some(hmm) => Some(
                orders
                    .iter()
                    .map(|&k| Ok(markov_approximation(hmm, k)?.transitions))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let true_hmu = match cfg.source {
            Source::Builtin(b) => Some(b.entropy_rate()),
            _ => None,
        };
        Ok(Self {
            alphabet,
            orders,
            grid,
            data,
            hypers,
            truth,
            true_hmu,
        })
    }

    fn counts(&self, idx: usize, n: usize) -> Result<CountTable> {
        let k = self.orders[idx];
        match &self.data {
            Data::Exact(probs) => {
                let mass = (n - k) as f64;
                CountTable::from_vec(
                    k,
                    self.alphabet.size(),
                    probs[idx].iter().map(|p| mass * p).collect(),
                )
            }
            Data::Sequence(seq) => count_words(&seq.prefix(n), k),
        }
    }

    fn render_word(&self, k: usize, code: usize) -> Result<String> {
        Ok(self.alphabet.render(&decode_code(code, k, self.alphabet.size())?))
    }

    fn log_evidences(&self, n: usize) -> Result<Vec<(usize, f64)>> {
        (0..self.orders.len())
            .map(|i| {
                Ok((
                    self.orders[i],
                    log_evidence(&self.counts(i, n)?, &self.hypers[i])?,
                ))
            })
            .collect()
    }
}

fn order_posterior(prior: OrderPrior, evs: &[(usize, f64)], a: usize) -> Result<OrderPosterior> {
    match prior {
        OrderPrior::Uniform => compare_uniform(evs),
        OrderPrior::Penalty => compare_penalized(evs, a),
    }
}

fn run_grid<T, F>(jobs: Option<usize>, grid: &[usize], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    pool.install(|| grid.par_iter().map(|&n| f(n)).collect())
}

/// Posterior summary per `(N, k)` plus marginal density grids.
pub fn run_infer(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let prep = Prepared::new(cfg)?;
    let a = prep.alphabet.size();
    let per_n = run_grid(cfg.jobs, &prep.grid, |n| {
        let mut out = Vec::new();
        for (i, &k) in prep.orders.iter().enumerate() {
            let counts = prep.counts(i, n)?;
            let post = posterior(&counts, &prep.hypers[i])?;
            let mut summary = Table::new(vec![
                "word", "symbol", "count", "alpha", "mean", "variance", "ci_low", "ci_high",
            ]);
            let mut density = Table::new(vec!["word", "symbol", "x", "density"]);
            for h in 0..counts.words() {
                let word = prep.render_word(k, h)?;
                for s in 0..a {
                    let symbol = prep.alphabet.symbol(s)?.to_string();
                    let m = marginal(&post, h, s)?;
                    let ci = confidence_region(&m, cfg.confidence)?;
                    summary.rows.push(vec![
                        Cell::Text(word.clone()),
                        Cell::Text(symbol.clone()),
                        Cell::Num(counts.get(h, s)),
                        Cell::Num(prep.hypers[i].get(h, s)),
                        Cell::Num(m.mean()),
                        Cell::Num(m.variance()),
                        Cell::Num(ci.lower),
                        Cell::Num(ci.upper),
                    ]);
                    if cfg.density_points > 0 {
                        for (x, d) in m.density_grid(cfg.density_points)? {
                            density.rows.push(vec![
                                Cell::Text(word.clone()),
                                Cell::Text(symbol.clone()),
                                Cell::Num(x),
                                Cell::Num(d),
                            ]);
                        }
                    }
                }
            }
            out.push((k, summary, density));
        }
        Ok((n, out))
    })?;
    let mut paths = Vec::new();
    for (n, tables) in per_n {
        for (k, summary, density) in tables {
            paths.push(summary.write(&cfg.out_dir, &format!("posterior_N{n}_k{k}"), cfg.format)?);
            if cfg.density_points > 0 {
                paths.push(density.write(&cfg.out_dir, &format!("density_N{n}_k{k}"), cfg.format)?);
            }
        }
    }
    Ok(paths)
}

/// Order probabilities under both priors for every `N`, plus the MAP order under `cfg.prior`.
pub fn run_compare(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let prep = Prepared::new(cfg)?;
    let a = prep.alphabet.size();
    let per_n = run_grid(cfg.jobs, &prep.grid, |n| {
        let evs = prep.log_evidences(n)?;
        let u = compare_uniform(&evs)?;
        let p = compare_penalized(&evs, a)?;
        let chosen = match cfg.prior {
            OrderPrior::Uniform => &u,
            OrderPrior::Penalty => &p,
        };
        let map = map_order(chosen).expect("posterior over a nonempty order set");
        let rows: Vec<Vec<Cell>> = u
            .entries()
            .iter()
            .zip(p.entries())
            .map(|(eu, ep)| {
                vec![
                    Cell::Int(n as u64),
                    Cell::Int(eu.k as u64),
                    Cell::Num(eu.log_evidence),
                    Cell::Num(eu.probability),
                    Cell::Num(ep.probability),
                ]
            })
            .collect();
        Ok((n, rows, map))
    })?;
    let mut comparison = Table::new(vec![
        "N",
        "k",
        "log_evidence_nats",
        "prob_uniform",
        "prob_penalized",
    ]);
    let mut maps = Table::new(vec!["N", "prior", "map_k"]);
    for (n, rows, map) in per_n {
        comparison.rows.extend(rows);
        maps.rows.push(vec![
            Cell::Int(n as u64),
            Cell::Text(cfg.prior.name().into()),
            Cell::Int(map as u64),
        ]);
    }
    Ok(vec![
        comparison.write(&cfg.out_dir, "comparison", cfg.format)?,
        maps.write(&cfg.out_dir, "map_order", cfg.format)?,
    ])
}

/// Energy statistics per `(N, k)` and the order-averaged energy per `N`.
///
/// `kl_bits_if_truth_known` is `inf` whenever `Q` puts mass where the order-`k`
/// approximation of the source has none; `kl_on_support_bits` restricts the sum
/// to the support. Builtin sources add `true_hmu_bits`.
pub fn run_entropy(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let prep = Prepared::new(cfg)?;
    let a = prep.alphabet.size();
    let per_n = run_grid(cfg.jobs, &prep.grid, |n| {
        let mut rows = Vec::new();
        let mut energies = Vec::new();
        let mut evs = Vec::new();
        for (i, &k) in prep.orders.iter().enumerate() {
            let counts = prep.counts(i, n)?;
            let q = q_from(&counts, &prep.hypers[i])?;
            let mean = expected_energy(&q)?;
            let (kl, kl_support) = match &prep.truth {
                Some(truth) => {
                    let d = kl_of(&q, &truth[i])?;
                    (Cell::Num(d.bits), Cell::Num(d.on_support_bits))
                }
                None => (Cell::Empty, Cell::Empty),
            };
            let mut row = vec![
                Cell::Int(n as u64),
                Cell::Int(k as u64),
                Cell::Num(q.beta()),
                Cell::Num(mean),
                Cell::Num(energy_variance(&q)?),
                Cell::Num(hmu_of(&q)),
                kl,
                Cell::Num(asymptotic_energy(&q)),
                kl_support,
            ];
            if let Some(h) = prep.true_hmu {
                row.push(Cell::Num(h));
            }
            rows.push(row);
            energies.push((k, mean));
            evs.push((k, log_evidence(&counts, &prep.hypers[i])?));
        }
        let weighted = weighted_energy(&energies, &order_posterior(cfg.prior, &evs, a)?)?;
        Ok((n, rows, weighted))
    })?;
    let mut columns = vec![
        "N",
        "k",
        "beta_k",
        "energy_mean_bits",
        "energy_var",
        "hmu_Q_bits",
        "kl_bits_if_truth_known",
        "asymptotic_bits",
        "kl_on_support_bits",
    ];
    if prep.true_hmu.is_some() {
        columns.push("true_hmu_bits");
    }
    let mut entropy = Table::new(columns);
    let mut weighted = Table::new(vec!["N", "prior", "weighted_energy_bits"]);
    for (n, rows, w) in per_n {
        entropy.rows.extend(rows);
        weighted.rows.push(vec![
            Cell::Int(n as u64),
            Cell::Text(cfg.prior.name().into()),
            Cell::Num(w),
        ]);
    }
    Ok(vec![
        entropy.write(&cfg.out_dir, "entropy", cfg.format)?,
        weighted.write(&cfg.out_dir, "entropy_weighted", cfg.format)?,
    ])
}

/// Writes one seeded realization of a process source as a line of symbols.
pub fn simulate(source: &Source, n: usize, seed: u64, path: &Path) -> Result<PathBuf> {
    let hmm = source
        .hmm()
        .ok_or_else(|| Error::Config("simulation needs a process source".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = sample_sequence(&hmm, n, &mut rng)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut text = seq.render(hmm.alphabet());
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

/// Figures that [`reproduce`] knows how to regenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureId(u8);

impl FigureId {
    pub const ALL: [u8; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];

    pub fn new(id: u8) -> Result<Self> {
        if Self::ALL.contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::Config(format!(
                "unknown figure id {id} (expected 2 to 10)"
            )))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Source, command and grid for this figure, writing into `out_dir`.
    pub fn config(self, out_dir: &Path) -> (Command, ExperimentConfig) {
        let process = match self.0 {
            2..=4 => BuiltinProcess::GoldenMean,
            5..=7 => BuiltinProcess::Even,
            _ => BuiltinProcess::Sns,
        };
        let mut cfg = ExperimentConfig::new(Source::Builtin(process), out_dir);
        let orders = |lo, hi| OrderRange::new(lo, hi).expect("valid figure order range");
        let command = match self.0 {
            2 | 5 | 8 => {
                cfg.orders = orders(1, 1);
                cfg.grid = match self.0 {
                    2 => NGrid::List(vec![100, 400, 1600, 6400]),
                    _ => NGrid::List(vec![100, 1000, 10_000]),
                };
                Command::Infer
            }
            3 => {
                cfg.orders = orders(1, 4);
                Command::Compare
            }
            6 | 9 => {
                cfg.orders = orders(1, 4);
                cfg.grid = NGrid::Log {
                    start: 10,
                    stop: if self.0 == 6 { 10_000 } else { 1_000_000 },
                    per_decade: 20,
                };
                Command::Compare
            }
            _ => {
                cfg.orders = orders(1, if self.0 == 4 { 4 } else { 6 });
                cfg.grid = NGrid::Log {
                    start: 10,
                    stop: if self.0 == 4 { 100_000 } else { 1_000_000 },
                    per_decade: 10,
                };
                Command::Entropy
            }
        };
        (command, cfg)
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fig{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Infer,
    Compare,
    Entropy,
}

impl Command {
    pub fn run(self, cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
        match self {
            Command::Infer => run_infer(cfg),
            Command::Compare => run_compare(cfg),
            Command::Entropy => run_entropy(cfg),
        }
    }
}

/// Regenerates the data behind one figure into `out_dir/fig{id}`.
pub fn reproduce(
    id: FigureId,
    out_dir: &Path,
    jobs: Option<usize>,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    let (command, mut cfg) = id.config(&out_dir.join(id.to_string()));
    cfg.jobs = jobs;
    cfg.format = format;
    command.run(&cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_number(33.0), "33");
        assert_eq!(format_number(-1.5e-7), "-1.5e-07");
        assert_eq!(format_number(1234567.0), "1234567");
        assert_eq!(format_number(1e12), "1e+12");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(0.0000849034613985), "8.49034613985e-05");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(9.9999999999996), "10");
        let x = 0.123456789012345;
        assert!((format_number(x).parse::<f64>().unwrap() - x).abs() < 1e-12);
    }

    #[test]
    fn grids() {
        let lin = NGrid::Linear {
            start: 100,
            stop: 1000,
            step: 5,
        }
        .values(None)
        .unwrap();
        assert_eq!(lin.len(), 181);
        assert_eq!(*lin.last().unwrap(), 1000);
        let log = NGrid::Log {
            start: 10,
            stop: 1000,
            per_decade: 2,
        }
        .values(None)
        .unwrap();
        assert_eq!(log, vec![10, 32, 100, 316, 1000]);
        assert!(NGrid::Full.values(None).is_err());
        assert_eq!(NGrid::Full.values(Some(7)).unwrap(), vec![7]);
        assert!(NGrid::Linear {
            start: 5,
            stop: 1,
            step: 1
        }
        .values(None)
        .is_err());
        assert!(NGrid::List(vec![]).values(None).is_err());
    }

    #[test]
    fn figure_ids() {
        assert!(FigureId::new(1).is_err());
        assert!(FigureId::new(11).is_err());
        let (cmd, cfg) = FigureId::new(3).unwrap().config(Path::new("x"));
        assert_eq!(cmd, Command::Compare);
        assert_eq!(
            cfg.grid,
            NGrid::Linear {
                start: 100,
                stop: 1000,
                step: 5
            }
        );
        let (cmd, cfg) = FigureId::new(10).unwrap().config(Path::new("x"));
        assert_eq!(cmd, Command::Entropy);
        assert!(matches!(cfg.source, Source::Builtin(BuiltinProcess::Sns)));
    }

    #[test]
    fn fake_counts_override_matching_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fake.csv");
        fs::write(&path, "context,symbol,fake_count\n1,0,3.5\n01,1,2\n").unwrap();
        let fake = read_fake_counts(&path, &Alphabet::binary()).unwrap();
        let policy = HyperPolicy::FakeCounts { path, default: 1.0 };
        let h1 = hyper_for(1, 2, &policy, &fake).unwrap();
        assert_eq!(h1.as_slice(), &[1.0, 1.0, 3.5, 1.0]);
        let h2 = hyper_for(2, 2, &policy, &fake).unwrap();
        assert_eq!(h2.get(1, 1), 2.0);
        assert_eq!(h2.total(), 9.0);
        let dup = dir.path().join("dup.csv");
        fs::write(&dup, "context,symbol,fake_count\n1,0,3.5\n1,0,2\n").unwrap();
        assert!(read_fake_counts(&dup, &Alphabet::binary()).is_err());
    }

    #[test]
    fn sample_mode_rejects_sequence_sources() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.txt");
        fs::write(&path, "0101101").unwrap();
        let mut cfg = ExperimentConfig::new(
            Source::Sequence {
                path,
                layout: SequenceLayout::PlainText,
                alphabet: None,
            },
            dir.path(),
        );
        cfg.mode = Mode::Sample { seed: 1 };
        assert!(matches!(run_compare(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn grid_must_exceed_orders() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = ExperimentConfig::new(Source::Builtin(BuiltinProcess::GoldenMean), dir.path());
        cfg.grid = NGrid::List(vec![3]);
        assert!(matches!(run_compare(&cfg), Err(Error::Config(_))));
    }
}

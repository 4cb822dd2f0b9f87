//! Reference sources as labeled hidden-Markov processes.
//!
//! A process is a set of per-symbol matrices `T^(s)` over hidden states with
//! `T = Σ_s T^(s)` row-stochastic. Word probabilities are `π · Π T^(s_i) · η`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Deserialize;

use crate::counts::{
    table_entries, Alphabet, CountTable, SymbolSequence, TransitionTable, DEFAULT_MAX_ENTRIES,
};
use crate::entropy::WordConditional;
use crate::error::{Error, Result};

/// Entropy rate of the simple nondeterministic source in bits/symbol.
///
/// Its presentation is not unifilar, so the closed form does not apply and
/// the value is taken as a fixed datum.
pub const SNS_ENTROPY_RATE: f64 = 0.677867;

const ROW_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledHmm {
    alphabet: Alphabet,
    states: usize,
    /// One row-major `states × states` matrix per symbol.
    matrices: Vec<Vec<f64>>,
}

impl LabeledHmm {
    pub fn new(alphabet: Alphabet, states: usize, matrices: Vec<Vec<f64>>) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidHmm("state count must be positive".into()));
        }
        if matrices.len() != alphabet.size() {
            return Err(Error::InvalidHmm(format!(
                "{} labeled matrices for {} symbols",
                matrices.len(),
                alphabet.size()
            )));
        }
        for (s, m) in matrices.iter().enumerate() {
            if m.len() != states * states {
                return Err(Error::InvalidHmm(format!(
                    "matrix for symbol {s} has {} entries, expected {}",
                    m.len(),
                    states * states
                )));
            }
            if let Some(bad) = m.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::InvalidHmm(format!(
                    "negativity: matrix for symbol {s} has entry {bad}"
                )));
            }
        }
        for v in 0..states {
            let sum: f64 = matrices
                .iter()
                .map(|m| m[v * states..(v + 1) * states].iter().sum::<f64>())
                .sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidHmm(format!(
                    "row sums: row {v} of the total transition matrix sums to {sum}"
                )));
            }
        }
        Ok(Self {
            alphabet,
            states,
            matrices,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// `T^(s)[from][to]`
    pub fn transition(&self, symbol: usize, from: usize, to: usize) -> f64 {
        self.matrices[symbol][from * self.states + to]
    }

    /// `T = Σ_s T^(s)`, row-major.
    pub fn total_matrix(&self) -> Vec<f64> {
        let mut t = vec![0.0; self.states * self.states];
        for m in &self.matrices {
            for (acc, v) in t.iter_mut().zip(m) {
                *acc += v;
            }
        }
        t
    }

    /// First `(state, symbol)` with more than one successor, if any.
    fn nonunifilar_witness(&self) -> Option<(usize, usize, usize)> {
        for v in 0..self.states {
            for s in 0..self.alphabet_size() {
                let successors = (0..self.states)
                    .filter(|&w| self.transition(s, v, w) > 0.0)
                    .count();
                if successors > 1 {
                    return Some((v, s, successors));
                }
            }
        }
        None
    }

    /// Each state emits each symbol toward at most one successor.
    pub fn is_unifilar(&self) -> bool {
        self.nonunifilar_witness().is_none()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: HmmSpec = serde_json::from_str(text)?;
        let alphabet = Alphabet::parse(&spec.alphabet)?;
        let mut matrices = Vec::with_capacity(alphabet.size());
        for &c in alphabet.symbols() {
            let rows = spec
                .matrices
                .get(&c.to_string())
                .ok_or_else(|| Error::InvalidHmm(format!("no matrix for symbol '{c}'")))?;
            if rows.len() != spec.states || rows.iter().any(|r| r.len() != spec.states) {
                return Err(Error::InvalidHmm(format!(
                    "matrix for symbol '{c}' is not {0}×{0}",
                    spec.states
                )));
            }
            matrices.push(rows.concat());
        }
        if let Some(extra) = spec.matrices.keys().find(|key| {
            key.chars().count() != 1 || !alphabet.symbols().contains(&key.chars().next().unwrap())
        }) {
            return Err(Error::InvalidHmm(format!(
                "matrix key '{extra}' is not an alphabet symbol"
            )));
        }
        Self::new(alphabet, spec.states, matrices)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }
}

/// JSON layout: `{"states": 2, "alphabet": "01", "matrices": {"0": [[..]], "1": [[..]]}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HmmSpec {
    states: usize,
    alphabet: String,
    matrices: BTreeMap<String, Vec<Vec<f64>>>,
}

fn binary_hmm(t0: [f64; 4], t1: [f64; 4]) -> LabeledHmm {
    LabeledHmm::new(Alphabet::binary(), 2, vec![t0.to_vec(), t1.to_vec()]).expect("builtin process is valid")
}

/// Binary source forbidding the word `00`.
pub fn golden_mean() -> LabeledHmm {
    binary_hmm([0.0, 0.5, 0.0, 0.0], [0.5, 0.0, 1.0, 0.0])
}

/// Binary source whose blocks of 1s between 0s have even length.
pub fn even_process() -> LabeledHmm {
    binary_hmm([0.5, 0.0, 0.0, 0.0], [0.0, 0.5, 1.0, 0.0])
}

/// Simple nondeterministic source: a 1 on every transition out of state A.
pub fn sns() -> LabeledHmm {
    binary_hmm([0.0, 0.0, 0.5, 0.0], [0.5, 0.5, 0.0, 0.5])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinProcess {
    GoldenMean,
    Even,
    Sns,
}

impl BuiltinProcess {
    pub const ALL: [BuiltinProcess; 3] = [Self::GoldenMean, Self::Even, Self::Sns];

    pub fn name(self) -> &'static str {
        match self {
            Self::GoldenMean => "golden-mean",
            Self::Even => "even",
            Self::Sns => "sns",
        }
    }

    pub fn hmm(self) -> LabeledHmm {
        match self {
            Self::GoldenMean => golden_mean(),
            Self::Even => even_process(),
            Self::Sns => sns(),
        }
    }

    /// Closed form for the unifilar sources, the published constant for SNS.
    pub fn entropy_rate(self) -> f64 {
        match self {
            Self::Sns => SNS_ENTROPY_RATE,
            _ => true_entropy_rate(&self.hmm()).expect("unifilar builtin"),
        }
    }
}

impl fmt::Display for BuiltinProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinProcess {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "golden-mean" | "golden_mean" | "gm" => Ok(Self::GoldenMean),
            "even" | "even-process" | "even_process" => Ok(Self::Even),
            "sns" => Ok(Self::Sns),
            other => Err(Error::Config(format!(
                "unknown source '{other}' (expected golden-mean, even or sns)"
            ))),
        }
    }
}

/// Stationary distribution over hidden states.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDist {
    pub pi: Vec<f64>,
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Solves `π (T - I) = 0` with one balance equation replaced by `Σ π = 1`.
pub fn stationary(hmm: &LabeledHmm) -> Result<StationaryDist> {
    let n = hmm.states;
    let t = hmm.total_matrix();
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    for v in 0..n {
        for w in 0..n {
            if t[v * n + w] > 0.0 {
                forward[v].push(w);
                backward[w].push(v);
            }
        }
    }
    for adj in [&forward, &backward] {
        if let Some(to) = reachable(adj, 0).iter().position(|&r| !r) {
            let (from, to) = if std::ptr::eq(adj, &forward) {
                (0, to)
            } else {
                (to, 0)
            };
            return Err(Error::Reducible { from, to });
        }
    }
    // rows of the system are columns of T - I (transpose), last row is normalization
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n - 1 {
        for j in 0..n {
            a[(i, j)] = t[j * n + i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numeric("singular stationary system".into()))?;
    let mut pi: Vec<f64> = x
        .iter()
        .map(|&v| if v < 0.0 && v > -1e-14 { 0.0 } else { v })
        .collect();
    if pi.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::Numeric(format!("stationary solve gave {pi:?}")));
    }
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|v| *v /= total);
    Ok(StationaryDist { pi })
}

fn step(hmm: &LabeledHmm, row: &[f64], symbol: usize) -> Vec<f64> {
    let n = hmm.states;
    let m = &hmm.matrices[symbol];
    let mut out = vec![0.0; n];
    for (v, &rv) in row.iter().enumerate() {
        if rv == 0.0 {
            continue;
        }
        for w in 0..n {
            out[w] += rv * m[v * n + w];
        }
    }
    out
}

/// `π · Π T^(s_i) · η`; the empty word has probability 1.
pub fn word_probability(hmm: &LabeledHmm, word: &[usize]) -> Result<f64> {
    if let Some(&bad) = word.iter().find(|&&s| s >= hmm.alphabet_size()) {
        return Err(Error::SymbolOutOfRange {
            index: bad,
            size: hmm.alphabet_size(),
        });
    }
    let mut row = stationary(hmm)?.pi;
    for &s in word {
        row = step(hmm, &row, s);
    }
    Ok(row.iter().sum::<f64>().clamp(0.0, 1.0))
}

/// Probabilities of all `|A|^len` words, indexed by their base-`|A|` code.
pub fn word_distribution(hmm: &LabeledHmm, len: usize) -> Result<Vec<f64>> {
    let a = hmm.alphabet_size();
    let n = hmm.states;
    table_entries(a, len, DEFAULT_MAX_ENTRIES)?;
    // state vectors for every prefix, extended one symbol per level
    let mut level = stationary(hmm)?.pi;
    for _ in 0..len {
        let mut next = Vec::with_capacity(level.len() * a);
        for row in level.chunks(n) {
            for s in 0..a {
                next.extend(step(hmm, row, s));
            }
        }
        level = next;
    }
    Ok(level
        .chunks(n)
        .map(|r| r.iter().sum::<f64>().clamp(0.0, 1.0))
        .collect())
}

/// Exact mean counts `n(h^k s) = (N - k) p(h^k s)`.
pub fn average_counts(hmm: &LabeledHmm, n: usize, k: usize) -> Result<CountTable> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if n <= k {
        return Err(Error::SequenceTooShort {
            len: n,
            order: k,
            needed: k + 1,
        });
    }
    let mass = (n - k) as f64;
    let probs = word_distribution(hmm, k + 1)?;
    CountTable::from_vec(
        k,
        hmm.alphabet_size(),
        probs.into_iter().map(|p| mass * p).collect(),
    )
}

/// `-Σ_v π_v Σ_s p(s|v) log₂ p(s|v)` for unifilar presentations.
pub fn true_entropy_rate(hmm: &LabeledHmm) -> Result<f64> {
    if let Some((state, symbol, successors)) = hmm.nonunifilar_witness() {
        return Err(Error::NonUnifilar {
            state,
            symbol,
            successors,
            hint: format!(
                "; for the simple nondeterministic source use SNS_ENTROPY_RATE = {SNS_ENTROPY_RATE}"
            ),
        });
    }
    let pi = stationary(hmm)?.pi;
    let n = hmm.states;
    let mut h = 0.0;
    for (v, &pv) in pi.iter().enumerate() {
        for s in 0..hmm.alphabet_size() {
            let p: f64 = hmm.matrices[s][v * n..(v + 1) * n].iter().sum();
            if p > 0.0 {
                h -= pv * p * p.log2();
            }
        }
    }
    Ok(h)
}

/// Order-`k` Markov chain matching the process's length-`k+1` statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovApproximation {
    /// `p(h^k)`
    pub word_probs: Vec<f64>,
    /// `p(s|h^k)`; uniform on words outside the support.
    pub transitions: TransitionTable,
    /// `p(h^k) > 0`
    pub support: Vec<bool>,
}

impl WordConditional for MarkovApproximation {
    fn order(&self) -> usize {
        self.transitions.order()
    }
    fn alphabet_size(&self) -> usize {
        self.transitions.alphabet_size()
    }
    fn word_weight(&self, word: usize) -> f64 {
        self.word_probs[word]
    }
    fn conditional(&self, word: usize, symbol: usize) -> f64 {
        self.transitions.get(word, symbol)
    }
}

pub fn markov_approximation(hmm: &LabeledHmm, k: usize) -> Result<MarkovApproximation> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let a = hmm.alphabet_size();
    let joint = word_distribution(hmm, k + 1)?;
    let mut word_probs = Vec::with_capacity(joint.len() / a);
    let mut support = Vec::with_capacity(joint.len() / a);
    let mut cond = Vec::with_capacity(joint.len());
    for row in joint.chunks(a) {
        let ph: f64 = row.iter().sum();
        word_probs.push(ph);
        support.push(ph > 0.0);
        if ph > 0.0 {
            cond.extend(row.iter().map(|p| p / ph));
        } else {
            cond.extend(std::iter::repeat_n(1.0 / a as f64, a));
        }
    }
    Ok(MarkovApproximation {
        word_probs,
        transitions: TransitionTable::from_vec(k, a, cond)?,
        support,
    })
}

fn draw(weights: impl Iterator<Item = f64> + Clone, u: f64) -> usize {
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last_positive = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last_positive
}

/// One realization of length `n`, starting from a stationary hidden state.
pub fn sample_sequence<R: Rng + ?Sized>(hmm: &LabeledHmm, n: usize, rng: &mut R) -> Result<SymbolSequence> {
    if n == 0 {
        return Err(Error::Config("sample length must be at least 1".into()));
    }
    let states = hmm.states;
    let a = hmm.alphabet_size();
    let pi = stationary(hmm)?.pi;
    let mut state = draw(pi.iter().copied(), rng.random::<f64>());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = rng.random::<f64>();
        let edges = (0..a).flat_map(|s| (0..states).map(move |w| (s, w)));
        let weights = edges.clone().map(|(s, w)| hmm.transition(s, state, w));
        let (s, w) = edges.clone().nth(draw(weights, u)).expect("edge index in range");
        out.push(s);
        state = w;
    }
    SymbolSequence::new(out, a)
}

/// Every maximal block of 1s with a 0 on both sides has even length.
pub fn bounded_one_runs_even(symbols: &[usize]) -> bool {
    let mut run: Option<usize> = None;
    for &s in symbols {
        match (s, run) {
            (0, Some(len)) if len % 2 == 1 => return false,
            (0, _) => run = Some(0),
            (_, Some(len)) => run = Some(len + 1),
            (_, None) => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_pi(hmm: &LabeledHmm, expected: &[f64]) {
        let pi = stationary(hmm).unwrap().pi;
        for (p, e) in pi.iter().zip(expected) {
            assert!((p - e).abs() < 1e-12, "{pi:?}");
        }
    }

    #[test]
    fn builtin_stationaries() {
        assert_pi(&golden_mean(), &[2.0 / 3.0, 1.0 / 3.0]);
        assert_pi(&even_process(), &[2.0 / 3.0, 1.0 / 3.0]);
        assert_pi(&sns(), &[0.5, 0.5]);
    }

    #[test]
    fn period_two_flip() {
        let hmm = LabeledHmm::new(
            Alphabet::binary(),
            2,
            vec![vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0]],
        )
        .unwrap();
        assert_pi(&hmm, &[0.5, 0.5]);
    }

    #[test]
    fn random_chain_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 4;
        let mut m0 = vec![0.0; n * n];
        let mut m1 = vec![0.0; n * n];
        for v in 0..n {
            let raw: Vec<f64> = (0..2 * n).map(|_| rng.random::<f64>() + 0.01).collect();
            let total: f64 = raw.iter().sum();
            for w in 0..n {
                m0[v * n + w] = raw[w] / total;
                m1[v * n + w] = raw[n + w] / total;
            }
        }
        let hmm = LabeledHmm::new(Alphabet::binary(), n, vec![m0, m1]).unwrap();
        let pi = stationary(&hmm).unwrap().pi;
        let t = hmm.total_matrix();
        for w in 0..n {
            let lhs: f64 = (0..n).map(|v| pi[v] * t[v * n + w]).sum();
            assert!((lhs - pi[w]).abs() < 1e-12);
        }
    }

    #[test]
    fn reducible_is_rejected() {
        let hmm = LabeledHmm::new(
            Alphabet::binary(),
            2,
            vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]],
        )
        .unwrap();
        assert!(matches!(stationary(&hmm), Err(Error::Reducible { .. })));
    }

    #[test]
    fn invalid_hmms() {
        let neg = LabeledHmm::new(Alphabet::binary(), 1, vec![vec![1.5], vec![-0.5]]);
        assert!(matches!(neg, Err(Error::InvalidHmm(m)) if m.contains("negativity")));
        let sum = LabeledHmm::new(Alphabet::binary(), 1, vec![vec![0.5], vec![0.4]]);
        assert!(matches!(sum, Err(Error::InvalidHmm(m)) if m.contains("row sums")));
    }

    #[test]
    fn word_probability_examples() {
        let gm = golden_mean();
        assert_eq!(word_probability(&gm, &[0, 0]).unwrap(), 0.0);
        assert!((word_probability(&gm, &[0, 1]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        for hmm in [golden_mean(), even_process(), sns()] {
            assert_eq!(word_probability(&hmm, &[]).unwrap(), 1.0);
        }
        assert!(word_probability(&gm, &[2]).is_err());
    }

    #[test]
    fn distributions_normalize_and_are_consistent() {
        for hmm in [golden_mean(), even_process(), sns()] {
            let mut prev = vec![1.0];
            for len in 1..=8 {
                let d = word_distribution(&hmm, len).unwrap();
                assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-10);
                for (w, &pw) in prev.iter().enumerate() {
                    // append: codes w*2+s; prepend: codes s*2^(len-1)+w
                    let right = d[2 * w] + d[2 * w + 1];
                    let left = d[w] + d[(1 << (len - 1)) + w];
                    assert!((right - pw).abs() < 1e-12 && (left - pw).abs() < 1e-12);
                }
                for (code, &p) in d.iter().enumerate() {
                    let word: Vec<usize> = (0..len).rev().map(|i| (code >> i) & 1).collect();
                    assert!((word_probability(&hmm, &word).unwrap() - p).abs() < 1e-15);
                }
                prev = d;
            }
        }
    }

    #[test]
    fn average_count_examples() {
        let n = average_counts(&golden_mean(), 100, 1).unwrap();
        assert!((n.get(0, 1) - 33.0).abs() < 1e-12);
        assert_eq!(n.get(0, 0), 0.0);
        assert!((n.total() - 99.0).abs() < 1e-9);
        let n3 = average_counts(&golden_mean(), 1000, 3).unwrap();
        for code in 0..16usize {
            let has00 = (0..3).any(|i| (code >> i) & 3 == 0);
            if has00 {
                assert_eq!(n3.as_slice()[code], 0.0);
            }
        }
        assert!((n3.total() - 997.0).abs() < 1e-9);
        assert!(average_counts(&golden_mean(), 3, 3).is_err());
    }

    #[test]
    fn entropy_rates() {
        assert!((true_entropy_rate(&golden_mean()).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((true_entropy_rate(&even_process()).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        match true_entropy_rate(&sns()) {
            Err(Error::NonUnifilar { hint, .. }) => assert!(hint.contains("0.677867")),
            other => panic!("{other:?}"),
        }
        assert_eq!(BuiltinProcess::Sns.entropy_rate(), 0.677867);
        let approx = markov_approximation(&golden_mean(), 1).unwrap();
        assert!((crate::entropy::hmu_of(&approx) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn markov_approximation_examples() {
        let even = markov_approximation(&even_process(), 1).unwrap();
        assert!((even.transitions.get(1, 0) - 0.25).abs() < 1e-15);
        assert!((even.transitions.get(0, 1) - 0.5).abs() < 1e-15);
        let s = markov_approximation(&sns(), 1).unwrap();
        assert!((s.transitions.get(1, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.transitions.get(0, 1) - 1.0).abs() < 1e-15);
        let gm = markov_approximation(&golden_mean(), 1).unwrap();
        assert!((gm.transitions.get(1, 0) - 0.5).abs() < 1e-15);
        assert_eq!(gm.transitions.get(0, 1), 1.0);
        let gm2 = markov_approximation(&golden_mean(), 2).unwrap();
        assert_eq!(gm2.support, vec![false, true, true, true]);
        assert_eq!(gm2.transitions.row(0), &[0.5, 0.5]);
    }

    #[test]
    fn samples_respect_forbidden_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let seq = sample_sequence(&golden_mean(), 100_000, &mut rng).unwrap();
        assert!(seq.as_slice().windows(2).all(|w| w != [0, 0]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let again = sample_sequence(&golden_mean(), 100_000, &mut rng).unwrap();
        assert_eq!(seq, again);
    }

    #[test]
    fn sample_pair_frequencies_within_three_sigma() {
        for hmm in [golden_mean(), even_process(), sns()] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let n = 100_000;
            let seq = sample_sequence(&hmm, n, &mut rng).unwrap();
            let mut counts = [0usize; 4];
            for w in seq.as_slice().windows(2) {
                counts[w[0] * 2 + w[1]] += 1;
            }
            let pairs = (n - 1) as f64;
            let exact = word_distribution(&hmm, 2).unwrap();
            for (c, p) in counts.iter().zip(&exact) {
                let sigma = (p * (1.0 - p) / pairs).sqrt();
                assert!(
                    (*c as f64 / pairs - p).abs() <= 3.0 * sigma,
                    "{counts:?} vs {exact:?}"
                );
            }
        }
    }

    #[test]
    fn even_samples_have_even_blocks() {
        assert!(bounded_one_runs_even(&[1, 0, 1, 1, 0, 0, 1, 1, 1]));
        assert!(!bounded_one_runs_even(&[0, 1, 1, 1, 0]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let seq = sample_sequence(&even_process(), 100_000, &mut rng).unwrap();
        assert!(bounded_one_runs_even(seq.as_slice()));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gm = sample_sequence(&golden_mean(), 10_000, &mut rng).unwrap();
        assert!(!bounded_one_runs_even(gm.as_slice()));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"states": 2, "alphabet": "01",
            "matrices": {"0": [[0, 0.5], [0, 0]], "1": [[0.5, 0], [1, 0]]}}"#;
        assert_eq!(LabeledHmm::from_json_str(text).unwrap(), golden_mean());
        let bad = r#"{"states": 1, "alphabet": "01", "matrices": {"0": [[0.5]], "1": [[0.6]]}}"#;
        assert!(
            matches!(LabeledHmm::from_json_str(bad), Err(Error::InvalidHmm(m)) if m.contains("row sums"))
        );
        let missing = r#"{"states": 1, "alphabet": "01", "matrices": {"0": [[1.0]]}}"#;
        assert!(LabeledHmm::from_json_str(missing).is_err());
    }

    #[test]
    fn builtin_names() {
        for p in BuiltinProcess::ALL {
            assert_eq!(p.name().parse::<BuiltinProcess>().unwrap(), p);
        }
        assert!("nope".parse::<BuiltinProcess>().is_err());
    }
}

//! Entropy-rate estimation from the evidence viewed as a partition function.
//!
//! With `β_k = Σ (n + α)` and the posterior-mean distribution `Q`, the joint
//! density of data and parameters has the Boltzmann form `2^{-β_k E(Q,P)}`
//! where `E = D[Q‖P] + h_μ[Q]`. Derivatives of `ln Z` in `β_k` (with `Q` held
//! fixed) give the posterior mean and variance of `E` in closed form through
//! the polygamma functions. Information quantities are in bits.

use std::f64::consts::LN_2;

use crate::comparison::OrderPosterior;
use crate::counts::{shape_check, CountTable, HyperTable, TransitionTable};
use crate::error::{Error, Result};
use crate::special::{digamma_unchecked, log_gamma_unchecked, trigamma_unchecked};

/// A word distribution `w(h^k)` paired with conditionals `c(s|h^k)`.
pub trait WordConditional {
    fn order(&self) -> usize;
    fn alphabet_size(&self) -> usize;
    fn word_weight(&self, word: usize) -> f64;
    fn conditional(&self, word: usize, symbol: usize) -> f64;

    fn words(&self) -> usize {
        self.alphabet_size().pow(self.order() as u32)
    }
}

/// Posterior-mean distribution `Q` with total mass `β_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QDistribution {
    order: usize,
    alphabet_size: usize,
    beta: f64,
    word_probs: Vec<f64>,
    cond: Vec<f64>,
}

impl QDistribution {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `q(h^k)`
    pub fn word_prob(&self, word: usize) -> f64 {
        self.word_probs[word]
    }

    /// `q(s|h^k)`
    pub fn cond(&self, word: usize, symbol: usize) -> f64 {
        self.cond[word * self.alphabet_size + symbol]
    }

    /// The same `Q` at a different total mass; used to probe `β`-derivatives.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain("beta_k", "finite and > 0", beta));
        }
        Ok(Self { beta, ..self.clone() })
    }

    /// `-ln Z` evaluated from `R` and this `Q` at its current `β_k`.
    pub fn neg_log_partition(&self, prior: &RDistribution) -> Result<f64> {
        if prior.order != self.order || prior.alphabet_size != self.alphabet_size {
            return Err(Error::ShapeMismatch {
                left_order: self.order,
                left_size: self.alphabet_size,
                right_order: prior.order,
                right_size: prior.alphabet_size,
            });
        }
        let a = self.alphabet_size;
        let mut acc = 0.0;
        for h in 0..self.word_probs.len() {
            let rh = prior.alpha_total * prior.word_probs[h];
            let qh = self.beta * self.word_probs[h];
            acc += log_gamma_unchecked(qh) - log_gamma_unchecked(rh);
            for s in 0..a {
                acc += log_gamma_unchecked(rh * prior.cond[h * a + s])
                    - log_gamma_unchecked(qh * self.cond[h * a + s]);
            }
        }
        Ok(acc)
    }
}

impl WordConditional for QDistribution {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
    fn word_weight(&self, word: usize) -> f64 {
        self.word_probs[word]
    }
    fn conditional(&self, word: usize, symbol: usize) -> f64 {
        self.cond(word, symbol)
    }
    fn words(&self) -> usize {
        self.word_probs.len()
    }
}

/// Prior-mean distribution `R`: `r(h^k) = α(h^k)/α_k`, `r(s|h^k) = α(h^k s)/α(h^k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RDistribution {
    order: usize,
    alphabet_size: usize,
    alpha_total: f64,
    word_probs: Vec<f64>,
    cond: Vec<f64>,
}

impl RDistribution {
    pub fn from_hyper(hyper: &HyperTable) -> Self {
        let total = hyper.total();
        let a = hyper.alphabet_size();
        let word_probs = (0..hyper.words()).map(|h| hyper.word_sum(h) / total).collect();
        let cond = hyper
            .as_slice()
            .iter()
            .enumerate()
            .map(|(i, &v)| v / hyper.word_sum(i / a))
            .collect();
        Self {
            order: hyper.order(),
            alphabet_size: a,
            alpha_total: total,
            word_probs,
            cond,
        }
    }

    /// `α_k`
    pub fn alpha_total(&self) -> f64 {
        self.alpha_total
    }
}

impl WordConditional for RDistribution {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
    fn word_weight(&self, word: usize) -> f64 {
        self.word_probs[word]
    }
    fn conditional(&self, word: usize, symbol: usize) -> f64 {
        self.cond[word * self.alphabet_size + symbol]
    }
    fn words(&self) -> usize {
        self.word_probs.len()
    }
}

/// Uniform `U`: `u(h^k) = |A|^-k`, `u(s|h^k) = 1/|A|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UDistribution {
    pub order: usize,
    pub alphabet_size: usize,
}

impl WordConditional for UDistribution {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
    fn word_weight(&self, _word: usize) -> f64 {
        (self.alphabet_size as f64).powi(-(self.order as i32))
    }
    fn conditional(&self, _word: usize, _symbol: usize) -> f64 {
        1.0 / self.alphabet_size as f64
    }
}

/// Posterior mean and variance of the energy `E(Q,P)` for one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyStats {
    pub order: usize,
    pub beta: f64,
    /// bits/symbol
    pub mean: f64,
    /// bits², printed prefactor convention
    pub variance: f64,
}

/// Prefactor applied to the second `β`-derivative of `ln Z`.
///
/// `AsPrinted` uses `1/ln 2`. A second derivative of a base-2 quantity would
/// carry `1/(ln 2)²`; `SquaredLog` selects that instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceConvention {
    #[default]
    AsPrinted,
    SquaredLog,
}

/// Conditional relative entropy `D[Q‖P]` in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlDivergence {
    /// `+inf` when `support_violation` is set.
    pub bits: f64,
    /// Some `q(s|h^k) > 0` sits where `p(s|h^k) = 0`.
    pub support_violation: bool,
    /// The sum restricted to entries with `p(s|h^k) > 0`.
    pub on_support_bits: f64,
}

pub fn q_from(counts: &CountTable, hyper: &HyperTable) -> Result<QDistribution> {
    shape_check(counts, hyper)?;
    let a = counts.alphabet_size();
    let word_mass: Vec<f64> = (0..counts.words())
        .map(|h| counts.word_total(h) + hyper.word_sum(h))
        .collect();
    let beta: f64 = word_mass.iter().sum();
    let word_probs = word_mass.iter().map(|m| m / beta).collect();
    let cond = counts
        .as_slice()
        .iter()
        .zip(hyper.as_slice())
        .enumerate()
        .map(|(i, (n, al))| (n + al) / word_mass[i / a])
        .collect();
    Ok(QDistribution {
        order: counts.order(),
        alphabet_size: a,
        beta,
        word_probs,
        cond,
    })
}

fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// `h_μ = -Σ w(h^k) c(s|h^k) log₂ c(s|h^k)`, with `0 log 0 = 0`.
pub fn hmu_of<D: WordConditional + ?Sized>(dist: &D) -> f64 {
    let a = dist.alphabet_size();
    let mut acc = 0.0;
    for h in 0..dist.words() {
        let w = dist.word_weight(h);
        if w == 0.0 {
            continue;
        }
        let row: f64 = (0..a).map(|s| xlog2x(dist.conditional(h, s))).sum();
        acc -= w * row;
    }
    acc.max(0.0)
}

/// `D[Q‖P] = Σ q(h^k) q(s|h^k) log₂ (q(s|h^k) / p(s|h^k))`.
pub fn kl_of(q: &QDistribution, p: &TransitionTable) -> Result<KlDivergence> {
    if q.order != p.order() || q.alphabet_size != p.alphabet_size() {
        return Err(Error::ShapeMismatch {
            left_order: q.order,
            left_size: q.alphabet_size,
            right_order: p.order(),
            right_size: p.alphabet_size(),
        });
    }
    let mut on_support = 0.0;
    let mut violation = false;
    for h in 0..q.word_probs.len() {
        let wh = q.word_probs[h];
        for s in 0..q.alphabet_size {
            let qs = q.cond(h, s);
            let ps = p.get(h, s);
            if wh * qs == 0.0 {
                continue;
            }
            if ps == 0.0 {
                violation = true;
            } else {
                on_support += wh * qs * (qs / ps).log2();
            }
        }
    }
    Ok(KlDivergence {
        bits: if violation {
            f64::INFINITY
        } else {
            on_support.max(0.0)
        },
        support_violation: violation,
        on_support_bits: on_support,
    })
}

/// `-ln Z = -ln P(D|M_k)` through the `R` / `Q` decomposition.
pub fn neg_log_partition(counts: &CountTable, hyper: &HyperTable) -> Result<f64> {
    let q = q_from(counts, hyper)?;
    q.neg_log_partition(&RDistribution::from_hyper(hyper))
}

fn check_mass(q: &QDistribution) -> Result<()> {
    for h in 0..q.word_probs.len() {
        let mass = q.beta * q.word_probs[h];
        if !(mass > 0.0) {
            return Err(Error::Numeric(format!("word {h} has zero posterior mass")));
        }
        for s in 0..q.alphabet_size {
            if !(mass * q.cond(h, s) > 0.0) {
                return Err(Error::Numeric(format!(
                    "word {h} symbol {s} has zero posterior mass"
                )));
            }
        }
    }
    Ok(())
}

/// Posterior mean of `E(Q,P)` in bits:
/// `[Σ q(h) ψ(β q(h)) - Σ q(h) q(s|h) ψ(β q(h) q(s|h))] / ln 2`.
pub fn expected_energy(q: &QDistribution) -> Result<f64> {
    check_mass(q)?;
    let mut acc = 0.0;
    for h in 0..q.word_probs.len() {
        let qh = q.word_probs[h];
        let mut row = qh * digamma_unchecked(q.beta * qh);
        for s in 0..q.alphabet_size {
            let joint = qh * q.cond(h, s);
            row -= joint * digamma_unchecked(q.beta * joint);
        }
        acc += row;
    }
    Ok(acc / LN_2)
}

/// Posterior variance of `E(Q,P)` with the printed `1/ln 2` prefactor.
pub fn energy_variance(q: &QDistribution) -> Result<f64> {
    energy_variance_with(q, VarianceConvention::AsPrinted)
}

/// `[Σ (q(h) q(s|h))² ψ₁(β q(h) q(s|h)) - Σ q(h)² ψ₁(β q(h))] × prefactor`.
pub fn energy_variance_with(q: &QDistribution, convention: VarianceConvention) -> Result<f64> {
    check_mass(q)?;
    let mut acc = 0.0;
    for h in 0..q.word_probs.len() {
        let qh = q.word_probs[h];
        let mut row = -qh * qh * trigamma_unchecked(q.beta * qh);
        for s in 0..q.alphabet_size {
            let joint = qh * q.cond(h, s);
            row += joint * joint * trigamma_unchecked(q.beta * joint);
        }
        acc += row;
    }
    Ok(match convention {
        VarianceConvention::AsPrinted => acc / LN_2,
        VarianceConvention::SquaredLog => acc / (LN_2 * LN_2),
    })
}

/// Large-`β_k` form: `h_μ[Q] + |A|^k (|A| - 1) / (2 β_k ln 2)`, error `O(1/β_k²)`.
pub fn asymptotic_energy(q: &QDistribution) -> f64 {
    let free = (q.word_probs.len() * (q.alphabet_size - 1)) as f64;
    hmu_of(q) + free / (2.0 * q.beta * LN_2)
}

pub fn energy_stats(q: &QDistribution) -> Result<EnergyStats> {
    Ok(EnergyStats {
        order: q.order,
        beta: q.beta,
        mean: expected_energy(q)?,
        variance: energy_variance(q)?,
    })
}

/// Order-averaged energy `Σ_k P(M_k|D) E_k`. Every order in `posterior` needs an entry in `per_order`.
pub fn weighted_energy(per_order: &[(usize, f64)], posterior: &OrderPosterior) -> Result<f64> {
    posterior
        .entries()
        .iter()
        .map(|e| {
            per_order
                .iter()
                .find(|(k, _)| *k == e.k)
                .map(|(_, energy)| e.probability * energy)
                .ok_or_else(|| Error::Config(format!("no energy for order {}", e.k)))
        })
        .sum()
}

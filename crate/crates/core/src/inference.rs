//! Fixed-order Bayesian inference with the conjugate Dirichlet prior.
//!
//! For each conditioning word `h^k` the prior over `{p(s|h^k)}` is a Dirichlet
//! with parameters `α(h^k s)`, so the posterior is again Dirichlet with
//! parameters `n(h^k s) + α(h^k s)`. All probabilities of data are returned as
//! natural logarithms.

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::counts::{shape_check, CountTable, HyperTable, TransitionTable, WordIndex};
use crate::error::{Error, Result};
use crate::special::{inv_reg_inc_beta, log_gamma_unchecked, reg_inc_beta, BetaParams};

/// Product of per-word Dirichlet posteriors, parameters `n + α`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPosterior {
    params: HyperTable,
}

impl DirichletPosterior {
    pub fn order(&self) -> usize {
        self.params.order()
    }

    pub fn alphabet_size(&self) -> usize {
        self.params.alphabet_size()
    }

    /// `n(h^k s) + α(h^k s)`
    pub fn param(&self, word: usize, symbol: usize) -> f64 {
        self.params.get(word, symbol)
    }

    /// `n(h^k) + α(h^k)`
    pub fn word_sum(&self, word: usize) -> f64 {
        self.params.word_sum(word)
    }

    /// The parameters as a hyperparameter-shaped table.
    pub fn params(&self) -> &HyperTable {
        &self.params
    }

    fn check_index(&self, word: usize, symbol: usize) -> Result<()> {
        check_index(&self.params, word, symbol)
    }
}

fn check_index(table: &HyperTable, word: usize, symbol: usize) -> Result<()> {
    if word >= table.words() {
        return Err(Error::WordOutOfRange {
            code: word,
            order: table.order(),
        });
    }
    if symbol >= table.alphabet_size() {
        return Err(Error::SymbolOutOfRange {
            index: symbol,
            size: table.alphabet_size(),
        });
    }
    Ok(())
}

/// Beta marginal of a single parameter `p(s|h^k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalBeta {
    pub word: WordIndex,
    pub symbol: usize,
    pub beta: BetaParams,
}

impl MarginalBeta {
    pub fn mean(&self) -> f64 {
        self.beta.mean()
    }

    pub fn variance(&self) -> f64 {
        self.beta.variance()
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        self.beta.pdf(x)
    }

    /// Density on `points` cell midpoints `(i + 0.5) / points` of `[0, 1]`.
    pub fn density_grid(&self, points: usize) -> Result<Vec<(f64, f64)>> {
        if points == 0 {
            return Err(Error::Config("density grid needs at least one point".into()));
        }
        (0..points)
            .map(|i| {
                let x = (i as f64 + 0.5) / points as f64;
                Ok((x, self.beta.pdf(x)?))
            })
            .collect()
    }
}

/// Equal-tail interval holding posterior mass `level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceRegion {
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn posterior(counts: &CountTable, hyper: &HyperTable) -> Result<DirichletPosterior> {
    shape_check(counts, hyper)?;
    let values = counts
        .as_slice()
        .iter()
        .zip(hyper.as_slice())
        .map(|(n, a)| n + a)
        .collect();
    Ok(DirichletPosterior {
        params: HyperTable::from_vec(counts.order(), counts.alphabet_size(), values)?,
    })
}

/// `(n(h^k s) + α(h^k s)) / (n(h^k) + α(h^k))`
pub fn posterior_mean(post: &DirichletPosterior, word: usize, symbol: usize) -> Result<f64> {
    post.check_index(word, symbol)?;
    Ok(post.param(word, symbol) / post.word_sum(word))
}

pub fn posterior_variance(post: &DirichletPosterior, word: usize, symbol: usize) -> Result<f64> {
    post.check_index(word, symbol)?;
    Ok(dirichlet_variance(post.param(word, symbol), post.word_sum(word)))
}

fn dirichlet_variance(a: f64, total: f64) -> f64 {
    a * (total - a) / (total * total * (total + 1.0))
}

/// Prior mean `α(h^k s)/α(h^k)` and variance of `p(s|h^k)`.
pub fn prior_moments(hyper: &HyperTable, word: usize, symbol: usize) -> Result<(f64, f64)> {
    check_index(hyper, word, symbol)?;
    let a = hyper.get(word, symbol);
    let total = hyper.word_sum(word);
    Ok((a / total, dirichlet_variance(a, total)))
}

pub fn marginal(post: &DirichletPosterior, word: usize, symbol: usize) -> Result<MarginalBeta> {
    post.check_index(word, symbol)?;
    let a = post.param(word, symbol);
    let b: f64 = post
        .params
        .row(word)
        .iter()
        .enumerate()
        .filter(|&(s, _)| s != symbol)
        .map(|(_, v)| v)
        .sum();
    Ok(MarginalBeta {
        word: WordIndex {
            order: post.order(),
            code: word,
        },
        symbol,
        beta: BetaParams::new(a, b)?,
    })
}

/// Equal-tail region: `[F⁻¹((1-R)/2), F⁻¹((1+R)/2)]`.
pub fn confidence_region(m: &MarginalBeta, level: f64) -> Result<ConfidenceRegion> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain("confidence level", "in (0, 1)", level));
    }
    let lower = inv_reg_inc_beta(m.beta, (1.0 - level) / 2.0)?;
    let upper = inv_reg_inc_beta(m.beta, (1.0 + level) / 2.0)?;
    Ok(ConfidenceRegion { level, lower, upper })
}

/// Mass the marginal places inside `region`.
pub fn region_mass(m: &MarginalBeta, region: &ConfidenceRegion) -> Result<f64> {
    Ok(reg_inc_beta(m.beta, region.upper)? - reg_inc_beta(m.beta, region.lower)?)
}

/// Log Dirichlet-multinomial ratio for one word: `ln Γ(A) - Σ ln Γ(a_s) + Σ ln Γ(a_s + c_s) - ln Γ(A + C)`.
fn log_row_ratio(base: &[f64], base_sum: f64, add: &[f64], add_sum: f64) -> f64 {
    let mut acc = log_gamma_unchecked(base_sum) - log_gamma_unchecked(base_sum + add_sum);
    for (&a, &c) in base.iter().zip(add) {
        if c > 0.0 {
            acc += log_gamma_unchecked(a + c) - log_gamma_unchecked(a);
        }
    }
    acc
}

/// Natural log of the evidence `P(D|M_k)`. Words with no counts contribute exactly zero.
pub fn log_evidence(counts: &CountTable, hyper: &HyperTable) -> Result<f64> {
    shape_check(counts, hyper)?;
    Ok((0..counts.words())
        .filter(|&h| counts.word_total(h) > 0.0)
        .map(|h| {
            log_row_ratio(
                hyper.row(h),
                hyper.word_sum(h),
                counts.row(h),
                counts.word_total(h),
            )
        })
        .sum())
}

/// Natural log of `P(D_new | D, M_k)`, with `new_counts` the word counts `m(h^k s)` of `D_new`.
pub fn log_predictive(counts: &CountTable, new_counts: &CountTable, hyper: &HyperTable) -> Result<f64> {
    shape_check(counts, hyper)?;
    shape_check(new_counts, hyper)?;
    let post = posterior(counts, hyper)?;
    Ok((0..counts.words())
        .filter(|&h| new_counts.word_total(h) > 0.0)
        .map(|h| {
            log_row_ratio(
                post.params.row(h),
                post.word_sum(h),
                new_counts.row(h),
                new_counts.word_total(h),
            )
        })
        .sum())
}

/// One draw of every `{p(s|h^k)}` row from its Dirichlet posterior, via
/// normalized Gamma variates.
pub fn sample_posterior<R: Rng + ?Sized>(post: &DirichletPosterior, rng: &mut R) -> Result<TransitionTable> {
    let a = post.alphabet_size();
    let mut probs = Vec::with_capacity(post.params.as_slice().len());
    let mut row = vec![0.0; a];
    for h in 0..post.params.words() {
        for (slot, &shape) in row.iter_mut().zip(post.params.row(h)) {
            let gamma =
                Gamma::new(shape, 1.0).map_err(|e| Error::Numeric(format!("Gamma({shape}, 1): {e}")))?;
            *slot = gamma.sample(rng);
        }
        let sum: f64 = row.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::Numeric(format!(
                "all Gamma variates underflowed for word {h}"
            )));
        }
        probs.extend(row.iter().map(|g| g / sum));
    }
    TransitionTable::from_vec(post.order(), a, probs)
}

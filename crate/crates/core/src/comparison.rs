//! Posterior probabilities over candidate Markov orders.

use crate::counts::{checked_pow, table_entries};
use crate::error::{Error, Result};

/// Inclusive range of candidate orders `k_min ..= k_max`, `k_min >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    k_min: usize,
    k_max: usize,
}

impl OrderRange {
    pub fn new(k_min: usize, k_max: usize) -> Result<Self> {
        if k_min == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if k_min > k_max {
            return Err(Error::Config(format!(
                "order range is empty: k_min {k_min} > k_max {k_max}"
            )));
        }
        Ok(Self { k_min, k_max })
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.k_min..=self.k_max
    }

    /// Orders whose tables fit under `cap`; each excluded order is logged as a warning.
    pub fn admissible(&self, alphabet_size: usize, cap: usize) -> Result<Vec<usize>> {
        let mut kept = Vec::new();
        for k in self.iter() {
            match table_entries(alphabet_size, k, cap) {
                Ok(_) => kept.push(k),
                Err(e) => log::warn!("excluding order {k}: {e}"),
            }
        }
        if kept.is_empty() {
            return Err(Error::EmptyOrders);
        }
        Ok(kept)
    }
}

/// Number of free parameters of an order-`k` chain: `|A|^k (|A| - 1)`.
pub fn free_params(k: usize, alphabet_size: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if alphabet_size < 2 {
        return Err(Error::InvalidAlphabet(format!(
            "need at least 2 symbols, got {alphabet_size}"
        )));
    }
    checked_pow(alphabet_size, k)
        .and_then(|n| n.checked_mul(alphabet_size as u128 - 1))
        .and_then(|n| u64::try_from(n).ok())
        .ok_or(Error::TableTooLarge {
            alphabet_size,
            order: k,
            entries: u128::MAX,
            cap: usize::MAX,
        })
}

/// One order's entry in an [`OrderPosterior`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderWeight {
    pub k: usize,
    pub log_evidence: f64,
    /// Unnormalized log prior weight (0 for the uniform prior, `-|M_k|` for the penalty prior).
    pub log_prior_weight: f64,
    pub probability: f64,
}

/// Normalized probabilities over model orders, sorted by `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderPosterior {
    entries: Vec<OrderWeight>,
}

impl OrderPosterior {
    pub fn entries(&self) -> &[OrderWeight] {
        &self.entries
    }

    pub fn probability(&self, k: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.probability)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `ln Σ exp(x_i)`, `-inf` for an empty or all-`-inf` input.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

fn normalize(evidences: &[(usize, f64)], prior: impl Fn(usize) -> Result<f64>) -> Result<OrderPosterior> {
    if evidences.is_empty() {
        return Err(Error::EmptyOrders);
    }
    let mut sorted = evidences.to_vec();
    sorted.sort_by_key(|&(k, _)| k);
    if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Config("duplicate order in evidence list".into()));
    }
    if let Some(&(_, bad)) = sorted.iter().find(|(_, e)| e.is_nan() || *e == f64::INFINITY) {
        return Err(Error::domain("log evidence", "finite or -inf", bad));
    }
    let weights = sorted
        .iter()
        .map(|&(k, _)| prior(k))
        .collect::<Result<Vec<_>>>()?;
    let scores: Vec<f64> = sorted.iter().zip(&weights).map(|(&(_, e), w)| e + w).collect();
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::Numeric("every order has zero posterior weight".into()));
    }
    let total: f64 = scores.iter().map(|s| (s - max).exp()).sum();
    let entries = sorted
        .iter()
        .zip(weights)
        .zip(scores)
        .map(|((&(k, log_evidence), log_prior_weight), score)| OrderWeight {
            k,
            log_evidence,
            log_prior_weight,
            probability: (score - max).exp() / total,
        })
        .collect();
    Ok(OrderPosterior { entries })
}

/// Uniform prior over orders: `P(M_k|D) ∝ P(D|M_k)`.
pub fn compare_uniform(evidences: &[(usize, f64)]) -> Result<OrderPosterior> {
    normalize(evidences, |_| Ok(0.0))
}

/// Parameter-count penalty: `P(M_k|D) ∝ P(D|M_k) exp(-|M_k|)`.
pub fn compare_penalized(evidences: &[(usize, f64)], alphabet_size: usize) -> Result<OrderPosterior> {
    normalize(evidences, |k| Ok(-(free_params(k, alphabet_size)? as f64)))
}

/// Most probable order; ties within `1e-12` go to the smallest `k`.
pub fn map_order(op: &OrderPosterior) -> Option<usize> {
    let best = op
        .entries
        .iter()
        .map(|e| e.probability)
        .fold(f64::NEG_INFINITY, f64::max);
    op.entries
        .iter()
        .find(|e| e.probability >= best - 1e-12)
        .map(|e| e.k)
}

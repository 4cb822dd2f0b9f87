//! Bayesian inference, order selection and entropy-rate estimation for
//! k-th order Markov chains over finite alphabets.

// `!(x > 0.0)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod comparison;
pub mod counts;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod inference;
pub mod processes;
pub mod seqio;
pub mod special;

pub use comparison::{compare_penalized, compare_uniform, map_order, OrderPosterior, OrderRange};
pub use counts::{count_words, Alphabet, CountTable, HyperTable, SymbolSequence, TransitionTable, WordIndex};
pub use entropy::{asymptotic_energy, energy_variance, expected_energy, q_from, QDistribution};
pub use error::{Error, Result};
pub use inference::{log_evidence, log_predictive, posterior, DirichletPosterior};
pub use processes::{BuiltinProcess, LabeledHmm};

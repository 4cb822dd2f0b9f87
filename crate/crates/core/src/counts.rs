//! Alphabets, symbol sequences, word codes and the dense count / hyperparameter
//! tables shared by every other module.
//!
//! A table of order `k` over an alphabet of size `|A|` holds one entry per word
//! `h^k s`, i.e. `|A|^(k+1)` entries laid out row-major: row `h^k` (a word code in
//! `[0, |A|^k)`), column `s`. Memory therefore grows as `|A|^(k+1)`; construction
//! is refused beyond a configurable entry cap (default [`DEFAULT_MAX_ENTRIES`]).

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of entries of a count or hyperparameter table (2^26).
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 26;

/// Ordered set of distinct symbols; index `i` is the symbol's code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 symbols, got {}",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Self { symbols })
    }

    /// The binary alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Self {
            symbols: vec!['0', '1'],
        }
    }

    /// Alphabet of the first `size` decimal digits (`size <= 10`).
    pub fn digits(size: usize) -> Result<Self> {
        if size > 10 {
            return Err(Error::InvalidAlphabet(format!(
                "digit alphabet supports at most 10 symbols, got {size}"
            )));
        }
        Self::new(('0'..='9').take(size).collect())
    }

    /// Parses a declaration such as `"01"` or `"abc"`.
    pub fn parse(decl: &str) -> Result<Self> {
        Self::new(decl.chars().collect())
    }

    /// Distinct characters of `text` (whitespace ignored) in sorted order.
    pub fn infer(text: &str) -> Result<Self> {
        let mut symbols: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        symbols.sort_unstable();
        symbols.dedup();
        Self::new(symbols)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .ok_or(Error::UnknownSymbol(c))
    }

    pub fn symbol(&self, index: usize) -> Result<char> {
        self.symbols.get(index).copied().ok_or(Error::SymbolOutOfRange {
            index,
            size: self.size(),
        })
    }

    /// Renders symbol indices as a string. Panics on out-of-range indices.
    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }
}

/// A sequence of symbol indices, each below the alphabet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    data: Vec<usize>,
    alphabet_size: usize,
}

impl SymbolSequence {
    pub fn new(data: Vec<usize>, alphabet_size: usize) -> Result<Self> {
        if let Some(&index) = data.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                index,
                size: alphabet_size,
            });
        }
        Ok(Self { data, alphabet_size })
    }

    /// Parses characters of `text` against `alphabet`, skipping whitespace.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let data = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| alphabet.index_of(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            data,
            alphabet_size: alphabet.size(),
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.data
    }

    /// The first `n` symbols (or all of them, if shorter).
    pub fn prefix(&self, n: usize) -> SymbolSequence {
        SymbolSequence {
            data: self.data[..n.min(self.data.len())].to_vec(),
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.data)
    }
}

/// A word of length `order`, encoded base `|A|` with the earliest symbol most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordIndex {
    pub order: usize,
    pub code: usize,
}

/// `alphabet_size^order` as a checked `u128`.
pub(crate) fn checked_pow(alphabet_size: usize, order: usize) -> Option<u128> {
    (alphabet_size as u128).checked_pow(order.try_into().ok()?)
}

/// Number of entries of an order-`order` table, or an error when it exceeds `cap`.
pub fn table_entries(alphabet_size: usize, order: usize, cap: usize) -> Result<usize> {
    let too_large = |entries| Error::TableTooLarge {
        alphabet_size,
        order,
        entries,
        cap,
    };
    let entries = order
        .checked_add(1)
        .and_then(|len| checked_pow(alphabet_size, len))
        .ok_or_else(|| too_large(u128::MAX))?;
    if entries > cap as u128 {
        return Err(too_large(entries));
    }
    Ok(entries as usize)
}

pub fn encode_word(symbols: &[usize], alphabet: &Alphabet) -> Result<WordIndex> {
    let size = alphabet.size();
    let mut code: usize = 0;
    for &s in symbols {
        if s >= size {
            return Err(Error::SymbolOutOfRange { index: s, size });
        }
        code = code
            .checked_mul(size)
            .and_then(|c| c.checked_add(s))
            .ok_or(Error::TableTooLarge {
                alphabet_size: size,
                order: symbols.len(),
                entries: u128::MAX,
                cap: usize::MAX,
            })?;
    }
    Ok(WordIndex {
        order: symbols.len(),
        code,
    })
}

pub fn decode_word(word: WordIndex, alphabet: &Alphabet) -> Result<Vec<usize>> {
    decode_code(word.code, word.order, alphabet.size())
}

pub(crate) fn decode_code(code: usize, order: usize, alphabet_size: usize) -> Result<Vec<usize>> {
    let fits = checked_pow(alphabet_size, order).is_some_and(|n| (code as u128) < n);
    if !fits {
        return Err(Error::WordOutOfRange { code, order });
    }
    let mut out = vec![0; order];
    let mut rest = code;
    for slot in out.iter_mut().rev() {
        *slot = rest % alphabet_size;
        rest /= alphabet_size;
    }
    Ok(out)
}

/// Word counts `n(h^k s)` for one order. Entries are nonnegative reals so that
/// exact average counts and integer empirical counts share one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    order: usize,
    alphabet_size: usize,
    counts: Vec<f64>,
    word_totals: Vec<f64>,
}

impl CountTable {
    /// All-zero table.
    pub fn zeros(order: usize, alphabet_size: usize) -> Result<Self> {
        check_shape(order, alphabet_size)?;
        let len = table_entries(alphabet_size, order, DEFAULT_MAX_ENTRIES)?;
        Self::from_vec(order, alphabet_size, vec![0.0; len])
    }

    /// Builds a table from a row-major vector of `|A|^(k+1)` nonnegative entries.
    pub fn from_vec(order: usize, alphabet_size: usize, counts: Vec<f64>) -> Result<Self> {
        check_shape(order, alphabet_size)?;
        let expected = checked_pow(alphabet_size, order + 1).unwrap_or(u128::MAX);
        if counts.len() as u128 != expected {
            return Err(Error::Config(format!(
                "order-{order} table over {alphabet_size} symbols needs {expected} entries, got {}",
                counts.len()
            )));
        }
        if let Some(&bad) = counts.iter().find(|c| !(**c >= 0.0) || !c.is_finite()) {
            return Err(Error::domain("count", "finite and >= 0", bad));
        }
        let word_totals = counts
            .chunks_exact(alphabet_size)
            .map(|row| row.iter().sum())
            .collect();
        Ok(Self {
            order,
            alphabet_size,
            counts,
            word_totals,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Number of conditioning words `|A|^k`.
    pub fn words(&self) -> usize {
        self.word_totals.len()
    }

    /// `n(h^k s)`; panics on out-of-range indices.
    pub fn get(&self, word: usize, symbol: usize) -> f64 {
        assert!(symbol < self.alphabet_size, "symbol out of range");
        self.counts[word * self.alphabet_size + symbol]
    }

    /// `n(h^k) = Σ_s n(h^k s)`.
    pub fn word_total(&self, word: usize) -> f64 {
        self.word_totals[word]
    }

    pub fn total(&self) -> f64 {
        self.word_totals.iter().sum()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.counts
    }

    pub fn word_totals(&self) -> &[f64] {
        &self.word_totals
    }

    /// Row `h^k` of the table, one entry per next symbol.
    pub fn row(&self, word: usize) -> &[f64] {
        let a = self.alphabet_size;
        &self.counts[word * a..(word + 1) * a]
    }

    pub fn same_shape<T: TableShape>(&self, other: &T) -> Result<()> {
        shape_check(self, other)
    }

    /// Elementwise sum `n + m`.
    pub fn try_add(&self, other: &CountTable) -> Result<CountTable> {
        self.same_shape(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vec(self.order, self.alphabet_size, counts)
    }
}

/// Dirichlet hyperparameters `α(h^k s)`, all strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperTable {
    order: usize,
    alphabet_size: usize,
    values: Vec<f64>,
    word_sums: Vec<f64>,
}

impl HyperTable {
    pub fn from_vec(order: usize, alphabet_size: usize, values: Vec<f64>) -> Result<Self> {
        check_shape(order, alphabet_size)?;
        let expected = checked_pow(alphabet_size, order + 1).unwrap_or(u128::MAX);
        if values.len() as u128 != expected {
            return Err(Error::Config(format!(
                "order-{order} table over {alphabet_size} symbols needs {expected} entries, got {}",
                values.len()
            )));
        }
        if let Some(&bad) = values.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
            return Err(Error::domain("hyperparameter", "finite and > 0", bad));
        }
        let word_sums = values
            .chunks_exact(alphabet_size)
            .map(|row| row.iter().sum())
            .collect();
        Ok(Self {
            order,
            alphabet_size,
            values,
            word_sums,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn words(&self) -> usize {
        self.word_sums.len()
    }

    /// `α(h^k s)`
    pub fn get(&self, word: usize, symbol: usize) -> f64 {
        assert!(symbol < self.alphabet_size, "symbol out of range");
        self.values[word * self.alphabet_size + symbol]
    }

    /// `α(h^k)`
    pub fn word_sum(&self, word: usize) -> f64 {
        self.word_sums[word]
    }

    /// `α_k = Σ_{h^k} α(h^k)`
    pub fn total(&self) -> f64 {
        self.word_sums.iter().sum()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, word: usize) -> &[f64] {
        let a = self.alphabet_size;
        &self.values[word * a..(word + 1) * a]
    }
}

/// Anything laid out as an order-`k` table over `|A|` symbols.
pub trait TableShape {
    fn order(&self) -> usize;
    fn alphabet_size(&self) -> usize;
}

impl TableShape for CountTable {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
}

impl TableShape for HyperTable {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
}

pub(crate) fn shape_check<L: TableShape + ?Sized, R: TableShape + ?Sized>(left: &L, right: &R) -> Result<()> {
    if left.order() != right.order() || left.alphabet_size() != right.alphabet_size() {
        return Err(Error::ShapeMismatch {
            left_order: left.order(),
            left_size: left.alphabet_size(),
            right_order: right.order(),
            right_size: right.alphabet_size(),
        });
    }
    Ok(())
}

fn check_shape(order: usize, alphabet_size: usize) -> Result<()> {
    if alphabet_size < 2 {
        return Err(Error::InvalidAlphabet(format!(
            "need at least 2 symbols, got {alphabet_size}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    Ok(())
}

/// Counts every window of length `k+1`: positions `t = k-1 .. N-2` contribute
/// `(s_{t-k+1} .. s_t, s_{t+1})`. The first `k` symbols only condition the
/// likelihood, so the total mass is `N - k`.
pub fn count_words(seq: &SymbolSequence, k: usize) -> Result<CountTable> {
    count_words_capped(seq, k, DEFAULT_MAX_ENTRIES)
}

pub fn count_words_capped(seq: &SymbolSequence, k: usize, cap: usize) -> Result<CountTable> {
    let a = seq.alphabet_size();
    check_shape(k, a)?;
    let len = table_entries(a, k, cap)?;
    let data = seq.as_slice();
    if data.len() < k + 1 {
        return Err(Error::SequenceTooShort {
            len: data.len(),
            order: k,
            needed: k + 1,
        });
    }
    let mut counts = vec![0.0; len];
    let mut code = data[..k].iter().fold(0usize, |c, &s| c * a + s);
    for &s in &data[k..] {
        code = (code * a + s) % len;
        counts[code] += 1.0;
    }
    CountTable::from_vec(k, a, counts)
}

/// Every `α(h^k s)` equal to `value`.
pub fn uniform_hyper(k: usize, alphabet_size: usize, value: f64) -> Result<HyperTable> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::domain("uniform hyperparameter", "finite and > 0", value));
    }
    check_shape(k, alphabet_size)?;
    let len = table_entries(alphabet_size, k, DEFAULT_MAX_ENTRIES)?;
    HyperTable::from_vec(k, alphabet_size, vec![value; len])
}

/// `α(h^k s) = ñ(h^k s) + 1`.
pub fn hyper_from_fake_counts(fake: &CountTable) -> Result<HyperTable> {
    // CountTable already rejects negative entries; kept for tables built elsewhere.
    if let Some(&bad) = fake.as_slice().iter().find(|&&c| c < 0.0) {
        return Err(Error::domain("fake count", ">= 0", bad));
    }
    let values = fake.as_slice().iter().map(|c| c + 1.0).collect();
    HyperTable::from_vec(fake.order(), fake.alphabet_size(), values)
}

/// Conditional next-symbol probabilities `p(s|h^k)`, one row per word.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    order: usize,
    alphabet_size: usize,
    probs: Vec<f64>,
}

impl TransitionTable {
    /// Builds a table whose rows each sum to 1 within `1e-9`.
    pub fn from_vec(order: usize, alphabet_size: usize, probs: Vec<f64>) -> Result<Self> {
        check_shape(order, alphabet_size)?;
        let expected = checked_pow(alphabet_size, order + 1).unwrap_or(u128::MAX);
        if probs.len() as u128 != expected {
            return Err(Error::Config(format!(
                "order-{order} table over {alphabet_size} symbols needs {expected} entries, got {}",
                probs.len()
            )));
        }
        if let Some(&bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::domain("transition probability", "in [0, 1]", bad));
        }
        for row in probs.chunks_exact(alphabet_size) {
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::domain("transition row sum", "equal to 1", sum));
            }
        }
        Ok(Self {
            order,
            alphabet_size,
            probs,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn words(&self) -> usize {
        self.probs.len() / self.alphabet_size
    }

    /// `p(s|h^k)`
    pub fn get(&self, word: usize, symbol: usize) -> f64 {
        assert!(symbol < self.alphabet_size, "symbol out of range");
        self.probs[word * self.alphabet_size + symbol]
    }

    pub fn row(&self, word: usize) -> &[f64] {
        let a = self.alphabet_size;
        &self.probs[word * a..(word + 1) * a]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }
}

impl TableShape for TransitionTable {
    fn order(&self) -> usize {
        self.order
    }
    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }
}

impl fmt::Display for WordIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}:{}", self.order, self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(text: &str) -> SymbolSequence {
        SymbolSequence::parse(text, &Alphabet::binary()).unwrap()
    }

    /// Explicit window enumeration, independent of the rolling code.
    fn windows_oracle(data: &[usize], k: usize, a: usize) -> Vec<f64> {
        let mut out = vec![0.0; a.pow(k as u32 + 1)];
        for w in data.windows(k + 1) {
            let code = w.iter().fold(0, |c, &s| c * a + s);
            out[code] += 1.0;
        }
        out
    }

    #[test]
    fn encode_examples() {
        let bin = Alphabet::binary();
        assert_eq!(
            encode_word(&[0, 1], &bin).unwrap(),
            WordIndex { order: 2, code: 1 }
        );
        assert_eq!(encode_word(&[], &bin).unwrap(), WordIndex { order: 0, code: 0 });
        let ter = Alphabet::digits(3).unwrap();
        assert_eq!(
            encode_word(&[2, 1], &ter).unwrap(),
            WordIndex { order: 2, code: 7 }
        );
        assert!(matches!(
            encode_word(&[2], &bin),
            Err(Error::SymbolOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn decode_rejects_large_code() {
        let bin = Alphabet::binary();
        assert!(decode_word(WordIndex { order: 2, code: 4 }, &bin).is_err());
    }

    #[test]
    fn encode_decode_roundtrip_all_words() {
        for a in 2..=3 {
            let alphabet = Alphabet::digits(a).unwrap();
            for k in 0..=6 {
                for code in 0..a.pow(k as u32) {
                    let w = WordIndex { order: k, code };
                    let symbols = decode_word(w, &alphabet).unwrap();
                    assert_eq!(symbols.len(), k);
                    assert_eq!(encode_word(&symbols, &alphabet).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        let t = count_words(&seq("0110"), 1).unwrap();
        assert_eq!(t.as_slice(), &[0.0, 1.0, 1.0, 1.0]);
        let t = count_words(&seq("0101"), 2).unwrap();
        let mut expected = vec![0.0; 8];
        expected[0b010] = 1.0;
        expected[0b101] = 1.0;
        assert_eq!(t.as_slice(), expected.as_slice());
        assert_eq!(t.word_total(0b01), 1.0);
        assert_eq!(t.total(), 2.0);
    }

    #[test]
    fn count_rejects_short_sequences_and_order_zero() {
        assert!(matches!(
            count_words(&seq("01"), 2),
            Err(Error::SequenceTooShort { len: 2, .. })
        ));
        assert!(matches!(
            count_words(&seq("0101"), 0),
            Err(Error::InvalidOrder(0))
        ));
    }

    #[test]
    fn table_cap_is_enforced() {
        assert!(matches!(
            count_words_capped(&seq("0101"), 3, 8),
            Err(Error::TableTooLarge {
                entries: 16,
                cap: 8,
                ..
            })
        ));
        assert!(table_entries(2, 200, DEFAULT_MAX_ENTRIES).is_err());
        assert_eq!(table_entries(2, 25, DEFAULT_MAX_ENTRIES).unwrap(), 1 << 26);
        assert!(table_entries(2, 26, DEFAULT_MAX_ENTRIES).is_err());
    }

    #[test]
    fn uniform_hyper_examples() {
        let h = uniform_hyper(1, 2, 1.0).unwrap();
        assert_eq!(h.as_slice(), &[1.0; 4]);
        assert_eq!(h.word_sum(0), 2.0);
        assert_eq!(h.total(), 4.0);
        let h = uniform_hyper(2, 2, 1.0).unwrap();
        assert_eq!(h.word_sum(3), 2.0);
        assert_eq!(h.total(), 8.0);
        assert!(matches!(uniform_hyper(1, 2, 0.0), Err(Error::Domain { .. })));
        assert!(uniform_hyper(1, 2, f64::NAN).is_err());
    }

    #[test]
    fn fake_count_examples() {
        let zero = CountTable::zeros(1, 2).unwrap();
        assert_eq!(
            hyper_from_fake_counts(&zero).unwrap(),
            uniform_hyper(1, 2, 1.0).unwrap()
        );
        let fake = CountTable::from_vec(1, 2, vec![0.0, 3.0, 0.0, 0.0]).unwrap();
        let h = hyper_from_fake_counts(&fake).unwrap();
        assert_eq!(h.as_slice(), &[1.0, 4.0, 1.0, 1.0]);
        assert!(CountTable::from_vec(1, 2, vec![0.0, -1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn alphabet_validation_and_inference() {
        assert!(Alphabet::new(vec!['0']).is_err());
        assert!(Alphabet::new(vec!['a', 'a']).is_err());
        let a = Alphabet::infer("cab ba\n").unwrap();
        assert_eq!(a.symbols(), &['a', 'b', 'c']);
        assert!(Alphabet::infer("1111").is_err());
        assert!(SymbolSequence::parse("012", &Alphabet::binary()).is_err());
    }

    proptest! {
        #[test]
        fn counts_match_window_oracle(
            data in prop::collection::vec(0usize..3, 1..200),
            k in 1usize..5,
        ) {
            prop_assume!(data.len() > k);
            let s = SymbolSequence::new(data.clone(), 3).unwrap();
            let t = count_words(&s, k).unwrap();
            let oracle = windows_oracle(&data, k, 3);
            prop_assert_eq!(t.as_slice(), oracle.as_slice());
            prop_assert_eq!(t.total(), (data.len() - k) as f64);
            for h in 0..t.words() {
                let row: f64 = t.row(h).iter().sum();
                prop_assert_eq!(row, t.word_total(h));
            }
        }

        #[test]
        fn concatenation_adds_boundary_windows_only(
            d1 in prop::collection::vec(0usize..2, 4..60),
            d2 in prop::collection::vec(0usize..2, 4..60),
            k in 1usize..4,
        ) {
            let joined: Vec<usize> = d1.iter().chain(&d2).copied().collect();
            let whole = count_words(&SymbolSequence::new(joined.clone(), 2).unwrap(), k).unwrap();
            let c1 = count_words(&SymbolSequence::new(d1.clone(), 2).unwrap(), k).unwrap();
            let c2 = count_words(&SymbolSequence::new(d2.clone(), 2).unwrap(), k).unwrap();
            // windows straddling the join start inside the last k symbols of d1
            let start = d1.len() - k;
            let boundary = windows_oracle(&joined[start..start + 2 * k], k, 2);
            let summed = c1.try_add(&c2).unwrap();
            for ((w, s), b) in whole.as_slice().iter().zip(summed.as_slice()).zip(&boundary) {
                prop_assert_eq!(*w, s + b);
            }
        }
    }
}

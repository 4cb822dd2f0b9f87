//! Reading symbol sequences from disk.
//!
//! Two layouts are accepted: a plain text file holding one line of symbol
//! characters (whitespace ignored), or one column of a CSV file where each
//! cell is a single symbol.

use std::fs;
use std::path::Path;

use crate::counts::{Alphabet, SymbolSequence};
use crate::error::{Error, Result};

/// Where the symbols live inside a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceLayout {
    PlainText,
    /// CSV with a header row; symbols are read from the named column.
    CsvColumn(String),
}

/// Reads the raw symbol characters of `path` according to `layout`.
pub fn read_symbols(path: &Path, layout: &SequenceLayout) -> Result<String> {
    match layout {
        SequenceLayout::PlainText => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            Ok(text.chars().filter(|c| !c.is_whitespace()).collect())
        }
        SequenceLayout::CsvColumn(column) => {
            let mut reader = csv::Reader::from_path(path)?;
            let headers = reader.headers()?.clone();
            let idx = headers
                .iter()
                .position(|h| h == column)
                .ok_or_else(|| Error::Config(format!("column {column:?} not found in {}", path.display())))?;
            let mut out = String::new();
            for (line, record) in reader.records().enumerate() {
                let record = record?;
                let cell = record.get(idx).unwrap_or("").trim();
                let mut chars = cell.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => out.push(c),
                    _ => {
                        return Err(Error::Config(format!(
                            "row {} of column {column:?}: expected one symbol, got {cell:?}",
                            line + 2
                        )))
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Reads a sequence, either against a declared alphabet or inferring one
/// (sorted distinct characters).
pub fn read_sequence(
    path: &Path,
    layout: &SequenceLayout,
    alphabet: Option<&Alphabet>,
) -> Result<(Alphabet, SymbolSequence)> {
    let text = read_symbols(path, layout)?;
    let alphabet = match alphabet {
        Some(a) => a.clone(),
        None => Alphabet::infer(&text)?,
    };
    let seq = SymbolSequence::parse(&text, &alphabet)?;
    Ok((alphabet, seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn plain_text_with_inferred_alphabet() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "0110 1\n").unwrap();
        let (a, s) = read_sequence(f.path(), &SequenceLayout::PlainText, None).unwrap();
        assert_eq!(a, Alphabet::binary());
        assert_eq!(s.as_slice(), &[0, 1, 1, 0, 1]);
    }

    #[test]
    fn csv_column() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "t,sym\n0,b\n1,a\n2,b").unwrap();
        let layout = SequenceLayout::CsvColumn("sym".into());
        let (a, s) = read_sequence(f.path(), &layout, None).unwrap();
        assert_eq!(a.symbols(), &['a', 'b']);
        assert_eq!(s.as_slice(), &[1, 0, 1]);
        let missing = SequenceLayout::CsvColumn("nope".into());
        assert!(matches!(read_symbols(f.path(), &missing), Err(Error::Config(_))));
    }

    #[test]
    fn declared_alphabet_rejects_foreign_symbols() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "0120").unwrap();
        let err = read_sequence(f.path(), &SequenceLayout::PlainText, Some(&Alphabet::binary()));
        assert!(matches!(err, Err(Error::UnknownSymbol('2'))));
    }
}

//! Alphabets and finite words.
//!
//! Symbols are stored as small indices into an [`Alphabet`] whose labels are
//! single characters, so words over `{a, b}`, `{1, 2, 3}` and `{0, …, b−1}`
//! share one representation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// Ordered, duplicate-free list of symbol labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    labels: Arc<[char]>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(labels: I) -> Result<Self> {
        let labels: Vec<char> = labels.into_iter().collect();
        if labels.is_empty() {
            return Err(Error::Domain("alphabet must contain at least one symbol".into()));
        }
        if labels.len() > usize::from(Symbol::MAX) + 1 {
            return Err(Error::Domain(format!(
                "alphabet of {} symbols exceeds the supported 256",
                labels.len()
            )));
        }
        for (i, c) in labels.iter().enumerate() {
            if labels[..i].contains(c) {
                return Err(Error::Domain(format!("duplicate alphabet label {c:?}")));
            }
        }
        Ok(Alphabet { labels: labels.into() })
    }

    /// `{a, b}`.
    pub fn binary_ab() -> Self {
        Alphabet::new(['a', 'b']).expect("static alphabet")
    }

    /// `{a, b, c}`.
    pub fn ternary_abc() -> Self {
        Alphabet::new(['a', 'b', 'c']).expect("static alphabet")
    }

    /// First `k` lowercase letters, `a` onwards.
    pub fn letters(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::Domain(format!("letter alphabet size {k} not in 1..=26")));
        }
        Alphabet::new((0..k as u8).map(|i| char::from(b'a' + i)))
    }

    /// The digit alphabet `{0, …, b−1}` for `2 ≤ b ≤ 36`, labelled `0-9a-z`.
    pub fn digits(base: u32) -> Result<Self> {
        if !(2..=36).contains(&base) {
            return Err(Error::Domain(format!("base {base} not in 2..=36")));
        }
        Alphabet::new((0..base).map(|d| char::from_digit(d, 36).expect("digit < 36")))
    }

    /// `{1, …, m}` labelled by base-36 digits, for `1 ≤ m ≤ 35`.
    pub fn one_based(m: usize) -> Result<Self> {
        if !(1..=35).contains(&m) {
            return Err(Error::Domain(format!("alphabet size {m} not in 1..=35")));
        }
        Alphabet::new((1..=m as u32).map(|d| char::from_digit(d, 36).expect("digit < 36")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn label(&self, s: Symbol) -> Option<char> {
        self.labels.get(usize::from(s)).copied()
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.labels.iter().position(|&l| l == c).map(|i| i as Symbol)
    }

    /// Parses a string of labels into a word over this alphabet.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let symbols = text
            .chars()
            .map(|c| {
                self.index_of(c).ok_or_else(|| {
                    Error::Domain(format!("symbol {c:?} is not in alphabet {self}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { alphabet: self.clone(), symbols })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}

/// A finite word: a sequence of symbol indices tagged with its alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn empty(alphabet: &Alphabet) -> Self {
        Word { alphabet: alphabet.clone(), symbols: Vec::new() }
    }

    /// Builds a word from raw indices, checking each against the alphabet.
    pub fn from_symbols(alphabet: &Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| usize::from(s) >= alphabet.len()) {
            return Err(Error::Domain(format!(
                "symbol index {bad} outside alphabet of size {}",
                alphabet.len()
            )));
        }
        Ok(Word { alphabet: alphabet.clone(), symbols })
    }

    pub(crate) fn from_symbols_unchecked(alphabet: &Alphabet, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|&s| usize::from(s) < alphabet.len()));
        Word { alphabet: alphabet.clone(), symbols }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Concatenation `self · other`; both words must share an alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::Domain(format!(
                "cannot concatenate words over {} and {}",
                self.alphabet, other.alphabet
            )));
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Word { alphabet: self.alphabet.clone(), symbols })
    }

    /// The factor `w[start..end]` (zero-based, end exclusive).
    pub fn factor(&self, start: usize, end: usize) -> Result<Word> {
        if start > end || end > self.len() {
            return Err(Error::Range { requested: end, available: self.len() });
        }
        Ok(Word { alphabet: self.alphabet.clone(), symbols: self.symbols[start..end].to_vec() })
    }

    pub fn prefix(&self, len: usize) -> Result<Word> {
        self.factor(0, len)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.symbols.starts_with(&self.symbols)
    }

    /// Number of occurrences `|w|_s`.
    pub fn occurrences(&self, s: Symbol) -> usize {
        self.symbols.iter().filter(|&&x| x == s).count()
    }

    /// Reinterprets the word over another alphabet of equal size, index by index.
    pub fn relabel(&self, alphabet: &Alphabet) -> Result<Word> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::Domain(format!(
                "cannot relabel {} as {}: sizes differ",
                self.alphabet, alphabet
            )));
        }
        Ok(Word { alphabet: alphabet.clone(), symbols: self.symbols.clone() })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.alphabet.labels();
        let text: String = self.symbols.iter().map(|&s| labels[usize::from(s)]).collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Plain label strings carry no alphabet; deserialization infers one from the
/// distinct labels in order of first appearance.
impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        let mut labels: Vec<char> = Vec::new();
        for c in text.chars() {
            if !labels.contains(&c) {
                labels.push(c);
            }
        }
        if labels.is_empty() {
            labels.push('a');
        }
        let alphabet = Alphabet::new(labels).map_err(serde::de::Error::custom)?;
        alphabet.parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let ab = Alphabet::binary_ab();
        let w = ab.parse("abaab").unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.symbols(), &[0, 1, 0, 0, 1]);
        assert_eq!(w.to_string(), "abaab");
    }

    #[test]
    fn rejects_foreign_symbol() {
        let ab = Alphabet::binary_ab();
        assert!(matches!(ab.parse("abc"), Err(Error::Domain(_))));
        assert!(Word::from_symbols(&ab, vec![0, 2]).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Alphabet::new(['a', 'a']).is_err());
        assert!(Alphabet::new([]).is_err());
    }

    #[test]
    fn concatenation_length_law() {
        let ab = Alphabet::binary_ab();
        let u = ab.parse("ab").unwrap();
        let v = ab.parse("baa").unwrap();
        let uv = u.concat(&v).unwrap();
        assert_eq!(uv.len(), u.len() + v.len());
        assert_eq!(uv.to_string(), "abbaa");
        assert!(u.is_prefix_of(&uv));
    }

    #[test]
    fn occurrences_of_each_letter() {
        let w = Alphabet::binary_ab().parse("abaab").unwrap();
        assert_eq!(w.occurrences(0), 3);
        assert_eq!(w.occurrences(1), 2);
    }

    #[test]
    fn digit_alphabets() {
        let d = Alphabet::digits(10).unwrap();
        assert_eq!(d.parse("5040").unwrap().symbols(), &[5, 0, 4, 0]);
        assert_eq!(Alphabet::digits(16).unwrap().label(15), Some('f'));
        assert!(Alphabet::digits(1).is_err());
        assert_eq!(Alphabet::one_based(3).unwrap().labels(), &['1', '2', '3']);
    }

    #[test]
    fn serde_as_plain_string() {
        let w = Alphabet::binary_ab().parse("aba").unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "\"aba\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_string(), "aba");
    }
}

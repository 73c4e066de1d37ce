//! Alphabets, words and forbidden sets.
//!
//! Symbols are stored as indices `0..q`; the [`Alphabet`] maps them to and
//! from their external names. Every iteration order that can leak into output
//! (vertex order, system row order, serialized sets) is the lexicographic
//! order on index sequences, which is what `Word`'s derived `Ord` gives.

mod family;

pub use family::{family_generate, family_members, Family};

use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u16;

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = Symbol::MAX as usize + 1;

const DEFAULT_SYMBOLS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";

/// An ordered set of named symbols.
///
/// Symbol names must be non-empty and prefix-free so that a word written as
/// the concatenation of its symbol names tokenizes uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::input("alphabet must contain at least one symbol"));
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::input(format!(
                "alphabet of {} symbols exceeds the supported maximum {}",
                symbols.len(),
                MAX_ALPHABET
            )));
        }
        for (i, a) in symbols.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::input("symbol names must be non-empty"));
            }
            for b in &symbols[i + 1..] {
                if a == b {
                    return Err(Error::input(format!("duplicate symbol {a:?}")));
                }
                if a.starts_with(b.as_str()) || b.starts_with(a.as_str()) {
                    return Err(Error::input(format!(
                        "symbols {a:?} and {b:?} are not prefix-free"
                    )));
                }
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `0, 1, ..., q-1` (then `a..z` past ten symbols).
    pub fn with_size(q: usize) -> Result<Self> {
        if q == 0 || q > DEFAULT_SYMBOLS.len() {
            return Err(Error::input(format!(
                "default symbols exist only for 1 <= q <= {}; pass explicit symbols",
                DEFAULT_SYMBOLS.len()
            )));
        }
        Alphabet::new(DEFAULT_SYMBOLS[..q].chars().map(String::from))
    }

    pub fn binary() -> Self {
        Alphabet::with_size(2).expect("binary alphabet")
    }

    /// Number of symbols, `q`.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Whether this alphabet uses the default names for its size.
    pub fn is_default(&self) -> bool {
        self.symbols.len() <= DEFAULT_SYMBOLS.len()
            && self
                .symbols
                .iter()
                .zip(DEFAULT_SYMBOLS.chars())
                .all(|(s, c)| s.len() == c.len_utf8() && s.starts_with(c))
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.iter().find(|&&s| usize::from(s) >= self.size()) {
            Some(s) => Err(Error::input(format!(
                "symbol index {s} out of range for an alphabet of size {}",
                self.size()
            ))),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut rest = text;
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let idx = self
                .symbols
                .iter()
                .position(|s| rest.starts_with(s.as_str()))
                .ok_or_else(|| {
                    Error::input(format!(
                        "word {text:?} contains an unknown symbol at {rest:?}"
                    ))
                })?;
            letters.push(idx as Symbol);
            rest = &rest[self.symbols[idx].len()..];
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        word.iter()
            .map(|&s| self.symbols[usize::from(s)].as_str())
            .collect()
    }
}

/// A finite sequence of symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a word over the default alphabet names (`"0110"`), panicking on
    /// anything else. Intended for literals in tests and examples.
    pub fn lit(text: &str) -> Self {
        Word(
            text.chars()
                .map(|c| {
                    DEFAULT_SYMBOLS
                        .find(c)
                        .unwrap_or_else(|| panic!("{c:?} is not a default symbol"))
                        as Symbol
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            match DEFAULT_SYMBOLS.chars().nth(usize::from(s)) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "<{s}>")?,
            }
        }
        Ok(())
    }
}

/// `true` iff `needle` occurs as a contiguous block of `hay`. The empty word
/// occurs in everything.
pub fn is_substring(needle: &[Symbol], hay: &[Symbol]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// [`is_substring`] with both words validated against `alphabet`.
pub fn is_substring_in(alphabet: &Alphabet, needle: &Word, hay: &Word) -> Result<bool> {
    alphabet.check_word(needle)?;
    alphabet.check_word(hay)?;
    Ok(is_substring(needle, hay))
}

/// Three-valued status flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unchecked,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

/// A finite set of forbidden words over an alphabet.
///
/// Words are kept sorted and duplicate-free. Whether the set is reduced is
/// decided at construction; non-degeneracy starts out unchecked and is filled
/// in by [`crate::spectral::check_nondegenerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    alphabet: Alphabet,
    words: Vec<Word>,
    reduced: bool,
    nondegenerate: Tri,
}

impl ForbiddenSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if w.is_empty() {
                return Err(Error::input("the empty word cannot be forbidden"));
            }
            alphabet.check_word(w)?;
        }
        words.sort();
        words.dedup();
        let reduced = is_reduced(&words);
        Ok(ForbiddenSet {
            alphabet,
            words,
            reduced,
            nondegenerate: Tri::Unchecked,
        })
    }

    /// Builds a set from words written with the alphabet's symbol names.
    pub fn parse(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        ForbiddenSet::new(alphabet, parsed)
    }

    /// Shorthand for a set over the default alphabet of size `q`.
    pub fn with_size(q: usize, words: &[&str]) -> Result<Self> {
        ForbiddenSet::parse(Alphabet::with_size(q)?, words)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        ForbiddenSet {
            alphabet,
            words: Vec::new(),
            reduced: true,
            nondegenerate: Tri::Unchecked,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.size()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `ℓ(F)`, the length of the longest member; `None` for the empty set.
    pub fn ell(&self) -> Option<usize> {
        self.words.iter().map(|w| w.len()).max()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nondegenerate(&self) -> Tri {
        self.nondegenerate
    }

    pub(crate) fn set_nondegenerate(&mut self, value: bool) {
        self.nondegenerate = value.into();
    }

    pub fn require_reduced(&self) -> Result<()> {
        if self.reduced {
            Ok(())
        } else {
            Err(Error::validation(
                "forbidden set must be reduced (all words of length >= 2, none a substring of another)",
            ))
        }
    }

    /// Drops every word that contains another member, leaving the minimal
    /// elements. The set of avoiding strings is unchanged.
    pub fn reduce(&self) -> Result<ForbiddenSet> {
        let kept: Vec<Word> = self
            .words
            .iter()
            .filter(|w| {
                !self
                    .words
                    .iter()
                    .any(|v| v.len() < w.len() && is_substring(v, w))
            })
            .cloned()
            .collect();
        if let Some(short) = kept.iter().find(|w| w.len() < 2) {
            return Err(Error::validation(format!(
                "forbidden word {:?} is shorter than two symbols; drop the symbol from the alphabet instead",
                self.alphabet.format_word(short)
            )));
        }
        ForbiddenSet::new(self.alphabet.clone(), kept)
    }

    /// Union of two sets over the same alphabet (not reduced).
    pub fn union(&self, other: &ForbiddenSet) -> Result<ForbiddenSet> {
        if self.alphabet != other.alphabet {
            return Err(Error::input("cannot combine sets over different alphabets"));
        }
        ForbiddenSet::new(
            self.alphabet.clone(),
            self.words.iter().chain(other.words.iter()).cloned(),
        )
    }

    /// `true` iff no member occurs in `text`.
    pub fn avoids(&self, text: &[Symbol]) -> bool {
        !self.words.iter().any(|w| is_substring(w, text))
    }

    /// Member words rendered with the alphabet's symbol names.
    pub fn formatted(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| self.alphabet.format_word(w))
            .collect()
    }
}

fn is_reduced(sorted: &[Word]) -> bool {
    sorted.iter().all(|w| w.len() >= 2)
        && sorted.iter().enumerate().all(|(i, w)| {
            sorted
                .iter()
                .enumerate()
                .all(|(j, v)| i == j || v.len() > w.len() || !is_substring(v, w))
        })
}

use std::fmt;

use crate::error::{Error, Result};

/// A finite, ordered alphabet of lowercase letters.
///
/// Letters are kept sorted so every construction that iterates over the
/// alphabet is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut letters: Vec<char> = letters.into_iter().collect();
        if let Some(bad) = letters.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::InvalidAlphabet(format!("'{bad}' is not a letter a-z")));
        }
        letters.sort_unstable();
        let before = letters.len();
        letters.dedup();
        if letters.len() != before {
            return Err(Error::InvalidAlphabet("duplicate letters".into()));
        }
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet { letters })
    }

    /// `Alphabet::from_letters("ab")`.
    pub fn from_letters(s: &str) -> Result<Self> {
        Self::new(s.chars().filter(|c| !c.is_whitespace()))
    }

    /// Collects the letters `a`-`z` occurring in `texts`. Falls back to `{a}`
    /// when none occur.
    pub fn infer<'a>(texts: impl IntoIterator<Item = &'a str>) -> Self {
        let mut letters: Vec<char> = texts
            .into_iter()
            .flat_map(|t| t.chars())
            .filter(|c| c.is_ascii_lowercase())
            .collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.is_empty() {
            letters.push('a');
        }
        Alphabet { letters }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Index of every symbol of `word`, or the first symbol not in the alphabet.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.index_of(c).ok_or(Error::SymbolOutsideAlphabet(c)))
            .collect()
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.letters.len());
            for w in &layer {
                for &c in &self.letters {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

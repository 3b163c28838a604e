//! Letters, words and finite alphabets.
//!
//! Letters are arbitrary non-empty names without whitespace, so generators
//! such as `(1,a,2)` or `#1` are single letters. The word-problem separator
//! is the reserved letter [`SEP`].

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// The separator between the two sides of a word-problem instance.
pub const SEP: &str = "#";

pub type Letter = String;
pub type Word = Vec<Letter>;

/// Splits a string into one-character letters. Convenient for alphabets whose
/// letters are all single characters.
pub fn word(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

/// Builds a word from explicit letter names.
pub fn letters<S: AsRef<str>>(names: &[S]) -> Word {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

pub fn reversed(w: &[Letter]) -> Word {
    w.iter().rev().cloned().collect()
}

/// Encodes a word-problem instance `u # v^rev`.
pub fn encode_pair(u: &[Letter], v: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(u.len() + v.len() + 1);
    out.extend(u.iter().cloned());
    out.push(SEP.to_string());
    out.extend(v.iter().rev().cloned());
    out
}

/// Concatenated rendering used in reports: single-character letters are
/// juxtaposed, anything longer is space separated.
pub fn show(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    if w.iter().all(|l| l.chars().count() == 1) {
        w.concat()
    } else {
        w.join(" ")
    }
}

/// An ordered, duplicate-free set of letters with index lookup.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<Letter>,
    index: HashMap<Letter, usize>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::new();
        for n in names {
            a.insert(n.into());
        }
        a
    }

    /// Inserts a letter if absent and returns its index.
    pub fn insert(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[Letter] {
        &self.names
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    /// Translates a word into letter indices, failing on unknown letters.
    pub fn encode(&self, w: &[Letter]) -> Result<Vec<usize>> {
        w.iter()
            .map(|l| {
                self.get(l)
                    .ok_or_else(|| Error::input(format!("letter `{l}` is not in the alphabet {self:?}")))
            })
            .collect()
    }

    /// Same letters, ignoring order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.names.iter().all(|n| other.contains(n))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// All words over `letters` of length at most `max_len`, in length-lexicographic order.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for l in letters {
                let mut w2 = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_pair_reverses_right_side() {
        assert_eq!(encode_pair(&word("ab"), &word("ab")), word("ab#ba"));
        assert_eq!(encode_pair(&[], &[]), word("#"));
    }

    #[test]
    fn words_up_to_counts() {
        let ws = words_up_to(&word("bc"), 5);
        assert_eq!(ws.len(), 63);
        assert!(ws[0].is_empty());
        assert_eq!(ws[1], word("b"));
    }

    #[test]
    fn unknown_letter_is_input_error() {
        let a = Alphabet::from_names(["a", "#"]);
        assert!(matches!(a.encode(&word("ab")), Err(Error::Input(_))));
    }
}

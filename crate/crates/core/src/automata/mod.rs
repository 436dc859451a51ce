//! Finite automata over arbitrary finite alphabets.
//!
//! Symbols are dense indices into an [`Alphabet`]; labels only matter at the
//! serialization boundary. [`Dfa`] is always complete, [`Nfa`] may carry
//! ε-moves. The pair machinery in [`pair`] implements right-padded
//! convolution of word pairs, pair languages and relational composition.

mod dfa;
mod io;
mod nfa;
pub mod pair;

use std::collections::HashMap;
use std::fmt;

pub use dfa::Dfa;
pub use nfa::Nfa;
pub use pair::{compose, convolve, deconvolve, pair_language, PairAlphabet, PairedSymbol};

use crate::error::{Error, Result};

/// An ordered set of distinct symbol labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Parse("alphabet labels must be nonempty".into()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate alphabet label {l:?}")));
            }
        }
        Ok(Alphabet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, symbol: usize) -> &str {
        &self.labels[symbol]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Maps labels to indices, failing on the first unknown label.
    pub fn encode<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>> {
        word.iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::Parse(format!("symbol {:?} not in alphabet", s.as_ref())))
            })
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> Vec<&str> {
        word.iter().map(|&s| self.label(s)).collect()
    }

    pub(crate) fn require_same(&self, other: &Alphabet, op: &str) -> Result<()> {
        if self != other {
            return Err(Error::AlphabetMismatch(format!(
                "{op}: {:?} vs {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// Every word over `k` symbols of length `<= max_len`, in length-lex order.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for w in &layer {
            for a in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
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
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::new(["a", "b", "a"]).is_err());
        assert!(Alphabet::new([""]).is_err());
        let a = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(a.encode(&["b", "a"]).unwrap(), vec![1, 0]);
        assert!(a.encode(&["c"]).is_err());
    }

    #[test]
    fn all_words_is_length_lex() {
        let w = all_words(2, 2);
        assert_eq!(w, vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}

use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::dihedral::DihedralWord;
use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Matrix(IntMatrix),
    Dihedral(DihedralWord),
}

/// An element of a Coxeter group.
///
/// The payload is either the integral matrix of the element in the reflection
/// representation or the dihedral normal form. The Coxeter length is cached on
/// first use; equality and hashing look at the payload only.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub(crate) repr: Repr,
    pub(crate) length: OnceLock<usize>,
}

impl GroupElement {
    pub(crate) fn new(repr: Repr) -> Self {
        GroupElement {
            repr,
            length: OnceLock::new(),
        }
    }

    pub(crate) fn with_length(repr: Repr, length: Option<usize>) -> Self {
        let cell = OnceLock::new();
        if let Some(l) = length {
            let _ = cell.set(l);
        }
        GroupElement { repr, length: cell }
    }

    pub(crate) fn from_matrix(m: IntMatrix, length: Option<usize>) -> Self {
        Self::with_length(Repr::Matrix(m), length)
    }

    pub(crate) fn from_dihedral(d: DihedralWord, length: Option<usize>) -> Self {
        Self::with_length(Repr::Dihedral(d), length)
    }

    pub fn matrix(&self) -> Option<&IntMatrix> {
        match &self.repr {
            Repr::Matrix(m) => Some(m),
            Repr::Dihedral(_) => None,
        }
    }

    pub fn dihedral(&self) -> Option<DihedralWord> {
        match &self.repr {
            Repr::Dihedral(d) => Some(*d),
            Repr::Matrix(_) => None,
        }
    }

    pub fn cached_length(&self) -> Option<usize> {
        self.length.get().copied()
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

/// A word in the generators, stored with 0-based indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Text form with 1-based indices, see [`format_indices`].
    pub fn format(&self, rank: usize) -> String {
        format_indices(&self.0, rank)
    }
}

/// Formats 0-based generator indices in 1-based notation: concatenated digits
/// when `rank <= 9` (`"2312"`), space separated otherwise, `"e"` when empty.
pub fn format_indices(indices: &[usize], rank: usize) -> String {
    if indices.is_empty() {
        return "e".to_string();
    }
    let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    if rank <= 9 {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// Parses the output of [`format_indices`] back into 0-based indices.
pub fn parse_indices(text: &str, rank: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = if text.contains(char::is_whitespace) || rank > 9 {
        text.split_whitespace().collect()
    } else {
        text.split("").filter(|t| !t.is_empty()).collect()
    };
    tokens
        .iter()
        .map(|t| {
            let i: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index {t:?} in {text:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::Parse(format!("generator index {i} out of range 1..={rank}")));
            }
            Ok(i - 1)
        })
        .collect()
}

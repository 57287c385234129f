use crate::error::{LinrewError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An oriented strand label: `^` (Up) or `v` (Down).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum StrandLabel {
    Up,
    Down,
}

impl StrandLabel {
    pub fn as_char(self) -> char {
        match self {
            StrandLabel::Up => '^',
            StrandLabel::Down => 'v',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '^' => Ok(StrandLabel::Up),
            'v' => Ok(StrandLabel::Down),
            other => Err(LinrewError::InvalidWord(other)),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            StrandLabel::Up => StrandLabel::Down,
            StrandLabel::Down => StrandLabel::Up,
        }
    }
}

/// A 1-cell: a finite sequence of oriented strand labels. The empty word is
/// the monoidal unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<StrandLabel>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars().map(StrandLabel::from_char).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First `n` labels.
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// Labels from position `n` to the end.
    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    /// Labels in `range`.
    pub fn sub(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn label(&self, i: usize) -> StrandLabel {
        self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = LinrewError;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

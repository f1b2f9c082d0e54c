//! Letters over `S ⊔ S⁻¹`, words, free and cyclic reduction, and canonical
//! cyclic words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("invalid token `{token}` at column {column}")]
    InvalidToken { token: String, column: usize },
}

/// A generator or its formal inverse.
///
/// Labels are ordered by generator name first and then by sign, with the
/// positive letter first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    generator: Arc<str>,
    inverse: bool,
}

impl Label {
    pub fn new(generator: &str, inverse: bool) -> Self {
        Label {
            generator: Arc::from(generator),
            inverse,
        }
    }

    pub fn pos(generator: &str) -> Self {
        Label::new(generator, false)
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(&self) -> Label {
        Label {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }

    pub fn is_inverse_of(&self, other: &Label) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for Label {
    type Err = WordParseError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (token, false),
        };
        if !is_identifier(name) {
            return Err(WordParseError::InvalidToken {
                token: token.to_string(),
                column: 1,
            });
        }
        Ok(Label::new(name, inverse))
    }
}

/// A finite, possibly unreduced, sequence of letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Label>);

impl Word {
    pub fn new(letters: Vec<Label>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses whitespace-separated tokens `g` / `g^-1`. Panics on bad input;
    /// meant for literals in code and tests.
    pub fn parse(s: &str) -> Self {
        s.parse()
            .unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
    }

    pub fn letters(&self) -> &[Label] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Label> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<&Label> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Label> {
        self.0.last()
    }

    pub fn push(&mut self, letter: Label) {
        self.0.push(letter);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Label::inverse).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Cyclic shift to the left by `k` letters.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    /// Raises the word to `exponent` (`+1` or `-1`).
    pub fn pow_sign(&self, exponent: i8) -> Word {
        if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].is_inverse_of(&w[1]))
    }

    /// Free reduction via a stack; the result has no adjacent inverse pair.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Label> = Vec::with_capacity(self.0.len());
        for letter in &self.0 {
            match out.last() {
                Some(top) if top.is_inverse_of(letter) => {
                    out.pop();
                }
                _ => out.push(letter.clone()),
            }
        }
        Word(out)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(a), Some(b)) if self.0.len() > 1 => !a.is_inverse_of(b),
                _ => true,
            }
    }

    /// Free reduction followed by stripping inverse first/last pairs.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo].is_inverse_of(&reduced[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    /// Index of the lexicographically least rotation.
    pub fn least_rotation_index(&self) -> usize {
        least_rotation(&self.0)
    }

    /// Smallest `p` dividing the length with the word equal to its own
    /// rotation by `p`.
    pub fn cyclic_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|p| n.is_multiple_of(*p) && (0..n).all(|i| self.0[i] == self.0[(i + p) % n]))
            .unwrap_or(0)
    }

    /// Returns `k` such that `self.rotate(k) == other`, if any.
    pub fn rotation_to(&self, other: &Word) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        (0..self.len()).find(|&k| {
            let n = self.len();
            (0..n).all(|i| self.0[(i + k) % n] == other.0[i])
        })
    }
}

/// Least rotation by the two-pointer scan (linear time).
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j).min(n.saturating_sub(1))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut column = 1;
        let mut rest = s;
        loop {
            let trimmed = rest.trim_start();
            column += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let token = &trimmed[..end];
            let label = token
                .parse::<Label>()
                .map_err(|_| WordParseError::InvalidToken {
                    token: token.to_string(),
                    column,
                })?;
            letters.push(label);
            column += end;
            rest = &trimmed[end..];
        }
        Ok(Word(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclicWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(CyclicWord::new(&Word::deserialize(deserializer)?))
    }
}

impl FromIterator<Label> for Word {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A word up to rotation, stored as its least rotation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(word: &Word) -> Self {
        CyclicWord(word.rotate(word.least_rotation_index()))
    }

    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::new(&self.0.inverse())
    }

    /// The lesser of this cyclic word and its inverse: a canonical key for the
    /// rotation-and-inversion class.
    pub fn unoriented(&self) -> CyclicWord {
        let inv = self.inverse();
        if inv.0 < self.0 {
            inv
        } else {
            self.clone()
        }
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len().max(1)).map(move |k| self.0.rotate(k))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

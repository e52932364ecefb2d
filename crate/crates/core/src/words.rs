//! Move words (the free group on `T`, `R`) and braid words on three strands.
//!
//! Words are stored in temporal order: the first letter is performed first.
//!
//! Text grammar, whitespace ignored:
//!
//! ```text
//! moves  := ( ("T" | "R") "'"? ("^" n)? )*      case-insensitive, ' = inverse
//! braids := ( ("a" | "b" | "A" | "B") ("^" n)? )* a = σ₁, b = σ₂, upper = inverse
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest accepted `^n` repetition.
pub const MAX_EXPONENT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("malformed exponent at position {position}: {reason}")]
    MalformedExponent { position: usize, reason: &'static str },
}

/// A generator or inverse generator of a free group.
pub trait Letter: Copy + Eq + fmt::Debug {
    fn inverse(self) -> Self;
    fn is_inverse(self) -> bool;
    fn symbol(self) -> &'static str;
}

/// Twist / tuRn and their formal inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    T,
    R,
    #[serde(rename = "T'")]
    TInv,
    #[serde(rename = "R'")]
    RInv,
}

impl Letter for Move {
    fn inverse(self) -> Self {
        match self {
            Move::T => Move::TInv,
            Move::R => Move::RInv,
            Move::TInv => Move::T,
            Move::RInv => Move::R,
        }
    }

    fn is_inverse(self) -> bool {
        matches!(self, Move::TInv | Move::RInv)
    }

    fn symbol(self) -> &'static str {
        match self {
            Move::T => "T",
            Move::R => "R",
            Move::TInv => "T'",
            Move::RInv => "R'",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Move {
    type Err = WordError;

    /// Parses exactly one letter, e.g. `"T"` or `"r'"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word: MoveWord = s.parse()?;
        match word.letters() {
            [m] => Ok(*m),
            _ => Err(WordError::UnknownSymbol { symbol: s.chars().next().unwrap_or(' '), position: 0 }),
        }
    }
}

/// The standard generators `σ₁`, `σ₂` of `B₃` and their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    S1,
    S2,
    S1Inv,
    S2Inv,
}

impl Letter for BraidLetter {
    fn inverse(self) -> Self {
        match self {
            BraidLetter::S1 => BraidLetter::S1Inv,
            BraidLetter::S2 => BraidLetter::S2Inv,
            BraidLetter::S1Inv => BraidLetter::S1,
            BraidLetter::S2Inv => BraidLetter::S2,
        }
    }

    fn is_inverse(self) -> bool {
        matches!(self, BraidLetter::S1Inv | BraidLetter::S2Inv)
    }

    fn symbol(self) -> &'static str {
        match self {
            BraidLetter::S1 => "a",
            BraidLetter::S2 => "b",
            BraidLetter::S1Inv => "A",
            BraidLetter::S2Inv => "B",
        }
    }
}

/// A finite word over a letter alphabet, in temporal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word<L> {
    letters: Vec<L>,
}

pub type MoveWord = Word<Move>;
pub type BraidWord = Word<BraidLetter>;

impl<L: Letter> Word<L> {
    pub fn new(letters: Vec<L>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<L> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, L> {
        self.letters.iter()
    }

    pub fn push(&mut self, letter: L) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    /// `w` repeated `n` times.
    pub fn pow(&self, n: usize) -> Self {
        Self { letters: self.letters.repeat(n) }
    }

    /// The group inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Self {
        self.letters.iter().rev().map(|l| l.inverse()).collect()
    }

    /// True when no inverse letter occurs.
    pub fn is_positive(&self) -> bool {
        !self.letters.iter().any(|l| l.is_inverse())
    }

    pub fn inverse_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_inverse()).count()
    }

    /// Free-group normal form: cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<L> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }
}

impl<L: Letter> Default for Word<L> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<L: Letter> FromIterator<L> for Word<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        Self { letters: iter.into_iter().collect() }
    }
}

impl<L: Letter> Extend<L> for Word<L> {
    fn extend<I: IntoIterator<Item = L>>(&mut self, iter: I) {
        self.letters.extend(iter);
    }
}

impl<L> IntoIterator for Word<L> {
    type Item = L;
    type IntoIter = std::vec::IntoIter<L>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.into_iter()
    }
}

impl<'a, L> IntoIterator for &'a Word<L> {
    type Item = &'a L;
    type IntoIter = std::slice::Iter<'a, L>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

impl<L: Letter> From<Vec<L>> for Word<L> {
    fn from(letters: Vec<L>) -> Self {
        Self { letters }
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(l.symbol())?;
        }
        Ok(())
    }
}

/// Reads an optional `^n` suffix starting at `chars[*i]`; returns the repeat count.
fn read_exponent(chars: &[(usize, char)], i: &mut usize) -> Result<usize, WordError> {
    skip_ws(chars, i);
    let Some(&(pos, '^')) = chars.get(*i) else {
        return Ok(1);
    };
    *i += 1;
    skip_ws(chars, i);
    let start = *i;
    while chars.get(*i).is_some_and(|(_, c)| c.is_ascii_digit()) {
        *i += 1;
    }
    if start == *i {
        return Err(WordError::MalformedExponent { position: pos, reason: "expected digits after '^'" });
    }
    let digits: String = chars[start..*i].iter().map(|(_, c)| c).collect();
    let n: usize =
        digits.parse().map_err(|_| WordError::MalformedExponent { position: pos, reason: "exponent too large" })?;
    match n {
        0 => Err(WordError::MalformedExponent { position: pos, reason: "exponent must be at least 1" }),
        n if n > MAX_EXPONENT => Err(WordError::MalformedExponent { position: pos, reason: "exponent too large" }),
        n => Ok(n),
    }
}

fn skip_ws(chars: &[(usize, char)], i: &mut usize) {
    while chars.get(*i).is_some_and(|(_, c)| c.is_whitespace()) {
        *i += 1;
    }
}

fn parse_word<L: Letter>(
    s: &str,
    mut letter: impl FnMut(char, &[(usize, char)], &mut usize) -> Option<L>,
) -> Result<Word<L>, WordError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    let mut out = Vec::new();
    loop {
        skip_ws(&chars, &mut i);
        let Some(&(position, c)) = chars.get(i) else { break };
        i += 1;
        let l = letter(c, &chars, &mut i).ok_or(WordError::UnknownSymbol { symbol: c, position })?;
        let n = read_exponent(&chars, &mut i)?;
        out.extend(std::iter::repeat_n(l, n));
    }
    Ok(Word::new(out))
}

impl FromStr for MoveWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, |c, chars, i| {
            let base = match c.to_ascii_uppercase() {
                'T' => Move::T,
                'R' => Move::R,
                _ => return None,
            };
            skip_ws(chars, i);
            if chars.get(*i).is_some_and(|&(_, c)| c == '\'') {
                *i += 1;
                Some(base.inverse())
            } else {
                Some(base)
            }
        })
    }
}

impl FromStr for BraidWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, |c, _, _| match c {
            'a' => Some(BraidLetter::S1),
            'b' => Some(BraidLetter::S2),
            'A' => Some(BraidLetter::S1Inv),
            'B' => Some(BraidLetter::S2Inv),
            _ => None,
        })
    }
}

impl Serialize for MoveWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MoveWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// σ₁ ↦ T, σ₂ ↦ RTR, inverses to the inverted images. No reduction is applied.
pub fn braid_to_moves(braid: &BraidWord) -> MoveWord {
    use BraidLetter::*;
    use Move::*;
    let mut out = Vec::with_capacity(3 * braid.len());
    for &l in braid {
        match l {
            S1 => out.push(T),
            S2 => out.extend([R, T, R]),
            S1Inv => out.push(TInv),
            S2Inv => out.extend([RInv, TInv, RInv]),
        }
    }
    Word::new(out)
}

/// T ↦ σ₁, R ↦ σ₁σ₂σ₁, inverses to the inverted images. No reduction is applied.
pub fn moves_to_braid(moves: &MoveWord) -> BraidWord {
    use BraidLetter::*;
    use Move::*;
    let mut out = Vec::with_capacity(3 * moves.len());
    for &m in moves {
        match m {
            T => out.push(S1),
            R => out.extend([S1, S2, S1]),
            TInv => out.push(S1Inv),
            RInv => out.extend([S1Inv, S2Inv, S1Inv]),
        }
    }
    Word::new(out)
}

//! The modular group `PSL₂(ℤ)` acting on `ℚ ∪ {∞}` by Möbius transformations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::projrat::ProjRat;
use crate::words::{Move, MoveWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("determinant of [[{a},{b}],[{c},{d}]] is {det}, expected 1")]
pub struct DeterminantError {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub det: BigInt,
}

/// `±[[a, b], [c, d]]` with `ad - bc = 1`, stored with the first nonzero
/// entry of `(a, b, c, d)` positive so that equality is entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Psl2Elem {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Psl2Elem {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, DeterminantError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(DeterminantError { a, b, c, d, det });
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d].into_iter().find(|e| !e.is_zero());
        if lead.is_some_and(|e| e.is_negative()) {
            Self { a: -a, b: -b, c: -c, d: -d }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::canonical(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// The twist `x ↦ x + 1`.
    pub fn t() -> Self {
        Self::canonical(BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one())
    }

    /// The turn `x ↦ -1/x`.
    pub fn r() -> Self {
        Self::canonical(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// Matrix product `self · rhs` (apply `rhs` first, then `self`).
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::canonical(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// `x ↦ (ax + b)/(cx + d)`, with `∞ ↦ a/c` and a vanishing denominator giving `∞`.
    pub fn moebius(&self, x: &ProjRat) -> ProjRat {
        // ∞ is the column (1, 0); a unimodular matrix never maps a primitive
        // column to (0, 0)
        let (p, q) = (x.numer(), x.denom());
        ProjRat::normalize(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
    }

    /// If this element fixes 0, the `k` with `self = [[1, 0], [k, 1]]`.
    pub fn stab0_data(&self) -> Option<BigInt> {
        // fixing 0 forces b = 0, so a = d = ±1 and the canonical sign makes them 1
        self.b.is_zero().then(|| self.c.clone())
    }
}

impl From<Move> for Psl2Elem {
    fn from(m: Move) -> Self {
        match m {
            Move::T => Self::t(),
            Move::R | Move::RInv => Self::r(),
            Move::TInv => Self::t().inverse(),
        }
    }
}

/// `φ(m₁m₂…mₙ) = φ(mₙ)···φ(m₁)`: the earliest move acts first.
pub fn word_to_psl2(word: &MoveWord) -> Psl2Elem {
    word.iter().fold(Psl2Elem::identity(), |acc, &m| Psl2Elem::from(m).mul(&acc))
}

impl fmt::Display for Psl2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Psl2Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

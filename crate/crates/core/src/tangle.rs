//! A rational tangle tracked by its move history and invariant.
//!
//! Diagrams are not modeled. A state is the sequence of moves performed
//! since the starting point together with the invariant those moves produce.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::projrat::ProjRat;
use crate::psl2::word_to_psl2;
use crate::words::{Move, MoveWord};

/// The effect of one move on the invariant. `R'` acts exactly as `R`.
pub fn act(x: &ProjRat, m: Move) -> ProjRat {
    match m {
        Move::T => x.add_int(1),
        Move::TInv => x.add_int(-1),
        Move::R | Move::RInv => x.neg_recip(),
    }
}

/// The invariant of the tangle obtained from the untangle by `word`.
pub fn invariant_of_word(word: &MoveWord) -> ProjRat {
    apply_word(&ProjRat::zero(), word)
}

/// Folds `word` over `x` in temporal order.
pub fn apply_word(x: &ProjRat, word: &MoveWord) -> ProjRat {
    word.iter().fold(x.clone(), |x, &m| act(&x, m))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invariant {stored} does not match history {history:?}, which gives {computed}")]
pub struct BridgeMismatch {
    pub stored: ProjRat,
    pub computed: ProjRat,
    pub history: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct TangleState {
    invariant: ProjRat,
    history: MoveWord,
    /// Starting invariant; zero unless the state was built from a known fraction.
    #[serde(skip_serializing_if = "ProjRat::is_zero")]
    origin: ProjRat,
}

#[derive(Deserialize)]
struct RawState {
    invariant: ProjRat,
    history: MoveWord,
    #[serde(default = "ProjRat::zero")]
    origin: ProjRat,
}

impl TryFrom<RawState> for TangleState {
    type Error = BridgeMismatch;

    fn try_from(raw: RawState) -> Result<Self, Self::Error> {
        let computed = word_to_psl2(&raw.history).moebius(&raw.origin);
        if computed != raw.invariant {
            return Err(BridgeMismatch { stored: raw.invariant, computed, history: raw.history.to_string() });
        }
        Ok(Self { invariant: raw.invariant, history: raw.history, origin: raw.origin })
    }
}

impl Default for TangleState {
    fn default() -> Self {
        Self::untangle()
    }
}

impl TangleState {
    /// The uncrossed ropes: invariant 0, no history.
    pub fn untangle() -> Self {
        Self::starting_at(ProjRat::zero())
    }

    /// A state with a known invariant and no recorded history.
    pub fn starting_at(origin: ProjRat) -> Self {
        Self { invariant: origin.clone(), history: MoveWord::empty(), origin }
    }

    pub fn invariant(&self) -> &ProjRat {
        &self.invariant
    }

    pub fn history(&self) -> &MoveWord {
        &self.history
    }

    pub fn origin(&self) -> &ProjRat {
        &self.origin
    }

    /// True when the state did not start from the untangle.
    pub fn is_synthetic(&self) -> bool {
        !self.origin.is_zero()
    }

    pub fn apply_move(&self, m: Move) -> Self {
        let mut next = self.clone();
        next.apply(m);
        next
    }

    pub fn apply(&mut self, m: Move) {
        self.invariant = act(&self.invariant, m);
        self.history.push(m);
    }

    pub fn apply_all(&mut self, word: &MoveWord) {
        for &m in word {
            self.apply(m);
        }
    }

    /// Checks `invariant = φ(history) · origin`.
    pub fn check_bridge(&self) -> Result<(), BridgeMismatch> {
        let computed = word_to_psl2(&self.history).moebius(&self.origin);
        if computed == self.invariant {
            Ok(())
        } else {
            Err(BridgeMismatch { stored: self.invariant.clone(), computed, history: self.history.to_string() })
        }
    }
}

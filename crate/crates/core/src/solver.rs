//! Driving an invariant back to zero with positive moves only.
//!
//! [`untangle_moves`] is the magician's Euclidean procedure: a nonnegative
//! (or infinite) value is turned with `R`; a negative value is twisted with
//! the least number of `T`s that makes it nonnegative. Every `R`-then-`Tᵏ`
//! block lands in `[0, 1)` with a strictly smaller denominator.
//!
//! [`shortest_untangle`] is an independent breadth-first oracle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::ToPrimitive;

use crate::projrat::ProjRat;
use crate::tangle::act;
use crate::words::{Move, MoveWord};

/// One move of an untangling together with the value it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub letter: Move,
    pub value: ProjRat,
}

/// A maximal run of one letter, e.g. `T³`, and the value after the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub letter: Move,
    pub count: usize,
    pub value: ProjRat,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.count)
        }
    }
}

/// The next block of the procedure from `x`, or `None` at zero.
fn next_block(x: &ProjRat) -> Option<(Move, usize)> {
    if x.is_zero() {
        return None;
    }
    if x.is_infinite() || !x.is_negative() {
        return Some((Move::R, 1));
    }
    let k = x.ceil_neg_part().expect("finite");
    // k is bounded by the numerator of a value we already hold in memory
    let k = k.to_usize().expect("twist count fits in memory");
    Some((Move::T, k))
}

/// Positive `T`/`R` word taking `x` to 0 by the magician's procedure.
pub fn untangle_moves(x: &ProjRat) -> MoveWord {
    solution_chain(x).into_iter().map(|s| s.letter).collect()
}

/// Per-move trace of [`untangle_moves`].
pub fn solution_chain(x: &ProjRat) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut x = x.clone();
    while let Some((letter, count)) = next_block(&x) {
        for _ in 0..count {
            x = act(&x, letter);
            steps.push(Step { letter, value: x.clone() });
        }
    }
    steps
}

/// The untangling of `x` grouped into `R` and `Tᵏ` blocks.
pub fn solution_blocks(x: &ProjRat) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut x = x.clone();
    while let Some((letter, count)) = next_block(&x) {
        x = match letter {
            Move::T => x.add_int(count as u64),
            _ => act(&x, letter),
        };
        blocks.push(Block { letter, count, value: x.clone() });
    }
    blocks
}

/// First letter of the untangling from `x`, or `None` when `x` is already 0.
pub fn hint(x: &ProjRat) -> Option<Move> {
    next_block(x).map(|(m, _)| m)
}

/// Shortest positive word of length at most `max_len` taking `x` to 0, found
/// by breadth-first search over invariant values.
pub fn shortest_untangle(x: &ProjRat, max_len: usize) -> Option<MoveWord> {
    // value -> (predecessor, letter); the start has no entry
    let mut parent: HashMap<ProjRat, (ProjRat, Move)> = HashMap::new();
    let mut frontier = VecDeque::from([(x.clone(), 0usize)]);
    let mut found = x.is_zero();
    while !found {
        let Some((v, depth)) = frontier.pop_front() else { break };
        if depth == max_len {
            continue;
        }
        for m in [Move::T, Move::R] {
            let next = act(&v, m);
            if next == *x || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (v.clone(), m));
            if next.is_zero() {
                found = true;
                break;
            }
            frontier.push_back((next, depth + 1));
        }
    }
    if !found {
        return None;
    }
    let mut letters = Vec::new();
    let mut v = ProjRat::zero();
    while let Some((prev, m)) = parent.get(&v) {
        letters.push(*m);
        v = prev.clone();
    }
    letters.reverse();
    Some(MoveWord::new(letters))
}

//! Seeded samplers for words, fractions and group elements.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::projrat::ProjRat;
use crate::psl2::{word_to_psl2, Psl2Elem};
use crate::words::{BraidLetter, BraidWord, Move, MoveWord, Word};

const POSITIVE_MOVES: [Move; 2] = [Move::T, Move::R];
const ALL_MOVES: [Move; 4] = [Move::T, Move::R, Move::TInv, Move::RInv];
const POSITIVE_BRAIDS: [BraidLetter; 2] = [BraidLetter::S1, BraidLetter::S2];
const ALL_BRAIDS: [BraidLetter; 4] = [BraidLetter::S1, BraidLetter::S2, BraidLetter::S1Inv, BraidLetter::S2Inv];

/// A move word of uniformly random length in `0..=max_len`.
pub fn move_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize, positive: bool) -> MoveWord {
    let len = rng.gen_range(0..=max_len);
    let alphabet: &[Move] = if positive { &POSITIVE_MOVES } else { &ALL_MOVES };
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// A braid word of uniformly random length in `0..=max_len`.
pub fn braid_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize, with_inverses: bool) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let alphabet: &[BraidLetter] = if with_inverses { &ALL_BRAIDS } else { &POSITIVE_BRAIDS };
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect::<Word<_>>()
}

/// `p/q` with `|p| <= bound`, `1 <= q <= bound`, plus `0` and `∞` now and then.
pub fn projrat<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> ProjRat {
    match rng.gen_range(0..20) {
        0 => ProjRat::infinity(),
        1 => ProjRat::zero(),
        _ => {
            let p = rng.gen_range(-bound..=bound);
            let q = rng.gen_range(1..=bound.max(1));
            ProjRat::new(p, q).expect("q >= 1")
        }
    }
}

/// The image of a random word with inverses of length at most `max_len`.
pub fn psl2_elem<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Psl2Elem {
    word_to_psl2(&move_word(rng, max_len, false))
}

/// The `index`-th letter of the random caller stream for `seed`.
///
/// The stream is a pure function of `(seed, index)` so a session can be
/// replayed without carrying generator state.
pub fn caller_move(seed: u64, index: u64) -> Move {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(u128::from(index) * 2);
    POSITIVE_MOVES[(rng.next_u64() & 1) as usize]
}

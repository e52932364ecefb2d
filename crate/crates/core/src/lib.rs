//! Exact arithmetic for Conway's rational tangle trick.
//!
//! A tangle built from the untangle by Twist (`T`) and tuRn (`R`) moves
//! carries an invariant in `ℚ ∪ {∞}`: `T` sends `x` to `x + 1` and `R` sends
//! `x` to `-1/x`. The moves generate `PSL₂(ℤ)` acting by Möbius
//! transformations, which is also the quotient of the three-strand braid
//! group by its center.
//!
//! ```
//! use tangle_core::{invariant_of_word, untangle_moves, MoveWord, ProjRat};
//!
//! let called: MoveWord = "TTRT".parse().unwrap();
//! let x = invariant_of_word(&called);
//! assert_eq!(x, "1/2".parse::<ProjRat>().unwrap());
//! assert_eq!(untangle_moves(&x).to_string(), "RTT");
//! ```

// Error values carry the exact big integers that failed to validate.
#![allow(clippy::result_large_err)]

pub mod braid;
pub mod projrat;
pub mod psl2;
pub mod random;
pub mod session;
pub mod solver;
pub mod tangle;
pub mod words;

pub use braid::{
    braid_to_psl2, central_power, delta, delta_squared, exponent_sum, positivize, positivize_moves, BraidError,
};
pub use projrat::{ProjRat, ProjRatError};
pub use psl2::{word_to_psl2, DeterminantError, Psl2Elem};
pub use session::{Phase, Role, SessionError, Snapshot, StopPolicy, TrickSession};
pub use solver::{shortest_untangle, solution_blocks, solution_chain, untangle_moves, Block, Step};
pub use tangle::{invariant_of_word, TangleState};
pub use words::{braid_to_moves, moves_to_braid, BraidLetter, BraidWord, Letter, Move, MoveWord, WordError};

//! The three-strand braid group and its quotient `B₃/⟨Δ²⟩ ≅ PSL₂(ℤ)`.
//!
//! `σ₁ ↦ t` and `σ₂ ↦ rtr`. The kernel of this map is the center of `B₃`,
//! generated by `Δ² = (σ₁σ₂σ₁)²`, so central powers are detected through the
//! matrix image and the exponent sum.

use thiserror::Error;

use crate::psl2::Psl2Elem;
use crate::words::{braid_to_moves, moves_to_braid, BraidLetter, BraidWord, Letter, Move, MoveWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid {word} maps to the identity but has exponent sum {exponent_sum}, not a multiple of 6")]
    InconsistentCenter { word: String, exponent_sum: i64 },
}

/// `σ₂ ↦ [[1, 0], [-1, 1]]`.
fn second_generator_image() -> Psl2Elem {
    Psl2Elem::new(1, 0, -1, 1).expect("unimodular")
}

impl From<BraidLetter> for Psl2Elem {
    fn from(l: BraidLetter) -> Self {
        match l {
            BraidLetter::S1 => Psl2Elem::t(),
            BraidLetter::S2 => second_generator_image(),
            BraidLetter::S1Inv => Psl2Elem::t().inverse(),
            BraidLetter::S2Inv => second_generator_image().inverse(),
        }
    }
}

/// Homomorphic image in `PSL₂(ℤ)`; the earliest letter acts first.
pub fn braid_to_psl2(braid: &BraidWord) -> Psl2Elem {
    braid.iter().fold(Psl2Elem::identity(), |acc, &l| Psl2Elem::from(l).mul(&acc))
}

/// The fundamental element `Δ = σ₁σ₂σ₁`.
pub fn delta() -> BraidWord {
    use BraidLetter::*;
    BraidWord::new(vec![S1, S2, S1])
}

/// `Δ² = (σ₁σ₂σ₁)²`, the generator of the center.
pub fn delta_squared() -> BraidWord {
    delta().pow(2)
}

/// Positive letters minus inverse letters.
pub fn exponent_sum(braid: &BraidWord) -> i64 {
    braid.iter().map(|l| if l.is_inverse() { -1 } else { 1 }).sum()
}

/// `Some(k)` when `braid` represents `Δ^{2k}`, `None` when it is not central.
pub fn central_power(braid: &BraidWord) -> Result<Option<i64>, BraidError> {
    if !braid_to_psl2(braid).is_identity() {
        return Ok(None);
    }
    let e = exponent_sum(braid);
    if e % 6 != 0 {
        return Err(BraidError::InconsistentCenter { word: braid.to_string(), exponent_sum: e });
    }
    Ok(Some(e / 6))
}

/// `σ₁⁻¹Δ² = σ₂σ₁σ₁σ₂σ₁`.
pub fn s1_inverse_replacement() -> BraidWord {
    use BraidLetter::*;
    BraidWord::new(vec![S2, S1, S1, S2, S1])
}

/// `σ₂⁻¹Δ² = σ₁σ₂σ₂σ₁σ₂`, using `Δ² = (σ₂σ₁σ₂)²`.
pub fn s2_inverse_replacement() -> BraidWord {
    use BraidLetter::*;
    BraidWord::new(vec![S1, S2, S2, S1, S2])
}

/// Replaces every inverse letter by its positive five-letter counterpart.
///
/// Each replacement multiplies by the central `Δ²`, so the result equals the
/// input in `B₃/⟨Δ²⟩` and has the same matrix image.
pub fn positivize(braid: &BraidWord) -> BraidWord {
    let mut out = Vec::with_capacity(braid.len() + 4 * braid.inverse_count());
    for &l in braid {
        match l {
            BraidLetter::S1Inv => out.extend(s1_inverse_replacement()),
            BraidLetter::S2Inv => out.extend(s2_inverse_replacement()),
            positive => out.push(positive),
        }
    }
    BraidWord::new(out)
}

/// A positive `T`/`R` word with the same `PSL₂(ℤ)` image as `moves`.
///
/// `R'` is first read as `R`, then the word goes through braids:
/// translate, positivize, translate back.
pub fn positivize_moves(moves: &MoveWord) -> MoveWord {
    let turned: MoveWord = moves.iter().map(|&m| if m == Move::RInv { Move::R } else { m }).collect();
    braid_to_moves(&positivize(&moves_to_braid(&turned)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projrat::ProjRat;
    use crate::psl2::word_to_psl2;
    use crate::random;
    use crate::words::braid_to_moves;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn w(s: &str) -> MoveWord {
        s.parse().unwrap()
    }

    #[test]
    fn generator_images() {
        assert_eq!(braid_to_psl2(&b("a")).to_string(), "[[1,1],[0,1]]");
        assert_eq!(braid_to_psl2(&b("b")).to_string(), "[[1,0],[-1,1]]");
        assert_eq!(braid_to_psl2(&b("b")), word_to_psl2(&w("RTR")));
        assert!(braid_to_psl2(&delta_squared()).is_identity());
        assert_eq!(braid_to_psl2(&b("aba")), braid_to_psl2(&b("bab")));
        assert_eq!(braid_to_psl2(&delta()), Psl2Elem::r());
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta().to_string(), "aba");
        assert_eq!(delta_squared().to_string(), "abaaba");
        assert_eq!(exponent_sum(&delta_squared()), 6);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(exponent_sum(&b("aB")), 0);
        assert_eq!(exponent_sum(&b("ab").pow(3)), 6);
        assert_eq!(exponent_sum(&BraidWord::empty()), 0);
    }

    #[test]
    fn central_powers() {
        assert_eq!(central_power(&delta_squared()), Ok(Some(1)));
        assert_eq!(central_power(&b("ab").pow(3)), Ok(Some(1)));
        assert_eq!(central_power(&b("a")), Ok(None));
        assert_eq!(central_power(&BraidWord::empty()), Ok(Some(0)));
        assert_eq!(central_power(&delta_squared().inverse()), Ok(Some(-1)));
        assert_eq!(central_power(&b("aba").pow(6)), Ok(Some(3)));
        assert_eq!(central_power(&b("aA")), Ok(Some(0)));
    }

    #[test]
    fn positivize_examples() {
        assert_eq!(positivize(&b("A")), b("baaba"));
        assert_eq!(positivize(&b("B")), b("abbab"));
        assert_eq!(positivize(&b("abba")), b("abba"));
        // the replacements are σᵢ⁻¹Δ² as group elements
        assert_eq!(s1_inverse_replacement(), b("A").concat(&delta_squared()).free_reduce());
        assert_eq!(braid_to_psl2(&s2_inverse_replacement()), braid_to_psl2(&b("B").concat(&b("bab").pow(2))));
    }

    #[test]
    fn positivize_moves_examples() {
        assert_eq!(positivize_moves(&w("T'")).to_string(), "RTRTTRTRT");
        assert_eq!(positivize_moves(&w("T'")), braid_to_moves(&b("baaba")));
        let tr = positivize_moves(&w("TR"));
        assert!(tr.is_positive());
        assert_eq!(word_to_psl2(&tr), word_to_psl2(&w("TR")));
        assert!(positivize_moves(&MoveWord::empty()).is_empty());
        assert_eq!(positivize_moves(&w("R'")), positivize_moves(&w("R")));
    }

    proptest! {
        #[test]
        fn image_is_homomorphic(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b1 = random::braid_word(&mut rng, 30, true);
            let b2 = random::braid_word(&mut rng, 30, true);
            prop_assert_eq!(braid_to_psl2(&b1.concat(&b2)), braid_to_psl2(&b2).mul(&braid_to_psl2(&b1)));
        }

        #[test]
        fn translations_commute_with_images(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let braid = random::braid_word(&mut rng, 40, true);
            prop_assert_eq!(braid_to_psl2(&braid), word_to_psl2(&braid_to_moves(&braid)));
            let moves = random::move_word(&mut rng, 40, false);
            prop_assert_eq!(word_to_psl2(&moves), braid_to_psl2(&moves_to_braid(&moves)));
        }

        #[test]
        fn delta_acts_as_turn(p in -500i64..500, d in 0i64..500) {
            prop_assume!(!(p == 0 && d == 0));
            let x = ProjRat::new(p, d).unwrap();
            prop_assert_eq!(braid_to_psl2(&delta()).moebius(&x), x.neg_recip());
        }

        #[test]
        fn positivize_is_sound(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let braid = random::braid_word(&mut rng, 60, true);
            let pos = positivize(&braid);
            prop_assert!(pos.is_positive());
            prop_assert_eq!(pos.len(), braid.len() + 4 * braid.inverse_count());
            prop_assert_eq!(braid_to_psl2(&pos), braid_to_psl2(&braid));
            // the difference is exactly Δ^(2·#inverses) in exponent sum
            prop_assert_eq!(exponent_sum(&pos) - exponent_sum(&braid), 6 * braid.inverse_count() as i64);
        }

        #[test]
        fn positivize_moves_is_sound(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let moves = random::move_word(&mut rng, 40, false);
            let pos = positivize_moves(&moves);
            prop_assert!(pos.is_positive());
            prop_assert_eq!(word_to_psl2(&pos), word_to_psl2(&moves));
        }

        #[test]
        fn conjugates_of_delta_squared_are_central(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let braid = random::braid_word(&mut rng, 30, true);
            let conj = braid.concat(&delta_squared()).concat(&braid.inverse());
            prop_assert!(braid_to_psl2(&conj).is_identity());
            prop_assert_eq!(central_power(&conj), Ok(Some(1)));
        }
    }
}

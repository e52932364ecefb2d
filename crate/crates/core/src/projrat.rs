//! Points of the projective rational line `ℚ ∪ {∞}`.
//!
//! A [`ProjRat`] is always stored in lowest terms with the sign on the
//! numerator. Infinity is the single point `1/0`; there is no `-∞`.
//!
//! ```
//! use tangle_core::ProjRat;
//!
//! let x: ProjRat = "146/57".parse().unwrap();
//! assert_eq!(x.neg_recip().to_string(), "-57/146");
//! assert_eq!(ProjRat::zero().neg_recip(), ProjRat::infinity());
//! assert_eq!(ProjRat::infinity().add_int(1), ProjRat::infinity());
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjRatError {
    #[error("0/0 is not a point of the projective line")]
    Indeterminate,
    #[error("invalid fraction {0:?}: expected \"p\", \"p/q\" or \"inf\"")]
    Syntax(String),
}

/// An exact element of `ℚ ∪ {∞}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjRat {
    num: BigInt,
    // always >= 0; zero only for infinity
    den: BigInt,
}

impl ProjRat {
    /// Builds `p/q` in lowest terms. A negative `q` flips both signs and any
    /// `p/0` with `p != 0` is infinity.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ProjRatError> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(ProjRatError::Indeterminate);
        }
        Ok(Self::normalize(p, q))
    }

    /// Canonicalizes a pair known not to be `0/0`.
    pub(crate) fn normalize(mut p: BigInt, mut q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        if q.is_zero() {
            return Self::infinity();
        }
        if p.is_zero() {
            return Self::zero();
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        Self { num: p, den: q }
    }

    pub fn zero() -> Self {
        Self { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// Non-negative; zero exactly when `self` is infinity.
    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// True for finite values strictly below zero. Infinity is unsigned.
    pub fn is_negative(&self) -> bool {
        !self.is_infinite() && self.num.is_negative()
    }

    /// `x + k`, with `∞ + k = ∞`.
    pub fn add_int(&self, k: impl Into<BigInt>) -> Self {
        if self.is_infinite() {
            return Self::infinity();
        }
        let k = k.into();
        // gcd(num + k·den, den) = gcd(num, den) = 1, so no reduction needed
        let num = &self.num + k * &self.den;
        if num.is_zero() {
            Self::zero()
        } else {
            Self { num, den: self.den.clone() }
        }
    }

    /// `-1/x`, with `-1/0 = ∞` and `-1/∞ = 0`.
    pub fn neg_recip(&self) -> Self {
        if self.is_infinite() {
            return Self::zero();
        }
        if self.is_zero() {
            return Self::infinity();
        }
        let (num, den) =
            if self.num.is_negative() { (self.den.clone(), -&self.num) } else { (-&self.den, self.num.clone()) };
        Self { num, den }
    }

    /// Least `k >= 0` such that `x + k >= 0`. `None` for infinity.
    pub fn ceil_neg_part(&self) -> Option<BigInt> {
        if self.is_infinite() {
            return None;
        }
        if !self.num.is_negative() {
            return Some(BigInt::zero());
        }
        let magnitude = -&self.num;
        Some(Integer::div_ceil(&magnitude, &self.den))
    }
}

impl From<i64> for ProjRat {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigInt> for ProjRat {
    fn from(n: BigInt) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for ProjRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ProjRat {
    type Err = ProjRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let syntax = || ProjRatError::Syntax(s.to_string());
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "inf" | "-inf" | "+inf") {
            return Ok(Self::infinity());
        }
        let int = |part: &str| -> Result<BigInt, ProjRatError> {
            let part = part.trim();
            let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax());
            }
            part.parse().map_err(|_| syntax())
        };
        match t.split_once('/') {
            None => Ok(Self::integer(int(t)?)),
            Some((p, q)) => Self::new(int(p)?, int(q)?),
        }
    }
}

impl Serialize for ProjRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> ProjRat {
        ProjRat::new(p, d).unwrap()
    }

    #[test]
    fn make_canonicalizes() {
        let x = q(146, 57);
        assert_eq!((x.numer().clone(), x.denom().clone()), (146.into(), 57.into()));
        assert_eq!(q(-4, -6), q(2, 3));
        assert_eq!(q(-4, -6).to_string(), "2/3");
        assert_eq!(q(4, -6).to_string(), "-2/3");
        assert_eq!(q(7, 0), ProjRat::infinity());
        assert_eq!(q(-7, 0), ProjRat::infinity());
        assert_eq!(q(0, -5), ProjRat::zero());
        assert_eq!(q(0, -5).denom(), &BigInt::one());
        assert_eq!(ProjRat::new(0, 0), Err(ProjRatError::Indeterminate));
    }

    #[test]
    fn add_int_follows_conventions() {
        assert_eq!(ProjRat::zero().add_int(1), ProjRat::integer(1));
        assert_eq!(ProjRat::infinity().add_int(1), ProjRat::infinity());
        assert_eq!(q(-57, 146).add_int(1), q(89, 146));
        assert_eq!(q(-2, 1).add_int(2), ProjRat::zero());
    }

    #[test]
    fn neg_recip_follows_conventions() {
        assert_eq!(ProjRat::zero().neg_recip(), ProjRat::infinity());
        assert_eq!(ProjRat::infinity().neg_recip(), ProjRat::zero());
        assert_eq!(q(146, 57).neg_recip(), q(-57, 146));
        assert_eq!(q(-3, 2).neg_recip(), q(2, 3));
    }

    #[test]
    fn text_format() {
        for (text, shown) in [
            ("146/57", "146/57"),
            ("-4/-6", "2/3"),
            ("12", "12"),
            ("6/3", "2"),
            ("inf", "inf"),
            ("-inf", "inf"),
            ("INF", "inf"),
            (" -3/ 9 ", "-1/3"),
            ("5/0", "inf"),
            ("+7", "7"),
        ] {
            assert_eq!(text.parse::<ProjRat>().unwrap().to_string(), shown, "{text}");
        }
        for bad in ["", "/", "1/", "a/b", "1/2/3", "0/0", "--1", "1.5", "infinity"] {
            assert!(bad.parse::<ProjRat>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn ceil_neg_part() {
        assert_eq!(q(-32, 7).ceil_neg_part(), Some(5.into()));
        assert_eq!(q(-2, 1).ceil_neg_part(), Some(2.into()));
        assert_eq!(q(-1, 3).ceil_neg_part(), Some(1.into()));
        assert_eq!(q(3, 7).ceil_neg_part(), Some(0.into()));
        assert_eq!(ProjRat::infinity().ceil_neg_part(), None);
    }

    #[test]
    fn serde_uses_text_form() {
        let json = serde_json::to_string(&q(-1, 2)).unwrap();
        assert_eq!(json, "\"-1/2\"");
        let back: ProjRat = serde_json::from_str("\"inf\"").unwrap();
        assert!(back.is_infinite());
    }

    fn any_projrat() -> impl Strategy<Value = ProjRat> {
        prop_oneof![
            1 => Just(ProjRat::infinity()),
            1 => Just(ProjRat::zero()),
            8 => (-1000i64..1000, 1i64..1000).prop_map(|(p, d)| q(p, d)),
        ]
    }

    proptest! {
        #[test]
        fn neg_recip_is_involution(x in any_projrat()) {
            prop_assert_eq!(x.neg_recip().neg_recip(), x);
        }

        #[test]
        fn add_int_composes(x in any_projrat(), a in -50i64..50, b in -50i64..50) {
            prop_assert_eq!(x.add_int(a).add_int(b), x.add_int(a + b));
        }

        #[test]
        fn canonical_form_is_scale_invariant(p in -500i64..500, d in -500i64..500, k in -20i64..20) {
            prop_assume!(!(p == 0 && d == 0) && k != 0);
            prop_assert_eq!(q(p, d), q(k * p, k * d));
        }

        #[test]
        fn display_parse_roundtrip(x in any_projrat()) {
            prop_assert_eq!(x.to_string().parse::<ProjRat>().unwrap(), x);
        }
    }
}

//! The extended naturals `{0, 1, 2, ...} ∪ {∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// A non-negative integer or the symbol `∞`.
///
/// Ordered so that every finite value is below `Infinity`; `Infinity` is
/// equal to itself, so `∞ < ∞` is false. Addition absorbs into `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatInf {
    Finite(u64),
    Infinity,
}

pub use NatInf::{Finite, Infinity};

impl NatInf {
    pub const ZERO: NatInf = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        self == Infinity
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(n) => Some(n),
            Infinity => None,
        }
    }

    /// `self - 1` for positive finite values, `∞ - 1 = ∞`. `None` at zero.
    pub fn pred(self) -> Option<NatInf> {
        match self {
            Finite(0) => None,
            Finite(n) => Some(Finite(n - 1)),
            Infinity => Some(Infinity),
        }
    }

    pub fn succ(self) -> NatInf {
        self + Finite(1)
    }
}

impl From<u64> for NatInf {
    fn from(n: u64) -> Self {
        Finite(n)
    }
}

impl Ord for NatInf {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for NatInf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for NatInf {
    type Output = NatInf;

    fn add(self, rhs: NatInf) -> NatInf {
        match (self, rhs) {
            (Finite(a), Finite(b)) => a.checked_add(b).map_or(Infinity, Finite),
            _ => Infinity,
        }
    }
}

impl fmt::Display for NatInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(n) => write!(f, "{n}"),
            Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for NatInf {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Infinity),
            t => t
                .parse::<u64>()
                .map(Finite)
                .map_err(|_| format!("expected a non-negative integer or `inf`, got `{s}`")),
        }
    }
}

/// Finite values serialize as JSON integers, `∞` as the string `"inf"`.
impl Serialize for NatInf {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(n) => serializer.serialize_u64(*n),
            Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infinity_is_not_below_itself() {
        assert!(!(Infinity < Infinity));
        assert!(Finite(u64::MAX) < Infinity);
        assert_eq!(Infinity + Finite(3), Infinity);
        assert_eq!(Finite(3) + Infinity, Infinity);
    }

    #[test]
    fn pred_and_parse() {
        assert_eq!(Finite(0).pred(), None);
        assert_eq!(Finite(4).pred(), Some(Finite(3)));
        assert_eq!(Infinity.pred(), Some(Infinity));
        assert_eq!("inf".parse::<NatInf>().unwrap(), Infinity);
        assert_eq!("7".parse::<NatInf>().unwrap(), Finite(7));
        assert!("-1".parse::<NatInf>().is_err());
    }

    fn any_natinf() -> impl Strategy<Value = NatInf> {
        prop_oneof![4 => (0u64..1000).prop_map(Finite), 1 => Just(Infinity)]
    }

    proptest! {
        #[test]
        fn addition_is_monotone(a in any_natinf(), b in any_natinf(), c in any_natinf()) {
            if a <= b {
                prop_assert!(a + c <= b + c);
            }
            prop_assert_eq!(a + b, b + a);
        }
    }
}

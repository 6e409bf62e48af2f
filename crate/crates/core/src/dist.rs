//! Extended nonnegative integer distances.
//!
//! All metric data in this crate is exact: a distance is either a
//! nonnegative integer (valuation units) or infinite. Infinity encodes
//! disjoint-union glue between pieces that never interact.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An extended nonnegative integer distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    /// A finite distance in valuation units.
    Fin(u64),
    /// Infinite distance: the points lie in different unglued components.
    Inf,
}

impl Dist {
    pub const ZERO: Dist = Dist::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Fin(_))
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Dist::Fin(v) => Some(v),
            Dist::Inf => None,
        }
    }

    /// Saturating maximum of two distances.
    pub fn max(self, other: Dist) -> Dist {
        std::cmp::max(self, other)
    }

    pub fn min(self, other: Dist) -> Dist {
        std::cmp::min(self, other)
    }
}

impl Add for Dist {
    type Output = Dist;

    fn add(self, rhs: Dist) -> Dist {
        match (self, rhs) {
            (Dist::Fin(a), Dist::Fin(b)) => Dist::Fin(a.saturating_add(b)),
            _ => Dist::Inf,
        }
    }
}

impl From<u64> for Dist {
    fn from(v: u64) -> Dist {
        Dist::Fin(v)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(v) => write!(f, "{v}"),
            Dist::Inf => write!(f, "INF"),
        }
    }
}

impl std::str::FromStr for Dist {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("INF") {
            Ok(Dist::Inf)
        } else {
            s.parse::<u64>().map(Dist::Fin)
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Fin(v) => ser.serialize_u64(*v),
            Dist::Inf => ser.serialize_str("INF"),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(v) => Ok(Dist::Fin(v)),
            Raw::Str(s) => s.parse().map_err(|_| D::Error::custom("expected u64 or \"INF\"")),
        }
    }
}

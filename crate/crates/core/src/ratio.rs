use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A competitive ratio: an exact fraction, or unbounded when the online
/// side achieved nothing. Serialized as a number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioValue {
    Finite(Ratio<u64>),
    Infinite,
}

impl RatioValue {
    /// `numer / denom`; `x / 0` is infinite for `x > 0` and `0 / 0` is 1.
    pub fn of(numer: usize, denom: usize) -> Self {
        match (numer, denom) {
            (0, 0) => RatioValue::Finite(Ratio::from_integer(1)),
            (_, 0) => RatioValue::Infinite,
            (n, d) => RatioValue::Finite(Ratio::new(n as u64, d as u64)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RatioValue::Infinite)
    }

    pub fn as_ratio(&self) -> Option<Ratio<u64>> {
        match self {
            RatioValue::Finite(r) => Some(*r),
            RatioValue::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RatioValue::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            RatioValue::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for RatioValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatioValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RatioValue::Infinite, RatioValue::Infinite) => Ordering::Equal,
            (RatioValue::Infinite, _) => Ordering::Greater,
            (_, RatioValue::Infinite) => Ordering::Less,
            (RatioValue::Finite(a), RatioValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioValue::Infinite => f.write_str("inf"),
            RatioValue::Finite(_) => write!(f, "{:.6}", self.to_f64()),
        }
    }
}

impl Serialize for RatioValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RatioValue::Infinite => s.serialize_str("inf"),
            RatioValue::Finite(_) => s.serialize_f64(self.to_f64()),
        }
    }
}

/// Serializes an exact fraction as `"p/q"` next to the float.
pub fn fraction_string(r: &RatioValue) -> String {
    match r {
        RatioValue::Infinite => "inf".into(),
        RatioValue::Finite(x) => format!("{}/{}", x.numer(), x.denom()),
    }
}

impl<'de> Deserialize<'de> for RatioValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) if t == "inf" => Ok(RatioValue::Infinite),
            Raw::Text(t) => {
                let (n, q) =
                    t.split_once('/').ok_or_else(|| serde::de::Error::custom("expected \"inf\" or \"p/q\""))?;
                let n: u64 = n.trim().parse().map_err(serde::de::Error::custom)?;
                let q: u64 = q.trim().parse().map_err(serde::de::Error::custom)?;
                if q == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(RatioValue::Finite(Ratio::new(n, q)))
            }
            Raw::Number(x) => {
                let r = Ratio::<i64>::approximate_float(x)
                    .filter(|r| *r.numer() >= 0)
                    .ok_or_else(|| serde::de::Error::custom("ratio out of range"))?;
                Ok(RatioValue::Finite(Ratio::new(*r.numer() as u64, *r.denom() as u64)))
            }
        }
    }
}

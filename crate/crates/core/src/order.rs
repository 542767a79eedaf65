use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Orders closer to one than this are evaluated as the Kullback-Leibler limit.
pub const KL_SNAP: f64 = 1e-8;

/// Divergence order: a Rényi `α > 0` or the Kullback-Leibler limit `α → 1`.
///
/// Serialized as a bare number or the string `"kl"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Kl,
    Renyi(f64),
}

impl Order {
    /// Collapses Rényi orders within [`KL_SNAP`] of one onto [`Order::Kl`].
    pub fn resolved(self) -> Order {
        match self {
            Order::Renyi(a) if (a - 1.0).abs() < KL_SNAP => Order::Kl,
            other => other,
        }
    }

    pub fn is_kl(self) -> bool {
        matches!(self.resolved(), Order::Kl)
    }

    /// Numeric value, with the KL limit encoded as 1.
    pub fn value(self) -> f64 {
        match self {
            Order::Kl => 1.0,
            Order::Renyi(a) => a,
        }
    }

    pub fn label(self) -> String {
        match self {
            Order::Kl => "KL".to_string(),
            Order::Renyi(a) => format!("{a}"),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Kl => s.serialize_str("kl"),
            Order::Renyi(a) => s.serialize_f64(*a),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(a) => Ok(Order::Renyi(a)),
            Raw::Str(s) if s.eq_ignore_ascii_case("kl") => Ok(Order::Kl),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected a number or \"kl\", got \"{s}\""))),
        }
    }
}

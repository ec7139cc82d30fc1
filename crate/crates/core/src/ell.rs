use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Number of labels (equivalently, of adaptive rounds): a positive integer or
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ell {
    Finite(u32),
    Infinite,
}

impl Ell {
    pub fn finite(self) -> Option<u32> {
        match self {
            Ell::Finite(l) => Some(l),
            Ell::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Ell::Infinite)
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(l) => write!(f, "{l}"),
            Ell::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid label count `{0}` (expected a positive integer or `inf`)")]
pub struct ParseEllError(pub String);

impl FromStr for Ell {
    type Err = ParseEllError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "infinite" | "∞" => Ok(Ell::Infinite),
            other => match other.parse::<u32>() {
                Ok(l) if l >= 1 => Ok(Ell::Finite(l)),
                _ => Err(ParseEllError(s.to_string())),
            },
        }
    }
}

impl Serialize for Ell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ell::Finite(l) => s.serialize_u32(*l),
            Ell::Infinite => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_finite_and_infinite() {
        assert_eq!("3".parse::<Ell>().unwrap(), Ell::Finite(3));
        assert_eq!("inf".parse::<Ell>().unwrap(), Ell::Infinite);
        assert_eq!("∞".parse::<Ell>().unwrap(), Ell::Infinite);
        assert!("0".parse::<Ell>().is_err());
        assert!("x".parse::<Ell>().is_err());
        assert!(Ell::Finite(9) < Ell::Infinite);
    }
}

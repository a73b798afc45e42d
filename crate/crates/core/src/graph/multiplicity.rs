use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

/// An edge count in ℕ ∪ {ω}.
///
/// Bundles always carry a positive multiplicity; `Finite(0)` only shows up as
/// the result of counting (an empty sum). Arithmetic saturates at ω, and
/// finite arithmetic saturates at `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl Multiplicity {
    pub const ZERO: Multiplicity = Multiplicity::Finite(0);
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_omega(self) -> bool {
        self == Self::Omega
    }

    /// True for counts in the open interval (0, ω).
    pub fn is_finite_positive(self) -> bool {
        matches!(self, Multiplicity::Finite(n) if n > 0)
    }
}

impl Default for Multiplicity {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<u64> for Multiplicity {
    fn from(n: u64) -> Self {
        Multiplicity::Finite(n)
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => {
                Multiplicity::Finite(a.saturating_add(b))
            }
            _ => Multiplicity::Omega,
        }
    }
}

impl Mul for Multiplicity {
    type Output = Multiplicity;

    /// Cardinal product: `0 · ω = 0`, otherwise ω absorbs.
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (a, b) if a.is_zero() || b.is_zero() => Self::ZERO,
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => {
                Multiplicity::Finite(a.saturating_mul(b))
            }
            _ => Multiplicity::Omega,
        }
    }
}

impl Sum for Multiplicity {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a.cmp(b),
            (Multiplicity::Finite(_), Multiplicity::Omega) => Ordering::Less,
            (Multiplicity::Omega, Multiplicity::Finite(_)) => Ordering::Greater,
            (Multiplicity::Omega, Multiplicity::Omega) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => f.write_str("∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMultiplicityError(String);

impl fmt::Display for ParseMultiplicityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid multiplicity `{}`", self.0)
    }
}

impl std::error::Error for ParseMultiplicityError {}

impl FromStr for Multiplicity {
    type Err = ParseMultiplicityError;

    /// Accepts a natural number or one of `inf`, `omega`, `ω`, `∞`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "omega" | "ω" | "∞" => Ok(Multiplicity::Omega),
            _ => s
                .parse::<u64>()
                .map(Multiplicity::Finite)
                .map_err(|_| ParseMultiplicityError(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Multiplicity::*;

    #[test]
    fn omega_absorbs_sums_and_products() {
        assert_eq!(Finite(3) + Omega, Omega);
        assert_eq!(Omega + Omega, Omega);
        assert_eq!(Finite(2) * Omega, Omega);
        assert_eq!(Finite(0) * Omega, Finite(0));
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(u64::MAX) + Finite(1), Finite(u64::MAX));
    }

    #[test]
    fn omega_exceeds_every_natural() {
        assert!(Omega > Finite(u64::MAX));
        assert!(Finite(1) < Finite(2));
        let total: Multiplicity = [Finite(1), Finite(1)].into_iter().sum();
        assert_eq!(total, Finite(2));
    }

    #[test]
    fn parses_keywords() {
        assert_eq!("inf".parse::<Multiplicity>().unwrap(), Omega);
        assert_eq!("7".parse::<Multiplicity>().unwrap(), Finite(7));
        assert!("x".parse::<Multiplicity>().is_err());
    }
}

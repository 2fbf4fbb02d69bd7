use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The identity `x_1 ⋯ x_n = q · x_{σ(1)} ⋯ x_{σ(n)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTermIdentity {
    sigma: Permutation,
    q: BigRational,
}

impl TwoTermIdentity {
    pub fn new(sigma: Permutation, q: BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidInput("q must be nonzero".into()));
        }
        Ok(TwoTermIdentity { sigma, q })
    }

    /// The `q = 1` identity `x_id = x_σ`.
    pub fn unscaled(sigma: Permutation) -> Self {
        TwoTermIdentity {
            sigma,
            q: BigRational::one(),
        }
    }

    pub fn with_integer_q(sigma: Permutation, q: i64) -> Result<Self> {
        TwoTermIdentity::new(sigma, BigRational::from_integer(BigInt::from(q)))
    }

    pub fn n(&self) -> usize {
        self.sigma.size()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_unscaled(&self) -> bool {
        self.q.is_one()
    }
}

impl fmt::Display for TwoTermIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: String = (1..=self.n()).map(|t| format!("x{t}")).collect();
        let rhs: String = self
            .sigma
            .images()
            .iter()
            .map(|t| format!("x{t}"))
            .collect();
        if self.is_unscaled() {
            write!(f, "{lhs} = {rhs}")
        } else {
            write!(f, "{lhs} = {}·{rhs}", format_rational(&self.q))
        }
    }
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let value: BigRational = t.parse().map_err(|_| {
        Error::InvalidInput(format!(
            "'{t}' is not a rational number (expected p/q or an integer)"
        ))
    })?;
    Ok(value)
}

/// `p/q` in lowest terms, or the integer alone.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `q^e` for any integer `e`.
pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

/// Whether `q^e = 1` holds in ℚ.
pub fn rational_power_is_one(q: &BigRational, e: i64) -> bool {
    e == 0 || q.is_one() || (e % 2 == 0 && q.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_must_be_nonzero() {
        let sigma = Permutation::reversal(3);
        assert!(TwoTermIdentity::new(sigma.clone(), BigRational::zero()).is_err());
        assert!(TwoTermIdentity::with_integer_q(sigma, -1).is_ok());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("-1").unwrap()), "-1");
        assert_eq!(format_rational(&parse_rational(" 3 ").unwrap()), "3");
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn powers() {
        let two = parse_rational("2").unwrap();
        assert_eq!(rational_pow(&two, -2), parse_rational("1/4").unwrap());
        let minus_one = parse_rational("-1").unwrap();
        assert!(rational_power_is_one(&minus_one, 4));
        assert!(!rational_power_is_one(&minus_one, 3));
        assert!(!rational_power_is_one(&two, 1));
        assert!(rational_power_is_one(&two, 0));
        assert!(!rational_power_is_one(&parse_rational("-1/2").unwrap(), 2));
    }

    #[test]
    fn display() {
        let id = TwoTermIdentity::unscaled(Permutation::reversal(3));
        assert_eq!(id.to_string(), "x1x2x3 = x3x2x1");
        let id = TwoTermIdentity::with_integer_q(Permutation::reversal(2), -1).unwrap();
        assert_eq!(id.to_string(), "x1x2 = -1·x2x1");
    }
}

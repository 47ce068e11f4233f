//! Exact rational scalars.
//!
//! `BigRational` keeps values in lowest terms with a positive
//! denominator, which is exactly the invariant the coefficient type
//! needs, so we use it directly rather than wrapping it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational, the scalar type for all
/// coefficients and parameters.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d = 0.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p" or "p/q" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Render as "p/q", or just "p" when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// (-1)^k as a rational.
pub fn sign_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// r^k for integer k (k may be negative; r must be nonzero then).
pub fn rat_pow(r: &Rat, k: i64) -> Rat {
    if k >= 0 {
        num_traits::pow::pow(r.clone(), k as usize)
    } else {
        assert!(!r.is_zero(), "zero to a negative power");
        num_traits::pow::pow(r.recip(), (-k) as usize)
    }
}

/// |r| as a rational (used only for formatting decisions, never for
/// numeric comparisons against thresholds).
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

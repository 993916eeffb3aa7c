//! Exact dense rational matrix kernel.
//!
//! Everything downstream (Drazin inverses, decompositions, theorem checkers)
//! runs on [`Matrix`] values over arbitrary-precision rationals, so every
//! zero test here is exact.

mod matrix;
mod poly;

pub use matrix::{Matrix, MatrixError};
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Scalar type for all matrix entries. `num_rational` keeps values reduced
/// with a positive denominator, which is exactly the canonical form we need.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or a plain integer string into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, MatrixError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| MatrixError::BadRational(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| MatrixError::BadRational(s.to_string()))?;
        if d == BigInt::from(0) {
            return Err(MatrixError::BadRational(s.to_string()));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| MatrixError::BadRational(s.to_string()))?;
        Ok(Rational::from_integer(n))
    }
}

/// Renders a rational as "p" or "p/q"; `parse_rational` round-trips it.
pub fn render_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

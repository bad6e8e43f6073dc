//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with
//! positive denominator; every operation is exact. The representation is
//! `num_rational::BigRational`, re-exported under a domain name, plus the
//! handful of floor/fraction helpers the divisor arithmetic needs.

pub use num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Arbitrary-precision rational number, always in lowest terms,
/// denominator always positive.
pub type Rational = BigRational;

/// Shorthand constructor from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand constructor from an integer.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Extra floor-style operations on exact rationals.
pub trait RationalExt {
    /// `⌊q⌋` as a `BigInt`.
    fn floor_int(&self) -> BigInt;
    /// `⌊q⌋` as `i64`; the quantities this library floors are small.
    fn floor_i64(&self) -> i64;
    /// Exact left limit of the floor: `⌊q − ε⌋` for infinitesimal `ε > 0`,
    /// i.e. `q − 1` when `q` is an integer and `⌊q⌋` otherwise.
    fn floor_left_i64(&self) -> i64;
    /// Fractional part `q − ⌊q⌋`, in `[0, 1)`.
    fn frac_part(&self) -> Rational;
    /// True if the denominator is one.
    fn is_integer_value(&self) -> bool;
}

impl RationalExt for Rational {
    fn floor_int(&self) -> BigInt {
        self.floor().to_integer()
    }

    fn floor_i64(&self) -> i64 {
        let f = self.floor_int();
        i64::try_from(f).expect("floor out of i64 range")
    }

    fn floor_left_i64(&self) -> i64 {
        if self.is_integer() {
            self.floor_i64() - 1
        } else {
            self.floor_i64()
        }
    }

    fn frac_part(&self) -> Rational {
        self - Rational::from_integer(self.floor_int())
    }

    fn is_integer_value(&self) -> bool {
        self.denom().is_one()
    }
}

/// Parse a rational written as `p` or `p/q`. Used by the CLI and the JSON
/// job reader; rejects anything the exact grammar does not cover.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(n)),
        Some(d) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_positive() {
                Some(Rational::new(n, d))
            } else {
                None
            }
        }
    }
}

/// Render as `p` or `p/q` (the `Display` of `BigRational` already does this;
/// kept as a named function so report code reads clearly).
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_invariant() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let g = num_integer::gcd(q.numer().abs(), q.denom().clone());
        assert!(g.is_one());
    }

    #[test]
    fn floor_left_of_integers_and_fractions() {
        assert_eq!(rint(5).floor_left_i64(), 4);
        assert_eq!(rat(5, 2).floor_left_i64(), 2);
        assert_eq!(rat(-1, 2).floor_left_i64(), -1);
        assert_eq!(rint(0).floor_left_i64(), -1);
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["3", "-3", "5/6", "-11/12", "0"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(rational_string(&q), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("1/-2").is_none());
    }
}

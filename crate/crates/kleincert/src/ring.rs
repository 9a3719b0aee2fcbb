//! Coefficient-ring abstraction shared by the polynomial and matrix kernels.
//!
//! Every coefficient domain used in this crate (arbitrary-precision
//! rationals, cyclotomic field elements, parameter polynomials) is an
//! integral domain with decidable equality. Elements may carry context
//! (a cyclotomic field element knows its field), so "zero" and "one"
//! are derived from an existing element rather than conjured from thin
//! air.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact integral domain.
///
/// All operations are pure; implementations must never round.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    /// The additive identity of the same domain (and, where relevant,
    /// the same context) as `self`.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity in the context of `self`.
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self * n` for a machine integer `n`.
    fn mul_int(&self, n: i64) -> Self;
    /// True iff `self` is invertible in the domain.
    fn is_unit(&self) -> bool;
    /// Multiplicative inverse when `self` is a unit.
    fn try_inv(&self) -> Option<Self>;
    /// Exact division: `Some(q)` with `self = q * rhs`, `None` if `rhs`
    /// does not divide `self` (or is zero).
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

/// The base coefficient domain: arbitrary-precision rationals, always
/// reduced to lowest terms with positive denominator.
pub type Rational = BigRational;

impl Ring for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * BigRational::from_integer(n.into())
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

/// Parse a rational from the `"p/q"` wire format (plain integers allowed).
pub fn rational_from_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parsed = if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: num_bigint::BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if Zero::is_zero(&d) {
            return Err(format!("zero denominator in {s:?}"));
        }
        BigRational::new(n, d)
    } else {
        let n: num_bigint::BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
        BigRational::from_integer(n)
    };
    Ok(parsed)
}

/// Render a rational in the `"p/q"` wire format (`"p"` when q = 1).
pub fn rational_to_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

/// Approximate a big rational by the nearest f64 (validation oracle only;
/// no exact computation ever consumes this).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for huge values.
        let n = r.numer().to_f64().unwrap_or(if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_round_trip() {
        for s in ["0", "-3", "5/7", "-22/7"] {
            let r = rational_from_str(s).unwrap();
            assert_eq!(rational_to_str(&r), s);
        }
        // non-canonical input normalizes
        assert_eq!(rational_to_str(&rational_from_str("4/6").unwrap()), "2/3");
        assert!(rational_from_str("1/0").is_err());
    }

    #[test]
    fn exact_div_rejects_zero() {
        let one = rat_int(1);
        assert!(Ring::exact_div(&one, &rat_int(0)).is_none());
        assert_eq!(Ring::exact_div(&one, &rat_int(2)), Some(rat_frac(1, 2)));
    }
}

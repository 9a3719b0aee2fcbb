//! Polynomials in the abstract generator alphabet F, D, C, K (the four
//! fundamental invariants) with weighted-degree bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::{Rational, Ring};

pub const GENERATOR_NAMES: [&str; 4] = ["f", "Delta", "C", "K"];

/// Exponent quadruple (i, j, k, l) standing for f^i Delta^j C^k K^l.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GenExp(pub [u32; 4]);

impl GenExp {
    pub fn weighted_degree(&self, weights: [u32; 4]) -> u32 {
        self.0.iter().zip(weights.iter()).map(|(e, w)| e * w).sum()
    }
}

impl fmt::Display for GenExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            if e == 1 {
                write!(f, "{}", GENERATOR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", GENERATOR_NAMES[i], e)?;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in the abstract generators with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GenPoly {
    pub terms: BTreeMap<GenExp, Rational>,
}

impl GenPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(exp: [u32; 4], c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(GenExp(exp), c);
        }
        GenPoly { terms }
    }

    pub fn add_term(&mut self, exp: [u32; 4], c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = GenExp(exp);
        let cur = self.terms.remove(&e).unwrap_or_else(|| c.zero_like());
        let s = cur.add(&c);
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    /// Common weighted degree of all terms, or None when the terms do not
    /// share one (or the polynomial is zero, which reports Some(0)).
    pub fn weighted_degree(&self, weights: [u32; 4]) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.weighted_degree(weights));
        let Some(first) = it.next() else {
            return Some(0);
        };
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;

    pub const KLEIN_WEIGHTS: [u32; 4] = [4, 6, 14, 21];

    #[test]
    fn syzygy_rhs_is_weighted_homogeneous_of_degree_42() {
        let mut p = GenPoly::zero();
        // C^3 + 1728 D^7 + 1008 C D^4 f - 88 C^2 D f^2 - 60032 D^5 f^3
        //   + 1088 C D^2 f^4 + 22016 D^3 f^6 - 256 C f^7 - 2048 D f^9
        for (exp, c) in [
            ([0, 0, 3, 0], 1),
            ([0, 7, 0, 0], 1728),
            ([1, 4, 1, 0], 1008),
            ([2, 1, 2, 0], -88),
            ([3, 5, 0, 0], -60032),
            ([4, 2, 1, 0], 1088),
            ([6, 3, 0, 0], 22016),
            ([7, 0, 1, 0], -256),
            ([9, 1, 0, 0], -2048),
        ] {
            p.add_term(exp, rat_int(c));
        }
        assert_eq!(p.weighted_degree(KLEIN_WEIGHTS), Some(42));
    }

    #[test]
    fn constants_and_mixed_degrees() {
        let c = GenPoly::term([0, 0, 0, 0], rat_int(5));
        assert_eq!(c.weighted_degree(KLEIN_WEIGHTS), Some(0));
        let mut mixed = GenPoly::term([1, 0, 0, 0], rat_int(1));
        mixed.add_term([0, 1, 0, 0], rat_int(1));
        // f + Delta: 4 != 6
        assert_eq!(mixed.weighted_degree(KLEIN_WEIGHTS), None);
    }
}

//! Formal parameters lambda, mu, nu adjoined as commuting symbols with
//! polynomial coefficients. Pencils of curves keep their parameters
//! symbolic; any step that needs a parameter expression to be nonzero
//! returns that side condition as an explicit assumption record instead
//! of silently using it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::Ring;

pub const PARAM_NAMES: [&str; 3] = ["lambda", "mu", "nu"];

/// Exponent triple for (lambda, mu, nu), graded-lex ordered.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamExp(pub [u32; 3]);

impl ParamExp {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for ParamExp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ParamExp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ParamExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            if k == 1 {
                write!(f, "{}", PARAM_NAMES[i])?;
            } else {
                write!(f, "{}^{}", PARAM_NAMES[i], k)?;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in the three formal parameters over a scalar ring.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly<C: Ring> {
    terms: BTreeMap<ParamExp, C>,
}

impl<C: Ring> ParamPoly<C> {
    pub fn zero() -> Self {
        ParamPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ParamExp([0, 0, 0]), c);
        }
        ParamPoly { terms }
    }

    /// c * (parameter #i), i in {0: lambda, 1: mu, 2: nu}.
    pub fn param(i: usize, c: C) -> Self {
        let mut e = [0u32; 3];
        e[i] = 1;
        Self::monomial(ParamExp(e), c)
    }

    pub fn monomial(e: ParamExp, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ParamPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: ParamExp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn as_constant(&self) -> Option<&C> {
        if self.terms.len() == 1 {
            self.terms.get(&ParamExp([0, 0, 0]))
        } else {
            None
        }
    }

    /// Shared positive rational content of the scalar coefficients
    /// (for content stripping in division-free reductions).
    pub fn rational_content(&self) -> Option<crate::ring::Rational>
    where
        C: RationalContent,
    {
        let mut acc: Option<crate::ring::Rational> = None;
        for c in self.terms.values() {
            let Some(rc) = c.rational_content() else {
                continue;
            };
            acc = Some(match acc {
                None => rc,
                Some(prev) => rational_gcd(&prev, &rc),
            });
        }
        acc
    }

    /// Map the scalar coefficients into another ring.
    pub fn map_scalars<D: Ring>(&self, f: impl Fn(&C) -> D) -> ParamPoly<D> {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Instantiate the parameters at concrete scalar values.
    pub fn instantiate(&self, values: &[C; 3], zero: C) -> C {
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e.0[i] {
                    t = t.mul(&values[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// The side conditions under which this parameter expression is
    /// nonzero "generically": a single-term expression needs exactly its
    /// parameter variables to be nonzero; a multi-term expression is kept
    /// whole as one nonvanishing condition.
    pub fn nonzero_conditions(&self) -> Vec<Assumption> {
        if self.terms.is_empty() {
            panic!("nonzero_conditions on the zero expression");
        }
        if self.terms.len() == 1 {
            let (e, _) = self.terms.iter().next().unwrap();
            return (0..3)
                .filter(|&i| e.0[i] > 0)
                .map(Assumption::ParamNonzero)
                .collect();
        }
        vec![Assumption::ExprNonzero(format!("{:?}", self))]
    }
}

impl<C: Ring> Ring for ParamPoly<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        let c = self
            .terms
            .values()
            .next()
            .expect("one_like on zero parameter polynomial lacks context");
        Self::constant(c.one_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.neg());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(
                    ParamExp([ea.0[0] + eb.0[0], ea.0[1] + eb.0[1], ea.0[2] + eb.0[2]]),
                    ca.mul(cb),
                );
            }
        }
        out
    }
    fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.mul_int(n));
        }
        out
    }
    fn is_unit(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_unit())
    }
    fn try_inv(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.try_inv())
            .map(Self::constant)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        // long division by the leading parameter term
        let (lexp, lc) = rhs.terms.iter().next_back().unwrap();
        let (lexp, lc) = (*lexp, lc.clone());
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((rexp, rc)) = rem.terms.iter().next_back() {
            let (rexp, rc) = (*rexp, rc.clone());
            if rexp.0[0] < lexp.0[0] || rexp.0[1] < lexp.0[1] || rexp.0[2] < lexp.0[2] {
                return None;
            }
            let q = rc.exact_div(&lc)?;
            let qe = ParamExp([
                rexp.0[0] - lexp.0[0],
                rexp.0[1] - lexp.0[1],
                rexp.0[2] - lexp.0[2],
            ]);
            quo.add_term(qe, q.clone());
            let piece = Self::monomial(qe, q);
            rem = rem.sub(&piece.mul(rhs));
        }
        Some(quo)
    }
}

impl<C: Ring> fmt::Debug for ParamPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.degree() == 0 {
                write!(f, "({:?})", c)?;
            } else {
                write!(f, "({:?})*{:?}", c, e)?;
            }
        }
        Ok(())
    }
}

// -------------------------------------------------------------------------
// serialization: {"params": [{"exp": [a,b,c], "coeff": ...}]}
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ParamTermWire<C> {
    exp: [u32; 3],
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct ParamPolyWire<C> {
    params: Vec<ParamTermWire<C>>,
}

impl<C: Ring + Serialize> Serialize for ParamPoly<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamPolyWire {
            params: self
                .terms
                .iter()
                .map(|(e, c)| ParamTermWire {
                    exp: e.0,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Ring + Deserialize<'de>> Deserialize<'de> for ParamPoly<C> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ParamPolyWire::<C>::deserialize(deserializer)?;
        let mut out = Self::zero();
        for t in wire.params {
            out.add_term(ParamExp(t.exp), t.coeff);
        }
        Ok(out)
    }
}

/// Rings whose elements carry a rational "size" factor that can be
/// cancelled freely (multiplication by a nonzero rational is a unit).
pub trait RationalContent: Ring {
    fn rational_content(&self) -> Option<crate::ring::Rational>;
    fn divide_by_rational(&self, r: &crate::ring::Rational) -> Self;
}

pub fn rational_gcd(a: &crate::ring::Rational, b: &crate::ring::Rational) -> crate::ring::Rational {
    use num_integer::Integer as _;
    // gcd of p/q and r/s = gcd(p, r) / lcm(q, s)
    crate::ring::Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

impl RationalContent for crate::ring::Rational {
    fn rational_content(&self) -> Option<crate::ring::Rational> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Signed::abs(self))
        }
    }
    fn divide_by_rational(&self, r: &crate::ring::Rational) -> Self {
        self / r
    }
}

impl RationalContent for crate::arith::FieldElement {
    fn rational_content(&self) -> Option<crate::ring::Rational> {
        self.rational_content()
    }
    fn divide_by_rational(&self, r: &crate::ring::Rational) -> Self {
        self.scale(&r.recip())
    }
}

impl<C: RationalContent> RationalContent for ParamPoly<C> {
    fn rational_content(&self) -> Option<crate::ring::Rational> {
        ParamPoly::rational_content(self)
    }
    fn divide_by_rational(&self, r: &crate::ring::Rational) -> Self {
        self.map_scalars(|c| c.divide_by_rational(r))
    }
}

/// A recorded genericity side condition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Assumption {
    /// Parameter #i (lambda, mu, nu) is nonzero.
    ParamNonzero(usize),
    /// A compound parameter expression is nonzero (rendered).
    ExprNonzero(String),
}

impl fmt::Debug for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::ParamNonzero(i) => write!(f, "{} != 0", PARAM_NAMES[*i]),
            Assumption::ExprNonzero(s) => write!(f, "{s} != 0"),
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Merge assumptions, sorted and deduplicated.
pub fn merge_assumptions(lists: impl IntoIterator<Item = Vec<Assumption>>) -> Vec<Assumption> {
    let mut all: Vec<Assumption> = lists.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

/// A coefficient domain for local curve analysis: a ring that can state
/// the generic side conditions for one of its elements to be nonzero
/// (trivially empty for honest fields).
pub trait Coefficient: Ring + RationalContent {
    fn nonzero_assumptions(&self) -> Vec<Assumption>;

    /// Componentwise-minimal parameter exponents dividing this
    /// coefficient ([0,0,0] for parameter-free domains).
    fn param_floor(&self) -> [u32; 3] {
        [0, 0, 0]
    }

    /// Divide out the given parameter monomial (must divide).
    fn div_param_floor(&self, _e: [u32; 3]) -> Self {
        self.clone()
    }
}

impl Coefficient for crate::ring::Rational {
    fn nonzero_assumptions(&self) -> Vec<Assumption> {
        Vec::new()
    }
}

impl Coefficient for crate::arith::FieldElement {
    fn nonzero_assumptions(&self) -> Vec<Assumption> {
        Vec::new()
    }
}

impl<C: RationalContent> Coefficient for ParamPoly<C> {
    fn nonzero_assumptions(&self) -> Vec<Assumption> {
        self.nonzero_conditions()
    }

    fn param_floor(&self) -> [u32; 3] {
        let mut floor = [u32::MAX; 3];
        for (e, _) in &self.terms {
            for i in 0..3 {
                floor[i] = floor[i].min(e.0[i]);
            }
        }
        if floor == [u32::MAX; 3] {
            [0, 0, 0]
        } else {
            floor
        }
    }

    fn div_param_floor(&self, e: [u32; 3]) -> Self {
        if e == [0, 0, 0] {
            return self.clone();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(pe, c)| {
                    (
                        ParamExp([pe.0[0] - e[0], pe.0[1] - e[1], pe.0[2] - e[2]]),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, Rational};

    type P = ParamPoly<Rational>;

    #[test]
    fn arithmetic_and_division() {
        let lam = P::param(0, rat_int(1));
        let mu = P::param(1, rat_int(1));
        let p = lam.add(&mu); // lambda + mu
        let sq = p.mul(&p);
        let q = sq.exact_div(&p).unwrap();
        assert_eq!(q, p);
        assert!(p.exact_div(&lam).is_none());
    }

    #[test]
    fn nonzero_conditions_split_monomials() {
        let c = P::monomial(ParamExp([1, 2, 0]), rat_int(3)); // 3 lambda mu^2
        assert_eq!(
            c.nonzero_conditions(),
            vec![Assumption::ParamNonzero(0), Assumption::ParamNonzero(1)]
        );
        let sum = P::param(0, rat_int(1)).add(&P::param(1, rat_int(1)));
        assert!(matches!(
            sum.nonzero_conditions()[0],
            Assumption::ExprNonzero(_)
        ));
        // a nonzero constant needs no conditions
        assert!(P::constant(rat_int(5)).nonzero_conditions().is_empty());
    }

    #[test]
    fn instantiation() {
        let p = P::param(0, rat_int(2)).add(&P::constant(rat_int(1)));
        let v = p.instantiate(&[rat_int(3), rat_int(0), rat_int(0)], rat_int(0));
        assert_eq!(v, rat_int(7));
    }
}

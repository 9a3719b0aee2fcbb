//! Sparse multivariate polynomials in y1, y2, y3 over an exact
//! coefficient ring, with calculus, substitution, determinants of
//! polynomial matrices, resultants and binary-form utilities.

pub mod binary;
pub mod gens;
pub mod param;
pub mod resultant;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{FieldElement, FieldRef, Matrix3};
use crate::ring::{Rational, Ring};

/// Exponent triple with the fixed graded-lexicographic term order
/// (total degree first, then lexicographic on (e1, e2, e3)).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponents(pub [u32; 3]);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y1^{} y2^{} y3^{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A sparse polynomial: exponent triple -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Ring> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents([0, 0, 0]), c);
        }
        MultiPoly { terms }
    }

    pub fn monomial(exp: [u32; 3], c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents(exp), c);
        }
        MultiPoly { terms }
    }

    /// The variable y_{i+1} (i in 0..3) with the given unit coefficient.
    pub fn var(i: usize, one: C) -> Self {
        let mut exp = [0u32; 3];
        exp[i] = 1;
        Self::monomial(exp, one)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = ([u32; 3], C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(Exponents(e), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponents) -> Option<&C> {
        self.terms.get(exp)
    }

    /// Largest term in the graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    /// Smallest total degree of a term; None for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.degree()).min()
    }

    /// Some(d) iff nonzero and every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        if self.min_degree() == Some(d) {
            Some(d)
        } else {
            None
        }
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, exp: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = Exponents([ea.0[0] + eb.0[0], ea.0[1] + eb.0[1], ea.0[2] + eb.0[2]]);
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, exp: [u32; 3], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(e, cc)| {
                    let p = cc.mul(c);
                    if p.is_zero() {
                        None
                    } else {
                        Some((
                            Exponents([e.0[0] + exp[0], e.0[1] + exp[1], e.0[2] + exp[2]]),
                            p,
                        ))
                    }
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term([0, 0, 0], c)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.mul_int(n));
        }
        out
    }

    /// Power by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .terms
                .values()
                .next()
                .map(|c| c.one_like())
                .expect("pow(0) needs a nonzero polynomial for context");
            return Self::constant(one);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Exact formal partial derivative with respect to y_{var+1}.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.0;
            ne[var] = k - 1;
            out.add_term(Exponents(ne), c.mul_int(k as i64));
        }
        out
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Evaluate at a point; `zero` supplies the ambient-ring context.
    pub fn eval(&self, point: &[C; 3], zero: C) -> C {
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e.0[i] {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute y_i -> images[i], expanding exactly. Monomial images are
    /// memoized over the divisor lattice so shared prefixes are reused.
    pub fn substitute(&self, images: &[MultiPoly<C>; 3]) -> Self {
        let mut memo: HashMap<Exponents, MultiPoly<C>> = HashMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.degree() == 0 {
                out.add_term(Exponents([0, 0, 0]), c.clone());
                continue;
            }
            let img = Self::monomial_image(*e, images, &mut memo);
            out = out.add(&img.scale(c));
        }
        out
    }

    /// Image of a single monomial (degree >= 1) under the substitution,
    /// with a caller-owned memo table over the divisor lattice.
    pub fn monomial_image(
        e: Exponents,
        images: &[MultiPoly<C>; 3],
        memo: &mut HashMap<Exponents, MultiPoly<C>>,
    ) -> MultiPoly<C> {
        if let Some(p) = memo.get(&e) {
            return p.clone();
        }
        let i = (0..3)
            .find(|&i| e.0[i] > 0)
            .expect("degree-0 handled by caller");
        let mut parent = e.0;
        parent[i] -= 1;
        let result = if Exponents(parent).degree() == 0 {
            images[i].clone()
        } else {
            let base = Self::monomial_image(Exponents(parent), images, memo);
            base.mul(&images[i])
        };
        memo.insert(e, result.clone());
        result
    }

    /// Set y_{var+1} = 0.
    pub fn set_var_zero(&self, var: usize) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[var] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Substitute y_{var+1} = 1 (dehomogenize), merging terms.
    pub fn set_var_one(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = e.0;
            ne[var] = 0;
            out.add_term(Exponents(ne), c.clone());
        }
        out
    }

    /// Lowest power of y_{var+1} dividing every term; None for zero.
    pub fn ord_in_var(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[var]).min()
    }

    pub fn degree_in_var(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    /// Divide exactly by y_{var+1}^k (every term must have exponent >= k).
    pub fn div_var_power(&self, var: usize, k: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(e.0[var] >= k, "not divisible by variable power");
                    let mut ne = e.0;
                    ne[var] -= k;
                    (Exponents(ne), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients as a univariate polynomial in y_{var+1}:
    /// index k holds the (polynomial) coefficient of y^k.
    pub fn univariate_in(&self, var: usize) -> Vec<MultiPoly<C>> {
        let deg = match self.degree_in_var(var) {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![Self::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            let mut ne = e.0;
            let k = ne[var];
            ne[var] = 0;
            out[k as usize].add_term(Exponents(ne), c.clone());
        }
        out
    }

    /// Rebuild from univariate coefficients (inverse of `univariate_in`).
    pub fn from_univariate(coeffs: &[MultiPoly<C>], var: usize) -> Self {
        let mut out = Self::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut ne = e.0;
                ne[var] += k as u32;
                out.add_term(Exponents(ne), c.clone());
            }
        }
        out
    }

    /// Long division by the grlex leading term: Some(q) iff rhs divides
    /// self exactly.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (lexp, lc) = rhs.leading_term()?;
        let lexp = *lexp;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((rexp, rc)) = rem.leading_term() {
            let rexp = *rexp;
            let rc = rc.clone();
            if rexp.0[0] < lexp.0[0] || rexp.0[1] < lexp.0[1] || rexp.0[2] < lexp.0[2] {
                return None;
            }
            let q = rc.exact_div(&lc)?;
            let qe = [
                rexp.0[0] - lexp.0[0],
                rexp.0[1] - lexp.0[1],
                rexp.0[2] - lexp.0[2],
            ];
            quo.add_term(Exponents(qe), q.clone());
            let t = rhs.mul_term(qe, &q);
            rem = rem.sub(&t);
        }
        Some(quo)
    }

    /// Cancel the shared positive rational content of all coefficients
    /// (a unit scaling).
    pub fn strip_rational_content(&self) -> Self
    where
        C: crate::poly::param::RationalContent,
    {
        let mut acc: Option<Rational> = None;
        for c in self.terms.values() {
            let Some(rc) = c.rational_content() else {
                continue;
            };
            acc = Some(match acc {
                None => rc,
                Some(prev) => crate::poly::param::rational_gcd(&prev, &rc),
            });
            if let Some(a) = &acc {
                use num_traits::One;
                if a.is_one() {
                    return self.clone();
                }
            }
        }
        match acc {
            None => self.clone(),
            Some(content) => self.map_coeffs(|c| c.divide_by_rational(&content)),
        }
    }

    /// Largest total degree across terms minus smallest, 0 for zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&Exponents([0, 0, 0]))
    }

    /// Rename variables: term exponents are permuted by `perm`
    /// (new exponent at position perm[i] comes from position i).
    pub fn permute_vars(&self, perm: [usize; 3]) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = [0u32; 3];
                    for i in 0..3 {
                        ne[perm[i]] = e.0[i];
                    }
                    (Exponents(ne), c.clone())
                })
                .collect(),
        }
    }
}

impl MultiPoly<Rational> {
    /// Lift rational coefficients into a cyclotomic field.
    pub fn lift(&self, field: &FieldRef) -> MultiPoly<FieldElement> {
        self.map_coeffs(|c| FieldElement::from_rational(field, c.clone()))
    }
}

impl MultiPoly<FieldElement> {
    /// Compose with the linear change y -> m y, expanded and reduced.
    pub fn linear_substitution(&self, m: &Matrix3) -> Self {
        let images: [MultiPoly<FieldElement>; 3] = std::array::from_fn(|i| {
            let mut p = MultiPoly::zero();
            for j in 0..3 {
                p.add_term(Exponents(Exponents::unit(j)), m.entry(i, j).clone());
            }
            p
        });
        self.substitute(&images)
    }

    pub fn eval_point(&self, point: &[FieldElement; 3]) -> FieldElement {
        let zero = point[0].zero_elem();
        // cache powers per variable
        let dmax = self
            .terms
            .keys()
            .map(|e| e.0.iter().max().copied().unwrap_or(0))
            .max()
            .unwrap_or(0) as usize;
        let powers: [Vec<FieldElement>; 3] = std::array::from_fn(|i| {
            let mut v = Vec::with_capacity(dmax + 1);
            v.push(FieldElement::one(point[i].field()));
            for k in 1..=dmax {
                let prev = v[k - 1].clone();
                v.push(prev.mul(&point[i]));
            }
            v
        });
        let mut acc = zero;
        for (e, c) in &self.terms {
            let t = c
                .mul(&powers[0][e.0[0] as usize])
                .mul(&powers[1][e.0[1] as usize])
                .mul(&powers[2][e.0[2] as usize]);
            acc = acc.add(&t);
        }
        acc
    }
}

impl Exponents {
    fn unit(j: usize) -> [u32; 3] {
        let mut e = [0u32; 3];
        e[j] = 1;
        e
    }
}

impl<C: Ring> Ring for MultiPoly<C> {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        let c = self
            .terms
            .values()
            .next()
            .expect("one_like on zero polynomial lacks context");
        Self::constant(c.one_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale_int(n)
    }
    fn is_unit(&self) -> bool {
        self.is_constant() && self.constant_term().map_or(false, |c| c.is_unit())
    }
    fn try_inv(&self) -> Option<Self> {
        if !self.is_constant() {
            return None;
        }
        self.constant_term()
            .and_then(|c| c.try_inv())
            .map(Self::constant)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        MultiPoly::exact_div(self, rhs)
    }
}

impl<C: Ring> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (i, &k) in e.0.iter().enumerate() {
                if k == 1 {
                    write!(f, "*y{}", i + 1)?;
                } else if k > 1 {
                    write!(f, "*y{}^{}", i + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// serialization: [{"exp": [e1,e2,e3], "coeff": ...}] in the fixed term order
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermWire<C> {
    exp: [u32; 3],
    coeff: C,
}

impl<C: Ring + Serialize> Serialize for MultiPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermWire<&C>> = self
            .terms
            .iter()
            .map(|(e, c)| TermWire { exp: e.0, coeff: c })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de, C: Ring + Deserialize<'de>> Deserialize<'de> for MultiPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<TermWire<C>> = Vec::deserialize(deserializer)?;
        let mut out = Self::zero();
        for t in terms {
            if t.coeff.is_zero() {
                return Err(D::Error::custom("stored zero coefficient"));
            }
            out.add_term(Exponents(t.exp), t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;

    fn y(i: usize) -> MultiPoly<Rational> {
        MultiPoly::var(i, rat_int(1))
    }

    #[test]
    fn square_of_binomial() {
        let p = y(0).add(&y(1));
        let sq = p.mul(&p);
        // y1^2 + 2 y1 y2 + y2^2
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&Exponents([1, 1, 0])), Some(&rat_int(2)));
        assert_eq!(sq, p.pow(2));
    }

    #[test]
    fn zero_annihilates() {
        let p = y(0).add(&y(2).scale_int(5));
        assert!(p.mul(&MultiPoly::zero()).is_zero());
    }

    #[test]
    fn derivative_of_power() {
        let p = y(1).pow(5);
        let d = p.partial_derivative(1);
        assert_eq!(d, y(1).pow(4).scale_int(5));
        assert!(MultiPoly::<Rational>::constant(rat_int(3))
            .partial_derivative(0)
            .is_zero());
    }

    #[test]
    fn exact_division() {
        let p = y(0).pow(2).sub(&y(1).pow(2));
        let d = y(0).sub(&y(1));
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, y(0).add(&y(1)));
        assert!(y(0).exact_div(&y(1)).is_none());
    }

    #[test]
    fn substitution_identity_and_scaling() {
        let p = y(0).pow(3).mul(&y(2)).add(&y(1));
        let id = [y(0), y(1), y(2)];
        assert_eq!(p.substitute(&id), p);
        let scaled = [y(0).scale_int(2), y(1), y(2)];
        let q = y(0).substitute(&scaled);
        assert_eq!(q, y(0).scale_int(2));
    }

    #[test]
    fn univariate_round_trip() {
        let p = y(0)
            .pow(2)
            .mul(&y(2))
            .add(&y(1).mul(&y(2).pow(3)))
            .add(&y(0));
        let coeffs = p.univariate_in(2);
        assert_eq!(MultiPoly::from_univariate(&coeffs, 2), p);
    }

    #[test]
    fn serde_round_trip() {
        use crate::arith::CyclotomicField;
        let field = CyclotomicField::new(84).unwrap();
        let p = y(0).pow(2).sub(&y(1).scale_int(7)).lift(&field);
        let json = serde_json::to_string(&p).unwrap();
        let back: MultiPoly<FieldElement> = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

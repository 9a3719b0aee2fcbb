//! Cyclotomic fields Q(zeta_n) with exact arithmetic.
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1)
//! as an integer coordinate vector over a single positive denominator,
//! fully reduced modulo the n-th cyclotomic polynomial and with the
//! content of the fraction cancelled. That canonical form is the hashing
//! and equality key used everywhere downstream; it also keeps the hot
//! multiply-reduce loop in pure integer arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ring::{rat_int, rational_from_str, rational_to_f64, rational_to_str, Rational};

// ---------------------------------------------------------------------------
// dense univariate polynomials over Q (internal helper representation)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of dense division; divisor must be nonzero.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    assert!(!den.is_empty(), "division by zero polynomial");
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quo = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let k = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        quo[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[k + i] -= t;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quo);
    (quo, rem)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// Extended gcd over Q[x]: returns (g, s, t) monic with s*a + t*b = g.
fn poly_xgcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rational::one()];
    let mut s1: Vec<Rational> = vec![];
    let mut t0: Vec<Rational> = vec![];
    let mut t1 = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, new_s);
        t0 = std::mem::replace(&mut t1, new_t);
    }
    // normalize monic
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// the field object
// ---------------------------------------------------------------------------

/// The cyclotomic field Q(zeta_n) for a fixed conductor n.
///
/// Carries the minimal polynomial Phi_n and a precomputed sparse integer
/// reduction table for the overflow powers zeta^phi(n) .. zeta^(2 phi(n) - 2).
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// Phi_n, dense, monic, length degree + 1 (integer coefficients,
    /// stored as rationals for the inversion path).
    min_poly: Vec<Rational>,
    /// reduction[k] = sparse coordinates of zeta^(degree + k).
    reduction: Vec<Vec<(usize, BigInt)>>,
    /// zeta^k for k in 0..n reduced to the power basis.
    unity_powers: Vec<Vec<BigInt>>,
}

/// Shared handle to a field; all elements of a field hold one.
pub type FieldRef = Arc<CyclotomicField>;

static FIELD_REGISTRY: Lazy<Mutex<HashMap<u32, FieldRef>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Compute Phi_n by the standard recursion
/// Phi_n(x) = (x^n - 1) / prod over proper divisors d of Phi_d(x).
fn cyclotomic_polynomial(n: u32, cache: &mut HashMap<u32, Vec<Rational>>) -> Vec<Rational> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = -Rational::one();
    num[n as usize] = Rational::one();
    let mut den = vec![Rational::one()];
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d, cache);
            den = poly_mul(&den, &phi_d);
        }
    }
    let (quo, rem) = poly_divmod(&num, &den);
    assert!(rem.is_empty(), "cyclotomic recursion left a remainder");
    cache.insert(n, quo.clone());
    quo
}

impl CyclotomicField {
    /// Build (or fetch the cached) field Q(zeta_n). Rejects n = 0.
    pub fn new(conductor: u32) -> Result<FieldRef, String> {
        if conductor == 0 {
            return Err("conductor must be positive".into());
        }
        if let Some(f) = FIELD_REGISTRY.lock().unwrap().get(&conductor) {
            return Ok(f.clone());
        }
        let mut cache = HashMap::new();
        let phi = cyclotomic_polynomial(conductor, &mut cache);
        let degree = phi.len() - 1;
        // Phi_n has integer coefficients.
        let phi_int: Vec<BigInt> = phi
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "Phi_n has integer coefficients");
                c.numer().clone()
            })
            .collect();
        // Dense scratch rows for zeta^(degree + k), k = 0..degree-1.
        let mut dense_rows: Vec<Vec<BigInt>> = Vec::new();
        if degree > 0 {
            let mut row: Vec<BigInt> = phi_int[..degree].iter().map(|c| -c).collect();
            dense_rows.push(row.clone());
            for _ in 1..degree {
                let carry = row.pop().unwrap();
                row.insert(0, BigInt::zero());
                if !carry.is_zero() {
                    for (i, c) in dense_rows[0].iter().enumerate() {
                        if !c.is_zero() {
                            row[i] += &carry * c;
                        }
                    }
                }
                dense_rows.push(row.clone());
            }
        }
        let reduction: Vec<Vec<(usize, BigInt)>> = dense_rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect()
            })
            .collect();
        // Roots of unity zeta^k for k in 0..n.
        let mut unity_powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![BigInt::zero(); degree];
        if degree > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..conductor {
            unity_powers.push(cur.clone());
            let mut next = vec![BigInt::zero(); degree];
            for (i, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i + 1 < degree {
                    next[i + 1] += c;
                } else {
                    for (j, r) in &reduction[i + 1 - degree] {
                        next[*j] += c * r;
                    }
                }
            }
            cur = next;
        }
        let field = Arc::new(CyclotomicField {
            conductor,
            degree,
            min_poly: phi,
            reduction,
            unity_powers,
        });
        FIELD_REGISTRY
            .lock()
            .unwrap()
            .insert(conductor, field.clone());
        Ok(field)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dense coefficients of Phi_n, constant term first.
    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }
}

// ---------------------------------------------------------------------------
// field elements
// ---------------------------------------------------------------------------

/// An element of a cyclotomic field in canonical reduced form:
/// integer power-basis coordinates over one positive denominator, with
/// the content of the fraction cancelled.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub fn zero(field: &FieldRef) -> Self {
        FieldElement {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        if field.degree > 0 {
            num[0] = BigInt::from(n);
        }
        FieldElement {
            field: field.clone(),
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(field: &FieldRef, r: Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        if field.degree > 0 {
            num[0] = r.numer().clone();
        }
        let mut e = FieldElement {
            field: field.clone(),
            num,
            den: r.denom().clone(),
        };
        e.normalize();
        e
    }

    /// zeta_n^k (k may exceed n; it is reduced mod n).
    pub fn root_of_unity(field: &FieldRef, k: i64) -> Self {
        let n = field.conductor as i64;
        let k = k.rem_euclid(n) as usize;
        FieldElement {
            field: field.clone(),
            num: field.unity_powers[k].clone(),
            den: BigInt::one(),
        }
    }

    /// Construct from rational power-basis coordinates (length phi(n)).
    pub fn from_coords(field: &FieldRef, coords: Vec<Rational>) -> Result<Self, String> {
        if coords.len() != field.degree {
            return Err(format!(
                "expected {} coordinates for conductor {}, got {}",
                field.degree,
                field.conductor,
                coords.len()
            ));
        }
        let mut den = BigInt::one();
        for c in &coords {
            den = den.lcm(c.denom());
        }
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut e = FieldElement {
            field: field.clone(),
            num,
            den,
        };
        e.normalize();
        Ok(e)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Rational power-basis coordinates (computed view).
    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    /// Restore the canonical invariant: positive denominator and
    /// cancelled content.
    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        self.den /= &g;
        for c in &mut self.num {
            if !c.is_zero() {
                *c /= &g;
            }
        }
    }

    fn assert_same_field(&self, rhs: &Self) {
        assert_eq!(
            self.field.conductor, rhs.field.conductor,
            "field mismatch: conductor {} vs {}",
            self.field.conductor, rhs.field.conductor
        );
    }

    /// A positive rational c such that self / c has coprime integer
    /// coordinates over denominator 1; None for zero.
    pub fn rational_content(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let mut g = BigInt::zero();
        for c in &self.num {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Some(Rational::new(g, self.den.clone()))
    }

    /// Is this element a rational number (no zeta part)?
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            let n = self.num.first().cloned().unwrap_or_else(BigInt::zero);
            Some(Rational::new(n, self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Zero of the same field.
    pub fn zero_elem(&self) -> Self {
        FieldElement::zero(&self.field)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        let mut out = if self.den == rhs.den {
            FieldElement {
                field: self.field.clone(),
                num: self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect(),
                den: self.den.clone(),
            }
        } else {
            FieldElement {
                field: self.field.clone(),
                num: self
                    .num
                    .iter()
                    .zip(&rhs.num)
                    .map(|(a, b)| a * &rhs.den + b * &self.den)
                    .collect(),
                den: &self.den * &rhs.den,
            }
        };
        out.normalize();
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        let d = self.field.degree;
        if d == 0 {
            return self.clone();
        }
        // integer convolution, skipping zero coordinates
        let mut raw = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        // fold overflow powers through the sparse reduction table
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < d {
                num[i] += c;
            } else {
                for (j, r) in &self.field.reduction[i - d] {
                    num[*j] += &c * r;
                }
            }
        }
        let mut out = FieldElement {
            field: self.field.clone(),
            num,
            den: &self.den * &rhs.den,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1 / (N(x)/den) = den * inv(N); xgcd against Phi_n gives inv(N)
        let mut elt: Vec<Rational> = self
            .num
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        poly_trim(&mut elt);
        let (g, s, _) = poly_xgcd(&elt, &self.field.min_poly);
        assert!(
            g.len() == 1 && g[0].is_one(),
            "cyclotomic inverse: gcd with Phi_n not 1"
        );
        let mut coords = s;
        coords.resize(self.field.degree, Rational::zero());
        let out = Self::from_coords(&self.field, coords).expect("length matches");
        Some(out.scale(&Rational::from_integer(self.den.clone())))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Embed into Q(zeta_m) for a conductor m that is a multiple of ours
    /// (zeta_n maps to zeta_m^(m/n)).
    pub fn embed(&self, bigger: &FieldRef) -> Result<FieldElement, String> {
        let n = self.field.conductor;
        let m = bigger.conductor;
        if m % n != 0 {
            return Err(format!("no embedding: {n} does not divide {m}"));
        }
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); bigger.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (i * step) % m as usize;
            for (j, r) in bigger.unity_powers[k].iter().enumerate() {
                if !r.is_zero() {
                    num[j] += c * r;
                }
            }
        }
        let mut out = FieldElement {
            field: bigger.clone(),
            num,
            den: self.den.clone(),
        };
        out.normalize();
        Ok(out)
    }

    /// Numeric value under zeta_n -> exp(2 pi i / n); used only by the
    /// floating-point validation oracle.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.field.conductor as f64;
        let den = rational_to_f64(&Rational::from_integer(self.den.clone()));
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = rational_to_f64(&Rational::from_integer(c.clone()));
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re / den, im / den)
    }

    /// Deterministic total order on elements of one field.
    pub fn cmp_key(&self, rhs: &Self) -> std::cmp::Ordering {
        self.den.cmp(&rhs.den).then_with(|| self.num.cmp(&rhs.num))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor
            && self.den == other.den
            && self.num == other.num
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for FieldElement {
    /// a + b*z + c*z^2 ... with z = zeta_n.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", rational_to_str(c))?;
            } else if k == 1 {
                write!(f, "{}*z", rational_to_str(c))?;
            } else {
                write!(f, "{}*z^{}", rational_to_str(c), k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}[{}]", self.field.conductor, self)
    }
}

impl crate::ring::Ring for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn add(&self, rhs: &Self) -> Self {
        FieldElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElement::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElement::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale(&rat_int(n))
    }
    fn is_unit(&self) -> bool {
        !FieldElement::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

// ---------------------------------------------------------------------------
// serialization: {"conductor": n, "coords": ["p/q", ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldElementWire {
    conductor: u32,
    coords: Vec<String>,
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldElementWire {
            conductor: self.field.conductor,
            coords: self.coords().iter().map(rational_to_str).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FieldElementWire::deserialize(deserializer)?;
        let field = CyclotomicField::new(wire.conductor).map_err(D::Error::custom)?;
        let coords = wire
            .coords
            .iter()
            .map(|s| rational_from_str(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        FieldElement::from_coords(&field, coords).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_frac;

    fn f(n: u32) -> FieldRef {
        CyclotomicField::new(n).unwrap()
    }

    #[test]
    fn base_case_and_prime_conductor() {
        let q = f(1);
        assert_eq!(q.degree(), 1);
        // Phi_1 = x - 1
        assert_eq!(q.min_poly(), &[rat_int(-1), rat_int(1)]);
        let q7 = f(7);
        assert_eq!(q7.degree(), 6);
        assert!(q7.min_poly().iter().all(|c| c == &rat_int(1)));
    }

    #[test]
    fn conductor_84_degree_is_totient() {
        // phi(84) = phi(4) phi(3) phi(7) = 2 * 2 * 6
        assert_eq!(f(84).degree(), 24);
    }

    #[test]
    fn totient_oracle_for_small_conductors() {
        // independent Euler-totient computation
        fn totient(n: u32) -> usize {
            (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
        }
        for n in 1..=90 {
            assert_eq!(f(n).degree(), totient(n), "phi({n})");
        }
    }

    #[test]
    fn roots_of_unity_multiply() {
        let q7 = f(7);
        let z = FieldElement::root_of_unity(&q7, 1);
        let z6 = FieldElement::root_of_unity(&q7, 6);
        assert_eq!(z.mul(&z6), FieldElement::one(&q7));
        // (1 + zeta_3) + zeta_3^2 = 0
        let q3 = f(3);
        let one = FieldElement::one(&q3);
        let z3 = FieldElement::root_of_unity(&q3, 1);
        let z3sq = FieldElement::root_of_unity(&q3, 2);
        let s = one.add(&z3).add(&z3sq);
        assert!(s.is_zero());
    }

    #[test]
    fn gauss_sum_squares_to_minus_seven() {
        let q7 = f(7);
        let z = |k| FieldElement::root_of_unity(&q7, k);
        let mut g = FieldElement::zero(&q7);
        for k in [1i64, 2, 4] {
            g = g.add(&z(k));
        }
        for k in [3i64, 5, 6] {
            g = g.sub(&z(k));
        }
        assert_eq!(g.mul(&g), FieldElement::from_int(&q7, -7));
    }

    #[test]
    fn inverse_and_division() {
        let q7 = f(7);
        let a = FieldElement::root_of_unity(&q7, 3)
            .add(&FieldElement::from_rational(&q7, rat_frac(2, 5)));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), FieldElement::one(&q7));
        assert!(FieldElement::zero(&q7).inv().is_none());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let q7 = f(7);
        // the same value along two routes; equality must hold bit-exactly
        let a = FieldElement::from_rational(&q7, rat_frac(6, 4));
        let b = FieldElement::from_rational(&q7, rat_frac(3, 2));
        assert_eq!(a, b);
        // subtraction-to-zero matches the equality test
        assert!(a.sub(&b).is_zero());
        let c = FieldElement::root_of_unity(&q7, 2).scale(&rat_frac(10, 15));
        let d = FieldElement::root_of_unity(&q7, 2).scale(&rat_frac(2, 3));
        assert_eq!(c, d);
    }

    #[test]
    fn embedding_commutes_with_arithmetic() {
        let q7 = f(7);
        let q84 = f(84);
        let a = FieldElement::root_of_unity(&q7, 2).add(&FieldElement::from_int(&q7, 3));
        let b = FieldElement::root_of_unity(&q7, 5).sub(&FieldElement::from_int(&q7, 1));
        let prod_then_embed = a.mul(&b).embed(&q84).unwrap();
        let embed_then_prod = a.embed(&q84).unwrap().mul(&b.embed(&q84).unwrap());
        assert_eq!(prod_then_embed, embed_then_prod);
        // 5 does not divide 84
        assert!(FieldElement::zero(&f(5)).embed(&q84).is_err());
    }

    #[test]
    fn serde_round_trip_is_bit_exact() {
        let q84 = f(84);
        let a = FieldElement::root_of_unity(&q84, 13)
            .scale(&rat_frac(-7, 3))
            .add(&FieldElement::from_rational(&q84, rat_frac(22, 7)));
        let json = serde_json::to_string(&a).unwrap();
        let back: FieldElement = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn rejects_zero_conductor() {
        assert!(CyclotomicField::new(0).is_err());
    }
}

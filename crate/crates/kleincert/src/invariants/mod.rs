//! The classical invariants of the order-168 collineation group: the
//! quartic f, the sextic Delta = (1/54) Hess(f), the degree-14 covariant
//! C from the bordered Hessian, the degree-21 covariant K from the
//! Jacobian, the degree-42 relation K^2 = C^3 + 1728 Delta^7 + ..., the
//! semiinvariant spaces by degree, the minimal-form enumeration, and the
//! factorization of K into the 21 fixed lines of the involutions.

pub mod semiinv;

pub use semiinv::{
    character_of, molien_dimensions, scan_semiinvariants, semiinvariant_space, Character,
    SemiinvariantSpace,
};

use serde::Serialize;

use crate::arith::{FieldElement, Matrix3};
use crate::group::MatrixGroup;
use crate::poly::gens::GenExp;
use crate::poly::resultant::poly_matrix_det;
use crate::poly::MultiPoly;
use crate::ring::{rat_frac, rat_int, Rational};

/// Degrees of the four fundamental invariants.
pub const INVARIANT_DEGREES: [u32; 4] = [4, 6, 14, 21];

/// The quartic f = y1^3 y3 + y2^3 y1 + y3^3 y2.
pub fn klein_f() -> MultiPoly<Rational> {
    MultiPoly::from_terms([
        ([3, 0, 1], rat_int(1)),
        ([1, 3, 0], rat_int(1)),
        ([0, 1, 3], rat_int(1)),
    ])
}

/// Matrix of second partials.
pub fn hessian_matrix(p: &MultiPoly<Rational>) -> Vec<Vec<MultiPoly<Rational>>> {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| p.partial_derivative(i).partial_derivative(j))
                .collect()
        })
        .collect()
}

/// The four fundamental invariants with their exact normalizations.
pub struct InvariantRing {
    pub f: MultiPoly<Rational>,
    pub delta: MultiPoly<Rational>,
    pub c: MultiPoly<Rational>,
    pub k: MultiPoly<Rational>,
}

/// Delta = (1/54) Hess(f), homogeneous of degree 6.
pub fn build_delta(f: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let hess = hessian_matrix(f);
    poly_matrix_det(&hess).scale(&rat_frac(1, 54))
}

/// C = (1/9) times the 4x4 bordered determinant of the second partials
/// of f bordered by the gradient of Delta; homogeneous of degree 14.
pub fn build_c(f: &MultiPoly<Rational>, delta: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let hess = hessian_matrix(f);
    let grad: Vec<MultiPoly<Rational>> = (0..3).map(|i| delta.partial_derivative(i)).collect();
    let mut m: Vec<Vec<MultiPoly<Rational>>> = Vec::with_capacity(4);
    for i in 0..3 {
        let mut row = hess[i].clone();
        row.push(grad[i].clone());
        m.push(row);
    }
    let mut last = grad.clone();
    last.push(MultiPoly::zero());
    m.push(last);
    poly_matrix_det(&m).scale(&rat_frac(1, 9))
}

/// K = (1/14) times the Jacobian determinant of (f, Delta, C);
/// homogeneous of degree 21.
pub fn build_k(
    f: &MultiPoly<Rational>,
    delta: &MultiPoly<Rational>,
    c: &MultiPoly<Rational>,
) -> MultiPoly<Rational> {
    let m: Vec<Vec<MultiPoly<Rational>>> = (0..3)
        .map(|i| {
            vec![
                f.partial_derivative(i),
                delta.partial_derivative(i),
                c.partial_derivative(i),
            ]
        })
        .collect();
    poly_matrix_det(&m).scale(&rat_frac(1, 14))
}

pub fn build_invariants() -> InvariantRing {
    let f = klein_f();
    let delta = build_delta(&f);
    let c = build_c(&f, &delta);
    let k = build_k(&f, &delta, &c);
    InvariantRing { f, delta, c, k }
}

impl InvariantRing {
    pub fn by_name(&self, name: &str) -> Option<&MultiPoly<Rational>> {
        match name {
            "f" => Some(&self.f),
            "delta" => Some(&self.delta),
            "c" => Some(&self.c),
            "k" => Some(&self.k),
            _ => None,
        }
    }

    /// Expand a monomial f^i Delta^j C^k K^l.
    pub fn expand(&self, e: &GenExp) -> MultiPoly<Rational> {
        let mut out = MultiPoly::constant(rat_int(1));
        let gens = [&self.f, &self.delta, &self.c, &self.k];
        for (g, &p) in gens.iter().zip(e.0.iter()) {
            if p > 0 {
                out = out.mul(&g.pow(p));
            }
        }
        out
    }
}

/// The eight-term right-hand side of the degree-42 relation:
/// C^3 + 1728 D^7 + 1008 C D^4 f - 88 C^2 D f^2 - 60032 D^5 f^3
///   + 1088 C D^2 f^4 + 22016 D^3 f^6 - 256 C f^7 - 2048 D f^9.
pub const SYZYGY_RHS_TERMS: [([u32; 4], i64); 9] = [
    ([0, 0, 3, 0], 1),
    ([0, 7, 0, 0], 1728),
    ([1, 4, 1, 0], 1008),
    ([2, 1, 2, 0], -88),
    ([3, 5, 0, 0], -60032),
    ([4, 2, 1, 0], 1088),
    ([6, 3, 0, 0], 22016),
    ([7, 0, 1, 0], -256),
    ([9, 1, 0, 0], -2048),
];

pub fn syzygy_rhs(inv: &InvariantRing) -> MultiPoly<Rational> {
    syzygy_rhs_with(inv, &SYZYGY_RHS_TERMS)
}

pub fn syzygy_rhs_with(inv: &InvariantRing, terms: &[([u32; 4], i64)]) -> MultiPoly<Rational> {
    let mut acc = MultiPoly::zero();
    for (exp, coeff) in terms {
        let m = inv.expand(&GenExp(*exp)).scale_int(*coeff);
        acc = acc.add(&m);
    }
    acc
}

#[derive(Debug, Serialize)]
pub struct SyzygyReport {
    pub holds: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub residual_terms: usize,
    pub residual_degree: Option<u32>,
}

/// Expand K^2 minus the eight-term right-hand side and test exact zero.
pub fn verify_syzygy(inv: &InvariantRing) -> (SyzygyReport, MultiPoly<Rational>) {
    verify_syzygy_with(inv, &SYZYGY_RHS_TERMS)
}

pub fn verify_syzygy_with(
    inv: &InvariantRing,
    rhs_terms: &[([u32; 4], i64)],
) -> (SyzygyReport, MultiPoly<Rational>) {
    let lhs = inv.k.mul(&inv.k);
    let rhs = syzygy_rhs_with(inv, rhs_terms);
    let residual = lhs.sub(&rhs);
    let report = SyzygyReport {
        holds: residual.is_zero(),
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
        residual_terms: residual.num_terms(),
        residual_degree: residual.degree(),
    };
    (report, residual)
}

// ---------------------------------------------------------------------------
// K as the product of the 21 fixed lines
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, thiserror::Error)]
pub enum FixedLineError {
    #[error("expected 21 involutions, found {0}")]
    WrongInvolutionCount(usize),
    #[error("fixed-line product is not proportional to K")]
    NotProportional,
    #[error("involution has no 2-dimensional (-1)-eigenspace")]
    NoFixedLine,
}

pub struct FixedLinesReport {
    /// canonical line forms, one per involution, sorted deterministically
    pub forms: Vec<[FieldElement; 3]>,
    /// the expanded degree-21 product of the 21 linear forms
    pub product: MultiPoly<FieldElement>,
    /// scalar c with product = c * K
    pub ratio_to_k: FieldElement,
    /// exact divisibility of K by each individual form
    pub each_divides_k: bool,
}

/// For each involution of the group, the linear form cutting its line of
/// fixed points (the annihilator of its (-1)-eigenplane); their product
/// compared against K.
pub fn product_of_fixed_lines(
    group: &MatrixGroup,
    inv: &InvariantRing,
) -> Result<FixedLinesReport, FixedLineError> {
    let field = group.field();
    let one = FieldElement::one(field);
    let involutions: Vec<&Matrix3> = group
        .elements()
        .iter()
        .filter(|m| !m.is_identity() && m.mul(m).is_identity())
        .collect();
    if involutions.len() != 21 {
        return Err(FixedLineError::WrongInvolutionCount(involutions.len()));
    }
    let mut forms: Vec<[FieldElement; 3]> = Vec::with_capacity(21);
    for m in &involutions {
        // line of fixed points = (-1)-eigenplane P = ker(m + I); the
        // form cutting it is the annihilator of P, i.e. the fixed
        // covector of the dual action: kernel of (m - I)^T
        let shifted = m.sub(&Matrix3::identity(field)).transpose();
        let kernel = shifted.kernel();
        if kernel.len() != 1 {
            return Err(FixedLineError::NoFixedLine);
        }
        let v = kernel.into_iter().next().unwrap();
        forms.push(canonical_vector(v));
    }
    forms.sort_by(|a, b| {
        a[0].cmp_key(&b[0])
            .then_with(|| a[1].cmp_key(&b[1]))
            .then_with(|| a[2].cmp_key(&b[2]))
    });
    let mut product = MultiPoly::constant(one.clone());
    for form in &forms {
        let line = MultiPoly::from_terms([
            ([1, 0, 0], form[0].clone()),
            ([0, 1, 0], form[1].clone()),
            ([0, 0, 1], form[2].clone()),
        ]);
        product = product.mul(&line);
    }
    let k_lifted = inv.k.lift(field);
    let (lead_exp, lead_prod) = product.leading_term().expect("product nonzero");
    let lead_k = k_lifted
        .coeff(lead_exp)
        .ok_or(FixedLineError::NotProportional)?;
    let ratio = lead_prod
        .div(lead_k)
        .ok_or(FixedLineError::NotProportional)?;
    if product != k_lifted.scale(&ratio) {
        return Err(FixedLineError::NotProportional);
    }
    let each_divides_k = forms.iter().all(|form| {
        let line = MultiPoly::from_terms([
            ([1, 0, 0], form[0].clone()),
            ([0, 1, 0], form[1].clone()),
            ([0, 0, 1], form[2].clone()),
        ]);
        k_lifted.exact_div(&line).is_some()
    });
    Ok(FixedLinesReport {
        forms,
        product,
        ratio_to_k: ratio,
        each_divides_k,
    })
}

/// Scale a vector so its first nonzero coordinate is 1.
pub fn canonical_vector(v: [FieldElement; 3]) -> [FieldElement; 3] {
    let pivot = v
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero vector")
        .clone();
    let inv = pivot.inv().expect("invertible pivot");
    [v[0].mul(&inv), v[1].mul(&inv), v[2].mul(&inv)]
}

// ---------------------------------------------------------------------------
// psi_min enumeration
// ---------------------------------------------------------------------------

/// One family of minimal forms: all generator monomials of one degree,
/// combined with free parameters when the degree supports several.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiFamily {
    pub degree: u32,
    pub members: Vec<GenExp>,
}

impl PsiFamily {
    /// Human-readable pencil description, e.g.
    /// "lambda f^3 + mu Delta^2".
    pub fn describe(&self) -> String {
        if self.members.len() == 1 {
            return format!("{}", self.members[0]);
        }
        let params = ["lambda", "mu", "nu", "rho"];
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{} {}", params.get(i).unwrap_or(&"c"), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All monomials f^i Delta^j C^k K^l (l in {0,1}) of weighted degree at
/// most `d_max`, grouped into one family per degree; when a degree
/// modulus is given (3 for the order-504 extension, whose minimal forms
/// must have trivial character), only degrees divisible by it survive.
pub fn enumerate_psi_min(d_max: u32, degree_modulus: Option<u32>) -> Vec<PsiFamily> {
    let weights = [4u32, 6, 14, 21];
    let mut by_degree: std::collections::BTreeMap<u32, Vec<GenExp>> = Default::default();
    for l in 0..=1u32 {
        for k in 0..=d_max / 14 {
            for j in 0..=d_max / 6 {
                for i in 0..=d_max / 4 {
                    let e = GenExp([i, j, k, l]);
                    let d = e.weighted_degree(weights);
                    if d == 0 || d > d_max {
                        continue;
                    }
                    if let Some(m) = degree_modulus {
                        if d % m != 0 {
                            continue;
                        }
                    }
                    by_degree.entry(d).or_default().push(e);
                }
            }
        }
    }
    by_degree
        .into_iter()
        .map(|(degree, mut members)| {
            members.sort();
            members.reverse(); // f-powers first, matching the classical lists
            PsiFamily { degree, members }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{fixture_j168, klein_generators};

    #[test]
    fn f_basics() {
        let f = klein_f();
        assert_eq!(f.homogeneous_degree(), Some(4));
        assert_eq!(f.num_terms(), 3);
        // f(1, 0, 0) = 0: every monomial contains two distinct variables
        let field = crate::arith::CyclotomicField::new(84).unwrap();
        let one = FieldElement::one(&field);
        let zero = FieldElement::zero(&field);
        let v = f
            .lift(&field)
            .eval_point(&[one.clone(), zero.clone(), zero.clone()]);
        assert!(v.is_zero());
    }

    #[test]
    fn partial_derivative_of_f() {
        // d f / d y1 = 3 y1^2 y3 + y2^3
        let f = klein_f();
        let expected = MultiPoly::from_terms([
            ([2, 0, 1], rat_int(3)),
            ([0, 3, 0], rat_int(1)),
        ]);
        assert_eq!(f.partial_derivative(0), expected);
    }

    #[test]
    fn f_squared_has_six_terms() {
        // squaring the 3-term quartic: 3 squares + 3 cross terms
        let f = klein_f();
        let sq = f.mul(&f);
        assert_eq!(sq.homogeneous_degree(), Some(8));
        assert_eq!(sq.num_terms(), 6);
    }

    #[test]
    fn invariant_degrees() {
        let inv = build_invariants();
        assert_eq!(inv.f.homogeneous_degree(), Some(4));
        assert_eq!(inv.delta.homogeneous_degree(), Some(6));
        assert_eq!(inv.c.homogeneous_degree(), Some(14));
        assert_eq!(inv.k.homogeneous_degree(), Some(21));
    }

    #[test]
    fn invariance_under_generators() {
        let inv = build_invariants();
        let field = crate::arith::CyclotomicField::new(84).unwrap();
        let (tau, chi, omega) = klein_generators(&field);
        for p in [&inv.f, &inv.delta, &inv.c, &inv.k] {
            let lifted = p.lift(&field);
            for m in [&tau, &chi, &omega] {
                assert_eq!(lifted.linear_substitution(m), lifted);
            }
        }
    }

    #[test]
    fn syzygy_holds_exactly() {
        let inv = build_invariants();
        let (report, residual) = verify_syzygy(&inv);
        assert!(report.holds, "residual: {} terms", residual.num_terms());
    }

    #[test]
    fn syzygy_fault_detected() {
        // perturbing the 1728 must produce a nonzero degree-42 residual
        let inv = build_invariants();
        let mut terms = SYZYGY_RHS_TERMS;
        terms[1].1 = 1729;
        let (report, residual) = verify_syzygy_with(&inv, &terms);
        assert!(!report.holds);
        assert_eq!(residual.homogeneous_degree(), Some(42));
    }

    #[test]
    fn both_sides_homogeneous_42() {
        let inv = build_invariants();
        assert_eq!(inv.k.mul(&inv.k).homogeneous_degree(), Some(42));
        assert_eq!(syzygy_rhs(&inv).homogeneous_degree(), Some(42));
    }

    #[test]
    fn psi_min_lists() {
        let families = enumerate_psi_min(18, None);
        let degrees: Vec<u32> = families.iter().map(|f| f.degree).collect();
        assert_eq!(degrees, vec![4, 6, 8, 10, 12, 14, 16, 18]);
        let by_deg = |d: u32| {
            families
                .iter()
                .find(|f| f.degree == d)
                .unwrap()
                .members
                .clone()
        };
        assert_eq!(by_deg(4), vec![GenExp([1, 0, 0, 0])]);
        assert_eq!(by_deg(12), vec![GenExp([3, 0, 0, 0]), GenExp([0, 2, 0, 0])]);
        assert_eq!(by_deg(14), vec![GenExp([2, 1, 0, 0]), GenExp([0, 0, 1, 0])]);
        assert_eq!(
            by_deg(18),
            vec![
                GenExp([3, 1, 0, 0]),
                GenExp([1, 0, 1, 0]),
                GenExp([0, 3, 0, 0])
            ]
        );
        // the order-504 sublist keeps degrees divisible by 3
        let filtered = enumerate_psi_min(18, Some(3));
        let degrees: Vec<u32> = filtered.iter().map(|f| f.degree).collect();
        assert_eq!(degrees, vec![6, 12, 18]);
        // a low cutoff leaves only f
        let low = enumerate_psi_min(5, None);
        assert_eq!(low.len(), 1);
        assert_eq!(low[0].members, vec![GenExp([1, 0, 0, 0])]);
    }

    #[test]
    fn k_is_product_of_fixed_lines() {
        let g = fixture_j168().unwrap();
        let inv = build_invariants();
        let report = product_of_fixed_lines(&g, &inv).unwrap();
        assert_eq!(report.forms.len(), 21);
        assert!(!report.ratio_to_k.is_zero());
        assert!(report.each_divides_k);
        assert_eq!(report.product.homogeneous_degree(), Some(21));
    }
}

//! Finite matrix groups: breadth-first closure from generators, element
//! words, collineation quotients, conjugacy classes, a simplicity
//! certificate, and the built-in fixtures (the order-168 simple group,
//! its order-504 central extension, an icosahedral group, and a diagonal
//! cyclic counterexample).

use std::collections::HashMap;

use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};

use crate::arith::{CyclotomicField, FieldElement, FieldRef, Matrix3};
use crate::ring::rat_frac;

/// Default safety bound on closure size; the target groups have at most
/// 504 elements, so exceeding this signals a corrupted fixture.
pub const CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GroupError {
    #[error("closure exceeded the bound of {0} elements")]
    ClosureBound(usize),
    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("group order {actual} does not match expected {expected}")]
    OrderMismatch { actual: usize, expected: usize },
    #[error("{0}")]
    BadFixture(String),
}

/// A finite group of 3x3 matrices over a cyclotomic field, closed under
/// multiplication, with one generator word recorded per element.
pub struct MatrixGroup {
    id: String,
    field: FieldRef,
    generators: Vec<Matrix3>,
    elements: Vec<Matrix3>,
    /// index of each element's canonical form
    index: HashMap<Matrix3, usize>,
    /// generator indices multiplying left-to-right to the element
    words: Vec<Vec<usize>>,
    collineation: OnceCell<Collineation>,
}

/// The image of the group in the projective linear group, realized
/// concretely: matrices identified when one is a scalar multiple of the
/// other, represented canonically by scaling the first nonzero entry
/// (row-major) to 1.
pub struct Collineation {
    /// canonical representatives, one per collineation
    pub reps: Vec<Matrix3>,
    /// for each collineation, the index of one matrix element mapping
    /// to it (that element has the group's exact eigenvalue structure)
    pub element_reps: Vec<usize>,
    /// order of the scalar subgroup G intersect C*
    pub scalar_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyData {
    /// (class size) per class, identity class first, then ascending size
    /// with deterministic tie-breaking; representatives kept separately.
    pub class_sizes: Vec<usize>,
    /// order of the center of the matrix group
    pub center_order: usize,
}

/// Outcome of the simplicity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Simplicity {
    Simple,
    NotSimple {
        witness_order: usize,
        witness: String,
    },
}

impl MatrixGroup {
    /// Breadth-first closure of the generators under multiplication.
    pub fn closure(id: &str, gens: Vec<Matrix3>, bound: usize) -> Result<MatrixGroup, GroupError> {
        assert!(!gens.is_empty(), "need at least one generator");
        let field = gens[0].field().clone();
        for (i, g) in gens.iter().enumerate() {
            if g.det().is_zero() {
                return Err(GroupError::SingularGenerator(i));
            }
        }
        let identity = Matrix3::identity(&field);
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for (gi, g) in gens.iter().enumerate() {
                let prod = current.mul(g);
                if !index.contains_key(&prod) {
                    if elements.len() >= bound {
                        return Err(GroupError::ClosureBound(bound));
                    }
                    let mut w = words[frontier].clone();
                    w.push(gi);
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                    words.push(w);
                }
            }
            frontier += 1;
        }
        Ok(MatrixGroup {
            id: id.to_string(),
            field,
            generators: gens,
            elements,
            index,
            words,
            collineation: OnceCell::new(),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix3] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix3] {
        &self.generators
    }

    pub fn word(&self, elem: usize) -> &[usize] {
        &self.words[elem]
    }

    pub fn contains(&self, m: &Matrix3) -> bool {
        self.index.contains_key(m)
    }

    pub fn element_index(&self, m: &Matrix3) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Indices of the scalar matrices in the group.
    pub fn scalar_elements(&self) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let c = m.entry(0, 0);
                !c.is_zero() && **m == Matrix3::scalar(c)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, m)| self.generators.iter().all(|g| m.mul(g) == g.mul(m)))
            .map(|(i, _)| i)
            .collect()
    }

    /// The collineation quotient, computed once and cached.
    pub fn collineation(&self) -> &Collineation {
        self.collineation.get_or_init(|| {
            let mut seen: HashMap<Matrix3, usize> = HashMap::new();
            let mut reps = Vec::new();
            let mut element_reps = Vec::new();
            for (i, m) in self.elements.iter().enumerate() {
                let canon = m.canonical_projective();
                if !seen.contains_key(&canon) {
                    seen.insert(canon.clone(), reps.len());
                    reps.push(canon);
                    element_reps.push(i);
                }
            }
            let scalar_order = self.scalar_elements().len();
            Collineation {
                reps,
                element_reps,
                scalar_order,
            }
        })
    }

    /// Conjugacy classes of the collineation image (brute-force
    /// conjugation), plus the matrix-group center order.
    pub fn conjugacy_classes(&self) -> ConjugacyData {
        let col = self.collineation();
        let mut index: HashMap<Matrix3, usize> = HashMap::new();
        for (i, r) in col.reps.iter().enumerate() {
            index.insert(r.clone(), i);
        }
        let inverses: Vec<Matrix3> = col
            .reps
            .iter()
            .map(|r| r.inverse().expect("group element invertible"))
            .collect();
        let n = col.reps.len();
        let mut assigned = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if assigned[start] != usize::MAX {
                continue;
            }
            let cls_id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let conj = inverses[g]
                    .mul(&col.reps[start])
                    .mul(&col.reps[g])
                    .canonical_projective();
                let j = *index.get(&conj).expect("conjugate stays in the group");
                if assigned[j] == usize::MAX {
                    assigned[j] = cls_id;
                    members.push(j);
                }
            }
            classes.push(members);
        }
        let mut class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        // identity's class is the one containing rep index of identity
        let id_rep = Matrix3::identity(&self.field).canonical_projective();
        let id_class = assigned[*index.get(&id_rep).unwrap()];
        class_sizes.swap(0, id_class);
        class_sizes[1..].sort_unstable();
        ConjugacyData {
            class_sizes,
            center_order: self.center().len(),
        }
    }

    /// Data needed by the class-union subgroup search.
    fn collineation_classes(&self) -> Vec<Vec<Matrix3>> {
        let col = self.collineation();
        let mut index: HashMap<Matrix3, usize> = HashMap::new();
        for (i, r) in col.reps.iter().enumerate() {
            index.insert(r.clone(), i);
        }
        let inverses: Vec<Matrix3> = col.reps.iter().map(|r| r.inverse().unwrap()).collect();
        let n = col.reps.len();
        let mut assigned = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Matrix3>> = Vec::new();
        for start in 0..n {
            if assigned[start] != usize::MAX {
                continue;
            }
            let cls_id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let conj = inverses[g]
                    .mul(&col.reps[start])
                    .mul(&col.reps[g])
                    .canonical_projective();
                let j = *index.get(&conj).unwrap();
                if assigned[j] == usize::MAX {
                    assigned[j] = cls_id;
                    members.push(col.reps[j].clone());
                }
            }
            classes.push(members);
        }
        classes
    }

    /// Simplicity certificate.
    ///
    /// A nontrivial proper center is an immediate witness. Otherwise the
    /// group embeds in its collineation image and we search for a proper
    /// normal subgroup as a union of conjugacy classes containing the
    /// identity class whose total size properly divides the order and
    /// which is closed under multiplication (checked by generating a
    /// subgroup from the union).
    pub fn simplicity_certificate(&self) -> Simplicity {
        let n = self.order();
        if n == 1 {
            return Simplicity::NotSimple {
                witness_order: 1,
                witness: "trivial group".into(),
            };
        }
        let center = self.center();
        if center.len() > 1 && center.len() < n {
            return Simplicity::NotSimple {
                witness_order: center.len(),
                witness: format!("central subgroup of order {}", center.len()),
            };
        }
        if center.len() == n {
            // abelian of order > 1: any element of prime order generates
            // a proper normal subgroup unless the group itself has prime
            // order and equals it; handle via the class search below
            // (every class has size 1).
        }
        let classes = self.collineation_classes();
        let pg_order: usize = classes.iter().map(|c| c.len()).sum();
        let id_rep = Matrix3::identity(&self.field).canonical_projective();
        let id_class = classes
            .iter()
            .position(|c| c.contains(&id_rep))
            .expect("identity class exists");
        let others: Vec<usize> = (0..classes.len()).filter(|&i| i != id_class).collect();
        assert!(
            others.len() < 24,
            "class-subset search needs < 2^24 subsets"
        );
        for mask in 0..(1u32 << others.len()) {
            let mut size = classes[id_class].len();
            let mut union: Vec<Matrix3> = classes[id_class].clone();
            for (bit, &ci) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    size += classes[ci].len();
                    union.extend(classes[ci].iter().cloned());
                }
            }
            if size <= 1 || size >= pg_order || pg_order % size != 0 {
                continue;
            }
            // candidate: is the union already a subgroup?
            if let Ok(sub) = MatrixGroup::closure("candidate", union, size + 1) {
                if sub.order() == size {
                    return Simplicity::NotSimple {
                        witness_order: size,
                        witness: format!(
                            "normal subgroup of order {size} (union of conjugacy classes)"
                        ),
                    };
                }
            }
        }
        Simplicity::Simple
    }

    /// For a certified-simple group: true iff the group's collineation
    /// image cannot map nontrivially to the symmetric group S_p, decided
    /// by Lagrange: a simple group maps injectively or trivially, so a
    /// nontrivial image requires |PG| to divide p!.
    pub fn no_symmetric_image(&self, p: u32) -> Result<bool, String> {
        let n = self.collineation().reps.len();
        if n == 1 {
            return Ok(true);
        }
        if self.simplicity_certificate() != Simplicity::Simple {
            return Err("no_symmetric_image requires a certified simple group".into());
        }
        let mut fact = num_bigint::BigUint::from(1u32);
        for k in 2..=p {
            fact *= k;
        }
        Ok((&fact % num_bigint::BigUint::from(n)) != num_bigint::BigUint::from(0u32))
    }

    /// The dual action on lines: every element replaced by its
    /// inverse-transpose (a group isomorphism, so the element set maps
    /// bijectively and the words carry over).
    pub fn dual_representation(&self) -> MatrixGroup {
        let map = |m: &Matrix3| m.inverse().expect("invertible").transpose();
        let elements: Vec<Matrix3> = self.elements.iter().map(map).collect();
        let mut index = HashMap::new();
        for (i, m) in elements.iter().enumerate() {
            index.insert(m.clone(), i);
        }
        MatrixGroup {
            id: format!("{}-dual", self.id),
            field: self.field.clone(),
            generators: self.generators.iter().map(map).collect(),
            elements,
            index,
            words: self.words.clone(),
            collineation: OnceCell::new(),
        }
    }

    /// Distribution of element orders in the collineation image.
    pub fn collineation_element_orders(&self) -> HashMap<usize, usize> {
        let col = self.collineation();
        let mut counts = HashMap::new();
        for r in &col.reps {
            let ord = projective_order(r, 2 * self.order());
            *counts.entry(ord).or_insert(0) += 1;
        }
        counts
    }
}

/// Order of a matrix as a collineation: least k with m^k scalar.
pub fn projective_order(m: &Matrix3, bound: usize) -> usize {
    let mut p = m.clone();
    for k in 1..=bound {
        let c = p.entry(0, 0);
        if !c.is_zero() && p == Matrix3::scalar(c) {
            return k;
        }
        p = p.mul(m);
    }
    panic!("projective order exceeds bound {bound}");
}

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

/// Conductor used for the two built-in Klein-type fixtures: Q(zeta_84)
/// contains zeta_7, zeta_3, i and (through the quadratic Gauss sum) the
/// square root of -7, hence every eigenvalue of every group element.
pub const KLEIN_CONDUCTOR: u32 = 84;

/// zeta_7 inside Q(zeta_84).
fn eps(field: &FieldRef, k: i64) -> FieldElement {
    let step = (field.conductor() / 7) as i64;
    FieldElement::root_of_unity(field, step * k)
}

/// The quadratic Gauss sum over the seventh roots of unity:
/// g = z + z^2 + z^4 - z^3 - z^5 - z^6, which satisfies g^2 = -7.
pub fn gauss_sum_7(field: &FieldRef) -> FieldElement {
    let mut g = FieldElement::zero(field);
    for k in [1, 2, 4] {
        g = g.add(&eps(field, k));
    }
    for k in [3, 5, 6] {
        g = g.sub(&eps(field, k));
    }
    g
}

/// Generators tau, chi, omega of the order-168 group, of orders 7, 3, 2.
///
/// tau = diag(e, e^2, e^4) with e = zeta_7; chi cyclically permutes the
/// coordinates; omega is the symmetric involution with entries
///   alpha = g (z^4 - z^3) / 7,
///   beta  = g (z^2 - z^5) / 7,
///   gamma = g (z   - z^6) / 7,
/// where g is the Gauss sum above. These algebraic forms equal the real
/// values -2 sin(8 pi/7)/sqrt 7, -2 sin(4 pi/7)/sqrt 7, -2 sin(2 pi/7)/sqrt 7
/// (checked by `validate_omega`, the one floating-point oracle in the
/// crate, alongside the exact checks omega^2 = I, omega = omega^T,
/// det omega = 1).
pub fn klein_generators(field: &FieldRef) -> (Matrix3, Matrix3, Matrix3) {
    let tau = Matrix3::diagonal([eps(field, 1), eps(field, 2), eps(field, 4)]);
    let chi = Matrix3::from_rational_rows(field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    let g = gauss_sum_7(field);
    let seventh = rat_frac(1, 7);
    let entry = |a: i64, b: i64| g.mul(&eps(field, a).sub(&eps(field, b))).scale(&seventh);
    let alpha = entry(4, 3);
    let beta = entry(2, 5);
    let gamma = entry(1, 6);
    let omega = Matrix3::new([
        [alpha.clone(), beta.clone(), gamma.clone()],
        [beta.clone(), gamma.clone(), alpha.clone()],
        [gamma, alpha, beta],
    ]);
    (tau, chi, omega)
}

/// Structural and floating-point validation of the omega entries.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaValidation {
    pub involution: bool,
    pub symmetric: bool,
    pub det_one: bool,
    pub max_float_error: f64,
}

impl OmegaValidation {
    pub fn ok(&self) -> bool {
        self.involution && self.symmetric && self.det_one && self.max_float_error < 1e-12
    }
}

pub fn validate_omega(field: &FieldRef) -> OmegaValidation {
    let (_, _, omega) = klein_generators(field);
    let involution = omega.mul(&omega).is_identity();
    let symmetric = omega == omega.transpose();
    let det_one = omega.det() == FieldElement::one(field);
    // the trigonometric definitions
    let sqrt7 = 7f64.sqrt();
    let pi = std::f64::consts::PI;
    let expected = [
        -2.0 * (8.0 * pi / 7.0).sin() / sqrt7,
        -2.0 * (4.0 * pi / 7.0).sin() / sqrt7,
        -2.0 * (2.0 * pi / 7.0).sin() / sqrt7,
    ];
    let got = [
        omega.entry(0, 0).to_complex_f64(),
        omega.entry(0, 1).to_complex_f64(),
        omega.entry(0, 2).to_complex_f64(),
    ];
    let mut max_err: f64 = 0.0;
    for (g, e) in got.iter().zip(expected.iter()) {
        max_err = max_err.max((g.0 - e).abs()).max(g.1.abs());
    }
    OmegaValidation {
        involution,
        symmetric,
        det_one,
        max_float_error: max_err,
    }
}

/// The simple group of order 168 in its three-dimensional representation.
pub fn fixture_j168() -> Result<MatrixGroup, GroupError> {
    let field = CyclotomicField::new(KLEIN_CONDUCTOR).map_err(GroupError::BadFixture)?;
    let (tau, chi, omega) = klein_generators(&field);
    let g = MatrixGroup::closure("j168", vec![tau, chi, omega], CLOSURE_BOUND)?;
    if g.order() != 168 {
        return Err(GroupError::OrderMismatch {
            actual: g.order(),
            expected: 168,
        });
    }
    Ok(g)
}

/// The central extension of order 504: the order-168 group together with
/// the scalar matrix of the primitive cube root of unity.
pub fn fixture_j504() -> Result<MatrixGroup, GroupError> {
    let field = CyclotomicField::new(KLEIN_CONDUCTOR).map_err(GroupError::BadFixture)?;
    let (tau, chi, omega) = klein_generators(&field);
    let z3 = FieldElement::root_of_unity(&field, (KLEIN_CONDUCTOR / 3) as i64);
    let scalar = Matrix3::scalar(&z3);
    let g = MatrixGroup::closure("j504", vec![tau, chi, omega, scalar], CLOSURE_BOUND)?;
    if g.order() != 504 {
        return Err(GroupError::OrderMismatch {
            actual: g.order(),
            expected: 504,
        });
    }
    Ok(g)
}

/// Counterexample fixture: the diagonal cyclic group generated by
/// diag(z7, z7^2, z7^4). It is reducible, so it has a degree-1
/// semiinvariant and its quotient is not exceptional.
pub fn fixture_diagonal_cyclic() -> Result<MatrixGroup, GroupError> {
    let field = CyclotomicField::new(KLEIN_CONDUCTOR).map_err(GroupError::BadFixture)?;
    let tau = Matrix3::diagonal([eps(&field, 1), eps(&field, 2), eps(&field, 4)]);
    MatrixGroup::closure("diagonal-cyclic", vec![tau], CLOSURE_BOUND)
}

/// The icosahedral rotation group of order 60 over Q(zeta_60)
/// (classical generators; it has an invariant of degree 2).
pub fn fixture_icosahedral() -> Result<MatrixGroup, GroupError> {
    let field = CyclotomicField::new(60).map_err(GroupError::BadFixture)?;
    let e5 = |k: i64| FieldElement::root_of_unity(&field, 12 * k);
    let one = FieldElement::one(&field);
    let zero = FieldElement::zero(&field);
    let e1 = Matrix3::diagonal([one.clone(), e5(1), e5(4)]);
    let e2 = Matrix3::from_rational_rows(&field, [[-1, 0, 0], [0, 0, -1], [0, -1, 0]]);
    // sqrt 5 = z5 - z5^2 - z5^3 + z5^4; s = z5^2 + z5^3, t = z5 + z5^4
    let sqrt5 = e5(1).sub(&e5(2)).sub(&e5(3)).add(&e5(4));
    let inv_sqrt5 = sqrt5.inv().expect("sqrt 5 nonzero");
    let s = e5(2).add(&e5(3));
    let t = e5(1).add(&e5(4));
    let two = FieldElement::from_int(&field, 2);
    let e3 = Matrix3::new([
        [one.clone(), one.clone(), one.clone()],
        [two.clone(), s.clone(), t.clone()],
        [two, t, s],
    ])
    .scale(&inv_sqrt5);
    let _ = zero;
    let g = MatrixGroup::closure("icosahedral", vec![e1, e2, e3], CLOSURE_BOUND)?;
    if g.order() != 60 {
        return Err(GroupError::OrderMismatch {
            actual: g.order(),
            expected: 60,
        });
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// fixture files
// ---------------------------------------------------------------------------

/// External group fixture file:
/// {"conductor": n, "generators": [matrix, ...], "expected_order": k}.
#[derive(Clone, Serialize, Deserialize)]
pub struct GroupFixture {
    pub conductor: u32,
    pub generators: Vec<Matrix3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<usize>,
}

impl GroupFixture {
    pub fn from_group(g: &MatrixGroup) -> Self {
        GroupFixture {
            conductor: g.field().conductor(),
            generators: g.generators().to_vec(),
            expected_order: Some(g.order()),
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::BadFixture(format!("read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| GroupError::BadFixture(format!("parse {}: {e}", path.display())))
    }

    pub fn build(&self, id: &str) -> Result<MatrixGroup, GroupError> {
        for g in &self.generators {
            if g.field().conductor() != self.conductor {
                return Err(GroupError::BadFixture(
                    "generator conductor does not match fixture conductor".into(),
                ));
            }
        }
        let g = MatrixGroup::closure(id, self.generators.clone(), CLOSURE_BOUND)?;
        if let Some(exp) = self.expected_order {
            if g.order() != exp {
                return Err(GroupError::OrderMismatch {
                    actual: g.order(),
                    expected: exp,
                });
            }
        }
        Ok(g)
    }

    /// Content digest for cache addressing.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("fixture serializes");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_identity_and_tau() {
        let field = CyclotomicField::new(84).unwrap();
        let id = Matrix3::identity(&field);
        let g = MatrixGroup::closure("triv", vec![id], 10).unwrap();
        assert_eq!(g.order(), 1);
        let cyc = fixture_diagonal_cyclic().unwrap();
        assert_eq!(cyc.order(), 7);
    }

    #[test]
    fn omega_entries_validate() {
        let field = CyclotomicField::new(84).unwrap();
        let v = validate_omega(&field);
        assert!(v.involution, "omega^2 = I");
        assert!(v.symmetric, "omega symmetric");
        assert!(v.det_one, "det omega = 1");
        assert!(v.max_float_error < 1e-12, "err {}", v.max_float_error);
    }

    #[test]
    fn j168_closure() {
        let g = fixture_j168().unwrap();
        assert_eq!(g.order(), 168);
        // all determinants 1
        let one = FieldElement::one(g.field());
        assert!(g.elements().iter().all(|m| m.det() == one));
        // generator orders 7, 3, 2
        let gens = g.generators();
        assert_eq!(gens[0].order(200), Some(7));
        assert_eq!(gens[1].order(200), Some(3));
        assert_eq!(gens[2].order(200), Some(2));
        // scalar subgroup trivial, collineation image is the whole group
        let col = g.collineation();
        assert_eq!(col.scalar_order, 1);
        assert_eq!(col.reps.len(), 168);
    }

    #[test]
    fn j504_closure_and_center() {
        let g = fixture_j504().unwrap();
        assert_eq!(g.order(), 504);
        let one = FieldElement::one(g.field());
        assert!(g.elements().iter().all(|m| m.det() == one));
        assert_eq!(g.scalar_elements().len(), 3);
        assert_eq!(g.center().len(), 3);
        let col = g.collineation();
        assert_eq!(col.scalar_order, 3);
        assert_eq!(col.reps.len(), 168);
    }

    #[test]
    fn conjugacy_classes_of_klein_group() {
        let g = fixture_j168().unwrap();
        let data = g.conjugacy_classes();
        // brute-force conjugation gives sizes {1, 21, 24, 24, 42, 56}
        assert_eq!(data.class_sizes, vec![1, 21, 24, 24, 42, 56]);
        assert_eq!(data.center_order, 1);
        let total: usize = data.class_sizes.iter().sum();
        assert_eq!(total, 168);
        assert!(data.class_sizes.iter().all(|s| 168 % s == 0));
    }

    #[test]
    fn simplicity_certificates() {
        assert_eq!(
            fixture_j168().unwrap().simplicity_certificate(),
            Simplicity::Simple
        );
        match fixture_j504().unwrap().simplicity_certificate() {
            Simplicity::NotSimple { witness_order, .. } => assert_eq!(witness_order, 3),
            s => panic!("expected not simple, got {s:?}"),
        }
        // cyclic of order 7 is simple (prime order)...
        assert_eq!(
            fixture_diagonal_cyclic().unwrap().simplicity_certificate(),
            Simplicity::Simple
        );
        // ...but a cyclic group of order 4 is not
        let field = CyclotomicField::new(84).unwrap();
        let i = FieldElement::root_of_unity(&field, 21);
        let m = Matrix3::diagonal([i.clone(), i.inv().unwrap(), FieldElement::one(&field)]);
        let c4 = MatrixGroup::closure("c4", vec![m], 10).unwrap();
        match c4.simplicity_certificate() {
            Simplicity::NotSimple { witness_order, .. } => assert_eq!(witness_order, 2),
            s => panic!("expected not simple, got {s:?}"),
        }
    }

    #[test]
    fn extension_collineation_image_matches_base_group() {
        // the order-504 extension has scalar subgroup of order 3 and its
        // collineation image coincides with the base group's, as sets of
        // canonical representatives
        let g168 = fixture_j168().unwrap();
        let g504 = fixture_j504().unwrap();
        assert_eq!(g504.scalar_elements().len(), 3);
        let reps168: std::collections::HashSet<&Matrix3> =
            g168.collineation().reps.iter().collect();
        let reps504: std::collections::HashSet<&Matrix3> =
            g504.collineation().reps.iter().collect();
        assert_eq!(reps168, reps504);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        let cyc = fixture_diagonal_cyclic().unwrap();
        let data = cyc.conjugacy_classes();
        assert_eq!(data.class_sizes, vec![1; 7]);
        assert_eq!(data.center_order, 7);
    }

    #[test]
    fn symmetric_image_test() {
        let g = fixture_j168().unwrap();
        // 168 does not divide 720 = 6!
        assert!(g.no_symmetric_image(6).unwrap());
        for p in 2..=6 {
            assert!(g.no_symmetric_image(p).unwrap(), "p = {p}");
        }
        // 168 divides 5040 = 7!, so the test is inconclusive: false
        assert!(!g.no_symmetric_image(7).unwrap());
        // the trivial group maps trivially everywhere: vacuously true
        let field = CyclotomicField::new(84).unwrap();
        let triv =
            MatrixGroup::closure("triv", vec![Matrix3::identity(&field)], 4).unwrap();
        assert!(triv.no_symmetric_image(2).unwrap());
    }

    #[test]
    fn dual_representation_properties() {
        let g = fixture_j168().unwrap();
        let dual = g.dual_representation();
        assert_eq!(dual.order(), 168);
        // dual of dual gives back the same element set
        let dd = dual.dual_representation();
        assert!(g.elements().iter().all(|m| dd.contains(m)));
        // orthogonal matrices are fixed by inverse-transpose
        let field = g.field();
        let chi = Matrix3::from_rational_rows(field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let inv_t = chi.inverse().unwrap().transpose();
        assert_eq!(chi, inv_t);
    }

    #[test]
    fn element_orders_in_collineation_image() {
        let g = fixture_j168().unwrap();
        let orders = g.collineation_element_orders();
        let mut keys: Vec<usize> = orders.keys().copied().collect();
        keys.sort_unstable();
        assert_eq!(keys, vec![1, 2, 3, 4, 7]);
        // 21 involutions feed the fixed-line count downstream
        assert_eq!(orders[&2], 21);
        assert_eq!(orders[&3], 56);
        assert_eq!(orders[&4], 42);
        assert_eq!(orders[&7], 48);
    }

    #[test]
    fn icosahedral_fixture_closes_at_60() {
        let g = fixture_icosahedral().unwrap();
        assert_eq!(g.order(), 60);
        let one = FieldElement::one(g.field());
        assert!(g.elements().iter().all(|m| m.det() == one));
    }

    #[test]
    fn closure_idempotent_and_bounded() {
        let g = fixture_j168().unwrap();
        let again = MatrixGroup::closure("again", g.elements().to_vec(), CLOSURE_BOUND).unwrap();
        assert_eq!(again.order(), g.order());
        let err = MatrixGroup::closure("bounded", g.generators().to_vec(), 50);
        assert!(matches!(err, Err(GroupError::ClosureBound(50))));
    }

    #[test]
    fn fixture_round_trip_and_digest() {
        let g = fixture_j168().unwrap();
        let fx = GroupFixture::from_group(&g);
        let json = serde_json::to_string(&fx).unwrap();
        let back: GroupFixture = serde_json::from_str(&json).unwrap();
        let rebuilt = back.build("j168").unwrap();
        assert_eq!(rebuilt.order(), 168);
        assert_eq!(fx.digest(), back.digest());
    }
}

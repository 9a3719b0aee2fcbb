//! Fixed loci of group elements on the projective plane, the census of
//! special orbits (points with nontrivial stabilizer) with stabilizer
//! orders, and minimal-orbit-length queries on the primal and dual
//! planes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{FieldElement, FieldRef, Matrix3, Vector3};
use crate::group::MatrixGroup;
use crate::invariants::canonical_vector;
use crate::poly::MultiPoly;

#[derive(Debug, Clone, thiserror::Error)]
pub enum OrbitError {
    #[error("eigenvalue of a group element not found among the roots of unity of the field (wrong conductor?)")]
    EigenvalueNotInField,
    #[error("no generic point found on a fixed line after {0} attempts")]
    NoGenericLinePoint(usize),
}

/// A point of the projective plane in canonical form (first nonzero
/// coordinate scaled to 1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> ProjPoint {
        assert!(
            coords.iter().any(|c| !c.is_zero()),
            "projective point needs a nonzero coordinate"
        );
        ProjPoint {
            coords: canonical_vector(coords),
        }
    }

    pub fn from_ints(field: &FieldRef, v: [i64; 3]) -> ProjPoint {
        ProjPoint::new(v.map(|n| FieldElement::from_int(field, n)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn apply(&self, m: &Matrix3) -> ProjPoint {
        ProjPoint::new(m.apply(&self.coords))
    }

    /// Projective equality of a raw (non-canonical) image with self,
    /// decided by vanishing 2x2 minors; avoids any field inversion.
    pub fn equals_raw(&self, raw: &Vector3) -> bool {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let m = self.coords[i]
                    .mul(&raw[j])
                    .sub(&self.coords[j].mul(&raw[i]));
                if !m.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn sort_key(&self) -> (usize, Vec<(num_bigint::BigInt, Vec<num_bigint::BigInt>)>) {
        // position of the leading 1 first, then raw integer data
        let lead = self.coords.iter().position(|c| !c.is_zero()).unwrap();
        let data = self
            .coords
            .iter()
            .map(|c| {
                let coords = c.coords();
                let den = coords
                    .first()
                    .map(|r| r.denom().clone())
                    .unwrap_or_default();
                let _ = den;
                let mut common = num_bigint::BigInt::from(1);
                for r in &coords {
                    common = num_integer::lcm(common, r.denom().clone());
                }
                (
                    common.clone(),
                    coords
                        .iter()
                        .map(|r| r.numer() * (&common / r.denom()))
                        .collect(),
                )
            })
            .collect();
        (lead, data)
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}
impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// A line in the plane, stored as its canonical dual coordinate vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineForm {
    dual: [FieldElement; 3],
}

impl LineForm {
    pub fn new(dual: [FieldElement; 3]) -> LineForm {
        LineForm {
            dual: canonical_vector(dual),
        }
    }

    pub fn dual_coords(&self) -> &[FieldElement; 3] {
        &self.dual
    }

    pub fn as_poly(&self) -> MultiPoly<FieldElement> {
        MultiPoly::from_terms([
            ([1, 0, 0], self.dual[0].clone()),
            ([0, 1, 0], self.dual[1].clone()),
            ([0, 0, 1], self.dual[2].clone()),
        ])
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut acc = self.dual[0].zero_elem();
        for i in 0..3 {
            acc = acc.add(&self.dual[i].mul(&p.coords()[i]));
        }
        acc.is_zero()
    }

    /// Intersection point of two distinct lines (the cross product of
    /// the dual vectors).
    pub fn intersect(&self, other: &LineForm) -> Option<ProjPoint> {
        let a = &self.dual;
        let b = &other.dual;
        let cross = [
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ];
        if cross.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(ProjPoint::new(cross))
        }
    }

    /// Two independent points spanning the line.
    pub fn span(&self, field: &FieldRef) -> [ProjPoint; 2] {
        let zero = FieldElement::zero(field);
        let row = Matrix3::new([
            self.dual.clone(),
            [zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone()],
        ]);
        let kernel = row.kernel();
        assert_eq!(kernel.len(), 2, "line has a 2-dimensional span");
        let mut it = kernel.into_iter();
        [
            ProjPoint::new(it.next().unwrap()),
            ProjPoint::new(it.next().unwrap()),
        ]
    }
}

impl std::fmt::Debug for LineForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.dual[0], self.dual[1], self.dual[2]
        )
    }
}

/// The fixed locus of one group element.
#[derive(Debug)]
pub struct FixedLocus {
    /// scalar (projectively trivial) action: every point is fixed
    pub whole_plane: bool,
    pub isolated: Vec<ProjPoint>,
    pub lines: Vec<LineForm>,
}

/// Eigenstructure of a finite-order matrix: eigenvalues are found by
/// testing every root of unity of the field against the characteristic
/// polynomial; a 1-dimensional eigenspace is an isolated fixed point, a
/// 2-dimensional one a line of fixed points.
pub fn fixed_locus(m: &Matrix3) -> Result<FixedLocus, OrbitError> {
    let field = m.field();
    let n = field.conductor() as i64;
    let [c0, c1, c2] = m.char_poly();
    let mut isolated = Vec::new();
    let mut lines = Vec::new();
    let mut total_dim = 0usize;
    for k in 0..n {
        let lambda = FieldElement::root_of_unity(field, k);
        let val = lambda
            .pow(3)
            .add(&c2.mul(&lambda.pow(2)))
            .add(&c1.mul(&lambda))
            .add(&c0);
        if !val.is_zero() {
            continue;
        }
        let shifted = m.sub(&Matrix3::scalar(&lambda));
        let kernel = shifted.kernel();
        total_dim += kernel.len();
        match kernel.len() {
            1 => isolated.push(ProjPoint::new(kernel.into_iter().next().unwrap())),
            2 => {
                // the eigenplane is pointwise fixed in the projective
                // plane; its annihilator is the fixed covector of the
                // dual action
                let dual_kernel = shifted.transpose().kernel();
                assert_eq!(dual_kernel.len(), 2);
                // line form: annihilator of the 2-dim eigenspace = the
                // 1-dim eigenspace of the transpose for the OTHER route:
                // use the cross product of the two plane spanners
                let mut it = kernel_basis_of(&shifted);
                let v1 = it.remove(0);
                let v2 = it.remove(0);
                let cross = [
                    v1[1].mul(&v2[2]).sub(&v1[2].mul(&v2[1])),
                    v1[2].mul(&v2[0]).sub(&v1[0].mul(&v2[2])),
                    v1[0].mul(&v2[1]).sub(&v1[1].mul(&v2[0])),
                ];
                lines.push(LineForm::new(cross));
            }
            3 => {
                // scalar action: flagged, with no finite locus data
                return Ok(FixedLocus {
                    whole_plane: true,
                    isolated: vec![],
                    lines: vec![],
                });
            }
            _ => {}
        }
        if total_dim == 3 {
            break;
        }
    }
    if total_dim != 3 {
        return Err(OrbitError::EigenvalueNotInField);
    }
    Ok(FixedLocus {
        whole_plane: false,
        isolated,
        lines,
    })
}

fn kernel_basis_of(m: &Matrix3) -> Vec<Vector3> {
    m.kernel()
}

/// A finite orbit of the collineation group on the plane.
#[derive(Clone)]
pub struct Orbit {
    pub representative: ProjPoint,
    pub points: Vec<ProjPoint>,
    pub stabilizer_order: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

impl std::fmt::Debug for Orbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Orbit(len {}, stab {}, rep {:?})",
            self.len(),
            self.stabilizer_order,
            self.representative
        )
    }
}

/// Apply every collineation to the point, canonicalize, deduplicate.
/// The stabilizer order is counted directly and must multiply with the
/// orbit length to the collineation group order.
pub fn orbit_of(p: &ProjPoint, group: &MatrixGroup) -> Orbit {
    let col = group.collineation();
    let mut set: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut stab = 0usize;
    for &ei in &col.element_reps {
        let m = &group.elements()[ei];
        let raw = m.apply(p.coords());
        if p.equals_raw(&raw) {
            stab += 1;
        }
        set.insert(ProjPoint::new(raw));
    }
    let points: Vec<ProjPoint> = set.into_iter().collect();
    assert_eq!(
        points.len() * stab,
        col.reps.len(),
        "orbit-stabilizer mismatch"
    );
    Orbit {
        representative: p.clone(),
        points,
        stabilizer_order: stab,
    }
}

/// The census of special orbits.
pub struct SpecialOrbits {
    /// orbits sorted by (length, representative), one entry per orbit
    pub orbits: Vec<Orbit>,
    /// the distinct fixed lines encountered
    pub lines: Vec<LineForm>,
    /// number of line orbits (under the group action on lines)
    pub line_orbit_count: usize,
}

impl SpecialOrbits {
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    pub fn of_length(&self, len: usize) -> Vec<&Orbit> {
        self.orbits.iter().filter(|o| o.len() == len).collect()
    }

    pub fn min_length(&self) -> usize {
        self.orbits.iter().map(|o| o.len()).min().unwrap_or(0)
    }
}

/// Compute the special orbits of the collineation action:
///
/// * every isolated fixed point of a nonidentity element,
/// * every pairwise intersection of fixed lines,
/// * plus one exactly-representable generic sample point per orbit of
///   fixed lines (line points with no extra symmetry form positive-
///   dimensional families; the sample realizes their orbit length).
///
/// Any point whose stabilizer contains an element with three distinct
/// eigenvalues, or two distinct involutions, is an isolated fixed point
/// or a line intersection respectively, so the finite candidate set
/// covers every special orbit length.
pub fn special_orbits(group: &MatrixGroup) -> Result<SpecialOrbits, OrbitError> {
    let field = group.field();
    let col = group.collineation();
    let identity = Matrix3::identity(field);
    let mut candidates: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut lines: Vec<LineForm> = Vec::new();
    let mut line_set: BTreeSet<Vec<u8>> = BTreeSet::new();
    // fixed loci are independent per element; computed in parallel and
    // merged in the fixed element order
    use rayon::prelude::*;
    let loci: Vec<Option<Result<FixedLocus, OrbitError>>> = col
        .element_reps
        .par_iter()
        .enumerate()
        .map(|(ci, &ei)| {
            if col.reps[ci] == identity.canonical_projective() {
                return None;
            }
            let m = &group.elements()[ei];
            // skip scalars (projective identity)
            let c00 = m.entry(0, 0);
            if !c00.is_zero() && *m == Matrix3::scalar(c00) {
                return None;
            }
            Some(fixed_locus(m))
        })
        .collect();
    for locus in loci.into_iter().flatten() {
        let locus = locus?;
        candidates.extend(locus.isolated);
        for line in locus.lines {
            let key = format!("{line:?}").into_bytes();
            if line_set.insert(key) {
                lines.push(line);
            }
        }
    }
    // pairwise line intersections
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let Some(p) = lines[i].intersect(&lines[j]) {
                candidates.insert(p);
            }
        }
    }
    // orbit decomposition of the finite candidates
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut seen: BTreeSet<ProjPoint> = BTreeSet::new();
    for p in &candidates {
        if seen.contains(p) {
            continue;
        }
        let orbit = orbit_of(p, group);
        seen.extend(orbit.points.iter().cloned());
        orbits.push(orbit);
    }
    // one generic sample per line orbit
    let line_orbit_count = if lines.is_empty() {
        0
    } else {
        let dual = group.dual_representation();
        let mut count = 0usize;
        let mut seen_lines: BTreeSet<ProjPoint> = BTreeSet::new();
        for line in &lines {
            let dual_point = ProjPoint::new(line.dual_coords().clone());
            if seen_lines.contains(&dual_point) {
                continue;
            }
            count += 1;
            let line_orbit = orbit_of(&dual_point, &dual);
            seen_lines.extend(line_orbit.points.iter().cloned());
            // pointwise stabilizer of this line
            let [v1, v2] = line.span(field);
            let v3 = ProjPoint::new([
                v1.coords()[0].add(&v2.coords()[0]),
                v1.coords()[1].add(&v2.coords()[1]),
                v1.coords()[2].add(&v2.coords()[2]),
            ]);
            let pointwise = col
                .element_reps
                .iter()
                .filter(|&&ei| {
                    let m = &group.elements()[ei];
                    [&v1, &v2, &v3]
                        .iter()
                        .all(|p| p.equals_raw(&m.apply(p.coords())))
                })
                .count();
            let expected = col.reps.len() / pointwise;
            // walk v1 + t v2 until a point with exactly the generic
            // stabilizer appears
            let mut found = false;
            for t in 1..=50i64 {
                let tf = FieldElement::from_int(field, t);
                let p = ProjPoint::new([
                    v1.coords()[0].add(&v2.coords()[0].mul(&tf)),
                    v1.coords()[1].add(&v2.coords()[1].mul(&tf)),
                    v1.coords()[2].add(&v2.coords()[2].mul(&tf)),
                ]);
                if seen.contains(&p) {
                    continue;
                }
                let orbit = orbit_of(&p, group);
                if orbit.len() == expected {
                    seen.extend(orbit.points.iter().cloned());
                    orbits.push(orbit);
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(OrbitError::NoGenericLinePoint(50));
            }
        }
        count
    };
    orbits.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.representative.cmp(&b.representative))
    });
    Ok(SpecialOrbits {
        orbits,
        lines,
        line_orbit_count,
    })
}

/// Minimal special-orbit length for the action on the dual plane. A
/// projectively trivial group fixes every line, so its minimum is 1.
pub fn min_orbit_length_dual(group: &MatrixGroup) -> Result<usize, OrbitError> {
    if group.collineation().reps.len() == 1 {
        return Ok(1);
    }
    let dual = group.dual_representation();
    Ok(special_orbits(&dual)?.min_length())
}

/// Position of an orbit relative to a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurvePosition {
    Contained,
    Disjoint,
    Partial,
}

/// Exact evaluation of the curve at every orbit point.
pub fn orbit_on_curve(orbit: &Orbit, p: &MultiPoly<FieldElement>) -> CurvePosition {
    if p.is_zero() {
        return CurvePosition::Contained;
    }
    let mut on = 0usize;
    for q in &orbit.points {
        if p.eval_point(q.coords()).is_zero() {
            on += 1;
        }
    }
    if on == orbit.points.len() {
        CurvePosition::Contained
    } else if on == 0 {
        CurvePosition::Disjoint
    } else {
        CurvePosition::Partial
    }
}

/// Burnside-style consistency on the special locus: the number of
/// (point, nonidentity stabilizing collineation) pairs counted from the
/// orbit data must equal the count from the element side.
pub fn burnside_pair_check(group: &MatrixGroup, orbits: &[Orbit]) -> (usize, usize) {
    let col = group.collineation();
    let lhs: usize = orbits
        .iter()
        .map(|o| o.len() * (o.stabilizer_order - 1))
        .sum();
    let identity = Matrix3::identity(group.field()).canonical_projective();
    let mut rhs = 0usize;
    for (ci, &ei) in col.element_reps.iter().enumerate() {
        if col.reps[ci] == identity {
            continue;
        }
        let m = &group.elements()[ei];
        for o in orbits {
            for p in &o.points {
                if p.equals_raw(&m.apply(p.coords())) {
                    rhs += 1;
                }
            }
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{fixture_j168, klein_generators};
    use crate::ring::rat_int;

    fn j168() -> MatrixGroup {
        fixture_j168().unwrap()
    }

    #[test]
    fn fixed_locus_of_tau_is_three_points() {
        let g = j168();
        let (tau, _, omega) = klein_generators(g.field());
        let locus = fixed_locus(&tau).unwrap();
        assert!(!locus.whole_plane);
        assert_eq!(locus.isolated.len(), 3);
        assert!(locus.lines.is_empty());
        let pts: BTreeSet<ProjPoint> = locus.isolated.into_iter().collect();
        for v in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert!(pts.contains(&ProjPoint::from_ints(g.field(), v)));
        }
        // an involution has one isolated point and one fixed line
        let locus = fixed_locus(&omega).unwrap();
        assert_eq!(locus.isolated.len(), 1);
        assert_eq!(locus.lines.len(), 1);
        // the identity fixes the whole plane, flagged as a special case
        let id = Matrix3::identity(g.field());
        assert!(fixed_locus(&id).unwrap().whole_plane);
    }

    #[test]
    fn orbit_of_distinguished_points() {
        let g = j168();
        let p = ProjPoint::from_ints(g.field(), [1, 0, 0]);
        let orbit = orbit_of(&p, &g);
        assert_eq!(orbit.len(), 24);
        assert_eq!(orbit.stabilizer_order, 7);
        // (1 : z3^2 : z3)
        let field = g.field();
        let z3 = |k: i64| FieldElement::root_of_unity(field, 28 * k);
        let q = ProjPoint::new([FieldElement::one(field), z3(2), z3(1)]);
        let orbit = orbit_of(&q, &g);
        assert_eq!(orbit.len(), 56);
        assert_eq!(orbit.stabilizer_order, 3);
        // trivial group: orbit length 1
        let triv = MatrixGroup::closure("triv", vec![Matrix3::identity(field)], 10).unwrap();
        assert_eq!(orbit_of(&p, &triv).len(), 1);
    }

    #[test]
    fn special_orbit_census() {
        let g = j168();
        let so = special_orbits(&g).unwrap();
        assert_eq!(so.lengths(), vec![21, 24, 28, 42, 56, 84]);
        assert_eq!(so.lines.len(), 21);
        assert_eq!(so.line_orbit_count, 1);
        // uniqueness below 84
        for len in [21, 24, 28, 42, 56] {
            assert_eq!(so.of_length(len).len(), 1, "length {len}");
        }
        // stabilizer of the 21-orbit is 8
        assert_eq!(so.of_length(21)[0].stabilizer_order, 8);
        // orbit-stabilizer products
        for o in &so.orbits {
            assert_eq!(o.len() * o.stabilizer_order, 168);
        }
        // minimal length exceeds 10
        assert!(so.min_length() == 21 && 21 > 10);
        // Burnside pair count agrees
        let (lhs, rhs) = burnside_pair_check(&g, &so.orbits);
        assert_eq!(lhs, rhs);
        // the census is G-stable: a generator permutes each orbit
        let gen = &g.generators()[2];
        for o in &so.orbits {
            for p in o.points.iter().take(5) {
                assert!(o.contains(&p.apply(gen)));
            }
        }
    }

    #[test]
    fn dual_minimal_length() {
        let g = j168();
        assert_eq!(min_orbit_length_dual(&g).unwrap(), 21);
        // self-dual configuration: primal minimum agrees
        assert_eq!(special_orbits(&g).unwrap().min_length(), 21);
        // a projectively trivial group fixes every line
        let field = g.field();
        let triv = MatrixGroup::closure("triv", vec![Matrix3::identity(field)], 4).unwrap();
        assert_eq!(min_orbit_length_dual(&triv).unwrap(), 1);
    }

    #[test]
    fn orbits_against_curves() {
        let g = j168();
        let inv = crate::invariants::build_invariants();
        let f = inv.f.lift(g.field());
        let delta = inv.delta.lift(g.field());
        let so = special_orbits(&g).unwrap();
        let o24 = so.of_length(24)[0];
        let o28 = so.of_length(28)[0];
        assert_eq!(orbit_on_curve(o24, &f), CurvePosition::Contained);
        assert_eq!(orbit_on_curve(o24, &delta), CurvePosition::Contained);
        assert_eq!(orbit_on_curve(o28, &f), CurvePosition::Disjoint);
        // the zero polynomial contains everything
        assert_eq!(
            orbit_on_curve(o24, &MultiPoly::zero()),
            CurvePosition::Contained
        );
        let _ = rat_int(0);
    }
}

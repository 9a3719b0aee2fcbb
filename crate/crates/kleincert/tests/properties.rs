//! Property tests for the algebraic kernels: field axioms, canonical
//! forms, calculus identities, the substitution action, and the
//! resultant/gcd correspondence.

use kleincert::arith::{CyclotomicField, FieldElement, FieldRef, Matrix3};
use kleincert::poly::binary::BinaryForm;
use kleincert::poly::resultant::{poly_matrix_det, resultant};
use kleincert::poly::MultiPoly;
use kleincert::ring::{rat_frac, rat_int, Rational};
use proptest::prelude::*;

fn field7() -> FieldRef {
    CyclotomicField::new(7).unwrap()
}

fn field84() -> FieldRef {
    CyclotomicField::new(84).unwrap()
}

prop_compose! {
    /// a small random element of Q(zeta_7)
    fn arb_elt()(coords in prop::collection::vec((-6i64..=6, 1i64..=4), 6)) -> FieldElement {
        let field = field7();
        let coords: Vec<Rational> = coords.into_iter().map(|(n, d)| rat_frac(n, d)).collect();
        FieldElement::from_coords(&field, coords).unwrap()
    }
}

prop_compose! {
    /// a small random polynomial in three variables over Q
    fn arb_poly()(terms in prop::collection::vec(
        ((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 1..6)) -> MultiPoly<Rational> {
        MultiPoly::from_terms(
            terms.into_iter().map(|((a, b, c), n)| ([a, b, c], rat_int(n))),
        )
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in arb_elt(), b in arb_elt(), c in arb_elt()) {
        // associativity and distributivity
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv), FieldElement::one(a.field()));
        }
    }

    #[test]
    fn canonical_form_matches_subtraction(a in arb_elt(), b in arb_elt()) {
        // equality is decidable and agrees with subtraction-to-zero
        prop_assert_eq!(a == b, a.sub(&b).is_zero());
        // reducing twice equals reducing once: a round trip through the
        // coordinate view reproduces the element bit-for-bit
        let again = FieldElement::from_coords(a.field(), a.coords()).unwrap();
        prop_assert_eq!(a, again);
    }

    #[test]
    fn embedding_is_a_ring_map(a in arb_elt(), b in arb_elt()) {
        let big = field84();
        let ea = a.embed(&big).unwrap();
        let eb = b.embed(&big).unwrap();
        prop_assert_eq!(a.add(&b).embed(&big).unwrap(), ea.add(&eb));
        prop_assert_eq!(a.mul(&b).embed(&big).unwrap(), ea.mul(&eb));
    }

    #[test]
    fn mixed_partials_commute(p in arb_poly(), i in 0usize..3, j in 0usize..3) {
        let ij = p.partial_derivative(i).partial_derivative(j);
        let ji = p.partial_derivative(j).partial_derivative(i);
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn euler_identity(p in arb_poly(), d in 1u32..5) {
        // build a homogeneous polynomial of degree d from the sample
        let h: MultiPoly<Rational> = MultiPoly::from_terms(
            p.terms()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| {
                    let mut ne = e.0;
                    ne[0] += d - e.degree();
                    (ne, c.clone())
                }),
        );
        prop_assume!(!h.is_zero());
        let mut acc = MultiPoly::zero();
        for i in 0..3 {
            acc = acc.add(
                &MultiPoly::var(i, rat_int(1)).mul(&h.partial_derivative(i)),
            );
        }
        prop_assert_eq!(acc, h.scale_int(d as i64));
    }

    #[test]
    fn substitution_is_a_right_action(
        p in arb_poly(),
        a_rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3),
        b_rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3),
    ) {
        let field = field84();
        let mk = |rows: &Vec<Vec<i64>>| {
            let mut m = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = rows[i][j];
                }
            }
            Matrix3::from_rational_rows(&field, m)
        };
        let a = mk(&a_rows);
        let b = mk(&b_rows);
        let lifted = p.lift(&field);
        let composed = lifted.linear_substitution(&a.mul(&b));
        let stepwise = lifted.linear_substitution(&a).linear_substitution(&b);
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn resultant_detects_common_roots(
        r1 in -3i64..=3, r2 in -3i64..=3, r3 in -3i64..=3,
    ) {
        // p = (x - r1 y)(x - r2 y), q = (x - r3 y) as forms in (y1, y3):
        // the resultant in y1 vanishes iff a root is shared
        let x = MultiPoly::var(0, rat_int(1));
        let y = MultiPoly::var(2, rat_int(1));
        let lin = |r: i64| x.sub(&y.scale_int(r));
        let p = lin(r1).mul(&lin(r2));
        let q = lin(r3);
        let res = resultant(&p, &q, 0).unwrap();
        let shares = r3 == r1 || r3 == r2;
        prop_assert_eq!(res.is_zero(), shares);
        // and the binary-form gcd agrees with the verdict
        let bp = BinaryForm::new(vec![rat_int(r1 * r2), rat_int(-(r1 + r2)), rat_int(1)]);
        let bq = BinaryForm::new(vec![rat_int(-r3), rat_int(1)]);
        let g = bp.gcd(&bq);
        prop_assert_eq!(g.degree() == Some(0), !shares);
    }

    #[test]
    fn small_determinants_expand_correctly(
        d in prop::collection::vec(-4i64..=4, 3),
    ) {
        // diagonal 3x3 polynomial matrices multiply out
        let rows: Vec<Vec<MultiPoly<Rational>>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            MultiPoly::var(i, rat_int(d[i]))
                        } else {
                            MultiPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let det = poly_matrix_det(&rows);
        let expected = MultiPoly::var(0, rat_int(d[0]))
            .mul(&MultiPoly::var(1, rat_int(d[1])))
            .mul(&MultiPoly::var(2, rat_int(d[2])));
        prop_assert_eq!(det, expected);
    }
}

#[test]
fn invariance_extends_to_random_group_elements() {
    // invariance under the generators implies invariance under random
    // elements (spot check of the action property)
    let g = kleincert::group::fixture_j168().unwrap();
    let inv = kleincert::invariants::build_invariants();
    let f = inv.f.lift(g.field());
    for idx in [5usize, 23, 59, 101, 148] {
        let m = &g.elements()[idx % g.order()];
        assert_eq!(f.linear_substitution(m), f);
    }
}

#[test]
fn intersection_multiplicity_is_symmetric() {
    use kleincert::curves::intersection_multiplicity_local;
    let field = field84();
    let one = FieldElement::one(&field);
    let cases: Vec<(MultiPoly<FieldElement>, MultiPoly<FieldElement>)> = vec![
        (
            // y2 and y3
            MultiPoly::var(1, one.clone()),
            MultiPoly::var(2, one.clone()),
        ),
        (
            // cusp vs its tangent direction
            MultiPoly::from_terms([
                ([0, 0, 2], one.clone()),
                ([0, 3, 0], FieldElement::from_int(&field, -1)),
            ]),
            MultiPoly::var(2, one.clone()),
        ),
        (
            // two smooth tangent curves
            MultiPoly::from_terms([([0, 0, 1], one.clone()), ([0, 2, 0], one.clone())]),
            MultiPoly::from_terms([
                ([0, 0, 1], one.clone()),
                ([0, 2, 0], FieldElement::from_int(&field, -1)),
            ]),
        ),
    ];
    for (a, b) in cases {
        let (m1, _) = intersection_multiplicity_local(&a, &b).unwrap();
        let (m2, _) = intersection_multiplicity_local(&b, &a).unwrap();
        assert_eq!(m1, m2);
    }
}

#[test]
fn intersection_bounded_by_multiplicity_product() {
    // I(q; a, b) >= mult(a) mult(b), equality iff the tangent cones
    // share no line
    use kleincert::curves::{intersection_multiplicity_local, local_multiplicity};
    let field = field84();
    let one = FieldElement::one(&field);
    let node = MultiPoly::from_terms([([0, 1, 1], one.clone()), ([0, 3, 0], one.clone())]);
    let cusp = MultiPoly::from_terms([
        ([0, 0, 2], one.clone()),
        ([0, 3, 0], FieldElement::from_int(&field, -1)),
    ]);
    let (i, _) = intersection_multiplicity_local(&node, &cusp).unwrap();
    let ma = local_multiplicity(&node).unwrap().multiplicity;
    let mb = local_multiplicity(&cusp).unwrap().multiplicity;
    assert!(i >= ma * mb);
    // node tangent cone is y2 y3, cusp cone is y3^2: they share the
    // line y3 = 0, so the inequality must be strict
    assert!(i > ma * mb);
    // transversal case: equality
    let line = MultiPoly::var(1, one.clone());
    let (i, _) = intersection_multiplicity_local(&cusp, &line).unwrap();
    assert_eq!(i, 2 * 1);
}

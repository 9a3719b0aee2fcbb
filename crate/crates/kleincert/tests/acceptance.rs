//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All arithmetic is exact; every comparison below is equality,
//! never a tolerance.

use kleincert::arith::{CyclotomicField, FieldElement, Matrix3};
use kleincert::certificate::{
    remark_checks, run_case_analysis, shared_census, shared_group, shared_table, Fault,
    GroupChoice, ObligationStatus, RunOptions, ALL_FAULTS, DEFAULT_SEED,
};
use kleincert::curves::{
    arithmetic_genus_audit, bezout_audit, classify_double_point, genus_orbit_inequality,
    intersection_multiplicity, localize, multiplicity_at, smoothness_certificate, standard_chart,
    DoublePointType, Feasibility, GenusBoundInput, Smoothness,
};
use kleincert::group::{fixture_diagonal_cyclic, GroupFixture, MatrixGroup};
use kleincert::invariants::{
    build_invariants, enumerate_psi_min, scan_semiinvariants, verify_syzygy, Character,
};
use kleincert::orbits::{orbit_of, Orbit, ProjPoint};
use kleincert::poly::gens::GenExp;
use kleincert::poly::param::ParamPoly;
use kleincert::poly::MultiPoly;
use kleincert::ring::Rational;

struct Criterion {
    number: u32,
    label: &'static str,
}

impl Criterion {
    fn start(number: u32, label: &'static str) -> Criterion {
        Criterion { number, label }
    }

    fn pass(self) {
        println!("criterion {:>2}: PASS - {}", self.number, self.label);
    }
}

fn j168() -> &'static MatrixGroup {
    static HOLD: once_cell::sync::Lazy<std::sync::Arc<Result<MatrixGroup, String>>> =
        once_cell::sync::Lazy::new(|| shared_group("j168"));
    HOLD.as_ref().as_ref().expect("j168 builds")
}

fn j504() -> &'static MatrixGroup {
    static HOLD: once_cell::sync::Lazy<std::sync::Arc<Result<MatrixGroup, String>>> =
        once_cell::sync::Lazy::new(|| shared_group("j504"));
    HOLD.as_ref().as_ref().expect("j504 builds")
}

#[test]
fn acceptance_01_group_orders() {
    let c = Criterion::start(
        1,
        "group orders 168 and 504, generator orders 7/3/2, determinants 1",
    );
    let g168 = j168();
    let g504 = j504();
    assert_eq!(g168.order(), 168);
    assert_eq!(g504.order(), 504);
    for g in [g168, g504] {
        let gens = g.generators();
        assert_eq!(gens[0].order(100), Some(7));
        assert_eq!(gens[1].order(100), Some(3));
        assert_eq!(gens[2].order(100), Some(2));
        let one = FieldElement::one(g.field());
        assert!(g.elements().iter().all(|m| m.det() == one));
    }
    c.pass();
}

#[test]
fn acceptance_02_invariant_degrees_and_invariance() {
    let c = Criterion::start(
        2,
        "invariant degrees 4/6/14/21, invariance, extension characters",
    );
    let inv = build_invariants();
    assert_eq!(inv.f.homogeneous_degree(), Some(4));
    assert_eq!(inv.delta.homogeneous_degree(), Some(6));
    assert_eq!(inv.c.homogeneous_degree(), Some(14));
    assert_eq!(inv.k.homogeneous_degree(), Some(21));
    let g = j168();
    let field = g.field();
    for p in [&inv.f, &inv.delta, &inv.c, &inv.k] {
        let lifted = p.lift(field);
        for m in g.generators() {
            assert_eq!(lifted.linear_substitution(m), lifted, "invariance");
        }
    }
    // under the order-3 scalar of the extension, a degree-d invariant
    // scales by zeta_3^d; for f that is zeta_3 itself
    let g504 = j504();
    let scalar = &g504.generators()[3];
    let z3 = FieldElement::root_of_unity(field, 28);
    for (p, d) in [(&inv.f, 4u64), (&inv.delta, 6), (&inv.c, 14), (&inv.k, 21)] {
        let lifted = p.lift(field);
        assert_eq!(
            lifted.linear_substitution(scalar),
            lifted.scale(&z3.pow(d)),
            "character at degree {d}"
        );
    }
    c.pass();
}

#[test]
fn acceptance_03_syzygy() {
    let c = Criterion::start(3, "the degree-42 relation has exactly zero residual");
    let inv = build_invariants();
    let (report, residual) = verify_syzygy(&inv);
    assert!(report.holds);
    assert!(residual.is_zero());
    // both sides are honest degree-42 polynomials, not empty artifacts
    assert_eq!(inv.k.mul(&inv.k).homogeneous_degree(), Some(42));
    c.pass();
}

#[test]
fn acceptance_04_semiinvariant_dimensions() {
    let c = Criterion::start(
        4,
        "semiinvariant dimensions by degree, Molien = Reynolds up to 18",
    );
    // no semiinvariants of degree <= 3 for any character, both groups
    assert!(scan_semiinvariants(j168(), 3).is_empty());
    assert!(scan_semiinvariants(j504(), 3).is_empty());
    let table = shared_table("j168");
    let dims: Vec<usize> = table.iter().map(|s| s.basis.len()).collect();
    assert_eq!(
        dims,
        vec![0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3],
        "trivial-character dimensions at degrees 1..=18"
    );
    for s in table.iter() {
        assert!(s.consistent(), "Molien = Reynolds at degree {}", s.degree);
    }
    // spot identification of the named spanning sets
    let inv = build_invariants();
    let field = j168().field();
    let deg = |d: u32| table.iter().find(|s| s.degree == d).unwrap();
    assert!(deg(4).contains(&inv.f.lift(field)));
    assert!(deg(6).contains(&inv.delta.lift(field)));
    assert!(deg(12).contains(&inv.f.pow(3).lift(field)));
    assert!(deg(12).contains(&inv.delta.pow(2).lift(field)));
    assert!(deg(14).contains(&inv.f.pow(2).mul(&inv.delta).lift(field)));
    assert!(deg(14).contains(&inv.c.lift(field)));
    assert!(deg(18).contains(&inv.delta.pow(3).lift(field)));
    assert!(deg(18).contains(&inv.f.pow(3).mul(&inv.delta).lift(field)));
    assert!(deg(18).contains(&inv.f.mul(&inv.c).lift(field)));
    let table504 = shared_table("j504");
    for s in table504.iter() {
        assert!(s.consistent(), "extension Molien at degree {}", s.degree);
    }
    let dims504: Vec<usize> = table504.iter().map(|s| s.basis.len()).collect();
    assert_eq!(
        dims504,
        vec![0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 3]
    );
    c.pass();
}

#[test]
fn acceptance_05_psi_min_families() {
    let c = Criterion::start(
        5,
        "minimal-form enumeration matches the classical lists exactly",
    );
    let fams = enumerate_psi_min(18, None);
    let as_pairs: Vec<(u32, Vec<[u32; 4]>)> = fams
        .iter()
        .map(|f| (f.degree, f.members.iter().map(|m| m.0).collect()))
        .collect();
    assert_eq!(
        as_pairs,
        vec![
            (4, vec![[1, 0, 0, 0]]),
            (6, vec![[0, 1, 0, 0]]),
            (8, vec![[2, 0, 0, 0]]),
            (10, vec![[1, 1, 0, 0]]),
            (12, vec![[3, 0, 0, 0], [0, 2, 0, 0]]),
            (14, vec![[2, 1, 0, 0], [0, 0, 1, 0]]),
            (16, vec![[4, 0, 0, 0], [1, 2, 0, 0]]),
            (18, vec![[3, 1, 0, 0], [1, 0, 1, 0], [0, 3, 0, 0]]),
        ],
        "eight families for the simple group"
    );
    let fams504 = enumerate_psi_min(18, Some(3));
    let as_pairs: Vec<(u32, Vec<[u32; 4]>)> = fams504
        .iter()
        .map(|f| (f.degree, f.members.iter().map(|m| m.0).collect()))
        .collect();
    assert_eq!(
        as_pairs,
        vec![
            (6, vec![[0, 1, 0, 0]]),
            (12, vec![[3, 0, 0, 0], [0, 2, 0, 0]]),
            (18, vec![[3, 1, 0, 0], [1, 0, 1, 0], [0, 3, 0, 0]]),
        ],
        "degree-divisible-by-3 sublist for the extension"
    );
    // the families really span the matching semiinvariant spaces
    let inv = build_invariants();
    let field = j168().field();
    let table = shared_table("j168");
    for fam in &fams {
        let space = table.iter().find(|s| s.degree == fam.degree).unwrap();
        assert_eq!(
            space.basis.len(),
            fam.members.len(),
            "degree {}",
            fam.degree
        );
        for m in &fam.members {
            assert!(space.contains(&inv.expand(m).lift(field)));
        }
    }
    let _ = GenExp([0, 0, 0, 0]);
    c.pass();
}

#[test]
fn acceptance_06_special_orbits() {
    let c = Criterion::start(
        6,
        "special orbit census: lengths, uniqueness, stabilizers, dual",
    );
    let census_arc = shared_census("j168");
    let census = census_arc.as_ref().as_ref().expect("census");
    assert_eq!(census.lengths(), vec![21, 24, 28, 42, 56, 84]);
    for len in [21, 24, 28, 42, 56] {
        assert_eq!(census.of_length(len).len(), 1, "one orbit of length {len}");
    }
    assert_eq!(census.of_length(21)[0].stabilizer_order, 8);
    let g = j168();
    let field = g.field();
    let o24 = orbit_of(&ProjPoint::from_ints(field, [1, 0, 0]), g);
    assert_eq!((o24.len(), o24.stabilizer_order), (24, 7));
    let z3 = |k: i64| FieldElement::root_of_unity(field, 28 * k);
    let o56 = orbit_of(&ProjPoint::new([FieldElement::one(field), z3(2), z3(1)]), g);
    assert_eq!(o56.len(), 56);
    assert_eq!(
        kleincert::orbits::min_orbit_length_dual(g).unwrap(),
        21,
        "minimal length on the dual plane"
    );
    c.pass();
}

#[test]
fn acceptance_07_curve_facts() {
    let c = Criterion::start(
        7,
        "smoothness, nodes, cusps, local indices, Bezout audits, genus budgets",
    );
    let inv = build_invariants();
    let g = j168();
    let field = g.field();
    assert!(matches!(
        smoothness_certificate(&inv.f, DEFAULT_SEED).unwrap(),
        Smoothness::Smooth
    ));
    assert!(matches!(
        smoothness_certificate(&inv.delta, DEFAULT_SEED).unwrap(),
        Smoothness::Smooth
    ));
    let census_arc = shared_census("j168");
    let census = census_arc.as_ref().as_ref().expect("census");
    let o24: &Orbit = census.of_length(24)[0];
    let o56: &Orbit = census.of_length(56)[0];
    // nodes of f * Delta at the 24-orbit
    let fd = inv.f.mul(&inv.delta).lift(field);
    let q = &o24.points[0];
    let (ty, asm) = classify_double_point(&localize(&fd, &standard_chart(q))).unwrap();
    assert_eq!(ty, DoublePointType::Node);
    assert!(asm.is_empty());
    // cusps of the degree-12 pencil with the stated assumptions
    let lam = |p: &MultiPoly<Rational>, i: usize| {
        p.lift(field).map_coeffs(|c| ParamPoly::param(i, c.clone()))
    };
    let pencil12 = lam(&inv.f.pow(3), 0).add(&lam(&inv.delta.pow(2), 1));
    let data = multiplicity_at(&pencil12, q).unwrap();
    assert_eq!(data.multiplicity, 2);
    let (ty, asm) = classify_double_point(&localize(&pencil12, &data.chart)).unwrap();
    assert_eq!(ty, DoublePointType::Cusp);
    let rendered: Vec<String> = asm.iter().map(|a| a.to_string()).collect();
    assert!(rendered.contains(&"lambda != 0".to_string()));
    assert!(rendered.contains(&"mu != 0".to_string()));
    // local indices 2 and 3
    let to_param =
        |p: &MultiPoly<Rational>| p.lift(field).map_coeffs(|c| ParamPoly::constant(c.clone()));
    let f_p = to_param(&inv.f);
    let d_p = to_param(&inv.delta);
    let (m, _) = intersection_multiplicity(&f_p, &pencil12, q).unwrap();
    assert_eq!(m, 2, "index against the quartic");
    let (m, _) = intersection_multiplicity(&d_p, &pencil12, q).unwrap();
    assert_eq!(m, 3, "index against the Hessian");
    // the four Bezout audits
    let pencil14 = lam(&inv.f.pow(2).mul(&inv.delta), 0).add(&lam(&inv.c, 1));
    let gens = Some(g.generators());
    let audit = |a, b, orbit: &Orbit, expected: usize| {
        let rep = bezout_audit(a, b, &[orbit], gens).unwrap();
        assert!(
            rep.consistent,
            "total {} vs {}",
            rep.total, rep.degree_product
        );
        assert_eq!(rep.total, expected);
    };
    audit(&f_p, &d_p, o24, 24); // 24 = 4 * 6
    audit(&f_p, &pencil12, o24, 48); // 48 = 4 * 12
    audit(&d_p, &pencil12, o24, 72); // 72 = 6 * 12
    audit(&f_p, &pencil14, o56, 56); // 56 = 4 * 14
                                     // genus budgets
    assert_eq!(arithmetic_genus_audit(12, &[(24, 2)]), 31);
    assert_eq!(arithmetic_genus_audit(14, &[(56, 2), (21, 2)]), 1);
    c.pass();
}

#[test]
fn acceptance_08_lemma_bound_arithmetic() {
    let c = Criterion::start(
        8,
        "genus-orbit inequality: impossible at r = 21, boundary at r = 10",
    );
    for m in 2..=6u32 {
        let inp = GenusBoundInput {
            curve_degree: 3 * m,
            orbit_length: 21,
            multiplicity: m,
        };
        assert_eq!(
            genus_orbit_inequality(inp).unwrap(),
            Feasibility::Impossible,
            "m = {m}"
        );
        // the bound value itself is (9 - 21) m (m - 1) < -2
        assert!((9i64 - 21) * (m as i64) * (m as i64 - 1) < -2);
    }
    let boundary = GenusBoundInput {
        curve_degree: 6,
        orbit_length: 10,
        multiplicity: 2,
    };
    assert_eq!(
        genus_orbit_inequality(boundary).unwrap(),
        Feasibility::Possible
    );
    assert_eq!((9i64 - 10) * 2 * 1, -2);
    c.pass();
}

#[test]
fn acceptance_09_end_to_end_and_fault_injection() {
    let c = Criterion::start(9, "end-to-end verdicts and fault injection");
    let opts = RunOptions::default();
    let cert = run_case_analysis(&GroupChoice::J168, &opts);
    assert!(
        cert.all_verified(),
        "failed obligations: {:?}",
        cert.failed_ids()
    );
    let cert504 = run_case_analysis(&GroupChoice::J504, &opts);
    assert!(
        cert504.all_verified(),
        "failed obligations: {:?}",
        cert504.failed_ids()
    );
    // the diagonal cyclic counterexample must fail through its
    // degree-1 semiinvariant
    let cyc = fixture_diagonal_cyclic().unwrap();
    let fixture = GroupFixture::from_group(&cyc);
    let cert_cyc = run_case_analysis(
        &GroupChoice::External {
            id: "diagonal-cyclic".into(),
            fixture,
        },
        &opts,
    );
    assert!(!cert_cyc.all_verified());
    assert!(cert_cyc
        .failed_ids()
        .contains(&"inv.no_low_degree_semiinvariant"));
    // each designated corruption point flips the verdict
    assert!(ALL_FAULTS.len() >= 5);
    for fault in ALL_FAULTS {
        let faulted = RunOptions {
            seed: DEFAULT_SEED,
            faults: vec![fault],
            fail_fast: true,
        };
        let cert = run_case_analysis(&GroupChoice::J168, &faulted);
        assert!(
            !cert.all_verified(),
            "fault {fault:?} did not flip the verdict"
        );
    }
    c.pass();
}

#[test]
fn acceptance_10_determinism() {
    let c = Criterion::start(
        10,
        "byte-identical certificates per seed; verdicts seed-independent",
    );
    let opts = RunOptions::default();
    let first = run_case_analysis(&GroupChoice::J168, &opts).to_json();
    let second = run_case_analysis(&GroupChoice::J168, &opts).to_json();
    assert_eq!(first, second, "same seed must give identical bytes");
    let other_seed = RunOptions {
        seed: DEFAULT_SEED ^ 0xdead_beef,
        ..RunOptions::default()
    };
    let third = run_case_analysis(&GroupChoice::J168, &other_seed);
    let first_cert: serde_json::Value = serde_json::from_str(&first).unwrap();
    // verdicts and per-obligation statuses agree across seeds
    assert_eq!(
        first_cert["verdict"].as_str().unwrap(),
        "all_computed_verified"
    );
    assert!(third.all_verified());
    let statuses = |c: &serde_json::Value| -> Vec<(String, String)> {
        c["obligations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| {
                (
                    o["id"].as_str().unwrap().to_string(),
                    o["status"].as_str().unwrap().to_string(),
                )
            })
            .collect()
    };
    let third_json: serde_json::Value = serde_json::from_str(&third.to_json()).unwrap();
    assert_eq!(statuses(&first_cert), statuses(&third_json));
    // the remark checks are part of the reported surface and also stable
    let remarks_a = serde_json::to_string(&remark_checks(&opts)).unwrap();
    let remarks_b = serde_json::to_string(&remark_checks(&opts)).unwrap();
    assert_eq!(remarks_a, remarks_b);
    c.pass();
}

#[test]
fn acceptance_note_cited_obligations_carry_quotes() {
    // every obligation of the full certificate carries a nonempty anchor
    let cert = run_case_analysis(&GroupChoice::J168, &RunOptions::default());
    for o in &cert.obligations {
        assert!(!o.anchor.quote.is_empty(), "{} lacks a quote", o.id);
        if o.kind == kleincert::certificate::ObligationKind::Cited {
            assert_eq!(o.status, ObligationStatus::Assumed);
        }
    }
    // and the cited steps of the remark block are flagged assumed
    let remarks = remark_checks(&RunOptions::default());
    assert!(remarks
        .iter()
        .any(|o| o.status == ObligationStatus::Assumed));
}

#[test]
fn acceptance_note_icosahedral_fixture_has_degree_two_invariant() {
    // the optional external fixture: an order-60 group whose quotient is
    // ruled out by its degree-2 invariant
    let g = kleincert::group::fixture_icosahedral().unwrap();
    let hits = scan_semiinvariants(&g, 2);
    assert!(hits.iter().any(|h| h.degree == 2));
    let _ = Matrix3::identity(&CyclotomicField::new(60).unwrap());
}

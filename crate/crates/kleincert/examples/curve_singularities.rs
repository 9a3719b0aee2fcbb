//! Local curve analysis at the distinguished orbits: node/cusp
//! classification with explicit genericity assumptions, intersection
//! multiplicities, Bezout audits, and the genus arithmetic.
//!
//! Run with: cargo run --release --example curve_singularities

use kleincert::curves::{
    arithmetic_genus_audit, bezout_audit, classify_double_point, genus_orbit_inequality,
    intersection_multiplicity, localize, multiplicity_at, smoothness_certificate, standard_chart,
    Feasibility, GenusBoundInput,
};
use kleincert::group::fixture_j168;
use kleincert::invariants::build_invariants;
use kleincert::orbits::special_orbits;
use kleincert::poly::param::ParamPoly;

fn main() {
    let g = fixture_j168().unwrap();
    let field = g.field();
    let inv = build_invariants();

    println!("smoothness certificates:");
    for (name, p) in [("quartic f", &inv.f), ("Hessian Delta", &inv.delta)] {
        println!("  {name}: {:?}", smoothness_certificate(p, 7).unwrap());
    }

    let census = special_orbits(&g).unwrap();
    let o24 = census.of_length(24)[0];
    let o56 = census.of_length(56)[0];
    let q = &o24.points[0];

    // f * Delta at an inflection point: an ordinary node
    let fd = inv.f.mul(&inv.delta).lift(field);
    let (ty, _) = classify_double_point(&localize(&fd, &standard_chart(q))).unwrap();
    println!("\nf*Delta at the 24-orbit: {ty:?}");

    // the degree-12 pencil lambda f^3 + mu Delta^2: a cusp, generically
    let lam = |p: &kleincert::poly::MultiPoly<kleincert::Rational>, i: usize| {
        p.lift(field).map_coeffs(|c| ParamPoly::param(i, c.clone()))
    };
    let pencil12 = lam(&inv.f.pow(3), 0).add(&lam(&inv.delta.pow(2), 1));
    let data = multiplicity_at(&pencil12, q).unwrap();
    println!(
        "pencil lambda f^3 + mu Delta^2 at the 24-orbit: multiplicity {} assuming {:?}",
        data.multiplicity, data.assumptions
    );
    let (ty, asm) = classify_double_point(&localize(&pencil12, &data.chart)).unwrap();
    println!("  type: {ty:?} assuming {asm:?}");

    let constant = |p: &kleincert::poly::MultiPoly<kleincert::Rational>| {
        p.lift(field).map_coeffs(|c| ParamPoly::constant(c.clone()))
    };
    let f_p = constant(&inv.f);
    let d_p = constant(&inv.delta);
    let (m, asm) = intersection_multiplicity(&f_p, &pencil12, q).unwrap();
    println!("  index against f: {m} assuming {asm:?}");
    let (m, asm) = intersection_multiplicity(&d_p, &pencil12, q).unwrap();
    println!("  index against Delta: {m} assuming {asm:?}");

    println!("\nBezout audits:");
    let pencil14 = lam(&inv.f.pow(2).mul(&inv.delta), 0).add(&lam(&inv.c, 1));
    let gens = Some(g.generators());
    for (label, a, b, orbit) in [
        ("f vs Delta over the 24-orbit", &f_p, &d_p, o24),
        (
            "f vs degree-12 pencil over the 24-orbit",
            &f_p,
            &pencil12,
            o24,
        ),
        (
            "Delta vs degree-12 pencil over the 24-orbit",
            &d_p,
            &pencil12,
            o24,
        ),
        (
            "f vs degree-14 pencil over the 56-orbit",
            &f_p,
            &pencil14,
            o56,
        ),
    ] {
        let rep = bezout_audit(a, b, &[orbit], gens).unwrap();
        println!(
            "  {label}: total {} = {} (consistent: {})",
            rep.total, rep.degree_product, rep.consistent
        );
    }

    println!("\ngenus arithmetic:");
    println!(
        "  degree 12 with 24 cusps: budget {}",
        arithmetic_genus_audit(12, &[(24, 2)])
    );
    println!(
        "  degree 14 with 56+21 nodes: budget {}",
        arithmetic_genus_audit(14, &[(56, 2), (21, 2)])
    );
    for m in 2..=6 {
        let inp = GenusBoundInput {
            curve_degree: 3 * m,
            orbit_length: 21,
            multiplicity: m,
        };
        let f = genus_orbit_inequality(inp).unwrap();
        println!("  orbit 21, multiplicity {m}: {f:?}");
        assert_eq!(f, Feasibility::Impossible);
    }
}

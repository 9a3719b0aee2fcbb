//! Enumerate the special orbits on the projective plane: lengths,
//! stabilizer orders, uniqueness below 84, dual-plane minimum, and the
//! positions of the distinguished orbits relative to the invariant
//! curves.
//!
//! Run with: cargo run --release --example orbit_census

use kleincert::arith::FieldElement;
use kleincert::group::fixture_j168;
use kleincert::invariants::build_invariants;
use kleincert::orbits::{
    burnside_pair_check, min_orbit_length_dual, orbit_of, orbit_on_curve, special_orbits, ProjPoint,
};

fn main() {
    let g = fixture_j168().unwrap();
    let census = special_orbits(&g).unwrap();
    println!("special orbits ({} fixed lines):", census.lines.len());
    for o in &census.orbits {
        println!(
            "  length {:>3}  stabilizer {:>2}  (product {})",
            o.len(),
            o.stabilizer_order,
            o.len() * o.stabilizer_order
        );
    }
    let (lhs, rhs) = burnside_pair_check(&g, &census.orbits);
    println!("pair-count consistency: {lhs} = {rhs}");
    println!(
        "minimal length on the dual plane: {}",
        min_orbit_length_dual(&g).unwrap()
    );

    let field = g.field();
    let inflection = orbit_of(&ProjPoint::from_ints(field, [1, 0, 0]), &g);
    println!(
        "\n(1:0:0) generates length {} with stabilizer {}",
        inflection.len(),
        inflection.stabilizer_order
    );
    let z3 = |k: i64| FieldElement::root_of_unity(field, 28 * k);
    let contact = orbit_of(
        &ProjPoint::new([FieldElement::one(field), z3(2), z3(1)]),
        &g,
    );
    println!("(1 : z3^2 : z3) generates length {}", contact.len());

    let inv = build_invariants();
    let f = inv.f.lift(field);
    let delta = inv.delta.lift(field);
    let o24 = census.of_length(24)[0];
    let o28 = census.of_length(28)[0];
    println!("\n24-orbit on the quartic:  {:?}", orbit_on_curve(o24, &f));
    println!(
        "24-orbit on the Hessian:  {:?}",
        orbit_on_curve(o24, &delta)
    );
    println!("28-orbit on the quartic:  {:?}", orbit_on_curve(o28, &f));
}

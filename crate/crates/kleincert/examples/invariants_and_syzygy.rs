//! Construct the four fundamental invariants f, Delta, C, K (degrees
//! 4, 6, 14, 21), check their invariance, and expand the degree-42
//! relation K^2 = C^3 + 1728 Delta^7 + ... to exactly zero residual.
//!
//! Run with: cargo run --release --example invariants_and_syzygy

use kleincert::group::fixture_j168;
use kleincert::invariants::{build_invariants, verify_syzygy};

fn main() {
    let inv = build_invariants();
    for (name, p) in [
        ("f", &inv.f),
        ("Delta", &inv.delta),
        ("C", &inv.c),
        ("K", &inv.k),
    ] {
        println!(
            "{name:<6} degree {:>2}, {:>4} terms",
            p.homogeneous_degree().unwrap(),
            p.num_terms()
        );
    }

    let g = fixture_j168().unwrap();
    let field = g.field();
    let all_invariant = [&inv.f, &inv.delta, &inv.c, &inv.k].iter().all(|p| {
        let lifted = p.lift(field);
        g.generators()
            .iter()
            .all(|m| lifted.linear_substitution(m) == lifted)
    });
    println!("fixed by all three generators: {all_invariant}");

    let (report, residual) = verify_syzygy(&inv);
    println!(
        "relation lhs terms: {}, rhs terms: {}",
        report.lhs_terms, report.rhs_terms
    );
    println!(
        "residual: {} ({} terms)",
        if report.holds { "zero" } else { "NONZERO" },
        residual.num_terms()
    );
}

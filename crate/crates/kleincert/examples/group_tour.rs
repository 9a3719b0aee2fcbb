//! Build the two built-in groups and interrogate their structure:
//! orders, generator orders, conjugacy classes, centers, simplicity,
//! and the dual representation.
//!
//! Run with: cargo run --release --example group_tour

use kleincert::arith::FieldElement;
use kleincert::group::{fixture_j168, fixture_j504, validate_omega, Simplicity};

fn main() {
    let g = fixture_j168().expect("the order-168 group closes");
    println!("group j168");
    println!("  order: {}", g.order());
    let gens = g.generators();
    println!(
        "  generator orders: {:?}",
        gens.iter()
            .map(|m| m.order(100).unwrap())
            .collect::<Vec<_>>()
    );
    let one = FieldElement::one(g.field());
    println!(
        "  all determinants 1: {}",
        g.elements().iter().all(|m| m.det() == one)
    );
    let omega_report = validate_omega(g.field());
    println!(
        "  involution generator validated: {} (float error {:.2e})",
        omega_report.ok(),
        omega_report.max_float_error
    );
    let classes = g.conjugacy_classes();
    println!("  collineation class sizes: {:?}", classes.class_sizes);
    println!("  center order: {}", classes.center_order);
    match g.simplicity_certificate() {
        Simplicity::Simple => println!("  simple: yes"),
        Simplicity::NotSimple { witness, .. } => println!("  simple: no ({witness})"),
    }
    for p in 2..=7u32 {
        println!(
            "  nontrivial map to S_{p} excluded: {}",
            g.no_symmetric_image(p).unwrap()
        );
    }
    let dual = g.dual_representation();
    println!("  dual representation order: {}", dual.order());

    println!();
    let g504 = fixture_j504().expect("the order-504 extension closes");
    println!("group j504");
    println!("  order: {}", g504.order());
    let classes = g504.conjugacy_classes();
    println!("  center order: {}", classes.center_order);
    println!(
        "  collineation image order: {}",
        g504.collineation().reps.len()
    );
    match g504.simplicity_certificate() {
        Simplicity::Simple => println!("  simple: yes"),
        Simplicity::NotSimple { witness, .. } => println!("  simple: no ({witness})"),
    }
}

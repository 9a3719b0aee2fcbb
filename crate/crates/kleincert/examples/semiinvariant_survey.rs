//! Survey the semiinvariants: the exhaustive low-degree scan over all
//! characters, the twisted-Reynolds spaces per degree with their Molien
//! cross-check, and the minimal-form families built from f, Delta, C.
//!
//! Run with: cargo run --release --example semiinvariant_survey

use kleincert::group::{fixture_icosahedral, fixture_j168};
use kleincert::invariants::{
    enumerate_psi_min, scan_semiinvariants, semiinv::semiinvariant_table, Character,
};

fn main() {
    let g = fixture_j168().unwrap();
    println!("semiinvariants of degree <= 3 (any character):");
    let hits = scan_semiinvariants(&g, 3);
    if hits.is_empty() {
        println!("  none (as required for an exceptional quotient)");
    }
    for h in &hits {
        println!("  degree {}: dimension {}", h.degree, h.basis.len());
    }

    println!("\ntrivial-character dimensions by degree (Reynolds = Molien):");
    let chi = Character::trivial(&g);
    let table = semiinvariant_table(&g, &chi, 18);
    for s in &table {
        if s.basis.len() > 0 {
            println!(
                "  degree {:>2}: dim {} (Molien {}), consistent: {}",
                s.degree,
                s.basis.len(),
                s.molien_dim,
                s.consistent()
            );
        }
    }

    println!("\nminimal-form families up to degree 18:");
    for fam in enumerate_psi_min(18, None) {
        println!("  degree {:>2}: {}", fam.degree, fam.describe());
    }
    println!("\nfor the order-504 extension (degrees divisible by 3):");
    for fam in enumerate_psi_min(18, Some(3)) {
        println!("  degree {:>2}: {}", fam.degree, fam.describe());
    }

    // contrast: the icosahedral group is excluded immediately
    let ico = fixture_icosahedral().unwrap();
    let hits = scan_semiinvariants(&ico, 2);
    println!(
        "\nicosahedral group (order 60) has an invariant of degree 2: {}",
        hits.iter().any(|h| h.degree == 2)
    );
}

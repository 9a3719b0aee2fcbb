//! Load an external group fixture from JSON and run the universal
//! checks on it (closure order, determinants, low-degree semiinvariant
//! scan). The shipped fixtures/ directory has ready-made files:
//! diagonal_cyclic.json fails the scan, icosahedral.json has its
//! degree-2 invariant found.
//!
//! Run with:
//!   cargo run --release --example custom_fixture -- fixtures/diagonal_cyclic.json

use kleincert::certificate::{run_case_analysis, GroupChoice, RunOptions};
use kleincert::group::GroupFixture;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!(
            "{}/fixtures/diagonal_cyclic.json",
            env!("CARGO_MANIFEST_DIR")
        )
    });
    let fixture = match GroupFixture::load(std::path::Path::new(&path)) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    println!(
        "loaded fixture: conductor {}, {} generators, expected order {:?}",
        fixture.conductor,
        fixture.generators.len(),
        fixture.expected_order
    );
    let id = std::path::Path::new(&path)
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "fixture".into());
    let cert = run_case_analysis(
        &GroupChoice::External { id, fixture },
        &RunOptions::default(),
    );
    print!("{}", cert.to_text());
    std::process::exit(if cert.all_verified() { 0 } else { 1 });
}

//! Regenerates the JSON fixture files shipped in fixtures/.

use kleincert::group::{
    fixture_diagonal_cyclic, fixture_icosahedral, fixture_j168, fixture_j504, GroupFixture,
};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let groups = [
        ("j168", fixture_j168().unwrap()),
        ("j504", fixture_j504().unwrap()),
        ("icosahedral", fixture_icosahedral().unwrap()),
        ("diagonal_cyclic", fixture_diagonal_cyclic().unwrap()),
    ];
    for (name, g) in groups {
        let fx = GroupFixture::from_group(&g);
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&fx).unwrap()).unwrap();
        println!("wrote {} (order {})", path.display(), g.order());
    }
}

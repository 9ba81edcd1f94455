//! The JSON files under `data/` are the catalog diagrams, and they load
//! back to the same diagrams.

use std::path::PathBuf;

use trigroup::catalog::*;
use trigroup::diagram::TriangleDiagram;

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.json"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn data_files_match_catalog() {
    let diagrams = [
        ("d333", canonical((3, 3, 3))),
        ("d244", canonical((2, 4, 4))),
        ("d236", canonical((2, 3, 6))),
        ("z2_d244", central_extension(2, 4, 4)),
        ("hyperbolic_237", hyperbolic_237()),
        ("index3", index3_example()),
        ("not_generated", not_generated_example()),
        ("degenerate_z4", degenerate_example(4)),
        ("degenerate_z6", degenerate_example(6)),
        ("spherical_225", dihedral_triangle(2, 2, 5)),
        ("broken_non_injective", non_injective_example()),
        ("broken_angle_pi", angle_pi_example()),
    ];
    for (name, d) in diagrams {
        let text = read(name);
        assert_eq!(
            text,
            d.to_json_string(),
            "{name}.json is stale; regenerate with the catalog_json example"
        );
        let back = TriangleDiagram::from_json_str(&text).unwrap();
        assert_eq!(back.to_json_string(), text, "{name} does not round-trip");
    }
    assert_eq!(read("infinite_thompson"), infinite_input_json());
}

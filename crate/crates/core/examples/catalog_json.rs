//! Writes the catalog diagrams as JSON into a directory (default `data`).

use std::path::PathBuf;

use trigroup::catalog::*;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir).expect("create dir");
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
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, d.to_json_string()).expect("write");
        println!("{}", path.display());
    }
    let path = dir.join("infinite_thompson.json");
    std::fs::write(&path, infinite_input_json()).expect("write");
    println!("{}", path.display());
}

//! Large/small verdicts for the catalog diagrams.

use trigroup::catalog::*;
use trigroup::tits::classify;

fn main() {
    let cases = [
        ("Δ(2,3,6)", canonical((2, 3, 6))),
        ("Z_2 × Δ(2,4,4)", central_extension(2, 4, 4)),
        ("all-Z_2 (2,3,7)", hyperbolic_237()),
        ("index 4 at G_1", index3_example()),
        ("G_12 not generated", not_generated_example()),
        ("degenerate, Z_4", degenerate_example(4)),
        ("degenerate, Z_6", degenerate_example(6)),
        ("spherical (2,2,5)", dihedral_triangle(2, 2, 5)),
    ];
    for (name, d) in cases {
        let v = classify(&d).expect("valid");
        let rules: Vec<&str> = v.trace.iter().map(|s| s.rule.as_str()).collect();
        println!("{name:22} {:9} {}", v.kind.to_string(), rules.join(" → "));
    }
}

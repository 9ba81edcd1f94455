//! Curvature of a few triples, decided by exact rational angle sums.

use num_rational::Rational64;
use trigroup::catalog::dihedral_triangle;
use trigroup::diagram::classify_curvature;

fn main() {
    for (k, l, m) in [
        (3, 3, 3),
        (2, 4, 4),
        (2, 3, 6),
        (2, 3, 7),
        (2, 4, 5),
        (3, 3, 4),
        (2, 2, 5),
        (2, 3, 5),
    ] {
        let d = dihedral_triangle(k, l, m);
        let sum: Rational64 = d.angles().iter().map(|a| a.over_pi()).sum();
        println!("({k},{l},{m})  sum {sum}·π  {:?}", classify_curvature(&d).kind);
    }
}

//! Euclidean triples below some non-spherical triples.

use trigroup::diagram::dominate;

fn main() {
    for (k, l, m) in [(2, 3, 7), (2, 4, 5), (3, 3, 4), (3, 5, 50), (2, 3, 6), (4, 4, 4)] {
        let d = dominate(k, l, m).unwrap();
        println!("({k},{l},{m}) ≥ {d:?}");
    }
}

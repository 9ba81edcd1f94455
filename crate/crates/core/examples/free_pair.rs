//! A branching Euclidean triangle ([G_1 : φ(G_∅)] = 4) and its free pair,
//! certified on all reduced words up to length 4.

use trigroup::catalog::index3_example;
use trigroup::witness::{find_branching, free_pair, verify_free_pair, Witness};

fn main() {
    let d = index3_example();
    for cause in find_branching(&d).unwrap().causes {
        println!("branches: {cause}");
    }
    let Witness::Index3(pair) = free_pair(&d).unwrap() else {
        unreachable!()
    };
    println!("h = {} (fixture {})", pair.provenance.h, pair.provenance.fixture_id);
    println!("x = {}", pair.x);
    println!("y = {}", pair.y);
    let report = verify_free_pair(&d, &pair, 4).expect("no gaps");
    println!(
        "certified per length {:?}, longest path {} reflections",
        report.by_length, report.max_reflections
    );
}

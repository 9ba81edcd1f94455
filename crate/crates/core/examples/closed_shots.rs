//! Closed orthogonal shots for the nine (triangle, edge) cases.

use trigroup::billiards::{build_triangle, closed_orthogonal_shot, Geometry};
use trigroup::catalog::{canonical, CANONICAL_TRIPLES};
use trigroup::quadrat::QuadRat;

fn main() {
    for triple in CANONICAL_TRIPLES {
        let t = build_triangle(canonical(triple).angles()).unwrap();
        let geo: Geometry<QuadRat> = t.geometry();
        for a in 1..=3 {
            let shot = closed_orthogonal_shot(&t, a).expect("shot");
            shot.sequence.validate(&geo).expect("re-simulates");
            let foot = shot.foot.to_f64();
            println!(
                "{:7} edge {{{a}}}: foot ({:.4}, {:.4}), labels {:?}",
                shot.fixture_id, foot.x, foot.y, shot.sequence.labels
            );
        }
    }
}

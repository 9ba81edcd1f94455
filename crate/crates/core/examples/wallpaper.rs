//! The three Euclidean reflection groups as exact plane isometries.

use trigroup::wallpaper::{canonical_rep, DEFAULT_LATTICE_DEPTH};

fn main() {
    for triple in [(3, 3, 3), (2, 4, 4), (2, 3, 6)] {
        let rep = canonical_rep(triple).unwrap();
        let lattice = rep.translation_lattice(DEFAULT_LATTICE_DEPTH).unwrap();
        let [u, v] = lattice.basis.clone().map(|b| b.to_f64());
        let check = rep.intersection_check();
        println!(
            "{triple:?}: translations ({:.4}, {:.4}) ({:.4}, {:.4}); stabilisers {:?}; intersections ok: {}",
            u.x,
            u.y,
            v.x,
            v.y,
            check.stabilizer_orders,
            check.passes()
        );
    }
    let rep = canonical_rep((3, 3, 3)).unwrap();
    let abc = rep.evaluate("abc").unwrap();
    println!(
        "abc in (3,3,3): identity? {}, translation {:?}",
        abc.is_identity(),
        abc.translation
    );
}

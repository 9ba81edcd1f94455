//! Angle table of the dihedral triangles: the angle at {i,j} is π/k when
//! G_{i,j} is dihedral of order 2k. The link of each vertex has girth m̂.

use trigroup::catalog::dihedral_triangle;
use trigroup::diagram::{all_angles, link_graph};

fn main() {
    for (k, l, m) in [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 3, 7), (3, 4, 5)] {
        let d = dihedral_triangle(k, l, m);
        print!("({k},{l},{m}):");
        for ((i, j), r) in all_angles(&d) {
            let girth = link_graph(&d, i, j).ok().and_then(|g| g.girth);
            print!(
                "  {{{i},{j}}} {} (m̂ {}, girth {})",
                r.angle,
                r.angle.m_hat().unwrap_or(0),
                girth.unwrap_or(0)
            );
        }
        println!();
    }
    let d = dihedral_triangle(2, 4, 4);
    let r = &all_angles(&d)[&(1, 3)];
    if let Some(word) = &r.witness {
        let letters: Vec<String> = word
            .letters
            .iter()
            .map(|l| format!("{}:{}", l.subset, l.elem))
            .collect();
        println!("shortest kernel word at {{1,3}} of (2,4,4): {}", letters.join(" "));
    }
}

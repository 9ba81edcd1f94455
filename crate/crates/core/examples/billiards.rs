//! Billiard certificates in the equilateral triangle: g₁g₂g₃ is nontrivial
//! and, via the periodic Fagnano path, has infinite order. Writes the path
//! as SVG to the first argument if one is given.

use trigroup::billiards::{to_svg, Billiards, Conclusion, TypedWord};
use trigroup::catalog::canonical;

fn main() {
    let d = canonical((3, 3, 3));
    let ctx = Billiards::new(&d).expect("Euclidean");
    let w: TypedWord = "1:1,2:1,3:1".parse().unwrap();

    let cert = ctx.certify_nontrivial(&w).expect("certificate");
    println!("nontrivial: {} with labels {:?}", cert.word, cert.sequence.labels);
    let float = ctx.certify_nontrivial_float(&w).expect("float certificate");
    println!("float start point {:?}", float.sequence.points[0]);

    let periodic = ctx.certify_infinite_order(&w).expect("periodic certificate");
    if let Conclusion::InfiniteOrder { period, glide, shift } = &periodic.conclusion {
        println!(
            "infinite order: period {period}, glide {glide}, shift {:?}",
            shift.to_f64()
        );
    }
    for n in [1, 5, 20] {
        let p = periodic.power(n).expect("power");
        p.check(&ctx).expect("re-simulates");
        println!("(g1 g2 g3)^{n}: {} reflections re-simulated", p.sequence.reflections());
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, to_svg(ctx.placement(), &periodic.sequence)).expect("write svg");
        println!("wrote {path}");
    }
}

//! Presentation of the colimit group of Δ(2,4,4).

use trigroup::catalog::canonical;
use trigroup::diagram::export_presentation;

fn main() {
    print!("{}", export_presentation(&canonical((2, 4, 4))));
}

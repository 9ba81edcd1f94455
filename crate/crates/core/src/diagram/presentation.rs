//! Text export of the colimit presentation.

use std::fmt::Write;

use super::{CorsonDiagram, Subset};
use crate::group::Elem;

fn gen_name(s: &Subset, x: Elem) -> String {
    format!("G{}_{}", s.key(), x)
}

/// Generators are the non-identity elements of every `G_J`; relators are
/// the multiplication tables and the identifications `g = φ(g)`.
///
/// Output is one line per item: all `gen <name>` lines first, then
/// `rel <word>` lines where a word is a space-separated product of
/// generators, `^-1` marking an inverse. Subsets come in key order and
/// elements by index.
pub fn export_presentation(d: &CorsonDiagram) -> String {
    let mut out = String::new();
    for (s, g) in d.groups() {
        for x in g.elements().filter(|&x| !g.is_identity(x)) {
            writeln!(out, "gen {}", gen_name(s, x)).unwrap();
        }
    }
    for (s, g) in d.groups() {
        for x in g.elements().filter(|&x| !g.is_identity(x)) {
            for y in g.elements().filter(|&y| !g.is_identity(y)) {
                let z = g.mul(x, y);
                if g.is_identity(z) {
                    writeln!(out, "rel {} {}", gen_name(s, x), gen_name(s, y)).unwrap();
                } else {
                    writeln!(out, "rel {} {} {}^-1", gen_name(s, x), gen_name(s, y), gen_name(s, z)).unwrap();
                }
            }
        }
    }
    for ((from, to), h) in d.homs() {
        if from.is_empty() && to.len() == 2 && d.is_derived(to) {
            continue;
        }
        let g = d.group(from);
        for x in g.elements().filter(|&x| !g.is_identity(x)) {
            let y = h.apply(x);
            if d.group(to).is_identity(y) {
                writeln!(out, "rel {}", gen_name(from, x)).unwrap();
            } else {
                writeln!(out, "rel {} {}^-1", gen_name(from, x), gen_name(to, y)).unwrap();
            }
        }
    }
    out
}

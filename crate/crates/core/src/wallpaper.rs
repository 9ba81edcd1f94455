//! The Euclidean triangle groups as groups of plane isometries.
//!
//! `Δ(k,l,m)` acts on the plane generated by the reflections `a`, `b`, `c`
//! across the edges labelled `{1}`, `{2}`, `{3}` of the canonical placement.
//! Everything here is exact; identity tests are equality of entries.

use std::collections::{HashSet, VecDeque};

use serde_json::json;
use thiserror::Error;

use crate::billiards::{build_triangle, TrianglePlacement};
use crate::catalog::canonical;
use crate::plane::{Isometry, Vec2};
use crate::quadrat::QuadRat;

pub const DEFAULT_LATTICE_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallpaperError {
    #[error("{0:?} is not one of (3,3,3), (2,4,4), (2,3,6)")]
    UnsupportedTriple((usize, usize, usize)),
    #[error("letter {0:?} is not one of a, b, c")]
    BadLetter(char),
    #[error("only rank {rank} translations found among products of length ≤ {depth}")]
    RankDeficient { rank: usize, depth: usize },
}

#[derive(Debug, Clone)]
pub struct WallpaperRep {
    pub triple: (usize, usize, usize),
    pub placement: TrianglePlacement,
    /// `a`, `b`, `c`: reflections across the edges labelled 1, 2, 3.
    pub generators: [Isometry; 3],
}

/// `(k, l, m)` with `(ab)^k = (ac)^l = (bc)^m = 1`.
fn exponents(triple: (usize, usize, usize)) -> [(usize, usize, usize); 3] {
    [(0, 1, triple.0), (0, 2, triple.1), (1, 2, triple.2)]
}

fn power(g: &Isometry, n: usize) -> Isometry {
    (0..n).fold(Isometry::identity(), |acc, _| acc.compose(g))
}

pub fn canonical_rep(triple: (usize, usize, usize)) -> Result<WallpaperRep, WallpaperError> {
    if !matches!(triple, (3, 3, 3) | (2, 4, 4) | (2, 3, 6)) {
        return Err(WallpaperError::UnsupportedTriple(triple));
    }
    let placement = build_triangle(canonical(triple).angles()).expect("canonical triangle is Euclidean");
    let generators = [1, 2, 3].map(|a| {
        let e = placement.edge(a);
        Isometry::reflection(&placement.vertices[e.from], &placement.vertices[e.to])
    });
    let rep = WallpaperRep {
        triple,
        placement,
        generators,
    };
    assert!(rep.relators_hold(), "relators fail for {triple:?}");
    Ok(rep)
}

impl WallpaperRep {
    /// Orthogonality, `a² = b² = c² = 1` and the three rotation relators.
    pub fn relators_hold(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|x| x.is_orthogonal() && x.compose(x).is_identity())
            && exponents(self.triple)
                .iter()
                .all(|&(i, j, n)| power(&g[i].compose(&g[j]), n).is_identity())
    }

    pub fn generator(&self, letter: char) -> Result<&Isometry, WallpaperError> {
        match letter {
            'a' => Ok(&self.generators[0]),
            'b' => Ok(&self.generators[1]),
            'c' => Ok(&self.generators[2]),
            other => Err(WallpaperError::BadLetter(other)),
        }
    }

    /// Product of the letters, leftmost outermost. Whitespace is ignored.
    pub fn evaluate(&self, word: &str) -> Result<Isometry, WallpaperError> {
        let mut acc = Isometry::identity();
        for ch in word.chars().filter(|c| !c.is_whitespace()) {
            acc = acc.compose(self.generator(ch)?);
        }
        Ok(acc)
    }

    /// Product of generators given by edge labels 1, 2, 3.
    pub fn evaluate_labels(&self, labels: &[u8]) -> Isometry {
        labels.iter().fold(Isometry::identity(), |acc, &a| {
            acc.compose(&self.generators[a as usize - 1])
        })
    }

    /// Distinct elements given by products of length `≤ max_len`, in order
    /// of first appearance.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Isometry> {
        let mut seen = HashSet::from([Isometry::identity()]);
        let mut all = vec![Isometry::identity()];
        let mut layer = vec![Isometry::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for g in &layer {
                for s in &self.generators {
                    let h = g.compose(s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// Two independent translations among products of length `≤ max_len`:
    /// the shortest one, then the shortest not parallel to it.
    pub fn translation_lattice(&self, max_len: usize) -> Result<LatticeReport, WallpaperError> {
        let mut translations: Vec<Vec2> = self
            .elements_up_to(max_len)
            .into_iter()
            .filter(|g| g.is_translation())
            .map(|g| g.translation)
            .collect();
        translations.sort_by(|u, v| u.dot(u).cmp(&v.dot(v)).then_with(|| (&u.x, &u.y).cmp(&(&v.x, &v.y))));
        let Some(first) = translations.first().cloned() else {
            return Err(WallpaperError::RankDeficient {
                rank: 0,
                depth: max_len,
            });
        };
        let second =
            translations
                .iter()
                .find(|v| !first.cross(v).is_zero())
                .cloned()
                .ok_or(WallpaperError::RankDeficient {
                    rank: 1,
                    depth: max_len,
                })?;
        Ok(LatticeReport {
            depth: max_len,
            translations_found: translations.len(),
            basis: [first, second],
        })
    }

    /// Subgroup generated by the generator reflections fixing `p`.
    pub fn stabilizer_of_point(&self, p: &Vec2) -> Vec<Isometry> {
        let gens: Vec<&Isometry> = self.generators.iter().filter(|g| g.apply(p) == *p).collect();
        closure(&gens)
    }

    /// Dihedral stabiliser of placement vertex `v` (index 0, 1 or 2).
    pub fn vertex_stabilizer(&self, v: usize) -> Vec<Isometry> {
        self.stabilizer_of_point(&self.placement.vertices[v])
    }

    /// Pairwise and triple intersections of the vertex stabilisers,
    /// compared with the edge stabilisers and the trivial group.
    pub fn intersection_check(&self) -> IntersectionReport {
        let stabs: Vec<Vec<Isometry>> = (0..3).map(|v| self.vertex_stabilizer(v)).collect();
        let sets: Vec<HashSet<&Isometry>> = stabs.iter().map(|s| s.iter().collect()).collect();
        let mut comparisons = Vec::new();
        for (v, w) in [(0, 1), (0, 2), (1, 2)] {
            let meet: HashSet<&Isometry> = sets[v].intersection(&sets[w]).copied().collect();
            let mid = self.placement.vertices[v].midpoint(&self.placement.vertices[w]);
            let expected = self.stabilizer_of_point(&mid);
            let ok = meet.len() == expected.len() && expected.iter().all(|g| meet.contains(g));
            comparisons.push(Comparison {
                vertices: vec![v, w],
                found: meet.len(),
                expected: expected.len(),
                ok,
            });
        }
        let triple: Vec<&&Isometry> = sets[0]
            .iter()
            .filter(|g| sets[1].contains(**g) && sets[2].contains(**g))
            .collect();
        let ok = triple.len() == 1 && triple[0].is_identity();
        comparisons.push(Comparison {
            vertices: vec![0, 1, 2],
            found: triple.len(),
            expected: 1,
            ok,
        });
        IntersectionReport {
            stabilizer_orders: [0, 1, 2].map(|v| stabs[v].len()),
            comparisons,
        }
    }

    pub fn to_json(&self, lattice: &Result<LatticeReport, WallpaperError>) -> serde_json::Value {
        let (k, l, m) = self.triple;
        let lattice = match lattice {
            Ok(r) => json!({
                "depth": r.depth,
                "translations_found": r.translations_found,
                "basis": r.basis.iter().map(|v| v.json()).collect::<Vec<_>>(),
            }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        let check = self.intersection_check();
        json!({
            "triple": [k, l, m],
            "vertices": self.placement.vertices.iter().map(|v| v.json()).collect::<Vec<_>>(),
            "generators": self.generators,
            "relators_hold": self.relators_hold(),
            "translation_lattice": lattice,
            "stabilizer_orders": check.stabilizer_orders,
            "intersections": check.comparisons.iter().map(|c| json!({
                "vertices": c.vertices,
                "found": c.found,
                "expected": c.expected,
                "ok": c.ok,
            })).collect::<Vec<_>>(),
        })
    }
}

fn closure(gens: &[&Isometry]) -> Vec<Isometry> {
    let mut seen = HashSet::from([Isometry::identity()]);
    let mut out = vec![Isometry::identity()];
    let mut queue = VecDeque::from([Isometry::identity()]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub depth: usize,
    pub translations_found: usize,
    pub basis: [Vec2; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub vertices: Vec<usize>,
    pub found: usize,
    pub expected: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionReport {
    pub stabilizer_orders: [usize; 3],
    pub comparisons: Vec<Comparison>,
}

impl IntersectionReport {
    pub fn passes(&self) -> bool {
        self.comparisons.iter().all(|c| c.ok)
    }
}

/// `2cos θ` for a rotation by `θ`, i.e. the trace.
pub fn rotation_trace(g: &Isometry) -> Option<QuadRat> {
    (g.determinant() == QuadRat::one()).then(|| g.trace())
}

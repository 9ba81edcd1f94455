//! Billiards on the labelled Euclidean triangle.
//!
//! A billiard sequence reflecting off edges labelled `a₁, …, a_{m−1}`
//! certifies that any product `g₁⋯g_{m−1}` with `g_i ∈ G_{a_i} ∖ φ(G_∅)`
//! is nontrivial in the colimit group. Searches here may be incomplete;
//! every certificate is re-simulated before it is returned.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{GSAngle, Label, Subset};
use crate::group::Elem;
use crate::plane::{Scalar, Vec2, FLOAT_TOLERANCE};
use crate::quadrat::QuadRat;

mod certify;
mod closed;
mod sim;
mod svg;

pub use certify::{
    adapted, certify_infinite_order, certify_nontrivial, Billiards, Certificate, CertifyError, Conclusion, Mode,
};
pub use closed::{closed_orthogonal_shot, ClosedShot, ClosedShotError};
pub(crate) use sim::shoot_along;
pub use sim::{reflect_direction, shoot, BilliardSequence, SequenceError, ShootError};
pub use svg::to_svg;

/// One letter `g ∈ G_{ty}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypedLetter {
    pub ty: Label,
    pub elem: Elem,
}

/// A product `g₁⋯g_n` with `g_i ∈ G_{a_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct TypedWord(pub Vec<TypedLetter>);

impl TypedWord {
    pub fn new(letters: Vec<(Label, Elem)>) -> Self {
        TypedWord(letters.into_iter().map(|(ty, elem)| TypedLetter { ty, elem }).collect())
    }

    pub fn types(&self) -> Vec<Label> {
        self.0.iter().map(|l| l.ty).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pow(&self, n: usize) -> TypedWord {
        TypedWord(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse typed word {0:?}: expected comma-separated type:element letters")]
pub struct ParseTypedWordError(pub String);

/// `"1:1,2:1,3:1"`; the empty string is the empty word.
impl FromStr for TypedWord {
    type Err = ParseTypedWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTypedWordError(s.to_string());
        if s.trim().is_empty() {
            return Ok(TypedWord::default());
        }
        s.split(',')
            .map(|part| {
                let (t, e) = part.trim().split_once(':').ok_or_else(err)?;
                Ok(TypedLetter {
                    ty: t.trim().parse().map_err(|_| err())?,
                    elem: e.trim().parse().map_err(|_| err())?,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TypedWord)
    }
}

impl fmt::Display for TypedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| format!("{}:{}", l.ty, l.elem)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An edge between two placement vertices, labelled by a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Label,
}

/// The triangle `Δ` with exact vertices. Vertex `v` is labelled by a pair
/// `{i,j}` and has angle `∠_{i,j}`; the edge between the vertices labelled
/// `K₁` and `K₂` carries `K₁ ∩ K₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrianglePlacement {
    /// Sorted Euclidean triple, one of `(2,3,6)`, `(2,4,4)`, `(3,3,3)`.
    pub triple: (usize, usize, usize),
    pub vertices: [Vec2; 3],
    pub vertex_labels: [Subset; 3],
    pub angles: [GSAngle; 3],
    /// Indexed by label: `edges[a - 1]` carries `{a}`.
    pub edges: [Edge; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("angles {0:?} do not sum to π")]
    NotEuclidean([GSAngle; 3]),
    #[error("angle at {0} is zero, the triangle degenerates")]
    DegenerateAngle(Subset),
}

/// Canonical vertices with the `k` of their angle `π/k`.
fn canonical_vertices(triple: (usize, usize, usize)) -> [(Vec2, usize); 3] {
    let q = QuadRat::frac;
    match triple {
        (2, 4, 4) => [
            (Vec2::from_ints(0, 0), 2),
            (Vec2::from_ints(0, 1), 4),
            (Vec2::from_ints(1, 0), 4),
        ],
        (3, 3, 3) => [
            (Vec2::from_ints(0, 0), 3),
            (Vec2::from_ints(1, 0), 3),
            (Vec2::new(q(1, 2), QuadRat::from_parts(0, 1, 1, 2)), 3),
        ],
        (2, 3, 6) => [
            (Vec2::from_ints(0, 0), 2),
            (Vec2::new(QuadRat::zero(), QuadRat::from_parts(0, 1, 1, 3)), 3),
            (Vec2::from_ints(1, 0), 6),
        ],
        _ => unreachable!("only the three Euclidean triples have placements"),
    }
}

/// `cos²(π/k)` for the angles that occur.
fn cos_sq(k: usize) -> QuadRat {
    match k {
        2 => QuadRat::zero(),
        3 => QuadRat::frac(1, 4),
        4 => QuadRat::frac(1, 2),
        6 => QuadRat::frac(3, 4),
        _ => unreachable!(),
    }
}

/// Places `Δ` for the angles at `{1,2}`, `{1,3}`, `{2,3}`. Each pair in
/// that order takes the first unused canonical vertex with its angle.
pub fn build_triangle(angles: [GSAngle; 3]) -> Result<TrianglePlacement, BuildError> {
    let pairs = [Subset::pair(1, 2), Subset::pair(1, 3), Subset::pair(2, 3)];
    for (a, p) in angles.iter().zip(&pairs) {
        if a.is_zero() {
            return Err(BuildError::DegenerateAngle(p.clone()));
        }
    }
    let ks: Vec<usize> = angles.iter().map(|a| a.k().unwrap_or(0)).collect();
    let mut sorted = ks.clone();
    sorted.sort_unstable();
    let triple = (sorted[0], sorted[1], sorted[2]);
    if !matches!(triple, (2, 4, 4) | (3, 3, 3) | (2, 3, 6)) {
        return Err(BuildError::NotEuclidean(angles));
    }
    let canon = canonical_vertices(triple);
    let mut slot: [Option<usize>; 3] = [None; 3];
    let mut used = [false; 3];
    for (p, &k) in ks.iter().enumerate() {
        let v = (0..3).find(|&v| !used[v] && canon[v].1 == k).expect("multiset matches");
        used[v] = true;
        slot[v] = Some(p);
    }
    let vertices = canon.clone().map(|(v, _)| v);
    let vertex_labels = slot.map(|p| pairs[p.unwrap()].clone());
    let vangles = slot.map(|p| angles[p.unwrap()]);
    let mut edges = [Edge {
        from: 0,
        to: 0,
        label: 0,
    }; 3];
    for (from, to) in [(0, 1), (0, 2), (1, 2)] {
        let shared = vertex_labels[from]
            .labels()
            .iter()
            .copied()
            .find(|l| vertex_labels[to].contains(*l))
            .expect("two pairs of a 3-set share a label");
        edges[shared as usize - 1] = Edge {
            from,
            to,
            label: shared,
        };
    }
    let t = TrianglePlacement {
        triple,
        vertices,
        vertex_labels,
        angles: vangles,
        edges,
    };
    debug_assert!(t.angles_match());
    Ok(t)
}

impl TrianglePlacement {
    /// Exact check that the angle at each vertex is `π/k`: compares
    /// `cos²` and the sign of the cosine.
    pub fn angles_match(&self) -> bool {
        (0..3).all(|v| {
            let k = self.angles[v].k().unwrap_or(0);
            let p = &self.vertices[v];
            let u = self.vertices[(v + 1) % 3].sub(p);
            let w = self.vertices[(v + 2) % 3].sub(p);
            let dot = u.dot(&w);
            let lhs = dot.clone() * dot.clone();
            let rhs = cos_sq(k) * u.dot(&u) * w.dot(&w);
            lhs == rhs && dot.signum() != Ordering::Less
        })
    }

    pub fn edge(&self, label: Label) -> &Edge {
        &self.edges[label as usize - 1]
    }

    /// Index of the vertex opposite the edge labelled `label`; this names
    /// the edge independently of the labelling.
    pub fn geometric_edge(&self, label: Label) -> usize {
        let e = self.edge(label);
        3 - e.from - e.to
    }

    pub fn geometry<F: Scalar>(&self) -> Geometry<F> {
        let vertices = self.vertices.clone().map(|v| v.convert::<F>());
        let margin_sq = if F::EXACT {
            F::zero()
        } else {
            // δ = 1e-6 · shortest edge.
            let min_len = self
                .edges
                .iter()
                .map(|e| {
                    let t = self.vertices[e.to].sub(&self.vertices[e.from]).to_f64();
                    t.dot(&t).sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            F::from_f64((1e-6 * min_len).powi(2))
        };
        Geometry {
            vertices,
            edges: self.edges,
            margin_sq,
        }
    }
}

/// Vertices converted to the simulation's number type.
#[derive(Debug, Clone)]
pub struct Geometry<F> {
    pub vertices: [Vec2<F>; 3],
    pub edges: [Edge; 3],
    margin_sq: F,
}

impl<F: Scalar> Geometry<F> {
    pub fn tangent(&self, edge: usize) -> Vec2<F> {
        let e = &self.edges[edge];
        self.vertices[e.to].sub(&self.vertices[e.from])
    }

    fn orientation(&self) -> Ordering {
        let [a, b, c] = &self.vertices;
        b.sub(a).cross(&c.sub(a)).sign()
    }

    /// Strictly inside the triangle.
    pub fn is_interior(&self, p: &Vec2<F>) -> bool {
        let o = self.orientation();
        (0..3).all(|k| {
            let a = &self.vertices[k];
            let b = &self.vertices[(k + 1) % 3];
            b.sub(a).cross(&p.sub(a)).sign() == o
        })
    }

    /// Within the vertex-exclusion margin of some vertex.
    pub fn in_pocket(&self, p: &Vec2<F>) -> bool {
        self.vertices.iter().any(|v| {
            let d = p.sub(v);
            (d.dot(&d) - self.margin_sq.clone()).sign() != Ordering::Greater
        })
    }

    /// First boundary point reached from `p` along `d`, skipping edge
    /// `skip` (the edge `p` lies on). Returns the edge index and the point.
    pub fn exit(&self, p: &Vec2<F>, d: &Vec2<F>, skip: Option<usize>) -> Option<(usize, Vec2<F>)> {
        let mut best: Option<(usize, F, Vec2<F>)> = None;
        let tol = if F::EXACT {
            F::zero()
        } else {
            F::from_f64(FLOAT_TOLERANCE)
        };
        for e in 0..3 {
            if Some(e) == skip {
                continue;
            }
            let a = &self.vertices[self.edges[e].from];
            let t = self.tangent(e);
            let den = d.cross(&t);
            if den.sign() == Ordering::Equal {
                continue;
            }
            let ap = a.sub(p);
            let s = ap.cross(&t) / den.clone();
            let u = ap.cross(d) / den;
            if s.sign() != Ordering::Greater {
                continue;
            }
            let lo = (u.clone() + tol.clone()).sign() != Ordering::Less;
            let hi = (F::one() + tol.clone() - u).sign() != Ordering::Less;
            if !(lo && hi) {
                continue;
            }
            if best
                .as_ref()
                .is_none_or(|(_, bs, _)| (s.clone() - bs.clone()).sign() == Ordering::Less)
            {
                let q = p.add(&d.scale(&s));
                best = Some((e, s, q));
            }
        }
        best.map(|(e, _, q)| (e, q))
    }
}

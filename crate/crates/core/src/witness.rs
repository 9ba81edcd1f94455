//! Branching of the coset complex and explicit free subgroups.
//!
//! The complex branches iff some `[G_a : φ(G_∅)] ≥ 3` or some `G_{a,b}` is
//! not generated by the images of `G_a` and `G_b`. In the first case with a
//! Euclidean triangle, a closed orthogonal billiard shot off edge `a` gives
//! a word `h`, and
//!
//! ```text
//! x = g_a h g̃_a⁻¹,    y = h g_a h g̃_a⁻¹ h⁻¹
//! ```
//!
//! generate a free group for `g_a`, `g̃_a` in distinct nontrivial cosets of
//! `φ(G_∅)`. [`verify_free_pair`] certifies every reduced word in `x`, `y`
//! up to a given length with a billiard sequence.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::billiards::{
    closed_orthogonal_shot, shoot_along, Billiards, Certificate, CertifyError, ClosedShot, ClosedShotError, Conclusion,
    Geometry, TypedLetter, TypedWord,
};
use crate::diagram::{classify_curvature, CurvatureKind, Label, Subset, TriangleDiagram, ValidationReport};
use crate::group::{index, subgroup_generated, Elem, Subgroup};
use crate::quadrat::QuadRat;

pub const DEFAULT_VERIFY_DEPTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchCause {
    /// `[G_a : φ(G_∅)] = index ≥ 3`.
    IndexAtLeast3 { a: Label, index: usize },
    /// The images of `G_i` and `G_j` generate a subgroup of index
    /// `missing ≥ 2` in `G_{i,j}`.
    NotGenerated { i: Label, j: Label, missing: usize },
}

impl fmt::Display for BranchCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchCause::IndexAtLeast3 { a, index } => write!(f, "[G_{a} : φ(G_∅)] = {index} ≥ 3"),
            BranchCause::NotGenerated { i, j, missing } => {
                write!(f, "G_{{{i},{j}}} is not generated by G_{i}, G_{j} (index {missing})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingReport {
    pub branches: bool,
    pub causes: Vec<BranchCause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("the diagram is not valid:\n{0}")]
    Invalid(ValidationReport),
    #[error("the triangle is spherical")]
    SphericalInput,
    #[error("the triangle does not branch")]
    NoBranching,
    #[error("free pairs are built only for non-degenerate Euclidean triangles")]
    DegenerateAngle,
    #[error("free pairs are built only for Euclidean triangles")]
    NotEuclidean,
    #[error(transparent)]
    ClosedShot(#[from] ClosedShotError),
    #[error("free-pair verification failed for the word {0}")]
    CertificationGap(String),
}

fn ensure_valid(d: &TriangleDiagram) -> Result<(), WitnessError> {
    let report = d.validate();
    if !report.is_ok() {
        return Err(WitnessError::Invalid(report));
    }
    if classify_curvature(d).kind == CurvatureKind::Spherical {
        return Err(WitnessError::SphericalInput);
    }
    Ok(())
}

/// `[G_a : φ(G_∅)]` for `a = 1, 2, 3`.
pub fn base_indices(d: &TriangleDiagram) -> [usize; 3] {
    [1, 2, 3].map(|a| {
        let s = Subset::single(a);
        index(d.group(&s), &d.base_image(&s)).expect("image is a subgroup")
    })
}

/// `⟨φ(G_i) ∪ φ(G_j)⟩ ≤ G_{i,j}`.
pub fn generated_by_sides(d: &TriangleDiagram, i: Label, j: Label) -> Subgroup {
    let pair = Subset::pair(i, j);
    let mut gens: Vec<Elem> = d.image(&Subset::single(i), &pair).elements().to_vec();
    gens.extend_from_slice(d.image(&Subset::single(j), &pair).elements());
    subgroup_generated(d.group(&pair), &gens)
}

pub fn find_branching(d: &TriangleDiagram) -> Result<BranchingReport, WitnessError> {
    ensure_valid(d)?;
    let mut causes = Vec::new();
    for (a, idx) in (1..=3).zip(base_indices(d)) {
        if idx >= 3 {
            causes.push(BranchCause::IndexAtLeast3 { a, index: idx });
        }
    }
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let pair = Subset::pair(i, j);
        let missing = index(d.group(&pair), &generated_by_sides(d, i, j)).expect("subgroup");
        if missing >= 2 {
            causes.push(BranchCause::NotGenerated { i, j, missing });
        }
    }
    Ok(BranchingReport {
        branches: !causes.is_empty(),
        causes,
    })
}

/// Ingredients of an index-case pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Index3Provenance {
    pub a: Label,
    pub index: usize,
    pub g_a: Elem,
    pub g_tilde: Elem,
    pub h: TypedWord,
    pub fixture_id: String,
    pub shot: ClosedShot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreePair {
    pub x: TypedWord,
    pub y: TypedWord,
    pub provenance: Index3Provenance,
}

/// Outcome of [`free_pair`]. Without an index-3 vertex group no explicit
/// pair is built; the colimit splits as an amalgam instead.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Index3(Box<FreePair>),
    NotGenerated { i: Label, j: Label, missing: usize },
}

fn inverse_word(d: &TriangleDiagram, w: &[TypedLetter]) -> Vec<TypedLetter> {
    w.iter()
        .rev()
        .map(|l| TypedLetter {
            ty: l.ty,
            elem: d.group(&Subset::single(l.ty)).inv(l.elem),
        })
        .collect()
}

pub fn free_pair(d: &TriangleDiagram) -> Result<Witness, WitnessError> {
    let report = find_branching(d)?;
    let class = classify_curvature(d);
    if class.degenerate {
        return Err(WitnessError::DegenerateAngle);
    }
    if class.kind != CurvatureKind::Euclidean {
        return Err(WitnessError::NotEuclidean);
    }
    let index3 = report.causes.iter().find_map(|c| match *c {
        BranchCause::IndexAtLeast3 { a, index } => Some((a, index)),
        _ => None,
    });
    let Some((a, idx)) = index3 else {
        return match report.causes.first() {
            Some(&BranchCause::NotGenerated { i, j, missing }) => Ok(Witness::NotGenerated { i, j, missing }),
            _ => Err(WitnessError::NoBranching),
        };
    };
    let ga_group = d.group(&Subset::single(a));
    let base = d.base_image(&Subset::single(a));
    let g_a = ga_group.elements().find(|&g| !base.contains(g)).expect("index ≥ 3");
    let g_tilde = ga_group
        .elements()
        .find(|&g| !base.contains(g) && !base.contains(ga_group.mul(ga_group.inv(g_a), g)))
        .expect("index ≥ 3");
    let ctx = Billiards::new(d).map_err(|_| WitnessError::NotEuclidean)?;
    let shot = closed_orthogonal_shot(ctx.placement(), a)?;
    let h: Vec<TypedLetter> = shot
        .sequence
        .labels
        .iter()
        .map(|&b| {
            let base_b = ctx.base(b);
            let elem = (0..base_b.parent_order())
                .find(|&g| !base_b.contains(g))
                .expect("index ≥ 2");
            TypedLetter { ty: b, elem }
        })
        .collect();
    let h_inv = inverse_word(d, &h);
    let letter = |elem| TypedLetter { ty: a, elem };
    let g_tilde_inv = ga_group.inv(g_tilde);
    let mut x = vec![letter(g_a)];
    x.extend_from_slice(&h);
    x.push(letter(g_tilde_inv));
    let mut y = h.clone();
    y.push(letter(g_a));
    y.extend_from_slice(&h);
    y.push(letter(g_tilde_inv));
    y.extend_from_slice(&h_inv);
    Ok(Witness::Index3(Box::new(FreePair {
        x: TypedWord(x),
        y: TypedWord(y),
        provenance: Index3Provenance {
            a,
            index: idx,
            g_a,
            g_tilde,
            h: TypedWord(h),
            fixture_id: shot.fixture_id.clone(),
            shot,
        },
    })))
}

/// Generator of the free group on `x`, `y`: 0 = x, 1 = y; `inverse` for
/// `x⁻¹`, `y⁻¹`. Printed as `x`, `X`, `y`, `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLetter {
    pub gen: u8,
    pub inverse: bool,
}

pub fn format_pair_word(w: &[PairLetter]) -> String {
    w.iter()
        .map(|l| match (l.gen, l.inverse) {
            (0, false) => 'x',
            (0, true) => 'X',
            (_, false) => 'y',
            (_, true) => 'Y',
        })
        .collect()
}

/// All freely reduced words of length exactly `n` over `x^±1`, `y^±1`.
pub fn reduced_words(n: usize) -> Vec<Vec<PairLetter>> {
    let letters = [(0, false), (0, true), (1, false), (1, true)].map(|(gen, inverse)| PairLetter { gen, inverse });
    let mut words: Vec<Vec<PairLetter>> = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .filter(|l| w.last().is_none_or(|p| !(p.gen == l.gen && p.inverse != l.inverse)))
                    .map(|l| {
                        let mut v = w.clone();
                        v.push(*l);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    words
}

/// `h^{±1}` or a single letter of `G_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    H(bool),
    A(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub depth: usize,
    /// Number of certified words of each length `1..=depth`.
    pub by_length: Vec<usize>,
    pub certified: usize,
    /// Longest billiard sequence used.
    pub max_reflections: usize,
}

impl FreePair {
    fn tokens(&self, w: &[PairLetter], d: &TriangleDiagram) -> Vec<Token> {
        let p = &self.provenance;
        let g = d.group(&Subset::single(p.a));
        let (ga, gt) = (p.g_a, p.g_tilde);
        let mut out = Vec::new();
        for l in w {
            let expansion = match (l.gen, l.inverse) {
                (0, false) => vec![Token::A(ga), Token::H(true), Token::A(g.inv(gt))],
                (0, true) => vec![Token::A(gt), Token::H(false), Token::A(g.inv(ga))],
                (_, false) => vec![
                    Token::H(true),
                    Token::A(ga),
                    Token::H(true),
                    Token::A(g.inv(gt)),
                    Token::H(false),
                ],
                (_, true) => vec![
                    Token::H(true),
                    Token::A(gt),
                    Token::H(false),
                    Token::A(g.inv(ga)),
                    Token::H(false),
                ],
            };
            out.extend(expansion);
        }
        out
    }

    /// Reduces the expansion of `w` to an alternating product of `h^{±1}`
    /// and letters of `G_a ∖ φ(G_∅)`, then builds and re-simulates its
    /// billiard sequence.
    pub fn certificate(
        &self,
        ctx: &Billiards,
        d: &TriangleDiagram,
        w: &[PairLetter],
    ) -> Result<Certificate, WitnessError> {
        let gap = || WitnessError::CertificationGap(format_pair_word(w));
        let p = &self.provenance;
        let a = p.a;
        let g = d.group(&Subset::single(a));
        let base = ctx.base(a);
        let mut stack: Vec<Token> = Vec::new();
        for t in self.tokens(w, d) {
            match (stack.last().copied(), t) {
                (Some(Token::H(s)), Token::H(u)) if s != u => {
                    stack.pop();
                }
                (Some(Token::A(x)), Token::A(y)) => {
                    stack.pop();
                    let z = g.mul(x, y);
                    if base.contains(z) {
                        return Err(gap());
                    }
                    stack.push(Token::A(z));
                }
                _ => stack.push(t),
            }
        }
        let alternates = stack
            .windows(2)
            .all(|pr| matches!(pr, [Token::H(_), Token::A(_)] | [Token::A(_), Token::H(_)]));
        if stack.is_empty() || !alternates {
            return Err(gap());
        }
        let h = &p.h.0;
        let h_inv = inverse_word(d, h);
        let mut letters = Vec::new();
        for t in &stack {
            match t {
                Token::H(true) => letters.extend_from_slice(h),
                Token::H(false) => letters.extend_from_slice(&h_inv),
                Token::A(e) => letters.push(TypedLetter { ty: a, elem: *e }),
            }
        }
        let word = TypedWord(letters);
        let geo: Geometry<QuadRat> = ctx.placement().geometry();
        let shot = &p.shot;
        let y0 = &shot.sequence.points[0];
        let dir = match stack[0] {
            Token::H(_) => shot.inward_normal.clone(),
            Token::A(_) => shot.inward_normal.neg(),
        };
        let sequence = shoot_along(&geo, y0, &dir, &word.types()).ok_or_else(gap)?;
        let cert = Certificate {
            word,
            sequence,
            conclusion: Conclusion::Nontrivial,
        };
        cert.check(ctx).map_err(|_: CertifyError| gap())?;
        Ok(cert)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = &self.provenance;
        json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "provenance": {
                "case": "index_at_least_3",
                "a": p.a,
                "index": p.index,
                "g_a": p.g_a,
                "g_tilde_a": p.g_tilde,
                "h": p.h.to_string(),
                "fixture_id": p.fixture_id,
                "shot_foot": p.shot.foot.json(),
                "shot_labels": p.shot.sequence.labels,
            }
        })
    }
}

/// Certifies every nonempty reduced word in `x`, `y` of length at most
/// `depth`.
pub fn verify_free_pair(d: &TriangleDiagram, pair: &FreePair, depth: usize) -> Result<VerifyReport, WitnessError> {
    verify_free_pair_threaded(d, pair, depth, 1)
}

/// As [`verify_free_pair`], splitting each length over `threads` workers.
/// The report does not depend on the thread count; on failure the first
/// failing word in enumeration order is reported.
pub fn verify_free_pair_threaded(
    d: &TriangleDiagram,
    pair: &FreePair,
    depth: usize,
    threads: usize,
) -> Result<VerifyReport, WitnessError> {
    let ctx = Billiards::new(d).map_err(|_| WitnessError::NotEuclidean)?;
    let mut by_length = Vec::new();
    let mut max_reflections = 0;
    for n in 1..=depth {
        let words = reduced_words(n);
        let chunk = words.len().div_ceil(threads.max(1));
        let results: Vec<Result<usize, WitnessError>> = std::thread::scope(|s| {
            let handles: Vec<_> = words
                .chunks(chunk)
                .map(|part| {
                    let ctx = &ctx;
                    s.spawn(move || {
                        part.iter()
                            .try_fold(0, |m, w| Ok(m.max(pair.certificate(ctx, d, w)?.sequence.reflections())))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        for r in results {
            max_reflections = max_reflections.max(r?);
        }
        by_length.push(words.len());
    }
    Ok(VerifyReport {
        depth,
        certified: by_length.iter().sum(),
        by_length,
        max_reflections,
    })
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Witness::Index3(p) => p.to_json(),
            Witness::NotGenerated { i, j, missing } => json!({
                "provenance": {
                    "case": "not_generated",
                    "pair": [i, j],
                    "index_of_generated_subgroup": missing,
                    "note": "the colimit splits as an amalgam; no explicit pair is built",
                }
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical, index3_example, not_generated_example, CANONICAL_TRIPLES};

    #[test]
    fn canonical_inputs_do_not_branch() {
        for t in CANONICAL_TRIPLES {
            let r = find_branching(&canonical(t)).unwrap();
            assert!(!r.branches && r.causes.is_empty());
            assert_eq!(free_pair(&canonical(t)), Err(WitnessError::NoBranching));
        }
    }

    #[test]
    fn causes() {
        let r = find_branching(&index3_example()).unwrap();
        assert_eq!(r.causes, vec![BranchCause::IndexAtLeast3 { a: 1, index: 4 }]);
        let r = find_branching(&not_generated_example()).unwrap();
        assert_eq!(r.causes, vec![BranchCause::NotGenerated { i: 1, j: 2, missing: 2 }]);
        assert!(matches!(
            free_pair(&not_generated_example()),
            Ok(Witness::NotGenerated { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words(0).len(), 1);
        assert_eq!(reduced_words(1).len(), 4);
        assert_eq!(reduced_words(4).len(), 108);
    }

    #[test]
    fn index3_pair_verifies() {
        let d = index3_example();
        let Witness::Index3(pair) = free_pair(&d).unwrap() else {
            panic!()
        };
        let r = verify_free_pair(&d, &pair, 4).unwrap();
        assert_eq!(r.by_length, vec![4, 12, 36, 108]);
        assert_eq!(verify_free_pair(&d, &pair, 0).unwrap().certified, 0);
    }
}

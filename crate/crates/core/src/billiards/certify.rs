//! Nontriviality and infinite-order certificates.
//!
//! The search unfolds `Δ` along the prescribed edge labels: reflecting the
//! triangle across edge `a₁`, the copy across its edge `a₂`, and so on,
//! turns a billiard path into a straight line crossing the shared edges
//! ("windows") in order. Starting points are sampled on the first window
//! at dyadic parameters; for each one the cone of directions through the
//! remaining windows is intersected exactly. Candidates are screened in
//! floating point first and then re-derived and re-simulated exactly.

use std::cmp::Ordering;

use serde_json::json;
use thiserror::Error;

use super::sim::shoot_along;
use super::{build_triangle, BilliardSequence, BuildError, Geometry, SequenceError, TrianglePlacement, TypedWord};
use crate::diagram::{
    classify_curvature, CurvatureClass, CurvatureKind, Label, Subset, TriangleDiagram, ValidationReport,
};
use crate::group::Subgroup;
use crate::plane::{Isometry, Scalar, Vec2};
use crate::quadrat::QuadRat;

/// Finest sampling level on the first window: `2^MAX_LEVEL` parameters.
const MAX_LEVEL: u32 = 10;

/// Periods re-simulated before an infinite-order certificate is issued.
pub const VALIDATED_PERIODS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion<F = QuadRat> {
    Nontrivial,
    /// The sequence closes up after one period of `period` reflections,
    /// returning to `y₀` with direction `d₀`; the unfolding of one period
    /// is a translation (or glide reflection) by `shift`.
    InfiniteOrder {
        period: usize,
        glide: bool,
        shift: Vec2<F>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<F = QuadRat> {
    pub word: TypedWord,
    pub sequence: BilliardSequence<F>,
    pub conclusion: Conclusion<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("the diagram is not valid:\n{0}")]
    Invalid(ValidationReport),
    #[error("billiards need a non-degenerate Euclidean triangle, found {0:?}")]
    NotEuclidean(CurvatureClass),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("the empty word has no billiard sequence with a reflection")]
    EmptyWord,
    #[error("letter {position} ({ty}:{elem}) does not name an element of a vertex group")]
    BadLetter { position: usize, ty: Label, elem: usize },
    #[error("letter {position} lies in the image of G_∅")]
    PreconditionLetterInBase { position: usize },
    #[error("no billiard sequence found (this does not show the element is trivial)")]
    NoSequenceFound,
    #[error("no periodic billiard sequence found (this does not show the element has finite order)")]
    NoPeriodicSequenceFound,
    #[error("the word is not adapted to the sequence")]
    NotAdapted,
    #[error("the sequence does not re-simulate: {0}")]
    Sequence(#[from] SequenceError),
}

/// Billiard context of a validated, non-degenerate Euclidean triangle.
#[derive(Debug, Clone)]
pub struct Billiards {
    placement: TrianglePlacement,
    /// `φ_{∅,{a}}(G_∅)` inside `G_a`, indexed by `a − 1`.
    base: [Subgroup; 3],
}

fn base_images(d: &TriangleDiagram) -> [Subgroup; 3] {
    [1, 2, 3].map(|a| d.base_image(&Subset::single(a)))
}

/// Word length, letter types and letter membership, per the definition of
/// an adapted word.
fn adapted_with<F: Scalar>(base: &[Subgroup; 3], w: &TypedWord, b: &BilliardSequence<F>) -> bool {
    w.len() == b.labels.len()
        && w.0.iter().zip(&b.labels).all(|(l, &a)| {
            l.ty == a
                && (1..=3).contains(&l.ty)
                && l.elem < base[l.ty as usize - 1].parent_order()
                && !base[l.ty as usize - 1].contains(l.elem)
        })
}

/// True iff the word has one letter per reflection, each of the edge's
/// type and outside the image of `G_∅`.
pub fn adapted<F: Scalar>(d: &TriangleDiagram, w: &TypedWord, b: &BilliardSequence<F>) -> bool {
    adapted_with(&base_images(d), w, b)
}

fn reflect_point<F: Scalar>(p: &Vec2<F>, a: &Vec2<F>, b: &Vec2<F>) -> Vec2<F> {
    a.add(&p.sub(a).reflect_across(&b.sub(a)))
}

type Window<F> = (Vec2<F>, Vec2<F>);

/// Triangle copies `Δ₀, Δ₁, …, Δ_n` and the windows `W_k = Δ_{k−1} ∩ Δ_k`.
fn unfold<F: Scalar>(geo: &Geometry<F>, labels: &[Label]) -> (Vec<Window<F>>, [Vec2<F>; 3]) {
    let mut verts = geo.vertices.clone();
    let mut windows = Vec::with_capacity(labels.len());
    for &a in labels {
        let e = geo.edges[a as usize - 1];
        let (pa, pb) = (verts[e.from].clone(), verts[e.to].clone());
        verts = verts.map(|v| reflect_point(&v, &pa, &pb));
        windows.push((pa, pb));
    }
    (windows, verts)
}

fn outward_normal<F: Scalar>(geo: &Geometry<F>, edge: usize) -> Vec2<F> {
    let e = geo.edges[edge];
    let n = geo.tangent(edge).perp();
    let opposite = &geo.vertices[3 - e.from - e.to];
    if n.dot(&opposite.sub(&geo.vertices[e.from])).sign() == Ordering::Greater {
        n.neg()
    } else {
        n
    }
}

fn in_closed_cone<F: Scalar>(l: &Vec2<F>, r: &Vec2<F>, v: &Vec2<F>) -> bool {
    l.cross(v).sign() != Ordering::Less && v.cross(r).sign() != Ordering::Less
}

/// Intersection of two cones of angle `< π`, each given counterclockwise.
fn intersect_cones<F: Scalar>(c1: (Vec2<F>, Vec2<F>), c2: (Vec2<F>, Vec2<F>)) -> Option<(Vec2<F>, Vec2<F>)> {
    let l = if in_closed_cone(&c1.0, &c1.1, &c2.0) {
        c2.0.clone()
    } else if in_closed_cone(&c2.0, &c2.1, &c1.0) {
        c1.0.clone()
    } else {
        return None;
    };
    let r = if in_closed_cone(&c1.0, &c1.1, &c2.1) {
        c2.1
    } else if in_closed_cone(&c2.0, &c2.1, &c1.1) {
        c1.1
    } else {
        return None;
    };
    (l.cross(&r).sign() == Ordering::Greater).then_some((l, r))
}

/// Start point `p` on the first window at parameter `u` and a direction
/// through the open interior of every later window, if one exists.
fn chord_through<F: Scalar>(
    geo: &Geometry<F>,
    first_edge: usize,
    windows: &[(Vec2<F>, Vec2<F>)],
    u: &F,
) -> Option<(Vec2<F>, Vec2<F>)> {
    let (a1, b1) = &windows[0];
    let p = a1.add(&b1.sub(a1).scale(u));
    let out = outward_normal(geo, first_edge);
    let mut cone: Option<(Vec2<F>, Vec2<F>)> = None;
    for (a, b) in &windows[1..] {
        let (mut l, mut r) = (a.sub(&p), b.sub(&p));
        match l.cross(&r).sign() {
            Ordering::Equal => return None,
            Ordering::Less => std::mem::swap(&mut l, &mut r),
            Ordering::Greater => {}
        }
        cone = Some(match cone {
            None => (l, r),
            Some(c) => intersect_cones(c, (l, r))?,
        });
    }
    let d = match cone {
        None => out.clone(),
        Some((l, r)) => l.add(&r),
    };
    (d.dot(&out).sign() == Ordering::Greater).then_some((p, d))
}

/// Midpoint of `p` and the point where the line through `p` along `d`
/// enters `Δ₀`.
fn start_before<F: Scalar>(geo: &Geometry<F>, first_edge: usize, p: &Vec2<F>, d: &Vec2<F>) -> Option<Vec2<F>> {
    let (_, q) = geo.exit(p, &d.neg(), Some(first_edge))?;
    Some(p.midpoint(&q))
}

/// Dyadic parameters `i / 2^level` with `i` odd, coarse levels first.
fn dyadic<F: Scalar>() -> impl Iterator<Item = (F, QuadRat)> {
    (1..=MAX_LEVEL).flat_map(|level| {
        let n = 1i64 << level;
        (1..n).step_by(2).map(move |i| {
            let q = QuadRat::frac(i, n);
            (F::from_quadrat(&q), q)
        })
    })
}

impl Billiards {
    pub fn new(d: &TriangleDiagram) -> Result<Self, CertifyError> {
        let report = d.validate();
        if !report.is_ok() {
            return Err(CertifyError::Invalid(report));
        }
        let class = classify_curvature(d);
        if class.kind != CurvatureKind::Euclidean || class.degenerate {
            return Err(CertifyError::NotEuclidean(class));
        }
        let placement = build_triangle(d.angles())?;
        Ok(Billiards {
            placement,
            base: base_images(d),
        })
    }

    pub fn placement(&self) -> &TrianglePlacement {
        &self.placement
    }

    pub fn base(&self, a: Label) -> &Subgroup {
        &self.base[a as usize - 1]
    }

    pub fn adapted<F: Scalar>(&self, w: &TypedWord, b: &BilliardSequence<F>) -> bool {
        adapted_with(&self.base, w, b)
    }

    fn check_word(&self, w: &TypedWord) -> Result<(), CertifyError> {
        if w.is_empty() {
            return Err(CertifyError::EmptyWord);
        }
        for (position, l) in w.0.iter().enumerate() {
            if !(1..=3).contains(&l.ty) || l.elem >= self.base[l.ty as usize - 1].parent_order() {
                return Err(CertifyError::BadLetter {
                    position,
                    ty: l.ty,
                    elem: l.elem,
                });
            }
            if self.base[l.ty as usize - 1].contains(l.elem) {
                return Err(CertifyError::PreconditionLetterInBase { position });
            }
        }
        Ok(())
    }

    /// A billiard sequence whose reflections hit the edges `labels` in
    /// order, found by the unfolding search and re-validated in `F`.
    pub fn find_sequence<F: Scalar>(&self, labels: &[Label]) -> Option<BilliardSequence<F>> {
        if labels.is_empty() || labels.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let first_edge = labels[0] as usize - 1;
        let geo_f: Geometry<f64> = self.placement.geometry();
        let geo: Geometry<F> = self.placement.geometry();
        let (win_f, _) = unfold(&geo_f, labels);
        let (win, _) = unfold(&geo, labels);
        for (uf, uq) in dyadic::<f64>() {
            if chord_through(&geo_f, first_edge, &win_f, &uf).is_none() {
                continue;
            }
            let u = F::from_quadrat(&uq);
            let Some((p, d)) = chord_through(&geo, first_edge, &win, &u) else {
                continue;
            };
            let Some(y0) = start_before(&geo, first_edge, &p, &d) else {
                continue;
            };
            if let Some(seq) = shoot_along(&geo, &y0, &d, labels) {
                if seq.validate(&geo).is_ok() {
                    return Some(seq);
                }
            }
        }
        None
    }

    fn certify_in<F: Scalar>(&self, w: &TypedWord) -> Result<Certificate<F>, CertifyError> {
        self.check_word(w)?;
        let seq = self
            .find_sequence::<F>(&w.types())
            .ok_or(CertifyError::NoSequenceFound)?;
        let cert = Certificate {
            word: w.clone(),
            sequence: seq,
            conclusion: Conclusion::Nontrivial,
        };
        cert.check(self)?;
        Ok(cert)
    }

    pub fn certify_nontrivial(&self, w: &TypedWord) -> Result<Certificate, CertifyError> {
        self.certify_in::<QuadRat>(w)
    }

    /// Same search in floating point with tolerance `1e-9`.
    pub fn certify_nontrivial_float(&self, w: &TypedWord) -> Result<Certificate<f64>, CertifyError> {
        self.certify_in::<f64>(w)
    }

    /// Looks for a closed billiard path whose period has the word's label
    /// sequence. The unfolding of one period is an isometry `T`; an
    /// invariant line is a translation direction (even length) or the
    /// glide axis (odd length).
    pub fn certify_infinite_order(&self, w: &TypedWord) -> Result<Certificate, CertifyError> {
        self.check_word(w)?;
        let labels = w.types();
        let n = labels.len();
        if labels.windows(2).any(|p| p[0] == p[1]) || labels[0] == labels[n - 1] {
            return Err(CertifyError::NoPeriodicSequenceFound);
        }
        let geo: Geometry<QuadRat> = self.placement.geometry();
        let first_edge = labels[0] as usize - 1;
        let (win, image) = unfold(&geo, &labels);
        let t = Isometry::from_triangles(&geo.vertices, &image);
        let out = outward_normal(&geo, first_edge);
        let (a1, b1) = win[0].clone();
        let mut candidates: Vec<(Vec2, Vec2)> = Vec::new();
        let (glide, shift) = if n.is_multiple_of(2) {
            if !t.is_translation() {
                return Err(CertifyError::NoPeriodicSequenceFound);
            }
            let v = t.translation.clone();
            for (_, u) in dyadic::<QuadRat>() {
                candidates.push((a1.add(&b1.sub(&a1).scale(&u)), v.clone()));
            }
            (false, v)
        } else {
            let l = &t.linear;
            let (c, s) = (l[0][0].clone(), l[1][0].clone());
            let mut axis = Vec2::new(QuadRat::one() + c.clone(), s.clone());
            if axis.is_zero() {
                axis = Vec2::new(s, QuadRat::one() - c);
            }
            let tr = &t.translation;
            let g = axis.scale(&(tr.dot(&axis) / axis.dot(&axis)));
            if g.is_zero() {
                return Err(CertifyError::NoPeriodicSequenceFound);
            }
            let on_axis = tr.sub(&g).scale(&QuadRat::frac(1, 2));
            let tw = b1.sub(&a1);
            let den = g.cross(&tw);
            if den.is_zero() {
                return Err(CertifyError::NoPeriodicSequenceFound);
            }
            let mu = a1.sub(&on_axis).cross(&g) / den;
            if mu.signum() == Ordering::Greater && mu < QuadRat::one() {
                candidates.push((a1.add(&tw.scale(&mu)), g.clone()));
            }
            (true, g)
        };
        if shift.dot(&out).signum() != Ordering::Greater {
            return Err(CertifyError::NoPeriodicSequenceFound);
        }
        let repeated: Vec<Label> = labels.iter().copied().cycle().take(n * VALIDATED_PERIODS).collect();
        for (p, d) in candidates {
            let Some(y0) = start_before(&geo, first_edge, &p, &d) else {
                continue;
            };
            let Some(long) = shoot_along(&geo, &y0, &d, &repeated) else {
                continue;
            };
            let closes = (1..=n * (VALIDATED_PERIODS - 1)).all(|k| long.points[k] == long.points[k + n])
                && long.directions[n] == d;
            if !closes {
                continue;
            }
            let mut points = long.points[..=n].to_vec();
            points.push(y0);
            let sequence = BilliardSequence {
                points,
                labels: labels.clone(),
                directions: long.directions[..=n].to_vec(),
            };
            let cert = Certificate {
                word: w.clone(),
                sequence,
                conclusion: Conclusion::InfiniteOrder {
                    period: n,
                    glide,
                    shift: shift.clone(),
                },
            };
            if cert.check(self).is_ok() {
                return Ok(cert);
            }
        }
        Err(CertifyError::NoPeriodicSequenceFound)
    }
}

pub fn certify_nontrivial(d: &TriangleDiagram, w: &TypedWord) -> Result<Certificate, CertifyError> {
    Billiards::new(d)?.certify_nontrivial(w)
}

pub fn certify_infinite_order(d: &TriangleDiagram, w: &TypedWord) -> Result<Certificate, CertifyError> {
    Billiards::new(d)?.certify_infinite_order(w)
}

impl<F: Scalar> Certificate<F> {
    pub fn mode(&self) -> Mode {
        if F::EXACT {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    /// The period repeated `k` times, for an infinite-order certificate.
    pub fn periodic_sequence(&self, k: usize) -> Option<BilliardSequence<F>> {
        let Conclusion::InfiniteOrder { period, .. } = &self.conclusion else {
            return None;
        };
        let s = &self.sequence;
        let mut points = vec![s.points[0].clone()];
        let mut directions = vec![s.directions[0].clone()];
        for _ in 0..k {
            points.extend_from_slice(&s.points[1..=*period]);
            directions.extend_from_slice(&s.directions[1..=*period]);
        }
        points.push(s.points[0].clone());
        let labels = s.labels.iter().copied().cycle().take(period * k).collect();
        Some(BilliardSequence {
            points,
            labels,
            directions,
        })
    }

    /// `word^k` with its adapted sequence; the period is `k` times longer.
    pub fn power(&self, k: usize) -> Option<Certificate<F>> {
        let Conclusion::InfiniteOrder { period, glide, shift } = &self.conclusion else {
            return None;
        };
        if k == 0 {
            return None;
        }
        Some(Certificate {
            word: self.word.pow(k),
            sequence: self.periodic_sequence(k)?,
            conclusion: Conclusion::InfiniteOrder {
                period: period * k,
                glide: *glide && k % 2 == 1,
                shift: shift.scale(&F::from_quadrat(&QuadRat::from_int(k as i64))),
            },
        })
    }

    /// Adaptedness and re-simulation; periodic certificates are also
    /// re-simulated over several periods.
    pub fn check(&self, ctx: &Billiards) -> Result<(), CertifyError> {
        if self.sequence.labels.is_empty() {
            return Err(CertifyError::EmptyWord);
        }
        if !ctx.adapted(&self.word, &self.sequence) {
            return Err(CertifyError::NotAdapted);
        }
        let geo: Geometry<F> = ctx.placement.geometry();
        self.sequence.validate(&geo)?;
        if let Conclusion::InfiniteOrder { period, .. } = &self.conclusion {
            let s = &self.sequence;
            let closes = s.labels.len() == *period
                && s.points[0].approx_eq(&s.points[period + 1])
                && s.directions[0].approx_eq(&s.directions[*period]);
            if !closes {
                return Err(CertifyError::NoPeriodicSequenceFound);
            }
            self.periodic_sequence(VALIDATED_PERIODS)
                .expect("periodic")
                .validate(&geo)?;
        }
        Ok(())
    }

    /// `{"word", "points", "directions", "labels", "mode", "conclusion"}`;
    /// exact coordinates are `[x_a, x_b, y_a, y_b]` with `x = x_a + x_b√3`.
    pub fn to_json(&self) -> serde_json::Value {
        let conclusion = match &self.conclusion {
            Conclusion::Nontrivial => json!("nontrivial"),
            Conclusion::InfiniteOrder { period, glide, shift } => json!({
                "infinite_order": {
                    "period": period,
                    "isometry": if *glide { "glide_reflection" } else { "translation" },
                    "shift": shift.json(),
                    "validated_periods": VALIDATED_PERIODS,
                }
            }),
        };
        json!({
            "word": self.word.0.iter().map(|l| json!([l.ty, l.elem])).collect::<Vec<_>>(),
            "points": self.sequence.points.iter().map(|p| p.json()).collect::<Vec<_>>(),
            "directions": self.sequence.directions.iter().map(|p| p.json()).collect::<Vec<_>>(),
            "labels": self.sequence.labels,
            "mode": match self.mode() { Mode::Exact => "exact", Mode::Float => "float" },
            "conclusion": conclusion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiards::closed_orthogonal_shot;
    use crate::catalog::{canonical, CANONICAL_TRIPLES};

    fn word(s: &str) -> TypedWord {
        s.parse().unwrap()
    }

    #[test]
    fn first_billiard_shot_in_the_equilateral_triangle() {
        let ctx = Billiards::new(&canonical((3, 3, 3))).unwrap();
        let cert = ctx.certify_nontrivial(&word("1:1,2:1,3:1")).unwrap();
        cert.check(&ctx).unwrap();
        assert_eq!(cert.sequence.labels, vec![1, 2, 3]);
        let float = ctx.certify_nontrivial_float(&word("1:1,2:1,3:1")).unwrap();
        float.check(&ctx).unwrap();
    }

    #[test]
    fn fagnano_loop_is_periodic() {
        let ctx = Billiards::new(&canonical((3, 3, 3))).unwrap();
        let cert = ctx.certify_infinite_order(&word("1:1,2:1,3:1")).unwrap();
        let Conclusion::InfiniteOrder { period, glide, .. } = cert.conclusion else {
            panic!()
        };
        assert_eq!((period, glide), (3, true));
        // The reflection points are the edge midpoints.
        let geo: Geometry<QuadRat> = ctx.placement().geometry();
        for (k, &a) in cert.sequence.labels.iter().enumerate() {
            let e = geo.edges[a as usize - 1];
            assert_eq!(
                cert.sequence.points[k + 1],
                geo.vertices[e.from].midpoint(&geo.vertices[e.to])
            );
        }
        for n in 1..=5 {
            cert.power(n).unwrap().check(&ctx).unwrap();
        }
    }

    #[test]
    fn rejected_words() {
        let ctx = Billiards::new(&canonical((3, 3, 3))).unwrap();
        assert_eq!(
            ctx.certify_nontrivial(&TypedWord::default()),
            Err(CertifyError::EmptyWord)
        );
        assert_eq!(
            ctx.certify_nontrivial(&word("1:1,1:1")),
            Err(CertifyError::NoSequenceFound)
        );
        assert_eq!(
            ctx.certify_nontrivial(&word("1:0")),
            Err(CertifyError::PreconditionLetterInBase { position: 0 })
        );
        // (ab)^3 = 1 around a vertex with angle π/3.
        let ctx = Billiards::new(&canonical((2, 4, 4))).unwrap();
        assert_eq!(
            ctx.certify_nontrivial(&word("1:1,2:1,1:1,2:1")),
            Err(CertifyError::NoSequenceFound)
        );
    }

    #[test]
    fn closed_shots_for_all_nine_cases() {
        for triple in CANONICAL_TRIPLES {
            let ctx = Billiards::new(&canonical(triple)).unwrap();
            let geo: Geometry<QuadRat> = ctx.placement().geometry();
            for a in 1..=3 {
                let shot = closed_orthogonal_shot(ctx.placement(), a).unwrap();
                let s = &shot.sequence;
                s.validate(&geo).unwrap();
                s.reversed().validate(&geo).unwrap();
                assert_eq!(s.points[0], *s.points.last().unwrap());
                assert_eq!(s.directions[0], s.directions.last().unwrap().neg());
                let rev: Vec<Label> = s.labels.iter().rev().copied().collect();
                assert_eq!(rev, s.labels);
            }
        }
    }
}

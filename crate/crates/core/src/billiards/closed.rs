//! Closed orthogonal billiard shots: from a point near edge `a`, straight
//! away from it, and back to the start in the opposite direction.

use std::sync::OnceLock;

use thiserror::Error;

use super::{BilliardSequence, Geometry, TrianglePlacement};
use crate::diagram::Label;
use crate::plane::Vec2;
use crate::quadrat::QuadRat;

/// Feet are sampled at `i / FEET` on the edge.
const FEET: usize = 1024;
const MAX_BOUNCES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedShotError {
    #[error("no closed orthogonal shot found for case {0}")]
    SearchExhausted(String),
    #[error("edge label {0} is not in {{1,2,3}}")]
    BadEdge(Label),
}

/// A self-retracing shot. The path leaves `y₀` along the inward normal of
/// edge `a`, meets some edge perpendicularly, retraces itself and arrives
/// at `y₀` along the outward normal; the reflection from `y₀` off edge `a`
/// at `foot` closes the loop. The label word is a palindrome.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedShot {
    pub fixture_id: String,
    pub edge_label: Label,
    pub foot: Vec2,
    pub inward_normal: Vec2,
    pub sequence: BilliardSequence,
}

fn case_index(triple: (usize, usize, usize)) -> usize {
    match triple {
        (3, 3, 3) => 0,
        (2, 4, 4) => 1,
        _ => 2,
    }
}

static FOOT_CACHE: [OnceLock<Option<usize>>; 9] = [const { OnceLock::new() }; 9];

fn bit_reverse(i: usize) -> usize {
    let bits = FEET.trailing_zeros();
    i.reverse_bits() >> (usize::BITS - bits)
}

/// Simulates from the foot at `i / FEET`; returns the shot if the path
/// meets an edge perpendicularly before any pocket.
fn try_foot(geo: &Geometry<QuadRat>, edge: usize, i: usize) -> Option<(Vec2, Vec2, BilliardSequence)> {
    let e = geo.edges[edge];
    let (a, b) = (&geo.vertices[e.from], &geo.vertices[e.to]);
    let t = b.sub(a);
    let foot = a.add(&t.scale(&QuadRat::frac(i as i64, FEET as i64)));
    let mut n = t.perp();
    if n.dot(&geo.vertices[3 - e.from - e.to].sub(a)).signum() == std::cmp::Ordering::Less {
        n = n.neg();
    }
    let mut out_points = Vec::new();
    let mut out_labels = Vec::new();
    let mut out_dirs = vec![n.clone()];
    let (mut p, mut d, mut skip) = (foot.clone(), n.clone(), Some(edge));
    for _ in 0..MAX_BOUNCES {
        let (k, q) = geo.exit(&p, &d, skip)?;
        if geo.in_pocket(&q) {
            return None;
        }
        let tk = geo.tangent(k);
        out_points.push(q.clone());
        out_labels.push(geo.edges[k].label);
        if d.dot(&tk).is_zero() {
            let y0 = foot.midpoint(&out_points[0]);
            let j = out_points.len();
            let mut points = vec![y0.clone()];
            points.extend(out_points.iter().cloned());
            points.extend(out_points[..j - 1].iter().rev().cloned());
            points.push(y0);
            let mut labels = out_labels.clone();
            labels.extend(out_labels[..j - 1].iter().rev());
            let mut directions = out_dirs.clone();
            directions.extend(out_dirs.iter().rev().map(|v| v.neg()));
            return Some((
                foot,
                n,
                BilliardSequence {
                    points,
                    labels,
                    directions,
                },
            ));
        }
        d = d.reflect_across(&tk);
        out_dirs.push(d.clone());
        p = q;
        skip = Some(k);
    }
    None
}

/// Searches feet in bit-reversed order; the successful foot is cached per
/// triple and geometric edge.
pub fn closed_orthogonal_shot(t: &TrianglePlacement, a: Label) -> Result<ClosedShot, ClosedShotError> {
    if !(1..=3).contains(&a) {
        return Err(ClosedShotError::BadEdge(a));
    }
    let geo: Geometry<QuadRat> = t.geometry();
    let edge = a as usize - 1;
    let g = t.geometric_edge(a);
    let fixture_id = format!("{}{}{}-e{}", t.triple.0, t.triple.1, t.triple.2, g);
    let slot = &FOOT_CACHE[case_index(t.triple) * 3 + g];
    let foot_index = *slot.get_or_init(|| {
        (1..FEET)
            .map(bit_reverse)
            .filter(|&i| i != 0)
            .find(|&i| try_foot(&geo, edge, i).is_some_and(|(_, _, s)| s.validate(&geo).is_ok()))
    });
    let i = foot_index.ok_or_else(|| ClosedShotError::SearchExhausted(fixture_id.clone()))?;
    let (foot, inward_normal, sequence) = try_foot(&geo, edge, i).expect("cached foot succeeds");
    Ok(ClosedShot {
        fixture_id,
        edge_label: a,
        foot,
        inward_normal,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_reversal_is_a_permutation() {
        let mut v: Vec<usize> = (0..FEET).map(bit_reverse).collect();
        assert_eq!(v[1], FEET / 2);
        v.sort_unstable();
        assert_eq!(v, (0..FEET).collect::<Vec<_>>());
    }
}

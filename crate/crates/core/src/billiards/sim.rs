//! Forward simulation and re-validation of billiard sequences.

use std::cmp::Ordering;

use thiserror::Error;

use super::Geometry;
use crate::diagram::Label;
use crate::plane::{Scalar, Vec2};

/// Points `y₀..y_m`, the labels `a₁..a_{m−1}` of the reflection points
/// `y₁..y_{m−1}`, and the directions `d₀..d_{m−1}` of the segments.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardSequence<F = crate::quadrat::QuadRat> {
    pub points: Vec<Vec2<F>>,
    pub labels: Vec<Label>,
    pub directions: Vec<Vec2<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShootError {
    #[error("direction is zero")]
    ZeroDirection,
    #[error("start point is not strictly inside the triangle")]
    StartNotInterior,
    #[error("reflection {0} lands in a pocket")]
    PocketHit(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("inconsistent lengths: {points} points, {labels} labels, {directions} directions")]
    Shape {
        points: usize,
        labels: usize,
        directions: usize,
    },
    #[error("endpoint {0} is not strictly inside the triangle")]
    EndpointNotInterior(usize),
    #[error("reflection {0} lands in a pocket")]
    PocketHit(usize),
    #[error("reflection {index}: expected edge {{{expected}}}, the path reaches edge {{{found}}}")]
    WrongEdge {
        index: usize,
        expected: Label,
        found: Label,
    },
    #[error("reflection {0}: recorded point differs from the simulated one")]
    PointMismatch(usize),
    #[error("segment {0}: recorded direction differs from the reflected one")]
    DirectionMismatch(usize),
    #[error("reflection {0} violates the reflection law")]
    ReflectionLaw(usize),
    #[error("the last point is not on the final segment")]
    EndNotOnSegment,
    #[error("segment {0} never reaches the boundary")]
    NoExit(usize),
}

/// Mirror image of `dir` across the line of the edge with tangent `t`.
pub fn reflect_direction<F: Scalar>(dir: &Vec2<F>, tangent: &Vec2<F>) -> Vec2<F> {
    dir.reflect_across(tangent)
}

/// Simulates at most `max_reflections` reflections from `start`. The last
/// point is the midpoint of the final segment, which is interior.
pub fn shoot<F: Scalar>(
    geo: &Geometry<F>,
    start: &Vec2<F>,
    dir: &Vec2<F>,
    max_reflections: usize,
) -> Result<BilliardSequence<F>, ShootError> {
    if dir.is_zero() {
        return Err(ShootError::ZeroDirection);
    }
    if !geo.is_interior(start) {
        return Err(ShootError::StartNotInterior);
    }
    let mut points = vec![start.clone()];
    let mut labels = Vec::new();
    let mut directions = vec![dir.clone()];
    let (mut p, mut d, mut skip) = (start.clone(), dir.clone(), None);
    for r in 0..max_reflections {
        let (e, q) = geo.exit(&p, &d, skip).expect("a ray from inside leaves the triangle");
        if geo.in_pocket(&q) {
            return Err(ShootError::PocketHit(r + 1));
        }
        d = reflect_direction(&d, &geo.tangent(e));
        labels.push(geo.edges[e].label);
        points.push(q.clone());
        directions.push(d.clone());
        p = q;
        skip = Some(e);
    }
    let (_, q) = geo.exit(&p, &d, skip).expect("a ray from inside leaves the triangle");
    points.push(p.midpoint(&q));
    Ok(BilliardSequence {
        points,
        labels,
        directions,
    })
}

/// Simulates exactly `labels.len()` reflections and stops at the first
/// reflection whose edge differs from the prescribed one.
pub(crate) fn shoot_along<F: Scalar>(
    geo: &Geometry<F>,
    start: &Vec2<F>,
    dir: &Vec2<F>,
    labels: &[Label],
) -> Option<BilliardSequence<F>> {
    if dir.is_zero() || !geo.is_interior(start) {
        return None;
    }
    let mut points = vec![start.clone()];
    let mut directions = vec![dir.clone()];
    let (mut p, mut d, mut skip) = (start.clone(), dir.clone(), None);
    for &want in labels {
        let (e, q) = geo.exit(&p, &d, skip)?;
        if geo.edges[e].label != want || geo.in_pocket(&q) {
            return None;
        }
        d = reflect_direction(&d, &geo.tangent(e));
        points.push(q.clone());
        directions.push(d.clone());
        p = q;
        skip = Some(e);
    }
    let (_, q) = geo.exit(&p, &d, skip)?;
    points.push(p.midpoint(&q));
    Some(BilliardSequence {
        points,
        labels: labels.to_vec(),
        directions,
    })
}

impl<F: Scalar> BilliardSequence<F> {
    /// Number of reflections `m − 1`.
    pub fn reflections(&self) -> usize {
        self.labels.len()
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> BilliardSequence<F> {
        BilliardSequence {
            points: self.points.iter().rev().cloned().collect(),
            labels: self.labels.iter().rev().copied().collect(),
            directions: self.directions.iter().rev().map(|d| d.neg()).collect(),
        }
    }

    /// Re-simulates from `y₀` along `d₀` and checks every recorded point,
    /// label and direction, the reflection law, the pocket margin and that
    /// both endpoints are interior.
    pub fn validate(&self, geo: &Geometry<F>) -> Result<(), SequenceError> {
        let m = self.labels.len();
        if self.points.len() != m + 2 || self.directions.len() != m + 1 {
            return Err(SequenceError::Shape {
                points: self.points.len(),
                labels: m,
                directions: self.directions.len(),
            });
        }
        if !geo.is_interior(&self.points[0]) {
            return Err(SequenceError::EndpointNotInterior(0));
        }
        if !geo.is_interior(&self.points[m + 1]) {
            return Err(SequenceError::EndpointNotInterior(m + 1));
        }
        let mut p = self.points[0].clone();
        let mut d = self.directions[0].clone();
        if d.is_zero() {
            return Err(SequenceError::DirectionMismatch(0));
        }
        let mut skip = None;
        for i in 0..m {
            let (e, q) = geo.exit(&p, &d, skip).ok_or(SequenceError::NoExit(i))?;
            let found = geo.edges[e].label;
            if found != self.labels[i] {
                return Err(SequenceError::WrongEdge {
                    index: i + 1,
                    expected: self.labels[i],
                    found,
                });
            }
            if !q.approx_eq(&self.points[i + 1]) {
                return Err(SequenceError::PointMismatch(i + 1));
            }
            if geo.in_pocket(&q) {
                return Err(SequenceError::PocketHit(i + 1));
            }
            let t = geo.tangent(e);
            let out = reflect_direction(&d, &t);
            let n = t.perp();
            let law = (d.dot(&t) - out.dot(&t)).sign() == Ordering::Equal
                && (d.dot(&n) + out.dot(&n)).sign() == Ordering::Equal;
            if !law {
                return Err(SequenceError::ReflectionLaw(i + 1));
            }
            if !out.approx_eq(&self.directions[i + 1]) {
                return Err(SequenceError::DirectionMismatch(i + 1));
            }
            p = q;
            d = out;
            skip = Some(e);
        }
        // The endpoint lies on the ray; being interior, it precedes the exit.
        let to_end = self.points[m + 1].sub(&p);
        if !d.same_direction(&to_end) {
            return Err(SequenceError::EndNotOnSegment);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiards::build_triangle;
    use crate::diagram::GSAngle;
    use crate::quadrat::QuadRat;

    fn tri244() -> Geometry<QuadRat> {
        let a = GSAngle::pi_over;
        build_triangle([a(2), a(4), a(4)]).unwrap().geometry()
    }

    #[test]
    fn two_reflections_in_the_right_isosceles_triangle() {
        let geo = tri244();
        let q = QuadRat::frac;
        let start = Vec2::new(q(1, 4), q(1, 4));
        let seq = shoot(&geo, &start, &Vec2::from_ints(1, 0), 2).unwrap();
        assert_eq!(seq.points[1], Vec2::new(q(3, 4), q(1, 4)));
        assert_eq!(seq.directions[1], Vec2::from_ints(0, -1));
        assert_eq!(seq.points[2], Vec2::new(q(3, 4), q(0, 1)));
        assert_eq!(seq.directions[2], Vec2::from_ints(0, 1));
        assert_eq!(seq.labels, vec![3, 2]);
        seq.validate(&geo).unwrap();
        seq.reversed().validate(&geo).unwrap();
    }

    #[test]
    fn pocket_and_zero_direction() {
        let geo = tri244();
        let q = QuadRat::frac;
        let start = Vec2::new(q(1, 4), q(1, 4));
        // Aimed at the vertex (1, 0).
        assert_eq!(
            shoot(&geo, &start, &Vec2::new(q(3, 4), q(-1, 4)), 3),
            Err(ShootError::PocketHit(1))
        );
        assert_eq!(shoot(&geo, &start, &Vec2::zero(), 3), Err(ShootError::ZeroDirection));
        let seq = shoot(&geo, &start, &Vec2::from_ints(1, 0), 0).unwrap();
        assert_eq!(seq.points.len(), 2);
        assert_eq!(seq.reflections(), 0);
    }
}

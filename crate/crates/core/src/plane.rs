//! Plane vectors over an ordered field and exact affine isometries.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::quadrat::QuadRat;

/// Absolute tolerance used by floating-point geometry.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Number type the billiard simulation is generic over: exact `QuadRat`
/// or `f64` with a fixed tolerance.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_quadrat(q: &QuadRat) -> Self;
    fn from_f64(x: f64) -> Self;
    /// Sign of the value; `Equal` means zero (within tolerance for floats).
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
    /// JSON components: `["p/q", "r/s"]` for exact values, one number for floats.
    fn json_parts(&self) -> Vec<serde_json::Value>;
    const EXACT: bool;
}

impl Scalar for QuadRat {
    fn zero() -> Self {
        QuadRat::zero()
    }
    fn one() -> Self {
        QuadRat::one()
    }
    fn from_quadrat(q: &QuadRat) -> Self {
        q.clone()
    }
    fn from_f64(x: f64) -> Self {
        let r = num_rational::BigRational::from_float(x).expect("finite float");
        QuadRat::rational(r)
    }
    fn sign(&self) -> Ordering {
        self.signum()
    }
    fn to_f64(&self) -> f64 {
        QuadRat::to_f64(self)
    }
    fn json_parts(&self) -> Vec<serde_json::Value> {
        self.to_strings().into_iter().map(serde_json::Value::String).collect()
    }
    const EXACT: bool = true;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_quadrat(q: &QuadRat) -> Self {
        q.to_f64()
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn sign(&self) -> Ordering {
        if self.abs() <= FLOAT_TOLERANCE {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn json_parts(&self) -> Vec<serde_json::Value> {
        vec![serde_json::json!(self)]
    }
    const EXACT: bool = false;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2<F = QuadRat> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Vec2<F> {
    pub fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x.clone(), -self.y.clone())
    }

    pub fn dot(&self, o: &Self) -> F {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> F {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.sign() == Ordering::Equal && self.y.sign() == Ordering::Equal
    }

    /// Rotation by +90°.
    pub fn perp(&self) -> Self {
        Self::new(-self.y.clone(), self.x.clone())
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        let half = F::one() / (F::one() + F::one());
        self.add(o).scale(&half)
    }

    /// Equal up to the scalar's notion of zero.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    /// Same direction: parallel and pointing the same way.
    pub fn same_direction(&self, o: &Self) -> bool {
        self.cross(o).sign() == Ordering::Equal && self.dot(o).sign() == Ordering::Greater
    }

    /// `[x parts..., y parts...]`.
    pub fn json(&self) -> serde_json::Value {
        let mut v = self.x.json_parts();
        v.extend(self.y.json_parts());
        serde_json::Value::Array(v)
    }

    pub fn to_f64(&self) -> Vec2<f64> {
        Vec2::new(self.x.to_f64(), self.y.to_f64())
    }

    /// Mirror image of the direction `self` across a line with tangent `t`:
    /// `2 (d·t)/(t·t) t − d`.
    pub fn reflect_across(&self, t: &Self) -> Self {
        let two = F::one() + F::one();
        let k = two * self.dot(t) / t.dot(t);
        t.scale(&k).sub(self)
    }
}

impl Vec2<QuadRat> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(QuadRat::from_int(x), QuadRat::from_int(y))
    }

    pub fn convert<G: Scalar>(&self) -> Vec2<G> {
        Vec2::new(G::from_quadrat(&self.x), G::from_quadrat(&self.y))
    }
}

/// Affine isometry `p ↦ L p + t` of the plane with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Isometry {
    /// Row-major 2×2 linear part.
    pub linear: [[QuadRat; 2]; 2],
    pub translation: Vec2<QuadRat>,
}

impl Isometry {
    pub fn identity() -> Self {
        let (o, z) = (QuadRat::one(), QuadRat::zero());
        Self {
            linear: [[o.clone(), z.clone()], [z, o]],
            translation: Vec2::zero(),
        }
    }

    /// Reflection across the line through `p` and `q`.
    pub fn reflection(p: &Vec2, q: &Vec2) -> Self {
        let t = q.sub(p);
        let n = t.dot(&t);
        let (tx, ty) = (t.x.clone(), t.y.clone());
        let two = QuadRat::from_int(2);
        let c = (tx.clone() * tx.clone() - ty.clone() * ty.clone()) / n.clone();
        let s = two * tx * ty / n;
        let linear = [[c.clone(), s.clone()], [s, -c]];
        let mut iso = Self {
            linear,
            translation: Vec2::zero(),
        };
        // Fix p: t = p - L p.
        iso.translation = p.sub(&iso.apply_linear(p));
        iso
    }

    /// The affine map sending the vertices of `src` to those of `dst`.
    pub fn from_triangles(src: &[Vec2; 3], dst: &[Vec2; 3]) -> Self {
        let (s1, s2) = (src[1].sub(&src[0]), src[2].sub(&src[0]));
        let (d1, d2) = (dst[1].sub(&dst[0]), dst[2].sub(&dst[0]));
        let det = s1.cross(&s2);
        // S⁻¹ = [[s2.y, -s2.x], [-s1.y, s1.x]] / det
        let inv = [
            [s2.y.clone() / det.clone(), -s2.x.clone() / det.clone()],
            [-s1.y.clone() / det.clone(), s1.x.clone() / det],
        ];
        let d = [[d1.x.clone(), d2.x.clone()], [d1.y.clone(), d2.y.clone()]];
        let entry = |i: usize, j: usize| d[i][0].clone() * inv[0][j].clone() + d[i][1].clone() * inv[1][j].clone();
        let mut iso = Isometry {
            linear: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            translation: Vec2::zero(),
        };
        iso.translation = dst[0].sub(&iso.apply_linear(&src[0]));
        iso
    }

    pub fn translation_by(v: Vec2) -> Self {
        Self {
            translation: v,
            ..Self::identity()
        }
    }

    pub fn apply_linear(&self, v: &Vec2) -> Vec2 {
        let l = &self.linear;
        Vec2::new(
            l[0][0].clone() * v.x.clone() + l[0][1].clone() * v.y.clone(),
            l[1][0].clone() * v.x.clone() + l[1][1].clone() * v.y.clone(),
        )
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        self.apply_linear(p).add(&self.translation)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let a = &self.linear;
        let b = &other.linear;
        let entry = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        let linear = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
        let translation = self.apply_linear(&other.translation).add(&self.translation);
        Isometry { linear, translation }
    }

    pub fn inverse(&self) -> Isometry {
        // Orthogonal linear part: inverse is the transpose.
        let l = &self.linear;
        let linear = [[l[0][0].clone(), l[1][0].clone()], [l[0][1].clone(), l[1][1].clone()]];
        let mut inv = Isometry {
            linear,
            translation: Vec2::zero(),
        };
        inv.translation = inv.apply_linear(&self.translation).neg();
        inv
    }

    pub fn determinant(&self) -> QuadRat {
        let l = &self.linear;
        l[0][0].clone() * l[1][1].clone() - l[0][1].clone() * l[1][0].clone()
    }

    pub fn trace(&self) -> QuadRat {
        self.linear[0][0].clone() + self.linear[1][1].clone()
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity()
    }

    pub fn linear_is_identity(&self) -> bool {
        self.linear == Isometry::identity().linear
    }

    pub fn is_translation(&self) -> bool {
        self.linear_is_identity() && !self.translation.is_zero()
    }

    /// Columns have unit length and are perpendicular.
    pub fn is_orthogonal(&self) -> bool {
        let l = &self.linear;
        let c0 = Vec2::new(l[0][0].clone(), l[1][0].clone());
        let c1 = Vec2::new(l[0][1].clone(), l[1][1].clone());
        c0.dot(&c0) == QuadRat::one() && c1.dot(&c1) == QuadRat::one() && c0.dot(&c1).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflect_direction_across_diagonal() {
        // (1,0) across x + y = 1, tangent (1,-1).
        let d = Vec2::from_ints(1, 0);
        let t = Vec2::from_ints(1, -1);
        assert_eq!(d.reflect_across(&t), Vec2::from_ints(0, -1));
        // Parallel direction is fixed; reflecting twice is the identity.
        assert_eq!(t.reflect_across(&t), t);
        let e = Vec2::new(QuadRat::frac(2, 3), QuadRat::sqrt3());
        assert_eq!(e.reflect_across(&t).reflect_across(&t), e);
    }

    #[test]
    fn reflection_isometry_is_involution() {
        let p = Vec2::from_ints(1, 0);
        let q = Vec2::new(QuadRat::frac(1, 2), QuadRat::from_parts(0, 1, 1, 2));
        let r = Isometry::reflection(&p, &q);
        assert!(r.is_orthogonal());
        assert_eq!(r.determinant(), QuadRat::from_int(-1));
        assert!(r.compose(&r).is_identity());
        assert_eq!(r.apply(&p), p);
        assert_eq!(r.apply(&q), q);
        assert!(r.compose(&r.inverse()).is_identity());
    }
}

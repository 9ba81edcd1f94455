//! Gersten–Stallings angles and the curvature trichotomy.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use super::{ColimitWord, CorsonDiagram, Label, Letter, Subset, TriangleDiagram};
use crate::group::Elem;

/// The angle `2π/m̂`, or zero when the amalgam embeds into `G_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GSAngle {
    Zero,
    TwoPiOver(usize),
}

impl GSAngle {
    pub fn m_hat(&self) -> Option<usize> {
        match self {
            GSAngle::Zero => None,
            GSAngle::TwoPiOver(m) => Some(*m),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GSAngle::Zero)
    }

    /// The angle as a multiple of π: `2/m̂`, or `0`.
    pub fn over_pi(&self) -> Rational64 {
        match self {
            GSAngle::Zero => Rational64::from_integer(0),
            GSAngle::TwoPiOver(m) => Rational64::new(2, *m as i64),
        }
    }

    /// `k` such that the angle is `π/k`, when `m̂` is even.
    pub fn k(&self) -> Option<usize> {
        match self {
            GSAngle::TwoPiOver(m) if m % 2 == 0 => Some(m / 2),
            _ => None,
        }
    }

    /// The angle `π/k`.
    pub fn pi_over(k: usize) -> GSAngle {
        GSAngle::TwoPiOver(2 * k)
    }
}

impl fmt::Display for GSAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GSAngle::Zero => write!(f, "0"),
            GSAngle::TwoPiOver(m) if m % 2 == 0 => write!(f, "π/{}", m / 2),
            GSAngle::TwoPiOver(m) => write!(f, "2π/{m}"),
        }
    }
}

/// An angle with the lexicographically least shortest kernel word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AngleReport {
    pub i: Label,
    pub j: Label,
    pub angle: GSAngle,
    /// Alternating word of length `m̂` that is trivial in `G_{i,j}`.
    pub witness: Option<ColimitWord>,
}

/// Elements of `G_i` whose image in `G_{i,j}` avoids `φ_{∅,{i,j}}(G_∅)`,
/// together with that image.
pub fn angle_letters(d: &CorsonDiagram, side: Label, other: Label) -> Vec<(Elem, Elem)> {
    let pair = Subset::pair(side, other);
    let s = Subset::single(side);
    let base = d.base_image(&pair);
    let h = d.hom(&s, &pair);
    d.group(&s)
        .elements()
        .map(|x| (x, h.apply(x)))
        .filter(|&(_, y)| !base.contains(y))
        .collect()
}

/// Breadth-first search over `(product, side of last letter)`.
///
/// The witness is chosen greedily: at each position the least letter
/// (side `i` before side `j`, then by element index) that can still be
/// completed to a kernel word of the minimal length.
pub fn gs_angle(d: &CorsonDiagram, i: Label, j: Label) -> AngleReport {
    let pair = Subset::pair(i, j);
    let g = d.group(&pair);
    let n = g.order();
    let e = g.identity();
    let sides = [angle_letters(d, i, j), angle_letters(d, j, i)];

    // Shortest nonempty alternating word with trivial product.
    // State index: product * 2 + side of last letter.
    let mut dist = vec![usize::MAX; 2 * n];
    let mut queue = VecDeque::new();
    let mut m_hat = None;
    for (s, letters) in sides.iter().enumerate() {
        for &(_, y) in letters {
            let st = y * 2 + s;
            if dist[st] == usize::MAX {
                dist[st] = 1;
                queue.push_back(st);
            }
        }
    }
    while let Some(st) = queue.pop_front() {
        let (p, s) = (st / 2, st % 2);
        if p == e {
            m_hat = Some(dist[st]);
            break;
        }
        for &(_, y) in &sides[1 - s] {
            let nx = g.mul(p, y) * 2 + (1 - s);
            if dist[nx] == usize::MAX {
                dist[nx] = dist[st] + 1;
                queue.push_back(nx);
            }
        }
    }
    let Some(m) = m_hat else {
        return AngleReport {
            i,
            j,
            angle: GSAngle::Zero,
            witness: None,
        };
    };

    // can[r][q*2+s]: some alternating word of length r whose first letter is
    // on side s has product q.
    let mut can = vec![vec![false; 2 * n]; m + 1];
    for r in 1..=m {
        for s in 0..2 {
            for &(_, y) in &sides[s] {
                if r == 1 {
                    can[1][y * 2 + s] = true;
                    continue;
                }
                // y * rest = q, rest starts on the other side.
                for rest in 0..n {
                    if can[r - 1][rest * 2 + (1 - s)] {
                        can[r][g.mul(y, rest) * 2 + s] = true;
                    }
                }
            }
        }
    }
    let mut letters = Vec::with_capacity(m);
    let mut p = e;
    let mut last: Option<usize> = None;
    for pos in 0..m {
        let remaining = m - pos;
        let mut chosen = None;
        'search: for s in 0..2 {
            if last == Some(s) {
                continue;
            }
            for &(x, y) in &sides[s] {
                let q = g.mul(p, y);
                let ok = if remaining == 1 {
                    q == e
                } else {
                    can[remaining - 1][g.inv(q) * 2 + (1 - s)]
                };
                if ok {
                    chosen = Some((s, x, q));
                    break 'search;
                }
            }
        }
        let (s, x, q) = chosen.expect("a completion exists at every step");
        letters.push(Letter {
            subset: Subset::single(if s == 0 { i } else { j }),
            elem: x,
        });
        p = q;
        last = Some(s);
    }
    AngleReport {
        i,
        j,
        angle: GSAngle::TwoPiOver(m),
        witness: Some(ColimitWord { letters }),
    }
}

/// Angles for every unordered pair `i < j`.
pub fn all_angles(d: &CorsonDiagram) -> BTreeMap<(Label, Label), AngleReport> {
    d.pairs()
        .into_iter()
        .map(|(i, j)| ((i, j), gs_angle(d, i, j)))
        .collect()
}

/// Whether `φ(G_i) ∩ φ(G_j)` is strictly larger than `φ(G_∅)` in `G_{i,j}`.
pub fn images_meet_beyond_base(d: &CorsonDiagram, i: Label, j: Label) -> bool {
    let pair = Subset::pair(i, j);
    let a = d.image(&Subset::single(i), &pair);
    let b = d.image(&Subset::single(j), &pair);
    a.intersection(&b).order() > d.base_image(&pair).order()
}

/// All triples whose angle sum exceeds π, compared exactly.
pub fn spherical_triples(angles: &BTreeMap<(Label, Label), GSAngle>) -> Vec<[Label; 3]> {
    let mut labels: Vec<Label> = angles.keys().flat_map(|&(i, j)| [i, j]).collect();
    labels.sort_unstable();
    labels.dedup();
    let get = |a: Label, b: Label| angles.get(&(a.min(b), a.max(b))).copied().unwrap_or(GSAngle::Zero);
    let mut out = Vec::new();
    for (x, &i) in labels.iter().enumerate() {
        for (y, &j) in labels.iter().enumerate().skip(x + 1) {
            for &k in &labels[y + 1..] {
                let sum = get(i, j).over_pi() + get(i, k).over_pi() + get(j, k).over_pi();
                if sum > Rational64::from_integer(1) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurvatureKind {
    Spherical,
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CurvatureClass {
    pub kind: CurvatureKind,
    /// Some angle is zero.
    pub degenerate: bool,
}

/// Exact comparison of the angle sum with π.
pub fn classify_angles(angles: &[GSAngle; 3]) -> CurvatureClass {
    let sum: Rational64 = angles.iter().map(|a| a.over_pi()).sum();
    let one = Rational64::from_integer(1);
    let kind = match sum.cmp(&one) {
        std::cmp::Ordering::Greater => CurvatureKind::Spherical,
        std::cmp::Ordering::Equal => CurvatureKind::Euclidean,
        std::cmp::Ordering::Less => CurvatureKind::Hyperbolic,
    };
    CurvatureClass {
        kind,
        degenerate: angles.iter().any(|a| a.is_zero()),
    }
}

pub fn classify_curvature(d: &TriangleDiagram) -> CurvatureClass {
    classify_angles(&d.angles())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curvature_of_small_triples() {
        let a = |k| GSAngle::pi_over(k);
        assert_eq!(classify_angles(&[a(2), a(4), a(4)]).kind, CurvatureKind::Euclidean);
        assert_eq!(classify_angles(&[a(2), a(3), a(7)]).kind, CurvatureKind::Hyperbolic);
        let c = classify_angles(&[GSAngle::Zero, a(2), a(2)]);
        assert_eq!(
            c,
            CurvatureClass {
                kind: CurvatureKind::Euclidean,
                degenerate: true
            }
        );
        assert_eq!(classify_angles(&[a(2), a(2), a(9)]).kind, CurvatureKind::Spherical);
    }

    #[test]
    fn spherical_scan() {
        let mut m = BTreeMap::new();
        m.insert((1, 2), GSAngle::pi_over(2));
        m.insert((1, 3), GSAngle::pi_over(2));
        m.insert((2, 3), GSAngle::pi_over(2));
        assert_eq!(spherical_triples(&m), vec![[1, 2, 3]]);
        for v in m.values_mut() {
            *v = GSAngle::pi_over(3);
        }
        assert!(spherical_triples(&m).is_empty());
        for v in m.values_mut() {
            *v = GSAngle::Zero;
        }
        assert!(spherical_triples(&m).is_empty());
    }
}

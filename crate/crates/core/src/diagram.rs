//! Corson diagrams and triangles of groups.
//!
//! A diagram over an index set `I` holds a finite group `G_J` for every
//! `J ⊆ I` with `|J| ≤ 2` and an injective homomorphism `G_J₁ → G_J₂` for
//! every inclusion `J₁ ⊂ J₂`. Structural problems (missing groups, maps that
//! are not homomorphisms) are errors at construction; the semantic
//! conditions (injectivity, commutativity, no angle equal to π) are
//! collected by [`CorsonDiagram::validate`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Elem, FiniteGroup, GroupError, Homomorphism, Subgroup};

mod angle;
mod derivation;
mod dominate;
mod json;
mod link;
mod presentation;

pub use angle::{
    all_angles, angle_letters, classify_angles, classify_curvature, gs_angle, images_meet_beyond_base,
    spherical_triples, AngleReport, CurvatureClass, CurvatureKind, GSAngle,
};
pub use derivation::{
    derivation_chain_check, derivation_check, DerivationError, Direction, FreeLetter, FreeWord, Step,
};
pub use dominate::{dominate, DominateError};
pub use json::{DiagramJson, GroupEntry};
pub use link::{link_graph, LinkError, LinkGraph};
pub use presentation::export_presentation;

/// A label of the index set. Labels are single digits so that subsets can
/// be written as digit strings.
pub type Label = u8;

/// A subset of the index set with at most two labels, kept sorted.
///
/// Subsets order like their digit-string keys: `∅ < 1 < 12 < 13 < 2 < 23 < 3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(Vec<Label>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn single(i: Label) -> Self {
        Subset(vec![i])
    }

    pub fn pair(i: Label, j: Label) -> Self {
        assert_ne!(i, j, "a pair needs two distinct labels");
        Subset(vec![i.min(j), i.max(j)])
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: Label) -> bool {
        self.0.contains(&i)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|x| other.contains(*x))
    }

    /// Digit-string key: `""`, `"1"`, `"12"`, ...
    pub fn key(&self) -> String {
        self.0.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn from_key(key: &str) -> Option<Self> {
        let mut labels = Vec::new();
        for ch in key.chars() {
            let d = ch.to_digit(10)? as Label;
            if d == 0 {
                return None;
            }
            labels.push(d);
        }
        if labels.len() > 2 || labels.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Subset(labels))
    }

    fn map_labels(&self, f: impl Fn(Label) -> Label) -> Subset {
        let mut v: Vec<Label> = self.0.iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        Subset(v)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "∅")
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

/// Key of a homomorphism, `"->1"` or `"1->12"`.
pub fn hom_key(from: &Subset, to: &Subset) -> String {
    format!("{}->{}", from.key(), to.key())
}

/// One letter of a word in the colimit presentation: an element of `G_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub subset: Subset,
    pub elem: Elem,
}

/// A word in the colimit presentation. Inverses are group inverses, so no
/// formal inverse letters occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ColimitWord {
    pub letters: Vec<Letter>,
}

impl ColimitWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Every letter names an existing element of an existing group.
    pub fn is_valid(&self, d: &CorsonDiagram) -> bool {
        self.letters
            .iter()
            .all(|l| d.groups.get(&l.subset).is_some_and(|g| l.elem < g.order()))
    }

    /// Product of the word inside `G_target`, when every letter's subset is
    /// contained in `target`.
    pub fn evaluate_in(&self, d: &CorsonDiagram, target: &Subset) -> Option<Elem> {
        let g = d.groups.get(target)?;
        let mut acc = g.identity();
        for l in &self.letters {
            let x = d.push_forward(&l.subset, target, l.elem)?;
            acc = g.mul(acc, x);
        }
        Some(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("index set must consist of distinct labels 1..=9, got {0:?}")]
    BadIndexSet(Vec<Label>),
    #[error("group G_{{{0}}} is missing")]
    MissingGroup(String),
    #[error("homomorphism {0} is missing")]
    MissingHom(String),
    #[error("unexpected group key {0:?}")]
    UnexpectedGroup(String),
    #[error("unexpected homomorphism key {0:?}")]
    UnexpectedHom(String),
    #[error("group G_{{{key}}}: {source}")]
    Group { key: String, source: GroupError },
    #[error("homomorphism {key}: {source}")]
    Hom { key: String, source: GroupError },
    #[error(
        "group G_{{{key}}} is declared infinite ({description}); only finite Cayley tables are supported, \
         so inputs with infinite vertex or edge groups are rejected"
    )]
    InfiniteInput { key: String, description: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("a triangle of groups needs the index set {{1,2,3}}, got {0:?}")]
    NotTriangle(Vec<Label>),
}

/// A violated diagram invariant together with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ValidationIssue {
    /// `φ_{from,to}(x) = φ_{from,to}(y)` with `x ≠ y`.
    NonInjectiveHom { from: Subset, to: Subset, x: Elem, y: Elem },
    /// The route `G_∅ → G_{via} → G_{pair}` disagrees with `φ_{∅,pair}` at `x`.
    NotCommutative { via: Label, pair: Subset, x: Elem },
    /// The angle at `{i,j}` equals π; the witness is a kernel word of length 2.
    AnglePi { i: Label, j: Label, witness: ColimitWord },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "valid");
        }
        for issue in &self.issues {
            match issue {
                ValidationIssue::NonInjectiveHom { from, to, x, y } => writeln!(
                    f,
                    "NonInjectiveHom: {} sends {x} and {y} to the same element",
                    hom_key(from, to)
                )?,
                ValidationIssue::NotCommutative { via, pair, x } => writeln!(
                    f,
                    "NotCommutative: route via {{{via}}} into {pair} disagrees at element {x}"
                )?,
                ValidationIssue::AnglePi { i, j, witness } => {
                    let w: Vec<String> = witness
                        .letters
                        .iter()
                        .map(|l| format!("{}:{}", l.subset.key(), l.elem))
                        .collect();
                    writeln!(f, "AnglePi: angle at {{{i},{j}}} is π, kernel word {}", w.join(" "))?
                }
            }
        }
        Ok(())
    }
}

/// A Corson diagram over a finite index set.
#[derive(Debug, Clone)]
pub struct CorsonDiagram {
    index_set: Vec<Label>,
    groups: BTreeMap<Subset, Arc<FiniteGroup>>,
    homs: BTreeMap<(Subset, Subset), Homomorphism>,
    /// `∅ → {i,j}` maps that were not supplied and were composed via `{i}`.
    derived: BTreeSet<Subset>,
}

impl CorsonDiagram {
    /// Every subset of size ≤ 2, in key order.
    pub fn subsets_of(index_set: &[Label]) -> Vec<Subset> {
        let mut out = vec![Subset::empty()];
        for &i in index_set {
            out.push(Subset::single(i));
        }
        for (a, &i) in index_set.iter().enumerate() {
            for &j in &index_set[a + 1..] {
                out.push(Subset::pair(i, j));
            }
        }
        out.sort();
        out
    }

    /// Every required inclusion `(J₁, J₂)`, in key order.
    pub fn inclusions_of(index_set: &[Label]) -> Vec<(Subset, Subset)> {
        let subsets = Self::subsets_of(index_set);
        let mut out = Vec::new();
        for a in &subsets {
            for b in &subsets {
                if a.len() < b.len() && a.is_subset_of(b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Assembles a diagram. `homs` may omit the maps `∅ → {i,j}`, which are
    /// then composed via `{i}` for the smaller label `i`.
    pub fn new(
        index_set: Vec<Label>,
        groups: BTreeMap<Subset, FiniteGroup>,
        homs: BTreeMap<(Subset, Subset), Vec<Elem>>,
    ) -> Result<Self, DiagramError> {
        let mut labels = index_set.clone();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != index_set.len() || labels.iter().any(|&l| l == 0 || l > 9) {
            return Err(DiagramError::BadIndexSet(index_set));
        }
        let subsets = Self::subsets_of(&labels);
        for key in groups.keys() {
            if !subsets.contains(key) {
                return Err(DiagramError::UnexpectedGroup(key.key()));
            }
        }
        let mut gs = BTreeMap::new();
        for s in &subsets {
            let g = groups.get(s).ok_or_else(|| DiagramError::MissingGroup(s.key()))?;
            gs.insert(s.clone(), Arc::new(g.clone()));
        }
        let inclusions = Self::inclusions_of(&labels);
        for key in homs.keys() {
            if !inclusions.contains(key) {
                return Err(DiagramError::UnexpectedHom(hom_key(&key.0, &key.1)));
            }
        }
        let mut hs = BTreeMap::new();
        let mut missing_pairs = Vec::new();
        for (from, to) in &inclusions {
            match homs.get(&(from.clone(), to.clone())) {
                Some(map) => {
                    let h = Homomorphism::new(gs[from].clone(), gs[to].clone(), map.clone()).map_err(|source| {
                        DiagramError::Hom {
                            key: hom_key(from, to),
                            source,
                        }
                    })?;
                    hs.insert((from.clone(), to.clone()), h);
                }
                None if from.is_empty() && to.len() == 2 => missing_pairs.push(to.clone()),
                None => return Err(DiagramError::MissingHom(hom_key(from, to))),
            }
        }
        let mut derived = BTreeSet::new();
        for pair in missing_pairs {
            let i = Subset::single(pair.labels()[0]);
            let h = hs[&(Subset::empty(), i.clone())].then(&hs[&(i, pair.clone())]);
            hs.insert((Subset::empty(), pair.clone()), h);
            derived.insert(pair);
        }
        Ok(Self {
            index_set: labels,
            groups: gs,
            homs: hs,
            derived,
        })
    }

    pub fn index_set(&self) -> &[Label] {
        &self.index_set
    }

    pub fn group(&self, j: &Subset) -> &Arc<FiniteGroup> {
        &self.groups[j]
    }

    pub fn groups(&self) -> &BTreeMap<Subset, Arc<FiniteGroup>> {
        &self.groups
    }

    pub fn hom(&self, from: &Subset, to: &Subset) -> &Homomorphism {
        &self.homs[&(from.clone(), to.clone())]
    }

    pub fn homs(&self) -> &BTreeMap<(Subset, Subset), Homomorphism> {
        &self.homs
    }

    /// Whether `∅ → pair` was composed rather than supplied.
    pub fn is_derived(&self, pair: &Subset) -> bool {
        self.derived.contains(pair)
    }

    /// Image of `x ∈ G_from` in `G_to` for `from ⊆ to`.
    pub fn push_forward(&self, from: &Subset, to: &Subset, x: Elem) -> Option<Elem> {
        if from == to {
            return Some(x);
        }
        self.homs.get(&(from.clone(), to.clone())).map(|h| h.apply(x))
    }

    /// `φ_{∅,J}(G_∅)` as a subgroup of `G_J`.
    pub fn base_image(&self, j: &Subset) -> Subgroup {
        if j.is_empty() {
            return Subgroup::whole(&self.groups[j]);
        }
        self.hom(&Subset::empty(), j).image()
    }

    /// `φ_{J₁,J₂}(G_J₁)` as a subgroup of `G_J₂`.
    pub fn image(&self, from: &Subset, to: &Subset) -> Subgroup {
        if from == to {
            return Subgroup::whole(&self.groups[to]);
        }
        self.hom(from, to).image()
    }

    /// Unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for (a, &i) in self.index_set.iter().enumerate() {
            for &j in &self.index_set[a + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    /// Injectivity and commutativity checks only.
    pub fn structural_issues(&self) -> Vec<ValidationIssue> {
        let mut issues = Vec::new();
        for ((from, to), h) in &self.homs {
            if from.is_empty() && to.len() == 2 && self.derived.contains(to) {
                continue;
            }
            if let Some((x, y)) = h.collision() {
                issues.push(ValidationIssue::NonInjectiveHom {
                    from: from.clone(),
                    to: to.clone(),
                    x,
                    y,
                });
            }
        }
        let e = Subset::empty();
        for (i, j) in self.pairs() {
            let pair = Subset::pair(i, j);
            let direct = self.hom(&e, &pair);
            for via in [i, j] {
                let s = Subset::single(via);
                let a = self.hom(&e, &s);
                let b = self.hom(&s, &pair);
                if let Some(x) = self.groups[&e]
                    .elements()
                    .find(|&x| b.apply(a.apply(x)) != direct.apply(x))
                {
                    issues.push(ValidationIssue::NotCommutative {
                        via,
                        pair: pair.clone(),
                        x,
                    });
                }
            }
        }
        issues
    }

    /// Lists every violated invariant. The angle condition is only checked
    /// once the homomorphisms are injective and commute.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = self.structural_issues();
        if issues.is_empty() {
            for (i, j) in self.pairs() {
                let report = gs_angle(self, i, j);
                if report.angle == GSAngle::TwoPiOver(2) {
                    issues.push(ValidationIssue::AnglePi {
                        i,
                        j,
                        witness: report.witness.unwrap_or_default(),
                    });
                }
            }
        }
        ValidationReport { issues }
    }

    /// Renames labels through `f`, which must be injective on the index set.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> CorsonDiagram {
        let index_set: Vec<Label> = {
            let mut v: Vec<Label> = self.index_set.iter().map(|&x| f(x)).collect();
            v.sort_unstable();
            v
        };
        let groups = self.groups.iter().map(|(k, g)| (k.map_labels(&f), g.clone())).collect();
        let homs = self
            .homs
            .iter()
            .map(|((a, b), h)| ((a.map_labels(&f), b.map_labels(&f)), h.clone()))
            .collect();
        let derived = self.derived.iter().map(|s| s.map_labels(&f)).collect();
        CorsonDiagram {
            index_set,
            groups,
            homs,
            derived,
        }
    }
}

/// A Corson diagram over the index set `{1, 2, 3}`.
#[derive(Debug, Clone)]
pub struct TriangleDiagram(CorsonDiagram);

impl TriangleDiagram {
    pub fn new(d: CorsonDiagram) -> Result<Self, DiagramError> {
        if d.index_set != [1, 2, 3] {
            return Err(DiagramError::NotTriangle(d.index_set));
        }
        Ok(TriangleDiagram(d))
    }

    pub fn inner(&self) -> &CorsonDiagram {
        &self.0
    }

    pub fn into_inner(self) -> CorsonDiagram {
        self.0
    }

    /// The three angles at `{1,2}`, `{1,3}`, `{2,3}`.
    pub fn angles(&self) -> [GSAngle; 3] {
        [
            gs_angle(self, 1, 2).angle,
            gs_angle(self, 1, 3).angle,
            gs_angle(self, 2, 3).angle,
        ]
    }

    /// Applies a permutation of `{1,2,3}`: label `i` becomes `perm[i-1]`.
    pub fn permute(&self, perm: [Label; 3]) -> TriangleDiagram {
        TriangleDiagram(self.0.relabel(|x| perm[x as usize - 1]))
    }
}

impl Deref for TriangleDiagram {
    type Target = CorsonDiagram;
    fn deref(&self) -> &CorsonDiagram {
        &self.0
    }
}

impl TryFrom<CorsonDiagram> for TriangleDiagram {
    type Error = DiagramError;
    fn try_from(d: CorsonDiagram) -> Result<Self, DiagramError> {
        TriangleDiagram::new(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_keys_round_trip_and_order() {
        let keys = ["", "1", "12", "13", "2", "23", "3"];
        let subsets = CorsonDiagram::subsets_of(&[1, 2, 3]);
        let got: Vec<String> = subsets.iter().map(|s| s.key()).collect();
        assert_eq!(got, keys);
        for k in keys {
            assert_eq!(Subset::from_key(k).unwrap().key(), k);
        }
        assert!(Subset::from_key("21").is_none());
        assert!(Subset::from_key("123").is_none());
        assert_eq!(CorsonDiagram::inclusions_of(&[1, 2, 3]).len(), 12);
    }
}

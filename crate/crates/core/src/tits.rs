//! Large/small classification of the colimit group.
//!
//! Every step of the decision tree is recorded as a [`TraceStep`] with the
//! values it was decided on. Where finite data do not settle the question
//! the verdict is [`VerdictKind::Undecided`] with the open predicate.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::dihedral_triangle;
use crate::diagram::{
    classify_curvature, CorsonDiagram, CurvatureKind, GSAngle, Label, Subset, TriangleDiagram, ValidationReport,
};
use crate::group::{are_isomorphic, index, is_normal, quotient_group, Elem, FiniteGroup, Subgroup};
use crate::wallpaper::{canonical_rep, DEFAULT_LATTICE_DEPTH};
use crate::witness::{
    base_indices, find_branching, free_pair, generated_by_sides, verify_free_pair, FreePair, VerifyReport, Witness,
    WitnessError,
};

/// Depth used to verify free pairs inside [`classify`].
pub const CLASSIFY_VERIFY_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Large,
    Small,
    Undecided,
    Rejected,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Large => "large",
            VerdictKind::Small => "small",
            VerdictKind::Undecided => "undecided",
            VerdictKind::Rejected => "rejected",
        };
        f.write_str(s)
    }
}

/// `U ∗_W V` with `[U:W] = left`, `[V:W] = right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AmalgamShape {
    pub left: usize,
    pub right: usize,
}

/// Small if a factor equals the amalgamated subgroup or both indices are
/// 2 (virtually infinite cyclic); otherwise the Bass–Serre tree branches.
pub fn amalgam_largeness(s: AmalgamShape) -> VerdictKind {
    if s.left == 1 || s.right == 1 || (s.left == 2 && s.right == 2) {
        VerdictKind::Small
    } else {
        VerdictKind::Large
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub values: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerdictWitness {
    FreePair {
        pair: Box<FreePair>,
        verified: VerifyReport,
    },
    Amalgam {
        description: String,
        left: Option<usize>,
        right: Option<usize>,
    },
    SolvableChain(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub trace: Vec<TraceStep>,
    pub witness: Option<VerdictWitness>,
    /// The predicate left open by an undecided verdict.
    pub open_predicate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TitsError {
    #[error("the diagram is not valid:\n{0}")]
    Invalid(ValidationReport),
    #[error("φ(G_∅) is not normal in G_{0}")]
    NotNormal(Subset),
    #[error("the quotient changes the angle at {{{0},{1}}}")]
    AngleChanged(Label, Label),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Replaces every `G_J` by `G_J / φ(G_∅)` with the induced maps.
pub fn quotient_triangle(d: &TriangleDiagram) -> Result<TriangleDiagram, TitsError> {
    let subsets = CorsonDiagram::subsets_of(d.index_set());
    let mut groups = BTreeMap::new();
    let mut proj: BTreeMap<Subset, Vec<Elem>> = BTreeMap::new();
    for j in &subsets {
        let g = d.group(j);
        let n = d.base_image(j);
        if !is_normal(g, &n) {
            return Err(TitsError::NotNormal(j.clone()));
        }
        let (q, p) = quotient_group(g, &n).map_err(|_| TitsError::NotNormal(j.clone()))?;
        groups.insert(j.clone(), q);
        proj.insert(j.clone(), p);
    }
    let mut homs = BTreeMap::new();
    for ((from, to), h) in d.homs() {
        if d.is_derived(to) && from.is_empty() {
            continue;
        }
        let q_from: &FiniteGroup = &groups[from];
        let mut map = vec![usize::MAX; q_from.order()];
        for x in d.group(from).elements() {
            let c = proj[from][x];
            if map[c] == usize::MAX {
                map[c] = proj[to][h.apply(x)];
            }
        }
        homs.insert((from.clone(), to.clone()), map);
    }
    let q = CorsonDiagram::new(d.index_set().to_vec(), groups, homs).map_err(|e| TitsError::Internal(e.to_string()))?;
    let q = TriangleDiagram::new(q).map_err(|e| TitsError::Internal(e.to_string()))?;
    let (before, after) = (d.angles(), q.angles());
    for (k, (i, j)) in [(1, 2), (1, 3), (2, 3)].into_iter().enumerate() {
        if before[k] != after[k] {
            return Err(TitsError::AngleChanged(i, j));
        }
    }
    Ok(q)
}

#[derive(Clone)]
struct Tracer(Vec<TraceStep>);

impl Tracer {
    fn push(&mut self, rule: &str, reference: &str, values: Value) {
        let values = match values {
            Value::Object(m) => m.into_iter().collect(),
            Value::Null => BTreeMap::new(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        self.0.push(TraceStep {
            rule: rule.to_string(),
            reference: reference.to_string(),
            values,
        });
    }

    fn done(self, kind: VerdictKind, witness: Option<VerdictWitness>) -> Verdict {
        Verdict {
            kind,
            trace: self.0,
            witness,
            open_predicate: None,
        }
    }
}

fn angle_values(angles: &[GSAngle; 3]) -> Value {
    json!({
        "angle_12": angles[0].to_string(),
        "angle_13": angles[1].to_string(),
        "angle_23": angles[2].to_string(),
    })
}

/// Classification with free pairs verified up to `CLASSIFY_VERIFY_DEPTH`.
pub fn classify(d: &TriangleDiagram) -> Result<Verdict, TitsError> {
    classify_with_depth(d, CLASSIFY_VERIFY_DEPTH)
}

pub fn classify_with_depth(d: &TriangleDiagram, verify_depth: usize) -> Result<Verdict, TitsError> {
    let report = d.validate();
    if !report.is_ok() {
        return Err(TitsError::Invalid(report));
    }
    let mut t = Tracer(Vec::new());
    t.push(
        "finite input",
        "finite groups are small and finitely generated",
        json!({ "orders": d.groups().iter().map(|(k, g)| (k.key(), g.order())).collect::<BTreeMap<_, _>>() }),
    );
    let angles = d.angles();
    let class = classify_curvature(d);
    let mut values = angle_values(&angles);
    values["curvature"] = json!(format!("{:?}", class.kind).to_lowercase());
    values["degenerate"] = json!(class.degenerate);
    t.push("curvature", "angle sum compared with π", values);

    if class.kind == CurvatureKind::Spherical {
        t.push("spherical", "spherical triangles are out of scope", Value::Null);
        return Ok(t.done(VerdictKind::Rejected, None));
    }
    if class.degenerate {
        return degenerate(d, &angles, t);
    }
    if class.kind == CurvatureKind::Hyperbolic {
        t.push(
            "non-degenerate hyperbolic",
            "hyperbolic triangles of groups with nonzero angles contain non-abelian free subgroups",
            json!({ "base_indices": base_indices(d) }),
        );
        return Ok(t.done(VerdictKind::Large, None));
    }
    euclidean(d, &angles, t, verify_depth)
}

fn euclidean(
    d: &TriangleDiagram,
    angles: &[GSAngle; 3],
    mut t: Tracer,
    verify_depth: usize,
) -> Result<Verdict, TitsError> {
    let branching = find_branching(d)?;
    t.push(
        "branching",
        "the complex branches iff some [G_a:φ(G_∅)] ≥ 3 or some G_{a,b} is not generated by G_a, G_b",
        json!({
            "branches": branching.branches,
            "base_indices": base_indices(d),
            "causes": branching.causes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
    );
    if branching.branches {
        return match free_pair(d)? {
            Witness::Index3(pair) => {
                let verified = verify_free_pair(d, &pair, verify_depth)?;
                let p = &pair.provenance;
                t.push(
                    "free pair",
                    "x = g_a h g̃_a⁻¹ and y = h g_a h g̃_a⁻¹ h⁻¹ generate a free group",
                    json!({
                        "a": p.a,
                        "index": p.index,
                        "g_a": p.g_a,
                        "g_tilde_a": p.g_tilde,
                        "fixture_id": p.fixture_id,
                        "verified_depth": verified.depth,
                        "certified_words": verified.certified,
                    }),
                );
                Ok(t.done(VerdictKind::Large, Some(VerdictWitness::FreePair { pair, verified })))
            }
            Witness::NotGenerated { i, j, missing } => {
                t.push(
                    "amalgam",
                    "𝒢 ≅ X ∗_A Y with X = G_{a,b}; one index is at least 3",
                    json!({
                        "pair": [i, j],
                        "x_index": missing,
                        "y_index": "≥ 2, and 2 is impossible for a branching Euclidean triangle",
                    }),
                );
                let description = format!("G_{{{i},{j}}} ∗_A Y with [G_{{{i},{j}}}:A] = {missing}");
                Ok(t.done(
                    VerdictKind::Large,
                    Some(VerdictWitness::Amalgam {
                        description,
                        left: Some(missing),
                        right: None,
                    }),
                ))
            }
        };
    }
    let q = quotient_triangle(d)?;
    let ks = angles.map(|a| a.k().expect("non-degenerate"));
    let model = dihedral_triangle(ks[0], ks[1], ks[2]);
    let mut isomorphic = true;
    for (j, g) in q.groups() {
        let same = are_isomorphic(g, model.group(j)).map_err(|e| TitsError::Internal(e.to_string()))?;
        isomorphic &= same.is_some();
    }
    if !isomorphic {
        return Err(TitsError::Internal(
            "quotient triangle is not the reflection triangle".into(),
        ));
    }
    t.push(
        "quotient triangle",
        "dividing by φ(G_∅) gives the reflection triangle with the same angles",
        json!({ "k": ks, "group_orders": q.groups().iter().map(|(k, g)| (k.key(), g.order())).collect::<BTreeMap<_, _>>() }),
    );
    let mut sorted = ks;
    sorted.sort_unstable();
    let rep = canonical_rep((sorted[0], sorted[1], sorted[2])).map_err(|e| TitsError::Internal(e.to_string()))?;
    let lattice = rep
        .translation_lattice(DEFAULT_LATTICE_DEPTH)
        .map_err(|e| TitsError::Internal(e.to_string()))?;
    t.push(
        "translation lattice",
        "the reflection group is a wallpaper group with translation subgroup ℤ²",
        json!({ "depth": lattice.depth, "basis": lattice.basis.iter().map(|v| v.json()).collect::<Vec<_>>() }),
    );
    let chain = vec![
        format!("𝒢/⟨⟨φ(G_∅)⟩⟩ ≅ Δ({},{},{})", sorted[0], sorted[1], sorted[2]),
        "Δ has a finite-index ℤ² subgroup".to_string(),
        format!("φ(G_∅) has order {}", d.group(&Subset::empty()).order()),
        "𝒢 is finitely generated and virtually solvable".to_string(),
    ];
    t.push(
        "virtually solvable",
        "finite-by-(virtually ℤ²) groups are virtually solvable",
        json!({ "chain": chain }),
    );
    Ok(t.done(VerdictKind::Small, Some(VerdictWitness::SolvableChain(chain))))
}

/// Labels `c, i, j ↦ 1, 2, 3` for the zero pair `{i,j}`.
fn relabel_for(i: Label, j: Label) -> [Label; 3] {
    let c = 6 - i - j;
    let mut perm = [0; 3];
    perm[c as usize - 1] = 1;
    perm[i as usize - 1] = 2;
    perm[j as usize - 1] = 3;
    perm
}

/// Tries each zero pair, `{2,3}` first, and keeps the first verdict that
/// is not undecided.
fn degenerate(d: &TriangleDiagram, angles: &[GSAngle; 3], t: Tracer) -> Result<Verdict, TitsError> {
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let mut open = None;
    for k in [2, 1, 0] {
        if !angles[k].is_zero() {
            continue;
        }
        let (i, j) = pairs[k];
        let v = degenerate_at(d, i, j, t.clone())?;
        if v.kind != VerdictKind::Undecided {
            return Ok(v);
        }
        open.get_or_insert(v);
    }
    Ok(open.expect("degenerate triangle has a zero angle"))
}

fn degenerate_at(d: &TriangleDiagram, i: Label, j: Label, mut t: Tracer) -> Result<Verdict, TitsError> {
    let perm = relabel_for(i, j);
    let e = d.permute(perm);
    let s = Subset::single;
    let idx = |g: &FiniteGroup, h: &Subgroup| index(g, h).expect("subgroup");
    let [i1, i2, i3] = base_indices(&e);
    t.push(
        "relabel",
        "move a zero angle to {2,3}",
        json!({ "zero_pair": [i, j], "permutation": perm, "base_indices": [i1, i2, i3] }),
    );
    if i2 != 1 && i3 != 1 {
        return Err(TitsError::Internal(
            "both sides of a zero angle are proper, but G_{2,3} is finite".into(),
        ));
    }
    let x = e.group(&Subset::pair(2, 3));
    let xa = idx(x, &generated_by_sides(&e, 2, 3));
    let p12 = Subset::pair(1, 2);
    let p13 = Subset::pair(1, 3);
    let shape = AmalgamShape {
        left: idx(e.group(&p12), &e.image(&s(1), &p12)),
        right: idx(e.group(&p13), &e.image(&s(1), &p13)),
    };
    let q12 = idx(e.group(&p12), &e.image(&s(2), &p12));
    let q13 = idx(e.group(&p13), &e.image(&s(3), &p13));
    t.push(
        "degenerate split",
        "𝒢 ≅ X ∗_A Y with X = G_{2,3} and A = ⟨φ(G_2), φ(G_3)⟩",
        json!({ "x_a_index": xa, "q12": q12, "q13": q13 }),
    );
    if xa == 1 {
        let kind = amalgam_largeness(shape);
        t.push(
            "X = A",
            "𝒢 ≅ G_{1,2} ∗_{G_1} G_{1,3}",
            json!({ "left": shape.left, "right": shape.right, "verdict": kind.to_string() }),
        );
        let description = format!(
            "G_{{1,2}} ∗_{{G_1}} G_{{1,3}} with indices ({}, {})",
            shape.left, shape.right
        );
        let witness = match kind {
            VerdictKind::Small => VerdictWitness::SolvableChain(vec![
                description,
                if shape.left == 1 || shape.right == 1 {
                    "the amalgam equals a finite factor".to_string()
                } else {
                    "finite-by-infinite-dihedral, virtually ℤ".to_string()
                },
            ]),
            _ => VerdictWitness::Amalgam {
                description,
                left: Some(shape.left),
                right: Some(shape.right),
            },
        };
        return Ok(t.done(kind, Some(witness)));
    }
    if q12 == 1 && q13 == 1 {
        t.push(
            "Y = A (derived)",
            "G_{1,2} ∩ A ⊆ G_{1,2} ∩ G_{2,3} = G_2 by the intersection theorem, so q12 = q13 = 1 gives Y = A",
            json!({ "q12": q12, "q13": q13 }),
        );
        let chain = vec![format!("𝒢 ≅ G_{{2,3}} of order {}", x.order()), "finite".to_string()];
        return Ok(t.done(VerdictKind::Small, Some(VerdictWitness::SolvableChain(chain))));
    }
    let ya_at_least_2 = i1 >= 2 || q12 >= 2 || q13 >= 2;
    if ya_at_least_2 && (xa >= 3 || q12 >= 3 || q13 >= 3) {
        t.push(
            "amalgam branches",
            "an amalgam with indices ≥ 2 and ≥ 3 contains a free subgroup",
            json!({ "x_a_index": xa, "y_a_index": "≥ 2", "q12": q12, "q13": q13 }),
        );
        let description = format!("G_{{2,3}} ∗_A Y with [G_{{2,3}}:A] = {xa}");
        return Ok(t.done(
            VerdictKind::Large,
            Some(VerdictWitness::Amalgam {
                description,
                left: Some(xa),
                right: None,
            }),
        ));
    }
    let a_shape = AmalgamShape { left: i2, right: i3 };
    let a_kind = amalgam_largeness(a_shape);
    t.push(
        "A shape",
        "A is a quotient-free image of G_2 ∗_{G_∅} G_3",
        json!({ "left": i2, "right": i3, "verdict": a_kind.to_string() }),
    );
    if a_kind == VerdictKind::Large {
        let description = format!("A ≤ 𝒢 with shape ({i2}, {i3})");
        return Ok(t.done(
            VerdictKind::Large,
            Some(VerdictWitness::Amalgam {
                description,
                left: Some(i2),
                right: Some(i3),
            }),
        ));
    }
    let predicate = "[Y:A] = 2?".to_string();
    t.push(
        "open",
        "[X:A] = 2 and A is small; the verdict depends on whether [Y:A] = 2",
        json!({ "x_a_index": xa, "predicate": predicate }),
    );
    let mut v = t.done(VerdictKind::Undecided, None);
    v.open_predicate = Some(predicate);
    Ok(v)
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "verdict": self.kind.to_string(),
            "trace": self.trace,
        });
        if let Some(w) = &self.witness {
            out["witness"] = match w {
                VerdictWitness::FreePair { pair, verified } => {
                    let mut v = pair.to_json();
                    v["verified_depth"] = json!(verified.depth);
                    v["certified_words"] = json!(verified.certified);
                    json!({ "free_pair": v })
                }
                VerdictWitness::Amalgam {
                    description,
                    left,
                    right,
                } => {
                    json!({ "amalgam": { "description": description, "left_index": left, "right_index": right } })
                }
                VerdictWitness::SolvableChain(chain) => json!({ "solvable_chain": chain }),
            };
        }
        if let Some(p) = &self.open_predicate {
            out["open_predicate"] = json!(p);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn amalgam_shapes() {
        let s = |left, right| amalgam_largeness(AmalgamShape { left, right });
        assert_eq!(s(1, 7), VerdictKind::Small);
        assert_eq!(s(2, 2), VerdictKind::Small);
        assert_eq!(s(2, 3), VerdictKind::Large);
        assert_eq!(s(3, 3), VerdictKind::Large);
    }

    #[test]
    fn verdicts() {
        for triple in CANONICAL_TRIPLES {
            assert_eq!(classify(&canonical(triple)).unwrap().kind, VerdictKind::Small);
        }
        assert_eq!(classify(&hyperbolic_237()).unwrap().kind, VerdictKind::Large);
        let v = classify(&index3_example()).unwrap();
        assert_eq!(v.kind, VerdictKind::Large);
        assert!(matches!(v.witness, Some(VerdictWitness::FreePair { .. })));
        let v = classify(&not_generated_example()).unwrap();
        assert_eq!(v.kind, VerdictKind::Large);
        assert!(matches!(v.witness, Some(VerdictWitness::Amalgam { .. })));
        assert_eq!(
            classify(&dihedral_triangle(2, 2, 5)).unwrap().kind,
            VerdictKind::Rejected
        );
    }

    #[test]
    fn quotient_of_central_extension_is_canonical() {
        let q = quotient_triangle(&central_extension(2, 4, 4)).unwrap();
        assert_eq!(q.angles(), canonical((2, 4, 4)).angles());
        for (j, g) in q.groups() {
            assert!(are_isomorphic(g, canonical((2, 4, 4)).group(j)).unwrap().is_some());
        }
        assert_eq!(classify(&central_extension(2, 3, 6)).unwrap().kind, VerdictKind::Small);
    }
}

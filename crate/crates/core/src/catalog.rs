//! Ready-made triangles of groups used by the examples and tests.

use std::collections::BTreeMap;

use crate::diagram::{CorsonDiagram, Subset, TriangleDiagram};
use crate::group::{Elem, FiniteGroup, Homomorphism};

type Groups = BTreeMap<Subset, FiniteGroup>;
type Homs = BTreeMap<(Subset, Subset), Vec<Elem>>;

fn s(key: &str) -> Subset {
    Subset::from_key(key).expect("valid subset key")
}

fn build(groups: Groups, homs: Homs) -> TriangleDiagram {
    let d = CorsonDiagram::new(vec![1, 2, 3], groups, homs).expect("catalog diagram is well formed");
    TriangleDiagram::new(d).expect("catalog diagram is a triangle")
}

/// Map from `Z_2` sending the generator to `t`.
fn from_z2(t: Elem) -> Vec<Elem> {
    vec![0, t]
}

/// Trivial `G_∅`, `G_1 = G_2 = G_3 = Z_2` and dihedral edge groups of
/// orders `2k`, `2l`, `2m` at `{1,2}`, `{1,3}`, `{2,3}`. In each edge group
/// the smaller label goes to the reflection `s` and the larger to `s r`,
/// so the angles are `π/k`, `π/l`, `π/m`.
pub fn dihedral_triangle(k: usize, l: usize, m: usize) -> TriangleDiagram {
    let mut groups = Groups::new();
    groups.insert(s(""), FiniteGroup::trivial());
    for key in ["1", "2", "3"] {
        groups.insert(s(key), FiniteGroup::cyclic(2));
    }
    let mut homs = Homs::new();
    for key in ["1", "2", "3"] {
        homs.insert((s(""), s(key)), vec![0]);
    }
    for (key, n) in [("12", k), ("13", l), ("23", m)] {
        groups.insert(s(key), FiniteGroup::dihedral(n));
        let pair = s(key);
        let [i, j] = [pair.labels()[0], pair.labels()[1]];
        homs.insert((Subset::single(i), pair.clone()), from_z2(n));
        homs.insert((Subset::single(j), pair.clone()), from_z2(n + 1));
    }
    build(groups, homs)
}

/// The canonical triangle for one of the Euclidean triples `(3,3,3)`,
/// `(2,4,4)`, `(2,3,6)`.
pub fn canonical(triple: (usize, usize, usize)) -> TriangleDiagram {
    dihedral_triangle(triple.0, triple.1, triple.2)
}

pub const CANONICAL_TRIPLES: [(usize, usize, usize); 3] = [(3, 3, 3), (2, 4, 4), (2, 3, 6)];

/// A Euclidean `(2,3,6)` triangle that branches because
/// `[G_1 : φ(G_∅)] = 4`.
///
/// `G_∅ = 1`, `G_1 = Z_2 × Z_2`, `G_2 = G_3 = Z_2`. `G_{1,2} = Z_2³` with
/// `G_1` on the first two coordinates, `G_{1,3} = S_4` with `G_1 ↦
/// ⟨(0 1), (2 3)⟩` and `G_3 ↦ ⟨(1 2)⟩`, and `G_{2,3} = D_6`.
pub fn index3_example() -> TriangleDiagram {
    let z2 = FiniteGroup::cyclic(2);
    let v4 = FiniteGroup::direct_product(&z2, &z2);
    let z2_3 = FiniteGroup::direct_product(&v4, &z2);
    let (s4, perms) = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]);
    let find = |p: [usize; 4]| perms.iter().position(|q| q[..] == p[..]).expect("permutation present");
    let (t01, t23, t12) = (find([1, 0, 2, 3]), find([0, 1, 3, 2]), find([0, 2, 1, 3]));

    let mut groups = Groups::new();
    groups.insert(s(""), FiniteGroup::trivial());
    groups.insert(s("1"), v4.clone());
    groups.insert(s("2"), z2.clone());
    groups.insert(s("3"), z2.clone());
    groups.insert(s("12"), z2_3);
    groups.insert(s("13"), s4.clone());
    groups.insert(s("23"), FiniteGroup::dihedral(6));

    let mut homs = Homs::new();
    homs.insert((s(""), s("1")), vec![0]);
    homs.insert((s(""), s("2")), vec![0]);
    homs.insert((s(""), s("3")), vec![0]);
    homs.insert((s("1"), s("12")), (0..4).map(|x| 2 * x).collect());
    homs.insert((s("2"), s("12")), from_z2(1));
    // (a, b) ↦ a·2 + b in V4; generators (1,0) = 2 and (0,1) = 1.
    let phi = Homomorphism::from_generator_images(v4.clone().into(), s4.into(), &[2, 1], &[t01, t23])
        .expect("V4 embeds in S4");
    homs.insert((s("1"), s("13")), phi.map().to_vec());
    homs.insert((s("3"), s("13")), from_z2(t12));
    homs.insert((s("2"), s("23")), from_z2(6));
    homs.insert((s("3"), s("23")), from_z2(7));
    build(groups, homs)
}

/// Canonical `(2,4,4)` except `G_{1,2} = D_2 × Z_2` with both images in
/// the `D_2` factor, so `G_{1,2}` is not generated by them.
pub fn not_generated_example() -> TriangleDiagram {
    let base = canonical((2, 4, 4));
    let mut groups: Groups = base.groups().iter().map(|(k, g)| (k.clone(), (**g).clone())).collect();
    let mut homs: Homs = base
        .homs()
        .iter()
        .filter(|((a, b), _)| !(a.is_empty() && b.len() == 2))
        .map(|(k, h)| (k.clone(), h.map().to_vec()))
        .collect();
    let d2z2 = FiniteGroup::direct_product(&FiniteGroup::dihedral(2), &FiniteGroup::cyclic(2));
    groups.insert(s("12"), d2z2);
    // (x, 0) has index 2x: s = 2 ↦ 4, s r = 3 ↦ 6.
    homs.insert((s("1"), s("12")), from_z2(4));
    homs.insert((s("2"), s("12")), from_z2(6));
    build(groups, homs)
}

/// `Z_2 × Δ` for a dihedral triangle `Δ`: every group gains a central
/// `Z_2` factor (the first coordinate) and `G_∅ = Z_2` is that factor.
pub fn central_extension(k: usize, l: usize, m: usize) -> TriangleDiagram {
    let base = dihedral_triangle(k, l, m);
    let z2 = FiniteGroup::cyclic(2);
    let mut groups = Groups::new();
    for (key, g) in base.groups() {
        groups.insert(key.clone(), FiniteGroup::direct_product(&z2, g));
    }
    let mut homs = Homs::new();
    for ((a, b), h) in base.homs() {
        if a.is_empty() && b.len() == 2 {
            continue;
        }
        let (na, nb) = (base.group(a).order(), base.group(b).order());
        let map = (0..2 * na).map(|x| (x / na) * nb + h.apply(x % na)).collect();
        homs.insert((a.clone(), b.clone()), map);
    }
    build(groups, homs)
}

/// All-`Z_2` triangle with angles `π/2`, `π/3`, `π/7`.
pub fn hyperbolic_237() -> TriangleDiagram {
    dihedral_triangle(2, 3, 7)
}

fn degenerate(g23: FiniteGroup, b_in_23: Elem) -> TriangleDiagram {
    let mut groups = Groups::new();
    groups.insert(s(""), FiniteGroup::trivial());
    groups.insert(s("1"), FiniteGroup::cyclic(2));
    groups.insert(s("2"), FiniteGroup::cyclic(2));
    groups.insert(s("3"), FiniteGroup::trivial());
    groups.insert(s("12"), FiniteGroup::dihedral(2));
    groups.insert(s("13"), FiniteGroup::cyclic(2));
    groups.insert(s("23"), g23);
    let mut homs = Homs::new();
    homs.insert((s(""), s("1")), vec![0]);
    homs.insert((s(""), s("2")), vec![0]);
    homs.insert((s(""), s("3")), vec![0]);
    homs.insert((s("1"), s("12")), from_z2(2));
    homs.insert((s("2"), s("12")), from_z2(3));
    homs.insert((s("1"), s("13")), from_z2(1));
    homs.insert((s("3"), s("13")), vec![0]);
    homs.insert((s("2"), s("23")), from_z2(b_in_23));
    homs.insert((s("3"), s("23")), vec![0]);
    build(groups, homs)
}

/// Degenerate triangle: `G_3` trivial, `G_{2,3} = Z_n` with `G_2` as its
/// subgroup of order 2 (`n` even). Angles `π/2`, `0`, `0`.
pub fn degenerate_example(n: usize) -> TriangleDiagram {
    assert!(n >= 2 && n.is_multiple_of(2));
    degenerate(FiniteGroup::cyclic(n), n / 2)
}

/// Every group trivial; all three angles are zero.
pub fn trivial_triangle() -> TriangleDiagram {
    let mut groups = Groups::new();
    let mut homs = Homs::new();
    for key in ["", "1", "2", "3", "12", "13", "23"] {
        groups.insert(s(key), FiniteGroup::trivial());
    }
    for (a, b) in CorsonDiagram::inclusions_of(&[1, 2, 3]) {
        homs.insert((a, b), vec![0]);
    }
    build(groups, homs)
}

/// Canonical `(2,4,4)` with `φ_{{1},{1,2}}` sending the generator to the
/// identity.
pub fn non_injective_example() -> TriangleDiagram {
    let base = canonical((2, 4, 4));
    let mut groups: Groups = base.groups().iter().map(|(k, g)| (k.clone(), (**g).clone())).collect();
    let mut homs: Homs = base
        .homs()
        .iter()
        .filter(|((a, b), _)| !(a.is_empty() && b.len() == 2))
        .map(|(k, h)| (k.clone(), h.map().to_vec()))
        .collect();
    homs.insert((s("1"), s("12")), vec![0, 0]);
    groups.insert(s("12"), FiniteGroup::dihedral(2));
    build(groups, homs)
}

/// `G_{1,2} = Z_2` with `G_1` and `G_2` both onto it: the angle at `{1,2}`
/// is π.
pub fn angle_pi_example() -> TriangleDiagram {
    let base = canonical((2, 4, 4));
    let mut groups: Groups = base.groups().iter().map(|(k, g)| (k.clone(), (**g).clone())).collect();
    let mut homs: Homs = base
        .homs()
        .iter()
        .filter(|((a, b), _)| !(a.is_empty() && b.len() == 2))
        .map(|(k, h)| (k.clone(), h.map().to_vec()))
        .collect();
    groups.insert(s("12"), FiniteGroup::cyclic(2));
    homs.insert((s("1"), s("12")), vec![0, 1]);
    homs.insert((s("2"), s("12")), vec![0, 1]);
    build(groups, homs)
}

/// Diagram JSON whose edge group `G_{2,3}` is declared infinite.
pub fn infinite_input_json() -> String {
    let mut v: serde_json::Value = serde_json::from_str(&canonical((2, 4, 4)).to_json_string()).expect("valid JSON");
    v["groups"]["23"] = serde_json::json!({ "infinite": "Thompson's group F" });
    serde_json::to_string_pretty(&v).expect("serializes")
}

use std::sync::Arc;

use proptest::prelude::*;

use trigroup::billiards::{Billiards, TypedWord};
use trigroup::catalog::{canonical, dihedral_triangle, CANONICAL_TRIPLES};
use trigroup::diagram::{classify_curvature, gs_angle, GSAngle, Label};
use trigroup::group::{index, is_normal, left_cosets, quotient_group, subgroup_generated, FiniteGroup, Homomorphism};
use trigroup::quadrat::QuadRat;
use trigroup::tits::classify;
use trigroup::wallpaper::{canonical_rep, rotation_trace};

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=12).prop_map(FiniteGroup::cyclic),
        (2usize..=6).prop_map(FiniteGroup::dihedral),
        ((1usize..=4), (1usize..=4))
            .prop_map(|(a, b)| FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b))),
    ]
}

const PERMS: [[Label; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange_and_cosets(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let gens: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let h = subgroup_generated(&g, &gens);
        let idx = index(&g, &h).unwrap();
        prop_assert_eq!(idx * h.order(), g.order());
        let (cosets, of) = left_cosets(&g, &h);
        prop_assert_eq!(cosets.len(), idx);
        for (c, members) in cosets.iter().enumerate() {
            prop_assert_eq!(members.len(), h.order());
            prop_assert!(members.iter().all(|&x| of[x] == c));
        }
        if is_normal(&g, &h) {
            let (q, proj) = quotient_group(&g, &h).unwrap();
            prop_assert_eq!(q.order(), idx);
            for x in g.elements() {
                for y in g.elements() {
                    prop_assert_eq!(proj[g.mul(x, y)], q.mul(proj[x], proj[y]));
                }
            }
        }
    }

    #[test]
    fn power_maps_of_abelian_groups_are_homomorphisms(g in small_group(), k in 0usize..6) {
        prop_assume!(g.is_abelian());
        let g = Arc::new(g);
        let map = g.elements().map(|x| g.pow(x, k)).collect();
        let h = Homomorphism::new(g.clone(), g.clone(), map).unwrap();
        let id = Homomorphism::identity_on(g.clone());
        let composed = h.then(&id);
        prop_assert_eq!(composed.map(), h.map());
        prop_assert_eq!(h.is_injective(), h.image().order() == g.order());
    }

    #[test]
    fn angles_are_symmetric_and_match_edge_groups(k in 2usize..9, l in 2usize..9, m in 2usize..9) {
        let d = dihedral_triangle(k, l, m);
        for ((i, j), n) in [((1, 2), k), ((1, 3), l), ((2, 3), m)] {
            prop_assert_eq!(gs_angle(&d, i, j).angle, gs_angle(&d, j, i).angle);
            prop_assert_eq!(gs_angle(&d, i, j).angle, GSAngle::pi_over(n));
        }
    }

    #[test]
    fn relabelling_preserves_angles_and_curvature(k in 2usize..8, l in 2usize..8, m in 2usize..8, p in 0usize..6) {
        let d = dihedral_triangle(k, l, m);
        let e = d.permute(PERMS[p]);
        let mut a = d.angles().to_vec();
        let mut b = e.angles().to_vec();
        a.sort_by_key(|x| x.over_pi());
        b.sort_by_key(|x| x.over_pi());
        prop_assert_eq!(a, b);
        prop_assert_eq!(classify_curvature(&d), classify_curvature(&e));
    }

    #[test]
    fn quadrat_arithmetic_matches_floats(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in 1i64..20) {
        let x = QuadRat::from_parts(a, d, b, d);
        let y = QuadRat::from_parts(c, 1, a, d);
        let close = |q: QuadRat, f: f64| (q.to_f64() - f).abs() <= 1e-9 * (1.0 + f.abs());
        prop_assert!(close(x.clone() * y.clone(), x.to_f64() * y.to_f64()));
        prop_assert!(close(x.clone() + y.clone(), x.to_f64() + y.to_f64()));
        if !y.is_zero() {
            prop_assert!(close(x.clone() / y.clone(), x.to_f64() / y.to_f64()));
        }
        prop_assert_eq!(x.signum(), x.to_f64().partial_cmp(&0.0).unwrap());
    }

    #[test]
    fn typed_words_round_trip(letters in prop::collection::vec((1u8..=3, 0usize..50), 1..10)) {
        let w = TypedWord::new(letters);
        let back: TypedWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn certificates_survive_reversal(t in 0usize..3, labels in prop::collection::vec(1u8..=3, 1..7)) {
        let d = canonical(CANONICAL_TRIPLES[t]);
        let ctx = Billiards::new(&d).unwrap();
        let w = TypedWord::new(labels.iter().map(|&a| (a, 1)).collect());
        if let Ok(cert) = ctx.certify_nontrivial(&w) {
            prop_assert!(cert.check(&ctx).is_ok());
            let rev = TypedWord::new(labels.iter().rev().map(|&a| (a, 1)).collect());
            prop_assert!(ctx.adapted(&rev, &cert.sequence.reversed()));
        }
    }
}

#[test]
fn tits_verdict_is_invariant_under_relabelling() {
    for (k, l, m) in [(3, 3, 3), (2, 4, 4), (2, 3, 6), (2, 3, 7), (2, 2, 5)] {
        let d = dihedral_triangle(k, l, m);
        let kind = classify(&d).unwrap().kind;
        for p in PERMS {
            assert_eq!(classify(&d.permute(p)).unwrap().kind, kind, "({k},{l},{m}) under {p:?}");
        }
    }
}

/// Crystallographic restriction: every rotation in a wallpaper group has
/// order 1, 2, 3, 4 or 6, so its trace `2cos θ` is one of 2, -2, -1, 0, 1.
#[test]
fn rotation_traces_are_crystallographic() {
    let allowed: Vec<QuadRat> = [2, -2, -1, 0, 1].map(QuadRat::from_int).to_vec();
    for triple in CANONICAL_TRIPLES {
        let rep = canonical_rep(triple).unwrap();
        let mut seen = Vec::new();
        for g in rep.elements_up_to(6) {
            if let Some(t) = rotation_trace(&g) {
                assert!(allowed.contains(&t), "{triple:?}: trace {t}");
                if !seen.contains(&t) {
                    seen.push(t);
                }
            }
        }
        // The largest rotation order at a vertex appears.
        let n = triple.2 as i64;
        let want = match n {
            3 => QuadRat::from_int(-1),
            4 => QuadRat::from_int(0),
            _ => QuadRat::from_int(1),
        };
        assert!(seen.contains(&want), "{triple:?}: no rotation of order {n}");
    }
}

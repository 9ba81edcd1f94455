//! The twelve acceptance criteria. Each prints one PASS/FAIL line with its
//! elapsed time and budget; the test fails if any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use trigroup::billiards::{build_triangle, closed_orthogonal_shot, Billiards, Conclusion, Geometry, TypedWord};
use trigroup::catalog::*;
use trigroup::diagram::{
    classify_curvature, derivation_chain_check, dominate, gs_angle, images_meet_beyond_base, link_graph, CorsonDiagram,
    CurvatureKind, DiagramError, Direction, FreeWord, GSAngle, Label, Step, Subset, TriangleDiagram, ValidationIssue,
};
use trigroup::group::{generating_set, Elem, FiniteGroup, Homomorphism};
use trigroup::quadrat::QuadRat;
use trigroup::tits::{classify, VerdictKind};
use trigroup::wallpaper::{canonical_rep, DEFAULT_LATTICE_DEPTH};
use trigroup::witness::{free_pair, verify_free_pair, Witness};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn angle_table() -> Check {
    let mut n = 0;
    for k in 2..=8 {
        for l in 2..=8 {
            for m in 2..=8 {
                let d = dihedral_triangle(k, l, m);
                for ((i, j), want) in [((1, 2), k), ((1, 3), l), ((2, 3), m)] {
                    let got = gs_angle(&d, i, j).angle;
                    ensure(got == GSAngle::TwoPiOver(2 * want), || {
                        format!("({k},{l},{m}) at {{{i},{j}}}: {got}, expected m̂ = {}", 2 * want)
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} angles"))
}

fn girth_duality() -> Check {
    for triple in CANONICAL_TRIPLES {
        let d = canonical(triple);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let m_hat = gs_angle(&d, i, j).angle.m_hat();
            let girth = link_graph(&d, i, j).map_err(|e| e.to_string())?.girth;
            ensure(m_hat.is_some() && girth == m_hat, || {
                format!("{triple:?} {{{i},{j}}}: girth {girth:?}, m̂ {m_hat:?}")
            })?;
        }
    }
    Ok("9 vertex links".into())
}

fn curvature() -> Check {
    let mut cases: Vec<((usize, usize, usize), CurvatureKind)> = vec![
        ((3, 3, 3), CurvatureKind::Euclidean),
        ((2, 4, 4), CurvatureKind::Euclidean),
        ((2, 3, 6), CurvatureKind::Euclidean),
        ((2, 3, 7), CurvatureKind::Hyperbolic),
        ((2, 4, 5), CurvatureKind::Hyperbolic),
        ((3, 3, 4), CurvatureKind::Hyperbolic),
    ];
    cases.extend((2..=12).map(|n| ((2, 2, n), CurvatureKind::Spherical)));
    for ((k, l, m), want) in &cases {
        let class = classify_curvature(&dihedral_triangle(*k, *l, *m));
        ensure(class.kind == *want && !class.degenerate, || {
            format!("({k},{l},{m}): {class:?}")
        })?;
    }
    Ok(format!("{} triples", cases.len()))
}

fn billiard_powers() -> Check {
    let d = canonical((3, 3, 3));
    let ctx = Billiards::new(&d).map_err(|e| e.to_string())?;
    let w: TypedWord = "1:1,2:1,3:1".parse().map_err(|e| format!("{e:?}"))?;
    let cert = ctx.certify_infinite_order(&w).map_err(|e| e.to_string())?;
    for n in 1..=20 {
        let p = cert.power(n).ok_or("no power")?;
        ensure(p.word == w.pow(n), || format!("n = {n}: word mismatch"))?;
        ensure(matches!(p.conclusion, Conclusion::InfiniteOrder { .. }), || {
            format!("n = {n}: not periodic")
        })?;
        p.check(&ctx).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok("(g1 g2 g3)^n, n = 1..20".into())
}

fn closed_shots() -> Check {
    for triple in CANONICAL_TRIPLES {
        let t = build_triangle(canonical(triple).angles()).map_err(|e| e.to_string())?;
        let geo: Geometry<QuadRat> = t.geometry();
        for a in 1..=3 {
            let shot = closed_orthogonal_shot(&t, a).map_err(|e| e.to_string())?;
            let s = &shot.sequence;
            s.validate(&geo).map_err(|e| format!("{}: {e}", shot.fixture_id))?;
            let (first, last) = (&s.points[0], &s.points[s.points.len() - 1]);
            ensure(first == last, || {
                format!("{}: does not return to its start", shot.fixture_id)
            })?;
            let back = s.directions[s.directions.len() - 1].neg();
            ensure(back.same_direction(&s.directions[0]), || {
                format!("{}: final direction not reversed", shot.fixture_id)
            })?;
        }
    }
    Ok("9 cases".into())
}

fn free_pair_words() -> Check {
    let d = index3_example();
    let Witness::Index3(pair) = free_pair(&d).map_err(|e| e.to_string())? else {
        return Err("no index-3 free pair".into());
    };
    let report = verify_free_pair(&d, &pair, 4).map_err(|e| e.to_string())?;
    ensure(report.by_length == [4, 12, 36, 108], || {
        format!("per length {:?}", report.by_length)
    })?;
    Ok(format!(
        "{} words of length 4 ({} in total)",
        report.by_length[3], report.certified
    ))
}

fn tits_verdicts() -> Check {
    let mut cases: Vec<(String, TriangleDiagram, VerdictKind, bool)> = CANONICAL_TRIPLES
        .iter()
        .map(|&t| (format!("Δ{t:?}"), canonical(t), VerdictKind::Small, false))
        .collect();
    cases.push(("all-Z2 (2,3,7)".into(), hyperbolic_237(), VerdictKind::Large, false));
    cases.push(("index ≥ 3".into(), index3_example(), VerdictKind::Large, true));
    cases.push((
        "not generated".into(),
        not_generated_example(),
        VerdictKind::Large,
        true,
    ));
    for (name, d, want, witnessed) in cases {
        let v = classify(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(v.kind == want, || format!("{name}: {}", v.kind))?;
        ensure(!witnessed || v.witness.is_some(), || format!("{name}: no witness"))?;
        let again = classify(&d).map_err(|e| e.to_string())?;
        ensure(v.to_json() == again.to_json(), || {
            format!("{name}: trace not deterministic")
        })?;
    }
    match TriangleDiagram::from_json_str(&infinite_input_json()) {
        Err(DiagramError::InfiniteInput { .. }) => Ok("6 verdicts, infinite input rejected".into()),
        other => Err(format!("infinite input: {:?}", other.map(|_| ()))),
    }
}

fn wallpaper() -> Check {
    for triple in CANONICAL_TRIPLES {
        let rep = canonical_rep(triple).map_err(|e| e.to_string())?;
        ensure(rep.relators_hold(), || format!("{triple:?}: relators"))?;
        rep.translation_lattice(DEFAULT_LATTICE_DEPTH)
            .map_err(|e| format!("{triple:?}: {e}"))?;
        let check = rep.intersection_check();
        ensure(check.passes(), || format!("{triple:?}: {:?}", check.comparisons))?;
    }
    Ok("3 groups".into())
}

fn label_words(max_len: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Label>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=3).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn cross_oracle() -> Check {
    let words = label_words(6);
    let mut certified = 0;
    for triple in CANONICAL_TRIPLES {
        let d = canonical(triple);
        let ctx = Billiards::new(&d).map_err(|e| e.to_string())?;
        let rep = canonical_rep(triple).map_err(|e| e.to_string())?;
        for labels in &words {
            let w = TypedWord::new(labels.iter().map(|&a| (a, 1)).collect());
            let Ok(cert) = ctx.certify_nontrivial(&w) else { continue };
            cert.check(&ctx).map_err(|e| format!("{triple:?} {labels:?}: {e}"))?;
            certified += 1;
            let g = rep.evaluate_labels(labels);
            ensure(!g.is_identity(), || {
                format!("{triple:?}: certified {labels:?} evaluates to the identity")
            })?;
        }
    }
    Ok(format!("{certified} certified words, 0 disagreements"))
}

fn derivation() -> Check {
    let w = |s: &str| s.parse::<FreeWord>().map_err(|e| format!("{e:?}"));
    let relators = vec![
        (w("b^-1ab")?, w("a^2")?),
        (w("c^-1ac")?, w("a^2")?),
        (w("bc")?, w("cb")?),
    ];
    let chain = [w("bab^-1")?, w("bca^2c^-1b^-1")?, w("cba^2b^-1c^-1")?, w("cac^-1")?];
    let links = vec![
        vec![Step::new(1, 1, Direction::Forward)],
        vec![
            Step::new(0, 2, Direction::Forward),
            Step::new(4, 2, Direction::Backward),
        ],
        vec![Step::new(1, 0, Direction::Backward)],
    ];
    derivation_chain_check(&relators, &chain, &links).map_err(|e| e.to_string())?;
    Ok("3 links".into())
}

fn domination() -> Check {
    let mut n = 0;
    for k in 2..=50usize {
        for l in k..=50 {
            for m in l..=50 {
                if l * m + k * m + k * l > k * l * m {
                    continue;
                }
                let want = if k >= 3 {
                    (3, 3, 3)
                } else if l >= 4 {
                    (2, 4, 4)
                } else {
                    (2, 3, 6)
                };
                let got = dominate(k, l, m).map_err(|e| e.to_string())?;
                ensure(got == want && got.0 <= k && got.1 <= l && got.2 <= m, || {
                    format!("({k},{l},{m}) -> {got:?}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples"))
}

/// Groups of order at most 8.
fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let z2 = FiniteGroup::cyclic(2);
    let v4 = FiniteGroup::direct_product(&z2, &z2);
    let mut gs: Vec<FiniteGroup> = (1..=8).map(FiniteGroup::cyclic).collect();
    gs.extend([3, 4].map(FiniteGroup::dihedral));
    gs.push(FiniteGroup::direct_product(&z2, &FiniteGroup::cyclic(4)));
    gs.push(FiniteGroup::direct_product(&v4, &z2));
    gs.push(v4);
    gs.into_iter().map(Arc::new).collect()
}

/// A random injective homomorphism `dom → cod`, if a few generator
/// assignments find one.
fn random_injection(rng: &mut StdRng, dom: &Arc<FiniteGroup>, cod: &Arc<FiniteGroup>) -> Option<Homomorphism> {
    let gens = generating_set(dom);
    (0..60).find_map(|_| {
        let imgs: Vec<Elem> = gens.iter().map(|_| rng.gen_range(0..cod.order())).collect();
        Homomorphism::from_generator_images(dom.clone(), cod.clone(), &gens, &imgs)
            .ok()
            .filter(|h| h.is_injective())
    })
}

/// Picks a target group from the pool and an injection of each source
/// into it.
fn random_target(
    rng: &mut StdRng,
    pool: &[Arc<FiniteGroup>],
    sources: &[&Arc<FiniteGroup>],
) -> Option<(Arc<FiniteGroup>, Vec<Homomorphism>)> {
    for _ in 0..20 {
        let g = pool.choose(rng).expect("pool is nonempty").clone();
        if sources.iter().any(|s| !g.order().is_multiple_of(s.order())) {
            continue;
        }
        if let Some(hs) = sources.iter().map(|s| random_injection(rng, s, &g)).collect() {
            return Some((g, hs));
        }
    }
    None
}

fn random_diagram(rng: &mut StdRng, pool: &[Arc<FiniteGroup>]) -> Option<CorsonDiagram> {
    let base = if rng.gen_bool(0.6) {
        pool[0].clone()
    } else {
        pool[1..].choose(rng).expect("pool").clone()
    };
    let mut groups = BTreeMap::new();
    let mut homs: BTreeMap<(Subset, Subset), Homomorphism> = BTreeMap::new();
    groups.insert(Subset::empty(), base.clone());
    for i in 1..=3 {
        let (g, mut h) = random_target(rng, pool, &[&base])?;
        homs.insert((Subset::empty(), Subset::single(i)), h.remove(0));
        groups.insert(Subset::single(i), g);
    }
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let (si, sj, p) = (Subset::single(i), Subset::single(j), Subset::pair(i, j));
        let (gij, mut hs) = random_target(rng, pool, &[&groups[&si], &groups[&sj]])?;
        let (hi, mut hj) = (hs.remove(0), hs.remove(0));
        // Commutativity repair: redraw the second map until both routes
        // from G_∅ agree, keeping the last draw if none does.
        let via_i = homs[&(Subset::empty(), si.clone())].then(&hi);
        for _ in 0..60 {
            if homs[&(Subset::empty(), sj.clone())].then(&hj).map() == via_i.map() {
                break;
            }
            hj = random_injection(rng, &groups[&sj], &gij)?;
        }
        homs.insert((si, p.clone()), hi);
        homs.insert((sj, p.clone()), hj);
        groups.insert(p, gij);
    }
    let groups = groups.into_iter().map(|(k, g)| (k, (*g).clone())).collect();
    let maps = homs.into_iter().map(|(k, h)| (k, h.map().to_vec())).collect();
    CorsonDiagram::new(vec![1, 2, 3], groups, maps).ok()
}

fn robustness() -> Check {
    let pool = small_groups();
    let mut rng = StdRng::seed_from_u64(0x7269_6e67);
    let (mut built, mut structural_ok, mut angle_pi) = (0, 0, 0);
    while built < 1000 {
        let Some(d) = random_diagram(&mut rng, &pool) else {
            continue;
        };
        built += 1;
        let report = catch_unwind(AssertUnwindSafe(|| d.validate()))
            .map_err(|_| format!("validation panicked on diagram {built}"))?;
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let (a, b) = (gs_angle(&d, i, j).angle, gs_angle(&d, j, i).angle);
            ensure(a == b, || {
                format!("diagram {built}: angle {{{i},{j}}} is {a} one way and {b} the other")
            })?;
        }
        if !d.structural_issues().is_empty() {
            continue;
        }
        structural_ok += 1;
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let flagged = report
                .issues
                .iter()
                .any(|x| matches!(x, ValidationIssue::AnglePi { i: a, j: b, .. } if (*a, *b) == (i, j)));
            let meet = images_meet_beyond_base(&d, i, j);
            ensure(flagged == meet, || {
                format!("diagram {built} {{{i},{j}}}: AnglePi {flagged}, images meet {meet}")
            })?;
            angle_pi += flagged as usize;
        }
    }
    Ok(format!(
        "{built} diagrams, {structural_ok} injective and commutative, {angle_pi} angles equal to π"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("angle table", 1_000, angle_table),
        ("angle/girth duality", 1_000, girth_duality),
        ("curvature", 100, curvature),
        ("billiard powers", 2_000, billiard_powers),
        ("closed orthogonal shots", 10_000, closed_shots),
        ("free pair at depth 4", 30_000, free_pair_words),
        ("tits verdicts", 5_000, tits_verdicts),
        ("wallpaper oracle", 20_000, wallpaper),
        ("cross-oracle", 60_000, cross_oracle),
        ("derivation chain", 100, derivation),
        ("domination", 100, domination),
        ("robustness", 60_000, robustness),
    ];
    let mut failed = Vec::new();
    let mut stderr = std::io::stderr();
    for (n, (name, budget_ms, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let budget = Duration::from_millis(budget_ms);
        let (status, detail) = match &result {
            Ok(_) if elapsed > budget => ("FAIL", "over budget".to_string()),
            Ok(detail) => ("PASS", detail.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed.push(n + 1);
        }
        let _ = writeln!(
            stderr,
            "criterion {:2} {status} {name}: {detail} [{:.3} s, budget {:.1} s]",
            n + 1,
            elapsed.as_secs_f64(),
            budget.as_secs_f64()
        );
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

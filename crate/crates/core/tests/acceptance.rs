//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinecell::homology::{smith_normal_form, IntMatrix};
use spinecell::rebuild::clear_edge;
use spinecell::spine::{
    build_initial_spine, check_invariants, collapse_all, collapse_free_triangle, collapse_isolated_edge,
    replay_trace, CollapseOutcome, PaintState,
};
use spinecell::triangulation::{generate, pachner_move, scramble, CensusKind, PachnerKind};
use spinecell::{recognize, ChainComplex, Error, HomologyProfile, RecognizeConfig, SimplexId, Strategy, Verdict};

/// Criterion 1 wall-clock limit per census sphere.
const CENSUS_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 4 floor and wall-clock limit.
const SCRAMBLE_FLOOR: usize = 40;
const SCRAMBLE_LIMIT: Duration = Duration::from_secs(300);
/// Criterion 6 randomized cases per property.
const PROPERTY_CASES: usize = 1000;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census() -> Check {
    let mut notes = Vec::new();
    for (name, kind) in [("boundary4simplex", CensusKind::Boundary4Simplex), ("minimal-s3", CensusKind::MinimalS3)] {
        let t = generate(kind).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = recognize(&t, &RecognizeConfig::default()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(out.verdict == Verdict::Sphere, || format!("{name}: {}", out.line()))?;
        ensure(took < CENSUS_LIMIT, || format!("{name}: took {took:?}"))?;
        let end = replay_trace(&t, &out.trace, true).map_err(|e| format!("{name}: replay: {e}"))?;
        ensure(end.is_point(), || format!("{name}: replay does not end at a point"))?;
        notes.push(format!("{name} {} records in {took:?}", out.trace.len()));
    }
    Ok(notes.join(", "))
}

fn theorem_one() -> Check {
    let t = generate(CensusKind::Boundary4Simplex).map_err(|e| e.to_string())?;
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Star).map_err(|e| e.to_string())?;
    let h = s.black_complex().homology().map_err(|e| e.to_string())?;
    ensure(s.black_triangle_count() == 6, || format!("{} black triangles", s.black_triangle_count()))?;
    ensure(s.chi() == 1, || format!("chi {}", s.chi()))?;
    ensure(h == HomologyProfile::point(), || format!("homology {h}"))?;
    Ok(format!("6 triangles, chi=1, homology {h}"))
}

fn collapse_oracle() -> Check {
    let t = generate(CensusKind::Boundary4Simplex).map_err(|e| e.to_string())?;
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Star).map_err(|e| e.to_string())?;
    let (end, outcome) = collapse_all(&s);
    let ops: Vec<&str> = end.trace().records[1..].iter().map(|r| r.op.as_str()).collect();
    let tri = ops.iter().filter(|&&o| o == "collapse_free_triangle").count();
    let edge = ops.iter().filter(|&&o| o == "collapse_isolated_edge").count();
    ensure(outcome == CollapseOutcome::Point, || "no point".into())?;
    ensure((tri, edge, ops.len()) == (6, 4, 10), || format!("{tri} triangle + {edge} edge moves of {}", ops.len()))?;
    Ok("6 triangle + 4 edge moves".into())
}

fn scramble_suite() -> Check {
    let d4 = generate(CensusKind::Boundary4Simplex).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut spheres = 0;
    let mut others = Vec::new();
    for seed in 1..=50 {
        let t = scramble(&d4, 50, seed);
        ensure(t.validate().passes(), || format!("seed {seed}: invalid triangulation"))?;
        let h = ChainComplex::of_triangulation(&t).homology().map_err(|e| e.to_string())?;
        ensure(h == HomologyProfile::sphere3(), || format!("seed {seed}: homology {h}"))?;
        let out = recognize(&t, &RecognizeConfig::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        match out.verdict {
            Verdict::Sphere => spheres += 1,
            Verdict::Anomaly(_) | Verdict::IterationLimit(_) => others.push(format!("{seed}:{}", out.verdict.keyword())),
            Verdict::NotSimplyConnected(_) => return Err(format!("seed {seed}: {}", out.line())),
        }
    }
    let took = start.elapsed();
    ensure(spheres >= SCRAMBLE_FLOOR, || format!("{spheres}/50 SPHERE, others {others:?}"))?;
    ensure(took < SCRAMBLE_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("{spheres}/50 SPHERE in {took:.1?}, others {others:?}"))
}

fn refusal_gate() -> Check {
    for (p, want) in [(2, "H1=Z/2"), (3, "H1=Z/3")] {
        let t = generate(CensusKind::Lens { p, q: 1 }).map_err(|e| e.to_string())?;
        let out = recognize(&t, &RecognizeConfig::default()).map_err(|e| e.to_string())?;
        ensure(matches!(out.verdict, Verdict::NotSimplyConnected(_)), || out.line())?;
        ensure(out.detail == want, || format!("lens({p},1): {}", out.detail))?;
    }
    Ok("lens(2,1) H1=Z/2, lens(3,1) H1=Z/3".into())
}

fn free_moves(s: &PaintState) -> Vec<(usize, usize)> {
    let sk = s.base().skeleton();
    s.black_triangles()
        .flat_map(|f| {
            let es: BTreeSet<usize> = sk.triangles[f].edges().into_iter().collect();
            es.into_iter().filter(|&e| s.edge_multiplicity(e) == 1).map(move |e| (f, e)).collect::<Vec<_>>()
        })
        .collect()
}

fn is_cell(s: &PaintState) -> bool {
    s.chi() == 1 && s.is_white_connected()
}

fn random_spine(rng: &mut ChaCha8Rng) -> PaintState {
    let d4 = generate(CensusKind::Boundary4Simplex).unwrap();
    let t = scramble(&d4, rng.gen_range(0..24), rng.gen());
    let strategy = [Strategy::Bfs, Strategy::Dfs, Strategy::Star][rng.gen_range(0..3)];
    build_initial_spine(&t, SimplexId::tet(rng.gen_range(0..t.tet_count())), strategy).unwrap()
}

fn move_locality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..PROPERTY_CASES {
        let mut s = random_spine(&mut rng);
        while let Some(&(f, e)) = {
            let m = free_moves(&s);
            (!m.is_empty()).then(|| m[rng.gen_range(0..m.len())]).as_ref()
        } {
            s = collapse_free_triangle(&s, SimplexId::triangle(f), SimplexId::edge(e)).map_err(|e| e.to_string())?;
            ensure(is_cell(&s), || format!("free collapse case {case}"))?;
        }
        loop {
            let iso: Vec<usize> =
                s.black_edges().filter(|&e| collapse_isolated_edge(&s, SimplexId::edge(e)).is_ok()).collect();
            if iso.is_empty() {
                break;
            }
            s = collapse_isolated_edge(&s, SimplexId::edge(iso[rng.gen_range(0..iso.len())])).unwrap();
            ensure(is_cell(&s), || format!("isolated edge case {case}"))?;
        }
    }
    let sub = generate(CensusKind::MinimalS3).unwrap().barycentric_subdivision();
    let mut cleared = 0;
    for case in 0..PROPERTY_CASES {
        let s = build_initial_spine(&sub, SimplexId::tet(rng.gen_range(0..sub.tet_count())), Strategy::Bfs).unwrap();
        let (s, _) = collapse_all(&s);
        let crowded: Vec<usize> = s.black_edges().filter(|&e| s.edge_multiplicity(e) >= 3).collect();
        if crowded.is_empty() {
            continue;
        }
        let e = crowded[rng.gen_range(0..crowded.len())];
        let sk = s.base().skeleton();
        let on: Vec<usize> = sk.edges[e]
            .triangles
            .iter()
            .copied()
            .filter(|&f| s.is_black_triangle(f))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let i = rng.gen_range(0..on.len());
        let j = (i + rng.gen_range(1..on.len())) % on.len();
        let ring: Vec<usize> = sk.edges[e].ring.iter().map(|r| r.tet).collect();
        match clear_edge(&s, SimplexId::edge(e), (SimplexId::triangle(on[i]), SimplexId::triangle(on[j]))) {
            Ok(out) => {
                ensure(out.edge_multiplicity(e) == 2, || format!("clear_edge case {case}: multiplicity"))?;
                ensure(check_invariants(&out, true).passes(), || format!("clear_edge case {case}: invariants"))?;
                let far_kept = s
                    .black_triangles()
                    .filter(|&f| !sk.triangles[f].tets().any(|t| ring.contains(&t)))
                    .all(|f| out.is_black_triangle(f));
                ensure(far_kept, || format!("clear_edge case {case}: far spine touched"))?;
                cleared += 1;
            }
            Err(Error::Anomaly { .. } | Error::NotSeparating(_)) => {}
            Err(e) => return Err(format!("clear_edge case {case}: {e}")),
        }
    }
    let d4 = generate(CensusKind::Boundary4Simplex).unwrap();
    let kinds = [(PachnerKind::OneFour, 3), (PachnerKind::TwoThree, 2), (PachnerKind::ThreeTwo, 1), (PachnerKind::FourOne, 0)];
    let mut applied = 0;
    for case in 0..PROPERTY_CASES {
        let t = scramble(&d4, rng.gen_range(0..30), rng.gen());
        let (kind, dim) = kinds[rng.gen_range(0..4)];
        let id = SimplexId { dim, index: rng.gen_range(0..t.simplex_count(dim)) };
        match pachner_move(&t, kind, id) {
            Ok((u, _)) => {
                let h = ChainComplex::of_triangulation(&u).homology().map_err(|e| e.to_string())?;
                ensure(h == HomologyProfile::sphere3(), || format!("pachner case {case}: {h}"))?;
                applied += 1;
            }
            Err(Error::MoveNotApplicable(_)) => {}
            Err(e) => return Err(format!("pachner case {case}: {e}")),
        }
    }
    Ok(format!(
        "{PROPERTY_CASES} cases each; {cleared} clear_edge successes, {applied} Pachner moves applied"
    ))
}

fn determinism() -> Check {
    let d4 = generate(CensusKind::Boundary4Simplex).unwrap();
    let inputs = [generate(CensusKind::MinimalS3).unwrap(), scramble(&d4, 100, 6), scramble(&d4, 50, 7)];
    ensure(scramble(&d4, 100, 6).serialize() == inputs[1].serialize(), || "scramble differs".into())?;
    for (k, t) in inputs.iter().enumerate() {
        let config = RecognizeConfig { seed_tet: 1, ..Default::default() };
        let a = recognize(t, &config).map_err(|e| e.to_string())?;
        let b = recognize(t, &config).map_err(|e| e.to_string())?;
        ensure(a.line() == b.line(), || format!("input {k}: verdicts differ"))?;
        ensure(a.trace.to_text() == b.trace.to_text(), || format!("input {k}: traces differ"))?;
    }
    Ok(format!("{} inputs, identical verdicts and traces", inputs.len()))
}

fn snf_oracle() -> Check {
    let snf = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).map_err(|e| e.to_string())?;
    ensure(snf.factors == vec![2, 4] && snf.rank == 2, || format!("[[2,4],[6,8]] -> {:?}", snf.factors))?;
    let hollow = ChainComplex::from_simplices(&[vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2]])
        .and_then(|c| c.homology())
        .map_err(|e| e.to_string())?;
    ensure(hollow == HomologyProfile::free(&[1, 1, 0, 0]), || format!("hollow triangle {hollow}"))?;
    let t = generate(CensusKind::Boundary4Simplex).unwrap();
    let sphere = ChainComplex::of_triangulation(&t).homology().map_err(|e| e.to_string())?;
    ensure(sphere == HomologyProfile::sphere3(), || format!("boundary4simplex {sphere}"))?;
    let s = build_initial_spine(&t, SimplexId::tet(0), Strategy::Star).unwrap();
    let spine = s.black_complex().homology().map_err(|e| e.to_string())?;
    ensure(spine == HomologyProfile::point(), || format!("spine {spine}"))?;
    Ok(format!("hollow {hollow}, boundary4simplex {sphere}, spine {spine}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("census correctness", census),
        ("theorem 1 invariant", theorem_one),
        ("collapse oracle", collapse_oracle),
        ("scramble suite", scramble_suite),
        ("refusal gate", refusal_gate),
        ("move-local properties", move_locality),
        ("determinism", determinism),
        ("snf oracle", snf_oracle),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("criterion {} {name}: PASS ({note})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

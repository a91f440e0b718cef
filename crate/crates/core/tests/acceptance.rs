//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use outersplit::bounds::{lower_bound_3tree, lower_bound_generic, upper_bound};
use outersplit::cli_io::{parse_rot, serialize_rot};
use outersplit::cover_solver::{brute_min_cfc, brute_osn_by_splits, fvs_to_cover, min_fvs, solve_osn, FvsSolution};
use outersplit::generators::{
    complete_3tree, cube, cycle, fan, icosahedron, k4, octahedron, random_biconnected, random_triangulation,
};
use outersplit::plane_graph::{DualGraph, FaceId, PlaneGraph};
use outersplit::reductions::{brute_min_vc, build_cfc_instance, cfc_to_vc, dual_plane_graph, vc_to_cfc, VcInstance};
use outersplit::split_engine::{realize_cover, Embedding, FaceCover};

const TWO_MINUTES: Duration = Duration::from_secs(120);
const TEN_SECONDS: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dual(g: &PlaneGraph) -> DualGraph {
    DualGraph::new(g, &g.faces(), None)
}

/// Biconnected instances with at most `max_faces` faces: fixed families and
/// at least `random` seeded ones.
fn corpus(max_faces: usize, random: usize, salt: u64) -> Vec<PlaneGraph> {
    let mut out: Vec<PlaneGraph> = vec![k4(), octahedron(), icosahedron(), cube()];
    out.extend((3..=12).map(|n| cycle(n).unwrap()));
    out.extend((3..=21).map(|n| fan(n).unwrap()));
    out.extend((0..=1).map(|d| complete_3tree(d).unwrap()));
    out.retain(|g| g.face_count() <= max_faces);

    let mut pairs = Vec::new();
    for n in 4..=14 {
        for m in n..=3 * n - 6 {
            if m + 2 - n <= max_faces {
                pairs.push((n, m));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(salt);
    let mut made = 0;
    while made < random {
        let (n, m) = pairs[rng.gen_range(0..pairs.len())];
        let g = if m == 3 * n - 6 {
            random_triangulation(n, rng.gen()).unwrap()
        } else {
            random_biconnected(n, m, rng.gen()).unwrap()
        };
        out.push(g);
        made += 1;
    }
    out
}

fn structural(g: &PlaneGraph) -> Result<(), String> {
    let faces = g.faces();
    check(g.vertex_count() + faces.len() == g.edge_count() + 2, || "Euler formula fails".into())?;
    let slots: usize = faces.iter().map(|f| f.len()).sum();
    check(slots == 2 * g.edge_count(), || "slot partition fails".into())?;
    let text = serialize_rot(g);
    check(parse_rot(&text).as_ref() == Ok(g), || format!("round trip fails:\n{text}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let graphs = corpus(8, 220, 1);
    let random = graphs.len();
    for g in &graphs {
        structural(g)?;
        let cfc = brute_min_cfc(g).map_err(|e| e.to_string())?.len();
        let splits = brute_osn_by_splits(g, g.face_count() - 1).map_err(|e| e.to_string())?;
        check(splits == Some(cfc - 1), || {
            format!("split search {splits:?} vs cover {cfc} on\n{}", serialize_rot(g))
        })?;
        let solved = solve_osn(g).map_err(|e| e.to_string())?.osn;
        check(solved + 1 == cfc, || format!("solver {solved} vs cover {cfc}"))?;
    }
    let took = start.elapsed();
    check(took < TWO_MINUTES, || format!("took {took:?}"))?;
    Ok(format!("{random} instances with <= 8 faces, 0 discrepancies, {:.1}s", took.as_secs_f64()))
}

fn criteria_2_and_3() -> (Outcome, Outcome) {
    let start = Instant::now();
    let graphs = corpus(20, 520, 2);
    let mut covers = Vec::new();
    for g in &graphs {
        let r = (|| {
            structural(g)?;
            let fvs = min_fvs(&dual(g)).map_err(|e| e.to_string())?;
            let cover = brute_min_cfc(g).map_err(|e| e.to_string())?;
            check(fvs.len() == cover.len(), || {
                format!("fvs {} vs cover {} on\n{}", fvs.len(), cover.len(), serialize_rot(g))
            })?;
            Ok::<_, String>(cover)
        })();
        match r {
            Ok(cover) => covers.push((g, cover)),
            Err(e) => return (Err(e), Err("skipped after criterion 2 failure".into())),
        }
    }
    let took = start.elapsed();
    let two = check(took < TWO_MINUTES, || format!("took {took:?}"))
        .map(|_| format!("{} instances with <= 20 faces, exact equality, {:.1}s", graphs.len(), took.as_secs_f64()));

    let three = (|| {
        let mut steps = 0;
        for (g, cover) in &covers {
            let seq = realize_cover(g, cover).map_err(|e| e.to_string())?;
            check(seq.len() + 1 == cover.len(), || format!("{} splits for {} faces", seq.len(), cover.len()))?;
            let mut emb = Embedding::new(g);
            for op in seq.ops() {
                let before = emb.graph().clone();
                let (next, _) = emb.split(&op.vertex, op.face_a, op.face_b).map_err(|e| e.to_string())?;
                let after = next.graph();
                check(
                    after.vertex_count() == before.vertex_count() + 1
                        && after.edge_count() == before.edge_count()
                        && after.face_count() + 1 == before.face_count(),
                    || format!("bookkeeping fails at {op}"),
                )?;
                structural(after)?;
                emb = next;
                steps += 1;
            }
            check(emb.graph().is_outerplane().is_outerplane(), || "replay is not outerplane".into())?;
        }
        Ok(format!("{} minimum covers realized with |S|-1 splits ({steps} steps), all outerplane", covers.len()))
    })();
    (two, three)
}

fn criterion_4() -> Outcome {
    let graphs = corpus(12, 120, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut samples = 0;
    let mut non_minimum = 0;
    while samples < 1200 {
        let g = graphs.choose(&mut rng).unwrap();
        let d = dual(g);
        let optimum = min_fvs(&d).map_err(|e| e.to_string())?.len();
        let mut order: Vec<FaceId> = d.nodes().to_vec();
        order.shuffle(&mut rng);
        let mut nodes = BTreeSet::new();
        for f in order {
            if d.without(&nodes).is_forest() && !rng.gen_bool(0.2) {
                break;
            }
            nodes.insert(f);
        }
        let sol = FvsSolution::verify(&d, nodes).map_err(|e| e.to_string())?;
        if sol.len() > optimum {
            non_minimum += 1;
        }
        fvs_to_cover(g, &sol).map_err(|e| format!("{e} on\n{}", serialize_rot(g)))?;
        samples += 1;
    }
    Ok(format!("{samples} feedback vertex sets ({non_minimum} non-minimum), 0 certificate failures"))
}

fn criterion_5() -> Outcome {
    let mut cases = vec![("K4", k4(), 1), ("T_1", complete_3tree(1).unwrap(), 2)];
    for n in 3..=10 {
        cases.push(("cycle", cycle(n).unwrap(), 0));
    }
    for (name, g, expected) in &cases {
        let solver = solve_osn(g).map_err(|e| e.to_string())?.osn;
        let cfc = brute_min_cfc(g).map_err(|e| e.to_string())?.len();
        let splits = brute_osn_by_splits(g, g.face_count() - 1).map_err(|e| e.to_string())?;
        check(
            solver == *expected && cfc == expected + 1 && splits == Some(*expected),
            || format!("{name}: solver {solver}, cover {cfc}, split search {splits:?}, expected {expected}"),
        )?;
    }
    Ok("osn(K4)=1, osn(T_1)=2, osn(cycle(3..=10))=0 by solver, cover oracle and split search".into())
}

fn criterion_6() -> Outcome {
    let mut seen = BTreeSet::new();
    let mut cubic = Vec::new();
    let mut candidates = vec![k4(), cube()];
    for n in 4..=7 {
        for seed in 0..40 {
            candidates.push(dual_plane_graph(&random_triangulation(n, seed).unwrap()).map_err(|e| e.to_string())?);
        }
    }
    for g in candidates {
        if g.vertex_count() <= 10 && seen.insert(serialize_rot(&g)) {
            cubic.push(g);
        }
    }
    for g in &cubic {
        structural(g)?;
        let inst = VcInstance::new(g.clone(), g.vertex_count()).map_err(|e| e.to_string())?;
        let d = build_cfc_instance(&inst).map_err(|e| e.to_string())?;
        structural(d.graph())?;
        let vc = brute_min_vc(g).map_err(|e| e.to_string())?;
        let cfc = brute_min_cfc(d.graph()).map_err(|e| e.to_string())?;
        check(vc.len() == cfc.len(), || format!("vc {} vs cfc {}", vc.len(), cfc.len()))?;
        let mapped = cfc_to_vc(&inst, &d, &cfc).map_err(|e| e.to_string())?;
        check(mapped.len() == cfc.len(), || "cover translation changes size".into())?;
        let back: FaceCover = vc_to_cfc(&inst, &d, &vc).map_err(|e| e.to_string())?;
        let again = cfc_to_vc(&inst, &d, &back).map_err(|e| e.to_string())?;
        check(again == vc, || "round trip changes the vertex cover".into())?;
    }
    Ok(format!("{} cubic plane graphs (K4, Q3, duals of triangulations n=4..7), vc = cfc(D*)", cubic.len()))
}

fn criterion_7() -> Outcome {
    let mut solved = 0;
    let mut degree3 = 0;
    let mut advisory = Vec::new();
    for n in 8..=14 {
        for seed in 0..16 {
            let g = random_triangulation(n, seed).unwrap();
            structural(&g)?;
            let osn = solve_osn(&g).map_err(|e| e.to_string())?.osn as i64;
            let lower = lower_bound_generic(n).ceil().to_integer();
            check(lower <= osn, || format!("n={n} seed={seed}: osn {osn} below {lower}"))?;
            let upper = upper_bound(&g).map_err(|e| e.to_string())?.floor().to_integer();
            if g.min_degree() == 3 {
                degree3 += 1;
                check(osn <= upper, || format!("n={n} seed={seed}: osn {osn} above {upper}"))?;
            } else if osn > upper {
                advisory.push(format!("n={n} seed={seed} min degree {}", g.min_degree()));
            }
            solved += 1;
        }
    }
    let ico = icosahedron();
    let osn = solve_osn(&ico).map_err(|e| e.to_string())?.osn as i64;
    check(lower_bound_generic(12).ceil().to_integer() <= osn, || "icosahedron below lower bound".into())?;
    solved += 1;
    for d in 0..=2 {
        let start = Instant::now();
        let osn = solve_osn(&complete_3tree(d).unwrap()).map_err(|e| e.to_string())?.osn as i64;
        let took = start.elapsed();
        let bound = lower_bound_3tree(d).to_integer();
        check(osn >= bound, || format!("T_{d}: osn {osn} below {bound}"))?;
        check(took < TEN_SECONDS, || format!("T_{d} took {took:?}"))?;
    }
    let note = if advisory.is_empty() {
        String::new()
    } else {
        format!("; upper bound exceeded at min degree > 3: {}", advisory.join(", "))
    };
    Ok(format!(
        "{solved} triangulations n=8..14 incl. icosahedron ({degree3} with min degree 3) within bounds; osn(T_d) >= 3^d-1 for d<=2{note}"
    ))
}

fn criterion_8() -> Outcome {
    let mut graphs = corpus(20, 200, 8);
    graphs.push(complete_3tree(2).unwrap());
    graphs.push(complete_3tree(3).unwrap());
    let mut splits = 0;
    for g in &graphs {
        structural(g)?;
        let res = solve_osn(g).map_err(|e| e.to_string())?;
        let mut emb = Embedding::new(g);
        for op in res.splits.ops() {
            let (next, _) = emb.split(&op.vertex, op.face_a, op.face_b).map_err(|e| e.to_string())?;
            let (a, b) = (emb.graph(), next.graph());
            check(
                b.vertex_count() == a.vertex_count() + 1
                    && b.edge_count() == a.edge_count()
                    && b.face_count() + 1 == a.face_count(),
                || format!("bookkeeping fails at {op}"),
            )?;
            emb = next;
            splits += 1;
        }
        let last = emb.to_plane_graph();
        structural(&last)?;
        let seq_text = res.splits.to_string();
        let reparsed = outersplit::split_engine::SplitSequence::parse(&seq_text).map_err(|e| e.to_string())?;
        check(reparsed.ops() == res.splits.ops(), || "split sequence round trip fails".into())?;
    }
    Ok(format!("{} instances, {splits} split steps: Euler, slots, bookkeeping, round trips", graphs.len()))
}

fn main() -> ExitCode {
    let run = |f: &dyn Fn() -> Outcome| -> Outcome {
        catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        })
    };

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "split search equals minimum connected face cover minus one", run(&criterion_1)));
    let (two, three) = catch_unwind(criteria_2_and_3).unwrap_or_else(|_| (Err("panic".into()), Err("panic".into())));
    results.push((2, "minimum dual FVS equals minimum connected face cover", two));
    results.push((3, "minimum covers realize with |S|-1 splits", three));
    results.push((4, "every dual FVS induces a connected face cover", run(&criterion_4)));
    results.push((5, "exact small values", run(&criterion_5)));
    results.push((6, "vertex cover equals face cover of the subdivided dual", run(&criterion_6)));
    results.push((7, "bound sweep", run(&criterion_7)));
    results.push((8, "structural invariants", run(&criterion_8)));

    let mut failed = 0;
    for (id, title, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {title}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

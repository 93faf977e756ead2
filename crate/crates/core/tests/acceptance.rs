//! Acceptance suite: one PASS/FAIL line per criterion. Set
//! `COOPCOLOR_LONG=1` to also attempt level-4 certification.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coopcolor::construction::{build_construction, construction_stats, extract_star_family};
use coopcolor::decomposition::{threshold_split, StarSplitter, ThresholdSplitter};
use coopcolor::exhaustive::{
    closure, find_qary_tree, solve_adapted_exact, solve_cooperative_exact, treedepth_exact, Budget, Status,
};
use coopcolor::graph::{family_to_adapted, family_to_transversal, verify_adapted, verify_cooperative, Graph};
use coopcolor::solvers::{
    greedy_solve, lll_solve, partition_solve_generic, rng_from_seed, sample_random_family, sample_random_graph,
    sample_random_star_family, star_partition_solve, GreedySubSolver, LllSubSolver, SolverParams,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn recurrence_fidelity() -> Check {
    let expected: [u128; 10] = [2, 5, 16, 65, 326, 1957, 13700, 109601, 986410, 9864101];
    let mut fact = 1.0f64;
    for t in 1..=10usize {
        let s = construction_stats(t).map_err(|e| e.to_string())?;
        ensure(s.vertex_count == expected[t - 1], || format!("V_{t} = {}", s.vertex_count))?;
        let delta = if t == 1 { 1 } else { expected[t - 2] };
        ensure(s.max_mono_degree == delta, || format!("Delta_{t} = {}", s.max_mono_degree))?;
        if t > 1 {
            ensure(s.vertex_count == t as u128 * expected[t - 2] + 1, || format!("recurrence breaks at {t}"))?;
        }
        fact *= t as f64;
        if t >= 5 {
            let gap = (s.vertex_count as f64 / fact - std::f64::consts::E).abs();
            let bound = 2.0 / (fact * (t as f64 + 1.0));
            ensure(gap < bound, || format!("t={t}: |V_t/t! - e| = {gap:e} >= {bound:e}"))?;
        }
    }
    Ok("V_1..V_10 and Delta_1..Delta_10 exact; e-gap bound holds for t=5..10".into())
}

fn built_graph_consistency() -> Check {
    for t in 1..=6 {
        let c = build_construction(t).map_err(|e| e.to_string())?;
        let s = construction_stats(t).map_err(|e| e.to_string())?;
        let m = &c.multigraph;
        ensure(m.vertex_count() as u128 == s.vertex_count, || format!("t={t}: vertex count"))?;
        ensure(m.max_mono_degree() as u128 == s.max_mono_degree, || format!("t={t}: max mono degree"))?;
        for color in 1..=t {
            ensure(m.color_class(color).is_star_forest(), || format!("t={t}: color {color} not a star forest"))?;
        }
    }
    Ok("t=1..6: V_t vertices, star-forest color classes, max mono degree Delta_t".into())
}

fn unsat_certification() -> Check {
    let mut notes = Vec::new();
    for t in 1..=3 {
        let c = build_construction(t).map_err(|e| e.to_string())?;
        let palette: Vec<usize> = (1..=t).collect();
        let out = solve_adapted_exact(&c.multigraph, &palette, &Budget::nodes(10_000_000)).map_err(|e| e.to_string())?;
        ensure(out.status == Status::Unsat, || format!("t={t}: {}", out.status))?;
        notes.push(format!("t={t} Unsat in {} nodes", out.stats.nodes));
        if t == 2 {
            ensure(common::adapted_solutions(&c.multigraph, 2).is_empty(), || "t=2 enumeration found a coloring".into())?;
        }
    }
    if std::env::var_os("COOPCOLOR_LONG").is_some() {
        let c = build_construction(4).map_err(|e| e.to_string())?;
        let budget = Budget::nodes(u64::MAX).with_time(Duration::from_secs(600));
        let out = solve_adapted_exact(&c.multigraph, &[1, 2, 3, 4], &budget).map_err(|e| e.to_string())?;
        ensure(out.status != Status::Sat, || "t=4 reported Sat".into())?;
        notes.push(format!("t=4 {} after {} nodes", out.status, out.stats.nodes));
    }
    Ok(notes.join(", "))
}

fn apex_deleted_colorability() -> Check {
    for t in 2..=3 {
        let c = build_construction(t).map_err(|e| e.to_string())?;
        let m = c.apex_deleted();
        let palette: Vec<usize> = (1..=t).collect();
        let out = solve_adapted_exact(&m, &palette, &Budget::unlimited()).map_err(|e| e.to_string())?;
        let w = out.witness.ok_or_else(|| format!("t={t}: {}", out.status))?;
        verify_adapted(&m, &w).map_err(|v| format!("t={t}: {v}"))?;
        if t == 2 {
            ensure(!common::adapted_solutions(&m, 2).is_empty(), || "t=2 enumeration disagrees".into())?;
        }
    }
    Ok("t=2,3 apex-deleted graphs have verified adapted colorings".into())
}

fn solver_soundness() -> Check {
    let mut sat = 0usize;
    let mut runs = 0usize;
    for seed in 0..1000u64 {
        let params = SolverParams { resample_cap: 300, ..SolverParams::with_seed(seed) };
        let general = sample_random_family(1 + (seed % 10) as usize, 1 + (seed % 4) as usize, 0.35, seed % 2 == 0, seed);
        let stars = sample_random_star_family(8 + (seed % 40) as usize, 2 + (seed % 5) as usize, 1 + (seed % 4) as usize, seed);
        let mut outs = vec![
            (greedy_solve(&general), &general),
            (lll_solve(&general, &params), &general),
            (solve_cooperative_exact(&general, &Budget::nodes(1_000_000)), &general),
            (
                partition_solve_generic(
                    &general,
                    &ThresholdSplitter { q: 2, h: 1 },
                    &LllSubSolver { resample_cap: 50 },
                    &LllSubSolver { resample_cap: 50 },
                    &params,
                ),
                &general,
            ),
            (star_partition_solve(&stars, &params), &stars),
            (partition_solve_generic(&stars, &StarSplitter, &GreedySubSolver, &GreedySubSolver, &params), &stars),
        ];
        for (out, f) in outs.drain(..) {
            runs += 1;
            let out = out.map_err(|e| format!("seed {seed}: {e}"))?;
            match (&out.status, &out.witness) {
                (Status::Sat, Some(w)) => {
                    verify_cooperative(f, w).map_err(|v| format!("seed {seed}: {v}"))?;
                    sat += 1;
                }
                (Status::Sat, None) => return Err(format!("seed {seed}: Sat without witness")),
                (_, Some(_)) => return Err(format!("seed {seed}: witness without Sat")),
                _ => {}
            }
        }
    }
    Ok(format!("{runs} solver runs over 2000 instances, {sat} Sat witnesses all verified"))
}

fn lll_regime() -> Check {
    let mut ok = 0;
    for seed in 0..100u64 {
        let f = sample_random_star_family(200, 44, 8, seed);
        let out = lll_solve(&f, &SolverParams::with_seed(seed)).map_err(|e| e.to_string())?;
        ok += usize::from(out.status == Status::Sat);
    }
    ensure(ok >= 99, || format!("{ok}/100 Sat"))?;
    Ok(format!("{ok}/100 Sat (n=200, d=8, k=44, cap 10^6)"))
}

fn partition_scaling() -> Check {
    let mut ok = 0;
    let mut max_resamples = 0;
    for seed in 0..100u64 {
        let f = sample_random_star_family(10_000, 12, 1000, seed);
        let out = star_partition_solve(&f, &SolverParams::with_seed(seed)).map_err(|e| e.to_string())?;
        ok += usize::from(out.status == Status::Sat);
        max_resamples = max_resamples.max(out.stats.resamples);
    }
    ensure(ok >= 95, || format!("{ok}/100 Sat"))?;
    Ok(format!("{ok}/100 Sat (n=10^4, d=10^3, l=12), max {max_resamples} resamples"))
}

fn detection_honesty() -> Check {
    for t in 2..=3 {
        let f = extract_star_family(&build_construction(t).map_err(|e| e.to_string())?);
        for seed in 0..3u64 {
            for cap in [1u64, 1_000, 20_000] {
                let params = SolverParams { resample_cap: cap, ..SolverParams::with_seed(seed) };
                let outs = [
                    ("lll", lll_solve(&f, &params)),
                    ("star-partition", star_partition_solve(&f, &params)),
                    (
                        "partition",
                        partition_solve_generic(&f, &StarSplitter, &GreedySubSolver, &GreedySubSolver, &params),
                    ),
                ];
                for (name, out) in outs {
                    let status = out.map_err(|e| e.to_string())?.status;
                    ensure(status == Status::Unknown, || format!("t={t} {name} cap {cap}: {status}"))?;
                }
            }
        }
        let greedy = greedy_solve(&f).map_err(|e| e.to_string())?.status;
        ensure(greedy == Status::Unknown, || format!("t={t} greedy: {greedy}"))?;
        let exact = solve_cooperative_exact(&f, &Budget::unlimited()).map_err(|e| e.to_string())?.status;
        ensure(exact == Status::Unsat, || format!("t={t} exact: {exact}"))?;
    }
    Ok("randomized solvers Unknown at every cap, exact Unsat, for t=2,3".into())
}

fn threshold_lemma_audit() -> Check {
    let budget = Budget::unlimited();
    let mut audited = 0;
    let mut seed = 0u64;
    while audited < 200 {
        let n = 5 + (seed % 10) as usize;
        let g = sample_random_graph(n, 0.15 + (seed % 4) as f64 * 0.05, &mut rng_from_seed(seed));
        seed += 1;
        if find_qary_tree(&g, 2, 2, &budget).map_err(|e| e.to_string())?.status != Status::Unsat {
            continue;
        }
        audited += 1;
        let split = threshold_split(&g, 2, 2).map_err(|e| e.to_string())?;
        let b_side = g.induced(|v| split.in_b(v));
        let found = find_qary_tree(&b_side, 2, 1, &budget).map_err(|e| e.to_string())?.status;
        ensure(found == Status::Unsat, || format!("seed {}: B-side contains a binary tree of height 1", seed - 1))?;
    }
    Ok(format!("{audited} tree-free graphs audited (from {seed} samples), 0 violations"))
}

fn treedepth_oracle() -> Check {
    let mut graphs: Vec<(Graph, usize)> = Vec::new();
    for n in 1..=10usize {
        graphs.push((Graph::path(n), (usize::BITS - n.leading_zeros()) as usize));
    }
    for leaves in 1..=10 {
        graphs.push((Graph::star(leaves), 2));
    }
    for n in 1..=7 {
        graphs.push((Graph::complete(n), n));
    }
    for (g, want) in &graphs {
        let (d, forest) = treedepth_exact(g).map_err(|e| e.to_string())?;
        ensure(d == *want, || format!("{} vertices, {} edges: got {d}, want {want}", g.vertex_count(), g.edge_count()))?;
        ensure(g.is_subgraph_of(&closure(&forest)), || "witness closure misses an edge".into())?;
        ensure(forest.height() + 1 == d, || "witness height mismatch".into())?;
    }
    Ok(format!("{} graphs (paths, stars, cliques) match the closed forms", graphs.len()))
}

fn translation_equivalences() -> Check {
    let mut nonempty = 0;
    for seed in 0..500u64 {
        let n = 1 + (seed % 8) as usize;
        let k = 1 + (seed / 8 % 3) as usize;
        let f = sample_random_family(n, k, 0.2 + (seed % 7) as f64 * 0.1, seed % 2 == 1, seed);
        let fam = common::family_solutions(&f);
        let adapted = common::adapted_solutions(&family_to_adapted(&f), k);
        let transversal = common::transversal_solutions(&family_to_transversal(&f));
        ensure(fam == adapted && fam == transversal, || format!("seed {seed}: solution sets differ"))?;
        nonempty += usize::from(!fam.is_empty());
    }
    Ok(format!("500 instances agree ({nonempty} colorable, {} not)", 500 - nonempty))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("recurrence fidelity", Duration::from_secs(1), recurrence_fidelity),
        ("built-graph consistency", Duration::from_secs(30), built_graph_consistency),
        ("UNSAT certification", Duration::from_secs(5), unsat_certification),
        ("apex-deleted colorability", Duration::from_secs(5), apex_deleted_colorability),
        ("solver soundness", Duration::from_secs(120), solver_soundness),
        ("LLL regime", Duration::from_secs(120), lll_regime),
        ("partition-solver scaling", Duration::from_secs(600), partition_scaling),
        ("non-colorable detection honesty", Duration::from_secs(60), detection_honesty),
        ("threshold lemma audit", Duration::from_secs(120), threshold_lemma_audit),
        ("treedepth oracle", Duration::from_secs(60), treedepth_oracle),
        ("translation equivalences", Duration::from_secs(120), translation_equivalences),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string() || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let long = id == 3 && std::env::var_os("COOPCOLOR_LONG").is_some();
        let result = result.and_then(|msg| {
            if long || elapsed <= *limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.1?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS criterion {id:>2} {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

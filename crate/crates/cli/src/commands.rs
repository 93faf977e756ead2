use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use coopcolor::construction::{
    build_construction_with_cap, construction_stats, extract_star_family, LabeledConstruction, DEFAULT_CAP,
};
use coopcolor::decomposition::{
    audit_threshold_split, build_quotient_instance, quotient_split, star_split, threshold_split, Split, Splitter,
    StarSplitter, ThresholdSplitter,
};
use coopcolor::exhaustive::{solve_adapted_portfolio, solve_cooperative_exact, Budget, SearchOutcome};
use coopcolor::graph::dot::{family_to_dot, multigraph_to_dot};
use coopcolor::graph::io::{coloring_to_map, parse_coloring, parse_instance, parse_parts, write_coloring, write_instance};
use coopcolor::graph::{family_to_adapted, verify_cooperative, GraphFamily};
use coopcolor::solvers::{
    family_lll_condition, greedy_solve, lll_solve, partition_solve_generic, sample_random_family,
    sample_random_star_family, star_partition_solve, ExactSubSolver, GreedySubSolver, LllSubSolver, SolverParams,
    SubSolver,
};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::{
    CertifyArgs, CliError, Context, DecomposeArgs, ExportDotArgs, GenConstructionArgs, GenRandomArgs, Method,
    RandomKind, Report, SolveArgs, SolverKind, SplitterKind, SubSolverKind, VerifyArgs,
};

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<String, CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn load_instance(path: &Path) -> Result<GraphFamily, CliError> {
    Ok(parse_instance(&read(path)?)?)
}

/// Integers beyond `u64` are written as strings.
fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn config_map(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn outcome_json(out: &SearchOutcome) -> Value {
    json!({
        "status": out.status,
        "nodes": out.stats.nodes,
        "propagations": out.stats.propagations,
        "resamples": out.stats.resamples,
        "budget_exhausted": out.stats.budget_exhausted,
        "wall_time_secs": out.stats.wall_time.as_secs_f64(),
    })
}

fn multigraph_json(c: &LabeledConstruction) -> String {
    let m = &c.multigraph;
    let mut s = String::new();
    s.push_str("{\n  \"version\": 1,\n  \"kind\": \"edge-colored-multigraph\",\n");
    let _ = writeln!(s, "  \"t\": {},", c.t);
    let _ = writeln!(s, "  \"vertex_count\": {},", m.vertex_count());
    let _ = writeln!(s, "  \"palette\": {},", m.palette());
    let apex = c.apex.map_or("null".to_string(), |a| a.to_string());
    let _ = writeln!(s, "  \"apex\": {apex},");
    s.push_str("  \"edges\": [");
    for (i, e) in m.edges().iter().enumerate() {
        let sep = if i == 0 { "\n" } else { ",\n" };
        let _ = write!(s, "{sep}    [{}, {}, {}]", e.u, e.v, e.color);
    }
    s.push_str(if m.edges().is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    s
}

pub fn gen_construction(ctx: &Context, a: GenConstructionArgs) -> Result<Report, CliError> {
    let cap = ctx.config.pick("gen-construction", "cap", a.cap, DEFAULT_CAP)?;
    let stats = construction_stats(a.t)?;
    let claim = format!("m_S({}) >= {}", stats.max_mono_degree, a.t + 1);
    let mut report = Report {
        config: config_map(&[
            ("t", json!(a.t)),
            ("cap", json!(cap)),
            ("family", json!(a.family)),
            ("dot", json!(a.dot)),
            ("stats_only", json!(a.stats_only)),
            ("witness_claim", json!(a.witness_claim)),
            ("out", json!(a.out)),
        ]),
        ..Report::default()
    };
    let mut summary = json!({
        "t": a.t,
        "vertex_count": big(stats.vertex_count),
        "max_mono_degree": big(stats.max_mono_degree),
        "edge_count": big(stats.edge_count),
    });
    if a.witness_claim {
        summary["claim"] = json!(claim);
    }
    if a.stats_only {
        println!("{}", serde_json::to_string_pretty(&summary).expect("json"));
        report.outcome = summary;
        return Ok(report);
    }
    if a.out.is_none() && (a.family || a.dot) {
        return Err(CliError::Usage("--family and --dot need --out".into()));
    }
    let c = build_construction_with_cap(a.t, cap)?;
    match &a.out {
        None => print!("{}", multigraph_json(&c)),
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Internal(format!("cannot create {}: {e}", dir.display())))?;
            let stem = format!("construction-t{}", a.t);
            report.artifacts.push(write(&dir.join(format!("{stem}.json")), &multigraph_json(&c))?);
            if a.family {
                let family = extract_star_family(&c);
                report.artifacts.push(write(&dir.join(format!("{stem}.family.json")), &write_instance(&family))?);
            }
            if a.dot {
                report.artifacts.push(write(&dir.join(format!("{stem}.dot")), &multigraph_to_dot(&c.multigraph, None))?);
            }
            if a.witness_claim {
                report.artifacts.push(write(&dir.join(format!("{stem}.claim.txt")), &format!("{claim}\n"))?);
            }
            println!("{}", serde_json::to_string_pretty(&summary).expect("json"));
        }
    }
    report.outcome = summary;
    Ok(report)
}

pub fn gen_random(ctx: &Context, a: GenRandomArgs) -> Result<Report, CliError> {
    let seed = ctx.seed("gen-random", a.seed)?;
    let kind = ctx.config.pick("gen-random", "kind", a.kind, RandomKind::Star)?;
    if a.n == 0 || a.k == 0 {
        return Err(CliError::Usage("--n and --k must be positive".into()));
    }
    let (family, extra) = match kind {
        RandomKind::Star => {
            let d = ctx.config.pick_opt("gen-random", "d", a.d)?.ok_or_else(|| CliError::Usage("--d is required".into()))?;
            if d == 0 {
                return Err(CliError::Usage("--d must be positive".into()));
            }
            (sample_random_star_family(a.n, a.k, d, seed), json!({ "d": d }))
        }
        RandomKind::Gnp => {
            let p = ctx.config.pick_opt("gen-random", "p", a.p)?.ok_or_else(|| CliError::Usage("--p is required".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage("--p must lie in [0, 1]".into()));
            }
            (sample_random_family(a.n, a.k, p, a.list, seed), json!({ "p": p, "list": a.list }))
        }
    };
    let text = write_instance(&family);
    let mut config = config_map(&[("n", json!(a.n)), ("k", json!(a.k)), ("kind", json!(kind)), ("seed", json!(seed))]);
    if let Value::Object(extra) = extra {
        config.extend(extra);
    }
    let mut artifacts = Vec::new();
    match &a.out {
        Some(path) => artifacts.push(write(path, &text)?),
        None => print!("{text}"),
    }
    Ok(Report {
        config,
        seed: Some(seed),
        outcome: json!({ "vertices": family.universe_size(), "members": family.k(), "max_degree": family.max_degree() }),
        artifacts,
    })
}

fn sub_solver(kind: SubSolverKind, cap: u64) -> Box<dyn SubSolver> {
    match kind {
        SubSolverKind::Greedy => Box::new(GreedySubSolver),
        SubSolverKind::Lll => Box::new(LllSubSolver { resample_cap: cap }),
        SubSolverKind::Exact => Box::new(ExactSubSolver { max_nodes: cap }),
    }
}

pub fn solve(ctx: &Context, a: SolveArgs) -> Result<Report, CliError> {
    let c = &ctx.config;
    let family = load_instance(&a.instance)?;
    let solver = c.pick("solve", "solver", a.solver, SolverKind::Lll)?;
    let randomized = matches!(solver, SolverKind::Lll | SolverKind::StarPartition | SolverKind::Partition);
    let seed = if randomized { ctx.seed("solve", a.seed)? } else { c.pick("solve", "seed", a.seed, 0)? };
    let defaults = SolverParams::default();
    let params = SolverParams {
        epsilon: c.pick("solve", "epsilon", a.epsilon, defaults.epsilon)?,
        inventory_size: c.pick("solve", "inventory", a.inventory, defaults.inventory_size)?,
        resample_cap: c.pick("solve", "cap", a.cap, defaults.resample_cap)?,
        seed,
    };
    params.validate()?;
    let splitter_kind = c.pick("solve", "splitter", a.splitter, SplitterKind::Star)?;
    let q = c.pick("solve", "q", a.q, 2)?;
    let h = c.pick("solve", "h", a.h, 1)?;
    let sub_a = c.pick("solve", "sub_a", a.sub_a, SubSolverKind::Greedy)?;
    let sub_b = c.pick("solve", "sub_b", a.sub_b, SubSolverKind::Greedy)?;
    let mut config = config_map(&[
        ("instance", json!(a.instance)),
        ("solver", json!(solver)),
        ("seed", json!(seed)),
        ("epsilon", json!(params.epsilon)),
        ("inventory", json!(params.inventory_size)),
        ("cap", json!(params.resample_cap)),
    ]);
    if solver == SolverKind::Partition {
        config.insert("splitter".into(), json!(splitter_kind));
        config.insert("q".into(), json!(q));
        config.insert("h".into(), json!(h));
        config.insert("sub_a".into(), json!(sub_a));
        config.insert("sub_b".into(), json!(sub_b));
    }

    let out = match solver {
        SolverKind::Greedy => greedy_solve(&family)?,
        SolverKind::Lll => lll_solve(&family, &params)?,
        SolverKind::StarPartition => star_partition_solve(&family, &params)?,
        SolverKind::Exact => solve_cooperative_exact(&family, &Budget::nodes(params.resample_cap))?,
        SolverKind::Partition => {
            let splitter: Box<dyn Splitter> = match splitter_kind {
                SplitterKind::Star => Box::new(StarSplitter),
                SplitterKind::Threshold => Box::new(ThresholdSplitter { q, h }),
            };
            let a_solver = sub_solver(sub_a, params.resample_cap);
            let b_solver = sub_solver(sub_b, params.resample_cap);
            partition_solve_generic(&family, splitter.as_ref(), a_solver.as_ref(), b_solver.as_ref(), &params)?
        }
    };
    let mut result = outcome_json(&out);
    if solver == SolverKind::Lll {
        result["lll_condition"] = serde_json::to_value(family_lll_condition(&family)).expect("json");
    }
    let mut artifacts = Vec::new();
    if let (Some(w), Some(path)) = (&out.witness, &a.witness_out) {
        artifacts.push(write(path, &write_coloring(&family, w))?);
        result["witness_path"] = json!(path);
    }
    if a.json {
        let mut printed = result.clone();
        printed["witness"] = out.witness.as_ref().map_or(Value::Null, |w| json!(coloring_to_map(&family, w)));
        println!("{}", serde_json::to_string_pretty(&printed).expect("json"));
    } else {
        println!("{} (resamples {}, nodes {})", out.status, out.stats.resamples, out.stats.nodes);
    }
    Ok(Report { config, seed: randomized.then_some(seed), outcome: result, artifacts })
}

pub fn verify(_ctx: &Context, a: VerifyArgs) -> Result<Report, CliError> {
    let family = load_instance(&a.instance)?;
    let coloring = parse_coloring(&family, &read(&a.coloring)?)?;
    let config = config_map(&[("instance", json!(a.instance)), ("coloring", json!(a.coloring))]);
    match verify_cooperative(&family, &coloring) {
        Ok(()) => {
            println!("valid");
            Ok(Report { config, outcome: json!({ "valid": true }), ..Report::default() })
        }
        Err(v) => {
            println!("invalid: {v}");
            Err(CliError::Contract(format!("coloring rejected: {v}")))
        }
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn certify_unsat(ctx: &Context, a: CertifyArgs) -> Result<Report, CliError> {
    let c = &ctx.config;
    let text = read(&a.instance)?;
    let family = parse_instance(&text)?;
    let nodes = c.pick_opt("certify-unsat", "budget_nodes", a.budget_nodes)?;
    let seconds: Option<f64> = c.pick_opt("certify-unsat", "budget_seconds", a.budget_seconds)?;
    let workers = c.pick("certify-unsat", "portfolio", a.portfolio, 1)?;
    if workers == 0 {
        return Err(CliError::Usage("--portfolio must be positive".into()));
    }
    let seed = if workers > 1 { ctx.seed("certify-unsat", a.seed)? } else { c.pick("certify-unsat", "seed", a.seed, 0)? };
    let mut budget = Budget::nodes(nodes.unwrap_or(u64::MAX));
    if let Some(s) = seconds {
        if !(s.is_finite() && s > 0.0) {
            return Err(CliError::Usage("--budget-seconds must be positive".into()));
        }
        budget = budget.with_time(Duration::from_secs_f64(s));
    }
    let m = family_to_adapted(&family);
    let lists: Vec<Vec<usize>> = (0..family.universe_size()).map(|v| family.memberships(v).to_vec()).collect();
    let (out, order) = solve_adapted_portfolio(&m, &lists, &budget, workers, seed)?;
    let mut cert = json!({
        "version": 1,
        "instance_sha256": sha256_hex(&text),
        "status": out.status,
        "search_order": order.fingerprint(),
        "workers": workers,
        "budget": { "nodes": nodes, "seconds": seconds },
        "stats": {
            "nodes": out.stats.nodes,
            "propagations": out.stats.propagations,
            "budget_exhausted": out.stats.budget_exhausted,
        },
    });
    if let Some(w) = &out.witness {
        cert["witness"] = json!(coloring_to_map(&family, w));
    }
    let text = serde_json::to_string_pretty(&cert).expect("json") + "\n";
    let mut artifacts = Vec::new();
    match &a.out {
        Some(path) => {
            artifacts.push(write(path, &text)?);
            println!("{}", out.status);
        }
        None => print!("{text}"),
    }
    let config = config_map(&[
        ("instance", json!(a.instance)),
        ("budget_nodes", json!(nodes)),
        ("budget_seconds", json!(seconds)),
        ("portfolio", json!(workers)),
        ("seed", json!(seed)),
    ]);
    let mut outcome = outcome_json(&out);
    outcome["search_order"] = json!(order.fingerprint());
    Ok(Report { config, seed: (workers > 1).then_some(seed), outcome, artifacts })
}

fn split_json(family: &GraphFamily, split: &Split) -> Value {
    let labels = |vs: &[usize]| vs.iter().map(|&v| family.label(v).to_string()).collect::<Vec<_>>();
    json!({ "a": labels(split.a()), "b": labels(split.b()), "neighbor_bound": split.neighbor_bound() })
}

pub fn decompose(ctx: &Context, a: DecomposeArgs) -> Result<Report, CliError> {
    let c = &ctx.config;
    let family = load_instance(&a.instance)?;
    if a.audit_tree_free && a.method != Method::Threshold {
        return Err(CliError::Usage("--audit-tree-free applies to --method threshold".into()));
    }
    let q = c.pick("decompose", "q", a.q, 2)?;
    let h = c.pick_opt("decompose", "h", a.h)?;
    let parts = match (&a.method, &a.parts) {
        (Method::Quotient, Some(path)) => Some(parse_parts(family.labels(), &read(path)?)?),
        (Method::Quotient, None) => return Err(CliError::Usage("--method quotient needs --parts".into())),
        (_, Some(_)) => return Err(CliError::Usage("--parts applies to --method quotient".into())),
        _ => None,
    };
    let mut members = Vec::new();
    let mut violations = Vec::new();
    for (i, member) in family.members().iter().enumerate() {
        let g = &member.graph;
        let mut entry = match a.method {
            Method::Star => split_json(&family, &star_split(g)?),
            Method::Threshold => {
                let h = h.unwrap_or(1);
                let mut e = split_json(&family, &threshold_split(g, q, h)?);
                if a.audit_tree_free {
                    let audit = audit_threshold_split(g, q, h)?;
                    if audit == Some(false) {
                        violations.push(member.name.clone());
                    }
                    e["audit"] = match audit {
                        None => json!("contains-tree"),
                        Some(true) => json!("ok"),
                        Some(false) => json!("violation"),
                    };
                }
                e
            }
            Method::Quotient => {
                let parts = parts.as_ref().expect("checked above");
                let local: Vec<Vec<usize>> = parts
                    .iter()
                    .map(|p| p.iter().copied().filter(|&v| g.contains(v)).collect::<Vec<_>>())
                    .filter(|p| !p.is_empty())
                    .collect();
                let qi = build_quotient_instance(g, local, h.unwrap_or(usize::MAX), None)?;
                let qs = quotient_split(&qi)?;
                let mut e = split_json(&family, &qs.split);
                e["depth"] = json!(qi.depth());
                e["max_part_size"] = json!(qi.max_part_size());
                e["a_components"] = json!(qs.a_components.len());
                e
            }
        };
        entry["member"] = json!(member.name);
        entry["color"] = json!(i + 1);
        members.push(entry);
    }
    let doc = json!({ "method": a.method, "members": members });
    let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
    let mut artifacts = Vec::new();
    match &a.out {
        Some(path) => artifacts.push(write(path, &text)?),
        None => print!("{text}"),
    }
    if !violations.is_empty() {
        return Err(CliError::Contract(format!("tree-freeness audit failed for {}", violations.join(", "))));
    }
    let config = config_map(&[
        ("instance", json!(a.instance)),
        ("method", json!(a.method)),
        ("q", json!(q)),
        ("h", json!(h)),
        ("parts", json!(a.parts)),
        ("audit_tree_free", json!(a.audit_tree_free)),
    ]);
    Ok(Report { config, outcome: json!({ "members": family.k() }), artifacts, ..Report::default() })
}

pub fn export_dot(_ctx: &Context, a: ExportDotArgs) -> Result<Report, CliError> {
    let family = load_instance(&a.instance)?;
    let coloring = match &a.coloring {
        Some(path) => Some(parse_coloring(&family, &read(path)?)?),
        None => None,
    };
    let dot = family_to_dot(&family, coloring.as_ref());
    let mut artifacts = Vec::new();
    match &a.out {
        Some(path) => artifacts.push(write(path, &dot)?),
        None => print!("{dot}"),
    }
    let config = config_map(&[("instance", json!(a.instance)), ("coloring", json!(a.coloring))]);
    Ok(Report { config, outcome: json!({ "colored": coloring.is_some() }), artifacts, ..Report::default() })
}

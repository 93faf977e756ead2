//! Benchmark suites. Tables hold only seed-determined values so repeated runs
//! are byte-identical; wall times go to a separate timing file.

use std::path::Path;
use std::time::Instant;

use coopcolor::exhaustive::{SearchOutcome, Status};
use coopcolor::solvers::{lll_solve, sample_random_star_family, star_partition_solve, SolverParams};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::commands::write;
use crate::{BenchArgs, CliError, Context, Report};

#[derive(Clone, Copy, Debug)]
struct Cell {
    d: usize,
    members: usize,
}

#[derive(Debug, Serialize)]
struct Row {
    suite: String,
    n: usize,
    d: usize,
    members: usize,
    seeds: usize,
    sat: usize,
    success_rate: f64,
    median_resamples: f64,
}

struct Suite {
    name: &'static str,
    default_n: usize,
    default_cap: u64,
    cells: Vec<Cell>,
    solve: fn(&coopcolor::graph::GraphFamily, &SolverParams) -> coopcolor::Result<SearchOutcome>,
}

fn suite(name: &str) -> Result<Suite, CliError> {
    match name {
        "lll-2ed" => Ok(Suite {
            name: "lll-2ed",
            default_n: 200,
            default_cap: 1_000_000,
            cells: [4, 8, 16]
                .into_iter()
                .map(|d| Cell { d, members: (2.0 * std::f64::consts::E * d as f64).ceil() as usize })
                .collect(),
            solve: lll_solve,
        }),
        "star-partition-scaling" => Ok(Suite {
            name: "star-partition-scaling",
            default_n: 10_000,
            default_cap: 10_000,
            cells: [100, 1000]
                .into_iter()
                .flat_map(|d| (2..=16).map(move |members| Cell { d, members }))
                .collect(),
            solve: star_partition_solve,
        }),
        other => Err(CliError::Usage(format!(
            "unknown suite {other:?} (expected lll-2ed or star-partition-scaling)"
        ))),
    }
}

/// `a..b` (half-open) or a comma-separated list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = |_| CliError::Usage(format!("invalid seed list {text:?}"));
    let text = text.trim();
    let seeds: Vec<u64> = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi): (u64, u64) = (lo.trim().parse().map_err(bad)?, hi.trim().parse().map_err(bad)?);
        (lo..hi).collect()
    } else {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(bad))
            .collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        return Err(CliError::Usage("seed list is empty".into()));
    }
    Ok(seeds)
}

fn median(mut xs: Vec<u64>) -> f64 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m] as f64
    } else {
        (xs[m - 1] + xs[m]) as f64 / 2.0
    }
}

pub fn run(ctx: &Context, a: BenchArgs) -> Result<Report, CliError> {
    let c = &ctx.config;
    let suite = suite(&a.suite)?;
    let seeds_text: String = c
        .pick_opt("bench", "seeds", a.seeds.clone())?
        .ok_or_else(|| CliError::Usage("--seeds is required".into()))?;
    let seeds = parse_seeds(&seeds_text)?;
    let n = c.pick("bench", "n", a.n, suite.default_n)?;
    let cap = c.pick("bench", "cap", a.cap, suite.default_cap)?;
    if n == 0 || cap == 0 {
        return Err(CliError::Usage("--n and --cap must be positive".into()));
    }
    let jobs = ctx.jobs("bench")?;

    let tasks: Vec<(usize, u64)> =
        (0..suite.cells.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let run_task = |&(i, seed): &(usize, u64)| -> Result<(SearchOutcome, f64), CliError> {
        let cell = suite.cells[i];
        let start = Instant::now();
        let family = sample_random_star_family(n, cell.members, cell.d, seed);
        let params = SolverParams { resample_cap: cap, ..SolverParams::with_seed(seed) };
        let out = (suite.solve)(&family, &params)?;
        Ok((out, start.elapsed().as_secs_f64()))
    };
    let results: Vec<(SearchOutcome, f64)> = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?
            .install(|| tasks.par_iter().map(run_task).collect::<Result<_, _>>())?,
        None => tasks.par_iter().map(run_task).collect::<Result<_, _>>()?,
    };

    let mut rows = Vec::new();
    let mut timing = Vec::new();
    for (i, cell) in suite.cells.iter().enumerate() {
        let chunk = &results[i * seeds.len()..(i + 1) * seeds.len()];
        let sat = chunk.iter().filter(|(o, _)| o.status == Status::Sat).count();
        rows.push(Row {
            suite: suite.name.to_string(),
            n,
            d: cell.d,
            members: cell.members,
            seeds: seeds.len(),
            sat,
            success_rate: sat as f64 / seeds.len() as f64,
            median_resamples: median(chunk.iter().map(|(o, _)| o.stats.resamples).collect()),
        });
        timing.push(json!({
            "d": cell.d,
            "members": cell.members,
            "wall_time_secs": chunk.iter().map(|(_, t)| t).sum::<f64>(),
        }));
    }

    let csv = to_csv(&rows)?;
    let mut artifacts = Vec::new();
    match &a.output {
        Some(prefix) => {
            let table = json!({ "suite": suite.name, "n": n, "cap": cap, "seeds": seeds, "rows": rows });
            artifacts.push(write(&with_ext(prefix, "csv"), &csv)?);
            artifacts.push(write(&with_ext(prefix, "json"), &(serde_json::to_string_pretty(&table).expect("json") + "\n"))?);
            let timing = json!({ "suite": suite.name, "cells": timing });
            artifacts.push(write(&with_ext(prefix, "timing.json"), &(serde_json::to_string_pretty(&timing).expect("json") + "\n"))?);
        }
        None => print!("{csv}"),
    }
    let config = serde_json::Map::from_iter([
        ("suite".to_string(), json!(suite.name)),
        ("seeds".to_string(), json!(seeds)),
        ("n".to_string(), json!(n)),
        ("cap".to_string(), json!(cap)),
        ("jobs".to_string(), json!(jobs)),
    ]);
    let total_sat: usize = rows.iter().map(|r| r.sat).sum();
    Ok(Report {
        config,
        seed: None,
        outcome: json!({ "cells": rows.len(), "runs": tasks.len(), "sat": total_sat }),
        artifacts,
    })
}

fn with_ext(prefix: &Path, ext: &str) -> std::path::PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    s.into()
}

fn to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("5, 7,9").unwrap(), vec![5, 7, 9]);
        assert!(parse_seeds("").is_err());
        assert!(parse_seeds("4..4").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(median(vec![3, 1, 2]), 2.0);
        assert_eq!(median(vec![4, 1, 2, 3]), 2.5);
    }
}

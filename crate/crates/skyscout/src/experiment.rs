//! Batch experiment runner: random instances per map, every requested
//! strategy on each, rows to CSV, and the Markdown summary table.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path as FsPath;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use skyscout_core::{gen_random, simulate, Graph, Strategy, VertexId};

pub const CSV_HEADER: [&str; 7] = [
    "map",
    "instance",
    "strategy",
    "ugv_time_s",
    "uav_time_s",
    "l_star_m",
    "ratio",
];

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub instances: usize,
    pub seed: u64,
    pub block_prob: f64,
    pub v_ugv: f64,
    pub v_uav: f64,
    pub strategies: Vec<Strategy>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            instances: 50,
            seed: 0,
            block_prob: 0.2,
            v_ugv: 20.0,
            v_uav: 40.0,
            strategies: Strategy::ALL.to_vec(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.instances < 1 {
            bail!("instance count must be >= 1");
        }
        if self.strategies.is_empty() {
            bail!("at least one strategy required");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportRow {
    pub map: String,
    /// Zero-based instance index, or "mean" for the per-strategy summary row.
    pub instance: String,
    pub strategy: String,
    pub ugv_time_s: f64,
    pub uav_time_s: f64,
    pub l_star_m: f64,
    pub ratio: f64,
}

/// Draws the endpoints and the initial UAV post for instance `i`, then the
/// blockage set, all from seed `base + i`.
fn instance_scenario(
    graph: &Graph,
    cfg: &ExperimentConfig,
    i: usize,
) -> Result<skyscout_core::Scenario> {
    let seed = cfg.seed.wrapping_add(i as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs: Vec<VertexId> = graph.vertices_sorted().collect();
    for _ in 0..100 {
        let s = vs[rng.gen_range(0..vs.len())];
        let g = vs[rng.gen_range(0..vs.len())];
        if s == g {
            continue;
        }
        let uav = vs[rng.gen_range(0..vs.len())];
        match gen_random(graph, s, g, uav, cfg.block_prob, cfg.v_ugv, cfg.v_uav, seed) {
            Ok(sc) => return Ok(sc),
            Err(_) => continue,
        }
    }
    bail!("could not draw a viable instance (seed {seed})");
}

/// Runs every instance x strategy in parallel and returns data rows followed
/// by per-strategy mean rows, sorted by (map, instance, strategy).
pub fn run_experiment(maps: &[(String, Graph)], cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = (0..maps.len())
        .flat_map(|m| (0..cfg.instances).map(move |i| (m, i)))
        .collect();

    let mut rows: Vec<ReportRow> = jobs
        .par_iter()
        .map(|&(m, i)| -> Result<Vec<ReportRow>> {
            let (name, graph) = &maps[m];
            let scenario = instance_scenario(graph, cfg, i)
                .with_context(|| format!("map {name}, instance {i}"))?;
            let mut out = Vec::with_capacity(cfg.strategies.len());
            for &strategy in &cfg.strategies {
                let r = simulate(graph, &scenario, strategy)
                    .with_context(|| format!("map {name}, instance {i}, {strategy}"))?;
                out.push(ReportRow {
                    map: name.clone(),
                    instance: format!("{i:04}"),
                    strategy: strategy.name().to_string(),
                    ugv_time_s: r.ugv_time,
                    uav_time_s: r.uav_time,
                    l_star_m: r.offline_optimum_length,
                    ratio: r.competitive_ratio,
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<ReportRow>>>>()?
        .into_iter()
        .flatten()
        .collect();

    rows.sort_by(|a, b| {
        (&a.map, &a.instance, &a.strategy).cmp(&(&b.map, &b.instance, &b.strategy))
    });

    // per map x strategy mean summary rows, appended after the data
    let mut means = Vec::new();
    for (name, _) in maps {
        for &strategy in &cfg.strategies {
            let picked: Vec<&ReportRow> = rows
                .iter()
                .filter(|r| &r.map == name && r.strategy == strategy.name())
                .collect();
            let n = picked.len() as f64;
            means.push(ReportRow {
                map: name.clone(),
                instance: "mean".to_string(),
                strategy: strategy.name().to_string(),
                ugv_time_s: picked.iter().map(|r| r.ugv_time_s).sum::<f64>() / n,
                uav_time_s: picked.iter().map(|r| r.uav_time_s).sum::<f64>() / n,
                l_star_m: picked.iter().map(|r| r.l_star_m).sum::<f64>() / n,
                ratio: picked.iter().map(|r| r.ratio).sum::<f64>() / n,
            });
        }
    }
    means.sort_by(|a, b| (&a.map, &a.strategy).cmp(&(&b.map, &b.strategy)));
    rows.extend(means);
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &FsPath) -> Result<Vec<ReportRow>> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    {
        let headers = r.headers()?;
        for required in CSV_HEADER {
            if !headers.iter().any(|h| h == required) {
                bail!("missing column: {required}");
            }
        }
    }
    let mut rows = Vec::new();
    for rec in r.deserialize() {
        rows.push(rec?);
    }
    Ok(rows)
}

/// Markdown summary: one row per map, one column per strategy (canonical
/// order), mean ugv_time over the data rows, three decimals.
pub fn render_report(rows: &[ReportRow]) -> Result<String> {
    let data: Vec<&ReportRow> = rows.iter().filter(|r| r.instance != "mean").collect();
    if data.is_empty() {
        bail!("no data rows");
    }

    let present: Vec<&'static str> = Strategy::ALL
        .iter()
        .map(|s| s.name())
        .filter(|n| data.iter().any(|r| r.strategy == *n))
        .collect();
    let mut maps: Vec<&str> = data.iter().map(|r| r.map.as_str()).collect();
    maps.sort_unstable();
    maps.dedup();

    fn label(name: &str) -> &str {
        match name {
            "full_obs" => "Full Obs.",
            "ugv_only" => "UGV-Only",
            "bidirectional" => "Bi-dir.",
            "optimal_partition" => "Optimal Partition",
            other => other,
        }
    }

    let mut out = String::new();
    out.push_str("| Map |");
    for s in &present {
        out.push_str(&format!(" {} |", label(s)));
    }
    out.push('\n');
    out.push_str("| --- |");
    for _ in &present {
        out.push_str(" --- |");
    }
    out.push('\n');
    for map in maps {
        out.push_str(&format!("| {map} |"));
        for s in &present {
            let vals: Vec<f64> = data
                .iter()
                .filter(|r| r.map == map && r.strategy == *s)
                .map(|r| r.ugv_time_s)
                .collect();
            if vals.is_empty() {
                out.push_str(" - |");
            } else {
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                out.push_str(&format!(" {mean:.3} |"));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Per-strategy mean ugv_time by map, from data rows only.
pub fn mean_by_strategy(rows: &[ReportRow], map: &str) -> BTreeMap<String, f64> {
    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.map == map && r.instance != "mean") {
        let e = sums.entry(r.strategy.clone()).or_insert((0.0, 0));
        e.0 += r.ugv_time_s;
        e.1 += 1;
    }
    sums.into_iter()
        .map(|(k, (s, n))| (k, s / n as f64))
        .collect()
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use skyscout_core::{gen_disjoint_adversarial, gen_random, offline_optimum, Strategy};

use skyscout::{
    grid_map, load_graph, read_csv, render_report, run_experiment, save_graph, save_scenario,
    write_csv, ExperimentConfig, GridParams,
};

#[derive(Parser)]
#[command(
    name = "skyscout",
    about = "Cooperative ground/aerial route inspection toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write graph/scenario instances to disk
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Simulate random instances across strategies and write a CSV report
    Run(RunArgs),
    /// Render a CSV report as a Markdown summary table
    Report {
        /// CSV produced by `run`
        csv: PathBuf,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Internally disjoint start-goal paths with adversarial blockages
    Disjoint {
        /// Comma-separated path lengths in meters, nondecreasing
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<f64>,
        /// Edges per path
        #[arg(long, default_value_t = 3)]
        segments: usize,
        /// Blockage offset from the goal as a fraction of the final edge
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long, default_value_t = 20.0)]
        vg: f64,
        #[arg(long, default_value_t = 40.0)]
        va: f64,
        /// Output directory for graph.json + scenario.json
        #[arg(long)]
        out: PathBuf,
    },
    /// Independent per-edge blockages on an existing graph
    Random {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        goal: String,
        #[arg(long)]
        uav_start: String,
        #[arg(long, default_value_t = 0.2)]
        block_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20.0)]
        vg: f64,
        #[arg(long, default_value_t = 40.0)]
        va: f64,
        /// Output scenario JSON path
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthetic jittered-grid road network
    Grid {
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: usize,
        #[arg(long, default_value_t = 200.0)]
        spacing: f64,
        #[arg(long, default_value_t = 0.2)]
        jitter: f64,
        #[arg(long, default_value_t = 0.1)]
        delete_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output graph JSON path
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Graph JSON file(s); the map id is the file stem
    #[arg(long, required = true, num_args = 1..)]
    graph: Vec<PathBuf>,
    #[arg(long, default_value_t = 50)]
    instances: usize,
    /// Seed base; instance i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.2)]
    block_prob: f64,
    #[arg(long, default_value_t = 20.0)]
    vg: f64,
    #[arg(long, default_value_t = 40.0)]
    va: f64,
    /// Comma-separated subset of: full_obs, ugv_only, bidirectional, optimal_partition
    #[arg(long, value_delimiter = ',', default_values_t = vec![
        "full_obs".to_string(),
        "ugv_only".to_string(),
        "bidirectional".to_string(),
        "optimal_partition".to_string(),
    ])]
    strategies: Vec<String>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { kind } => generate(kind),
        Command::Run(args) => cmd_run(args),
        Command::Report { csv, out } => {
            let rows = read_csv(&csv)?;
            let md = render_report(&rows)?;
            match out {
                Some(path) => std::fs::write(&path, md)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{md}"),
            }
            Ok(())
        }
    }
}

fn generate(kind: GenerateKind) -> Result<()> {
    match kind {
        GenerateKind::Disjoint {
            lengths,
            segments,
            epsilon,
            vg,
            va,
            out,
        } => {
            let (graph, scenario) = gen_disjoint_adversarial(&lengths, segments, epsilon, vg, va)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let graph_path = out.join("graph.json");
            let scenario_path = out.join("scenario.json");
            save_graph(&graph, &graph_path)?;
            save_scenario(&graph, &scenario, &scenario_path)?;
            let l_star = offline_optimum(&graph, &scenario)?;
            println!(
                "wrote {} and {}: {} disjoint paths, {} blockages, L* = {l_star}",
                graph_path.display(),
                scenario_path.display(),
                lengths.len(),
                scenario.blockages.len(),
            );
            Ok(())
        }
        GenerateKind::Random {
            graph,
            start,
            goal,
            uav_start,
            block_prob,
            seed,
            vg,
            va,
            out,
        } => {
            let g = load_graph(&graph)?;
            let s = g.require_vertex(&start)?;
            let t = g.require_vertex(&goal)?;
            let u = g.require_vertex(&uav_start)?;
            let scenario = gen_random(&g, s, t, u, block_prob, vg, va, seed)?;
            save_scenario(&g, &scenario, &out)?;
            let l_star = offline_optimum(&g, &scenario)?;
            println!(
                "wrote {}: {} blockages, L* = {l_star}",
                out.display(),
                scenario.blockages.len(),
            );
            Ok(())
        }
        GenerateKind::Grid {
            rows,
            cols,
            spacing,
            jitter,
            delete_prob,
            seed,
            out,
        } => {
            let g = grid_map(&GridParams {
                rows,
                cols,
                spacing,
                jitter,
                delete_prob,
                seed,
            })?;
            save_graph(&g, &out)?;
            println!(
                "wrote {}: {} vertices, {} edges",
                out.display(),
                g.vertex_count(),
                g.edge_count(),
            );
            Ok(())
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let mut strategies = Vec::new();
    for name in &args.strategies {
        strategies.push(name.parse::<Strategy>()?);
    }
    let cfg = ExperimentConfig {
        instances: args.instances,
        seed: args.seed,
        block_prob: args.block_prob,
        v_ugv: args.vg,
        v_uav: args.va,
        strategies,
    };

    let mut maps = Vec::new();
    for path in &args.graph {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .map(str::to_string)
            .unwrap_or_else(|| path.display().to_string());
        maps.push((name, load_graph(path)?));
    }
    if maps.is_empty() {
        bail!("at least one --graph required");
    }

    let rows = run_experiment(&maps, &cfg)?;
    let file = std::fs::File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_csv(&rows, file)?;
    let data_rows = rows.iter().filter(|r| r.instance != "mean").count();
    println!(
        "wrote {}: {data_rows} data rows + {} mean rows",
        args.out.display(),
        rows.len() - data_rows,
    );
    Ok(())
}

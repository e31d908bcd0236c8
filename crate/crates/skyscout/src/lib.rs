//! Std companion to `skyscout-core`: JSON graph/scenario formats, the
//! JSON-lines trace log, a synthetic map generator, and the batch experiment
//! runner behind the CLI.

// `!(x > 0.0)` guards reject NaN too; grid loops need their indices for
// vertex naming
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod experiment;
pub mod formats;
pub mod synth;

pub use experiment::{
    mean_by_strategy, read_csv, render_report, run_experiment, write_csv, ExperimentConfig,
    ReportRow, CSV_HEADER,
};
pub use formats::{
    graph_from_doc, graph_to_doc, load_graph, load_scenario, save_graph, save_scenario,
    scenario_from_doc, scenario_to_doc, write_trace_jsonl, GraphDoc, ScenarioDoc,
};
pub use synth::{grid_map, GridParams};

//! On-disk formats: the JSON graph and scenario documents and the JSON-lines
//! event trace.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path as FsPath;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use skyscout_core::{EdgeStatus, Event, EventKind, Graph, GraphBuilder, Scenario, ScenarioError};

#[derive(Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: String,
    pub v: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct BlockageDoc {
    pub u: String,
    pub v: String,
    /// Damage-point position along the edge, measured from `u`.
    pub fraction: f64,
}

#[derive(Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub s: String,
    pub g: String,
    pub uav_start: String,
    pub v_g: f64,
    pub v_a: f64,
    pub seed: u64,
    pub blockages: Vec<BlockageDoc>,
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for v in &doc.vertices {
        b.vertex(&v.id, v.x, v.y);
    }
    for e in &doc.edges {
        match e.length {
            Some(len) => b.edge(&e.u, &e.v, len),
            None => b.edge_euclidean(&e.u, &e.v),
        };
    }
    Ok(b.build()?)
}

pub fn graph_to_doc(graph: &Graph) -> GraphDoc {
    let vertices = graph
        .vertices_sorted()
        .map(|v| {
            let (x, y) = graph.coordinates(v);
            VertexDoc {
                id: graph.vertex_name(v).to_string(),
                x,
                y,
            }
        })
        .collect();
    let edges = graph
        .edge_ids()
        .map(|e| {
            let (lo, hi) = graph.edge_endpoints(e);
            EdgeDoc {
                u: graph.vertex_name(lo).to_string(),
                v: graph.vertex_name(hi).to_string(),
                length: Some(graph.edge_length(e)),
            }
        })
        .collect();
    GraphDoc { vertices, edges }
}

pub fn load_graph(path: &FsPath) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: GraphDoc =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    graph_from_doc(&doc).with_context(|| format!("validating {}", path.display()))
}

pub fn save_graph(graph: &Graph, path: &FsPath) -> Result<()> {
    let doc = graph_to_doc(graph);
    let text = serde_json::to_string_pretty(&doc)?;
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn scenario_from_doc(graph: &Graph, doc: &ScenarioDoc) -> Result<Scenario> {
    let start = graph.require_vertex(&doc.s)?;
    let goal = graph.require_vertex(&doc.g)?;
    let uav_start = graph.require_vertex(&doc.uav_start)?;
    let mut blockages = BTreeMap::new();
    for b in &doc.blockages {
        let u = graph.require_vertex(&b.u)?;
        let v = graph.require_vertex(&b.v)?;
        let Some(edge) = graph.edge_between(u, v) else {
            bail!("blockage references missing edge {}-{}", b.u, b.v);
        };
        // stored fraction is measured from the lower-id endpoint
        let (lo, _) = graph.edge_endpoints(edge);
        let fraction = if lo == u {
            b.fraction
        } else {
            1.0 - b.fraction
        };
        if blockages.insert(edge, fraction).is_some() {
            bail!("duplicate blockage on edge {}-{}", b.u, b.v);
        }
    }
    let scenario = Scenario::new(
        start, goal, uav_start, blockages, doc.v_g, doc.v_a, doc.seed,
    )?;
    match scenario.validate(graph) {
        Ok(()) => Ok(scenario),
        Err(ScenarioError::NotViable) => bail!("unreachable goal"),
        Err(e) => Err(e.into()),
    }
}

pub fn scenario_to_doc(graph: &Graph, scenario: &Scenario) -> ScenarioDoc {
    let blockages = scenario
        .blockages
        .iter()
        .map(|(&edge, &fraction)| {
            let (lo, hi) = graph.edge_endpoints(edge);
            BlockageDoc {
                u: graph.vertex_name(lo).to_string(),
                v: graph.vertex_name(hi).to_string(),
                fraction,
            }
        })
        .collect();
    ScenarioDoc {
        s: graph.vertex_name(scenario.start).to_string(),
        g: graph.vertex_name(scenario.goal).to_string(),
        uav_start: graph.vertex_name(scenario.uav_start).to_string(),
        v_g: scenario.v_ugv,
        v_a: scenario.v_uav,
        seed: scenario.seed,
        blockages,
    }
}

pub fn load_scenario(graph: &Graph, path: &FsPath) -> Result<Scenario> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: ScenarioDoc =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    scenario_from_doc(graph, &doc)
}

pub fn save_scenario(graph: &Graph, scenario: &Scenario, path: &FsPath) -> Result<()> {
    let doc = scenario_to_doc(graph, scenario);
    let text = serde_json::to_string_pretty(&doc)?;
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[derive(Serialize)]
struct TraceLine<'a> {
    time: f64,
    subject: &'a str,
    kind: &'static str,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    payload: serde_json::Value,
}

/// One event per line: time, subject, kind, payload.
pub fn write_trace_jsonl<W: Write>(graph: &Graph, trace: &[Event], mut out: W) -> Result<()> {
    for event in trace {
        let edge_payload = |edge, status: Option<EdgeStatus>| {
            let (lo, hi) = graph.edge_endpoints(edge);
            let mut p = serde_json::json!({
                "u": graph.vertex_name(lo),
                "v": graph.vertex_name(hi),
            });
            match status {
                Some(EdgeStatus::Open) => p["status"] = "open".into(),
                Some(EdgeStatus::Blocked { fraction }) => {
                    p["status"] = "blocked".into();
                    p["fraction"] = fraction.into();
                }
                None => {}
            }
            p
        };
        let (kind, payload) = match event.kind {
            EventKind::ReachVertex { vertex } => (
                "reach_vertex",
                serde_json::json!({ "vertex": graph.vertex_name(vertex) }),
            ),
            EventKind::ReachDamagePoint { edge, distance } => {
                let mut p = edge_payload(edge, None);
                p["distance"] = distance.into();
                ("reach_damage_point", p)
            }
            EventKind::PublishKnowledge { edge, status } => {
                ("publish_knowledge", edge_payload(edge, Some(status)))
            }
            EventKind::ReceiveKnowledge { edge, status } => {
                ("receive_knowledge", edge_payload(edge, Some(status)))
            }
            EventKind::BeginWait => ("begin_wait", serde_json::Value::Null),
            EventKind::Finish => ("finish", serde_json::Value::Null),
        };
        let line = TraceLine {
            time: event.time,
            subject: event.robot.name(),
            kind,
            payload,
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

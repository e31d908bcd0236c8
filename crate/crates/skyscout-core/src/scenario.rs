//! Instance construction: hidden blockage sets, adversarial disjoint-path
//! generators, random blockage generators, and the offline optimum.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;

use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph, GraphBuilder, GraphError, VertexId};

/// Fraction of the damaged edge at which the obstruction sits, measured from
/// the endpoint with the lexicographically smaller id.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Blockage {
    pub edge: EdgeId,
    pub fraction: f64,
}

/// One problem instance on a given graph. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub start: VertexId,
    pub goal: VertexId,
    pub uav_start: VertexId,
    /// Hidden damage: edge -> fraction from the lower-id endpoint, in (0, 1).
    pub blockages: BTreeMap<EdgeId, f64>,
    pub v_ugv: f64,
    pub v_uav: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioError {
    StartEqualsGoal,
    NonPositiveSpeed,
    BadFraction(f64),
    NotViable,
    Disconnected,
    RetryBudgetExhausted,
    EmptyLengths,
    NonMonotoneLengths,
    BadParameter(&'static str),
    Graph(GraphError),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::StartEqualsGoal => write!(f, "start and goal coincide"),
            ScenarioError::NonPositiveSpeed => write!(f, "speeds must be positive"),
            ScenarioError::BadFraction(x) => write!(f, "damage fraction {x} not in (0, 1)"),
            ScenarioError::NotViable => write!(f, "no open path from start to goal"),
            ScenarioError::Disconnected => write!(f, "unreachable goal"),
            ScenarioError::RetryBudgetExhausted => {
                write!(
                    f,
                    "could not sample a viable blockage set within the retry budget"
                )
            }
            ScenarioError::EmptyLengths => write!(f, "at least one path length required"),
            ScenarioError::NonMonotoneLengths => write!(f, "path lengths must be nondecreasing"),
            ScenarioError::BadParameter(what) => write!(f, "bad parameter: {what}"),
            ScenarioError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ScenarioError {}

impl From<GraphError> for ScenarioError {
    fn from(e: GraphError) -> Self {
        ScenarioError::Graph(e)
    }
}

/// Rejection-sampling retry budget for [`gen_random`].
pub const VIABILITY_RETRY_BUDGET: usize = 1000;

impl Scenario {
    pub fn new(
        start: VertexId,
        goal: VertexId,
        uav_start: VertexId,
        blockages: BTreeMap<EdgeId, f64>,
        v_ugv: f64,
        v_uav: f64,
        seed: u64,
    ) -> Result<Self, ScenarioError> {
        if start == goal {
            return Err(ScenarioError::StartEqualsGoal);
        }
        if !(v_ugv > 0.0) || !(v_uav > 0.0) {
            return Err(ScenarioError::NonPositiveSpeed);
        }
        for f in blockages.values() {
            if !(*f > 0.0 && *f < 1.0) {
                return Err(ScenarioError::BadFraction(*f));
            }
        }
        Ok(Scenario {
            start,
            goal,
            uav_start,
            blockages,
            v_ugv,
            v_uav,
            seed,
        })
    }

    pub fn blocked_edges(&self) -> BTreeSet<EdgeId> {
        self.blockages.keys().copied().collect()
    }

    /// Checks that at least one start-goal path avoids every blocked edge.
    pub fn validate(&self, graph: &Graph) -> Result<(), ScenarioError> {
        match graph.shortest_path(self.start, self.goal, &self.blocked_edges()) {
            Some(_) => Ok(()),
            None => Err(ScenarioError::NotViable),
        }
    }
}

/// Length of the shortest start-goal path with full knowledge of the damage.
pub fn offline_optimum(graph: &Graph, scenario: &Scenario) -> Result<f64, ScenarioError> {
    graph
        .shortest_path(scenario.start, scenario.goal, &scenario.blocked_edges())
        .map(|p| p.length())
        .ok_or(ScenarioError::NotViable)
}

fn path_vertex_name(path: usize, seg: usize) -> String {
    format!("p{:02}v{:02}", path + 1, seg)
}

/// Builds k internally disjoint start-goal paths with the requested lengths,
/// each subdivided into `segments_per_path` edges, then blocks the final edge
/// of every path but the longest at a small offset from the goal.
///
/// Paths are fanned out as arcs in the plane; coordinates matter only for
/// aerial Euclidean hops, so the requested road lengths are assigned directly
/// to the subdivided edges.
pub fn gen_disjoint_adversarial(
    lengths: &[f64],
    segments_per_path: usize,
    epsilon_fraction: f64,
    v_ugv: f64,
    v_uav: f64,
) -> Result<(Graph, Scenario), ScenarioError> {
    if lengths.is_empty() {
        return Err(ScenarioError::EmptyLengths);
    }
    if lengths.windows(2).any(|w| w[0] > w[1]) {
        return Err(ScenarioError::NonMonotoneLengths);
    }
    if lengths.iter().any(|l| !(*l > 0.0)) {
        return Err(ScenarioError::BadParameter("lengths must be positive"));
    }
    if segments_per_path < 2 {
        return Err(ScenarioError::BadParameter(
            "segments_per_path must be >= 2",
        ));
    }
    if !(epsilon_fraction > 0.0 && epsilon_fraction < 1.0) {
        return Err(ScenarioError::BadParameter(
            "epsilon_fraction must be in (0, 1)",
        ));
    }

    let k = lengths.len();
    let n = segments_per_path;
    let span = lengths[0] * 0.5;

    let mut b = GraphBuilder::new();
    b.vertex("s", 0.0, 0.0);
    b.vertex("g", span, 0.0);
    for (i, &len) in lengths.iter().enumerate() {
        let amplitude = span * 0.25 * (i + 1) as f64;
        let side = if i % 2 == 0 { 1.0 } else { -1.0 };
        for seg in 1..n {
            let t = seg as f64 / n as f64;
            let x = span * t;
            let y = side * amplitude * libm::sin(core::f64::consts::PI * t);
            b.vertex(&path_vertex_name(i, seg), x, y);
        }
        let seg_len = len / n as f64;
        let mut prev = String::from("s");
        for seg in 1..n {
            let cur = path_vertex_name(i, seg);
            b.edge(&prev, &cur, seg_len);
            prev = cur;
        }
        b.edge(&prev, "g", seg_len);
    }
    let graph = b.build()?;

    // Block the final edge of every path but the last, at distance
    // epsilon_fraction * edge_length from g. "g" sorts below the interior
    // vertex names, so the stored fraction is measured from g directly.
    let mut blockages = BTreeMap::new();
    for i in 0..k.saturating_sub(1) {
        let near = graph.require_vertex(&path_vertex_name(i, n - 1))?;
        let goal = graph.require_vertex("g")?;
        let e = graph
            .edge_between(near, goal)
            .expect("final segment edge exists");
        blockages.insert(e, epsilon_fraction);
    }

    let start = graph.require_vertex("s")?;
    let goal = graph.require_vertex("g")?;
    let scenario = Scenario::new(start, goal, start, blockages, v_ugv, v_uav, 0)?;
    scenario.validate(&graph)?;
    Ok((graph, scenario))
}

/// Blocks each edge independently with `block_probability`, placing every
/// damage point at the edge midpoint, and resamples until a viable instance
/// appears. Deterministic for a fixed seed.
#[allow(clippy::too_many_arguments)]
pub fn gen_random(
    graph: &Graph,
    start: VertexId,
    goal: VertexId,
    uav_start: VertexId,
    block_probability: f64,
    v_ugv: f64,
    v_uav: f64,
    seed: u64,
) -> Result<Scenario, ScenarioError> {
    if !(0.0..1.0).contains(&block_probability) {
        return Err(ScenarioError::BadParameter(
            "block_probability must be in [0, 1)",
        ));
    }
    if graph.shortest_path(start, goal, &BTreeSet::new()).is_none() {
        return Err(ScenarioError::Disconnected);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..VIABILITY_RETRY_BUDGET {
        let mut blockages = BTreeMap::new();
        for e in graph.edge_ids() {
            if rng.gen::<f64>() < block_probability {
                blockages.insert(e, 0.5);
            }
        }
        let scenario = Scenario::new(start, goal, uav_start, blockages, v_ugv, v_uav, seed)?;
        if scenario.validate(graph).is_ok() {
            return Ok(scenario);
        }
    }
    Err(ScenarioError::RetryBudgetExhausted)
}

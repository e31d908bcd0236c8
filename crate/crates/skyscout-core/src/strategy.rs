//! The four online policies, expressed as decision functions the simulation
//! engine invokes whenever a robot sits at a vertex with nothing to do.
//!
//! Knowledge model: each robot keeps its own belief over edge statuses.
//! Discoveries are published to a shared board when the discovering robot is
//! at a vertex, and received from the board whenever a robot is at a vertex.
//! Mid-edge robots neither send nor receive.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::inspection::{expand_euler_walk, DeadheadMode, InspectionPlan, SuffixPath};
use crate::partition::optimal_split;
use crate::sim::SimError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Strategy {
    FullObservation,
    UgvOnly,
    Bidirectional,
    OptimalPartition,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::FullObservation,
        Strategy::UgvOnly,
        Strategy::Bidirectional,
        Strategy::OptimalPartition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::FullObservation => "full_obs",
            Strategy::UgvOnly => "ugv_only",
            Strategy::Bidirectional => "bidirectional",
            Strategy::OptimalPartition => "optimal_partition",
        }
    }

    /// Whether the UAV takes part at all.
    pub fn uses_uav(self) -> bool {
        matches!(self, Strategy::Bidirectional | Strategy::OptimalPartition)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnknownStrategy(pub alloc::string::String);

impl fmt::Display for UnknownStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown strategy {:?}", self.0)
    }
}

impl core::error::Error for UnknownStrategy {}

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full_obs" => Ok(Strategy::FullObservation),
            "ugv_only" => Ok(Strategy::UgvOnly),
            "bidirectional" => Ok(Strategy::Bidirectional),
            "optimal_partition" => Ok(Strategy::OptimalPartition),
            other => Err(UnknownStrategy(other.into())),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Robot {
    Ugv,
    Uav,
}

impl Robot {
    pub fn name(self) -> &'static str {
        match self {
            Robot::Ugv => "ugv",
            Robot::Uav => "uav",
        }
    }
}

/// Known status of an inspected edge. Edges absent from a belief are unknown.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EdgeStatus {
    Open,
    /// Damage fraction measured from the lower-id endpoint.
    Blocked {
        fraction: f64,
    },
}

impl EdgeStatus {
    pub fn is_blocked(self) -> bool {
        matches!(self, EdgeStatus::Blocked { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContradictoryDiscovery {
    pub edge: EdgeId,
}

impl fmt::Display for ContradictoryDiscovery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "contradictory status for edge {:?}", self.edge)
    }
}

impl core::error::Error for ContradictoryDiscovery {}

/// Monotone knowledge over edge statuses: unknown -> open or
/// unknown -> blocked, never revised.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BeliefState {
    known: BTreeMap<EdgeId, EdgeStatus>,
}

impl BeliefState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, edge: EdgeId) -> Option<EdgeStatus> {
        self.known.get(&edge).copied()
    }

    /// Records a discovery. Idempotent for repeated identical statuses;
    /// errors when the edge is already known with a different status.
    pub fn apply_discovery(
        &mut self,
        edge: EdgeId,
        status: EdgeStatus,
    ) -> Result<bool, ContradictoryDiscovery> {
        match self.known.get(&edge) {
            None => {
                self.known.insert(edge, status);
                Ok(true)
            }
            Some(existing) if *existing == status => Ok(false),
            Some(_) => Err(ContradictoryDiscovery { edge }),
        }
    }

    pub fn blocked_set(&self) -> BTreeSet<EdgeId> {
        self.known
            .iter()
            .filter(|(_, s)| s.is_blocked())
            .map(|(e, _)| *e)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, EdgeStatus)> + '_ {
        self.known.iter().map(|(e, s)| (*e, *s))
    }

    pub fn len(&self) -> usize {
        self.known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }
}

/// What the ground vehicle should do next.
#[derive(Clone, Debug, PartialEq)]
pub enum UgvStep {
    Traverse { next: VertexId, edge: EdgeId },
    Wait,
    Finish,
}

/// What the aerial vehicle should do next.
#[derive(Clone, Debug, PartialEq)]
pub enum UavStep {
    Fly {
        to: VertexId,
        distance: f64,
        /// Set when the hop sweeps a required road edge and reveals its status.
        inspect: Option<EdgeId>,
    },
    Wait,
}

pub(crate) struct PlannedPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

pub(crate) struct PartitionPlan {
    pub split_index: usize,
    pub suffix: SuffixPath,
    pub plan: InspectionPlan,
    pub generation: u64,
}

struct Hop {
    to: VertexId,
    distance: f64,
    inspect: Option<EdgeId>,
}

struct UavExec {
    generation: u64,
    hops: Vec<Hop>,
    cursor: usize,
}

/// Mutable planning state shared by both robots' decision functions.
pub(crate) struct PolicyState {
    strategy: Strategy,
    mode: DeadheadMode,
    v_ugv: f64,
    v_uav: f64,
    pub path: Option<PlannedPath>,
    partition: Option<PartitionPlan>,
    generation: u64,
    uav_exec: Option<UavExec>,
}

impl PolicyState {
    pub fn new(strategy: Strategy, mode: DeadheadMode, v_ugv: f64, v_uav: f64) -> Self {
        PolicyState {
            strategy,
            mode,
            v_ugv,
            v_uav,
            path: None,
            partition: None,
            generation: 0,
            uav_exec: None,
        }
    }

    fn path_valid(&self, belief: &BeliefState, at: VertexId) -> bool {
        let Some(path) = &self.path else {
            return false;
        };
        let Some(idx) = path.vertices.iter().position(|v| *v == at) else {
            return false;
        };
        path.edges[idx..]
            .iter()
            .all(|e| !matches!(belief.get(*e), Some(EdgeStatus::Blocked { .. })))
    }

    /// Decision function for the ground vehicle at a vertex.
    ///
    /// `planning_blocked` is the edge set route computation must avoid: the
    /// robot's own known blockages for online policies, the true blockage set
    /// for the full-observation lower bound.
    #[allow(clippy::too_many_arguments)]
    pub fn ugv_step(
        &mut self,
        graph: &Graph,
        goal: VertexId,
        belief: &BeliefState,
        planning_blocked: &BTreeSet<EdgeId>,
        at: VertexId,
        uav_position_hint: VertexId,
    ) -> Result<UgvStep, SimError> {
        if at == goal {
            return Ok(UgvStep::Finish);
        }
        if !self.path_valid(belief, at) {
            let path = graph
                .shortest_path(at, goal, planning_blocked)
                .ok_or(SimError::GoalUnreachable)?;
            self.generation += 1;
            if self.strategy == Strategy::OptimalPartition {
                let result = optimal_split(
                    graph,
                    &path,
                    uav_position_hint,
                    self.v_ugv,
                    self.v_uav,
                    0.0,
                    self.mode,
                )?;
                let suffix = SuffixPath::from_path_suffix(graph, &path, result.split_index)?;
                self.partition = Some(PartitionPlan {
                    split_index: result.split_index,
                    suffix,
                    plan: result.uav_plan,
                    generation: self.generation,
                });
            }
            self.path = Some(PlannedPath {
                vertices: path.vertices().to_vec(),
                edges: path.edges().to_vec(),
            });
        }

        let path = self.path.as_ref().expect("just ensured");
        let idx = path
            .vertices
            .iter()
            .position(|v| *v == at)
            .expect("validated above");
        let edge = path.edges[idx];
        let next = path.vertices[idx + 1];

        match self.strategy {
            Strategy::FullObservation | Strategy::UgvOnly | Strategy::Bidirectional => {
                Ok(UgvStep::Traverse { next, edge })
            }
            Strategy::OptimalPartition => {
                let split = self
                    .partition
                    .as_ref()
                    .map(|p| p.split_index)
                    .unwrap_or(usize::MAX);
                if idx < split {
                    // own inspection assignment: attempt even when unknown
                    Ok(UgvStep::Traverse { next, edge })
                } else {
                    match belief.get(edge) {
                        Some(EdgeStatus::Open) => Ok(UgvStep::Traverse { next, edge }),
                        None => Ok(UgvStep::Wait),
                        Some(EdgeStatus::Blocked { .. }) => {
                            Err(SimError::Internal("blocked edge survived replanning"))
                        }
                    }
                }
            }
        }
    }

    /// Decision function for the aerial vehicle at a vertex.
    pub fn uav_step(
        &mut self,
        graph: &Graph,
        belief: &BeliefState,
        at: VertexId,
    ) -> Result<UavStep, SimError> {
        match self.strategy {
            Strategy::FullObservation | Strategy::UgvOnly => Ok(UavStep::Wait),
            Strategy::Bidirectional => Ok(self.uav_step_bidirectional(graph, belief, at)),
            Strategy::OptimalPartition => self.uav_step_partition(graph, at),
        }
    }

    /// Inspect the ground vehicle's current path backward from the goal-side
    /// frontier of its uninspected portion, skipping edges already known.
    fn uav_step_bidirectional(&self, graph: &Graph, belief: &BeliefState, at: VertexId) -> UavStep {
        let Some(path) = &self.path else {
            return UavStep::Wait;
        };
        for r in (1..path.vertices.len()).rev() {
            let edge = path.edges[r - 1];
            if belief.get(edge).is_some() {
                continue;
            }
            let far = path.vertices[r];
            let near = path.vertices[r - 1];
            return if at == far {
                UavStep::Fly {
                    to: near,
                    distance: graph.edge_length(edge),
                    inspect: Some(edge),
                }
            } else {
                UavStep::Fly {
                    to: far,
                    distance: graph.motion_weight(at, far),
                    inspect: None,
                }
            };
        }
        UavStep::Wait
    }

    /// Execute the current partition's inspection plan hop by hop; a fresh
    /// partition (new generation) replaces any half-finished walk.
    fn uav_step_partition(&mut self, graph: &Graph, at: VertexId) -> Result<UavStep, SimError> {
        let Some(part) = &self.partition else {
            return Ok(UavStep::Wait);
        };
        let rebuild = match &self.uav_exec {
            Some(exec) => exec.generation != part.generation,
            None => true,
        };
        if rebuild {
            self.uav_exec = Some(build_exec(graph, part, at)?);
        }
        let exec = self.uav_exec.as_mut().expect("just built");
        if exec.cursor >= exec.hops.len() {
            return Ok(UavStep::Wait);
        }
        let hop = &exec.hops[exec.cursor];
        exec.cursor += 1;
        Ok(UavStep::Fly {
            to: hop.to,
            distance: hop.distance,
            inspect: hop.inspect,
        })
    }
}

fn build_exec(graph: &Graph, part: &PartitionPlan, at: VertexId) -> Result<UavExec, SimError> {
    let mut hops = Vec::new();
    if part.suffix.edge_count() > 0 {
        let walk = expand_euler_walk(&part.suffix, &part.plan)?;
        if at != part.plan.start {
            hops.push(Hop {
                to: part.plan.start,
                distance: graph.motion_weight(at, part.plan.start),
                inspect: None,
            });
        }
        for pair in walk.windows(2) {
            let is_connector = part
                .plan
                .connector
                .map(|(a, b)| (pair[0] == a && pair[1] == b) || (pair[0] == b && pair[1] == a))
                .unwrap_or(false);
            if is_connector {
                hops.push(Hop {
                    to: pair[1],
                    distance: part.plan.deadhead_length,
                    inspect: None,
                });
            } else {
                let edge = graph
                    .edge_between(pair[0], pair[1])
                    .ok_or(SimError::Internal("walk step is not a required edge"))?;
                hops.push(Hop {
                    to: pair[1],
                    distance: graph.edge_length(edge),
                    inspect: Some(edge),
                });
            }
        }
    }
    Ok(UavExec {
        generation: part.generation,
        hops,
        cursor: 0,
    })
}

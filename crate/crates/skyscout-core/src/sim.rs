//! Deterministic continuous-time event-driven co-simulation of the two
//! robots under a strategy.
//!
//! Motion is piecewise constant speed, so every event time is an exact
//! quotient of lengths and speeds; there is no integration timestep. When the
//! ground vehicle drives into an unknown blockage it reaches the damage point
//! at distance d, reverses, and is charged the full 2d before its next
//! decision. The aerial vehicle detects a blockage in flight but reports it
//! only at the far vertex of the swept edge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, Graph, GraphError, VertexId};
use crate::inspection::{DeadheadMode, InspectionError};
use crate::partition::PartitionError;
use crate::scenario::{offline_optimum, Scenario, ScenarioError};
use crate::strategy::{
    BeliefState, ContradictoryDiscovery, EdgeStatus, PolicyState, Robot, Strategy, UavStep, UgvStep,
};

#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    GoalUnreachable,
    Deadlock,
    Contradiction(ContradictoryDiscovery),
    Scenario(ScenarioError),
    Partition(PartitionError),
    Inspection(InspectionError),
    Graph(GraphError),
    Internal(&'static str),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::GoalUnreachable => write!(f, "goal unreachable under known blockages"),
            SimError::Deadlock => write!(f, "simulation deadlocked with no pending events"),
            SimError::Contradiction(c) => write!(f, "{c}"),
            SimError::Scenario(e) => write!(f, "{e}"),
            SimError::Partition(e) => write!(f, "{e}"),
            SimError::Inspection(e) => write!(f, "{e}"),
            SimError::Graph(e) => write!(f, "{e}"),
            SimError::Internal(what) => write!(f, "internal simulation error: {what}"),
        }
    }
}

impl core::error::Error for SimError {}

impl From<ContradictoryDiscovery> for SimError {
    fn from(c: ContradictoryDiscovery) -> Self {
        SimError::Contradiction(c)
    }
}
impl From<ScenarioError> for SimError {
    fn from(e: ScenarioError) -> Self {
        SimError::Scenario(e)
    }
}
impl From<PartitionError> for SimError {
    fn from(e: PartitionError) -> Self {
        SimError::Partition(e)
    }
}
impl From<InspectionError> for SimError {
    fn from(e: InspectionError) -> Self {
        SimError::Inspection(e)
    }
}
impl From<GraphError> for SimError {
    fn from(e: GraphError) -> Self {
        SimError::Graph(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EventKind {
    ReachVertex { vertex: VertexId },
    ReachDamagePoint { edge: EdgeId, distance: f64 },
    PublishKnowledge { edge: EdgeId, status: EdgeStatus },
    ReceiveKnowledge { edge: EdgeId, status: EdgeStatus },
    BeginWait,
    Finish,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub robot: Robot,
    pub kind: EventKind,
}

#[derive(Clone, Debug)]
pub struct SimulationResult {
    pub strategy: Strategy,
    /// Time at which the ground vehicle reaches the goal (travel + waiting).
    pub ugv_time: f64,
    /// Total aerial flight time.
    pub uav_time: f64,
    pub ugv_travel_time: f64,
    pub ugv_wait_time: f64,
    pub offline_optimum_length: f64,
    /// `ugv_time / (L* / v_ugv)`.
    pub competitive_ratio: f64,
    pub trace: Vec<Event>,
    /// Final shared knowledge board.
    pub discovered: BeliefState,
}

#[derive(Copy, Clone, Debug, Default)]
pub struct SimOptions {
    pub deadhead_mode: DeadheadMode,
}

enum LegKind {
    Road,
    ProbeOut { edge: EdgeId, d: f64, fraction: f64 },
    ProbeBack,
    Fly { inspect: Option<EdgeId> },
}

struct Leg {
    from: VertexId,
    to: VertexId,
    start: f64,
    done: f64,
    kind: LegKind,
}

struct RobotCtx {
    at: VertexId,
    leg: Option<Leg>,
    active: bool,
    finished: bool,
    waiting: bool,
    wait_since: f64,
    wait_total: f64,
    travel: f64,
    belief: BeliefState,
    unpublished: Vec<(EdgeId, EdgeStatus)>,
}

impl RobotCtx {
    fn new(at: VertexId, active: bool) -> Self {
        RobotCtx {
            at,
            leg: None,
            active,
            finished: false,
            waiting: false,
            wait_since: 0.0,
            wait_total: 0.0,
            travel: 0.0,
            belief: BeliefState::new(),
            unpublished: Vec::new(),
        }
    }

    fn idle_at_vertex(&self) -> bool {
        self.active && !self.finished && self.leg.is_none()
    }
}

struct Engine<'a> {
    graph: &'a Graph,
    scenario: &'a Scenario,
    strategy: Strategy,
    truth: &'a BTreeMap<EdgeId, f64>,
    truth_blocked: BTreeSet<EdgeId>,
    board: BeliefState,
    policy: PolicyState,
    ugv: RobotCtx,
    uav: RobotCtx,
    trace: Vec<Event>,
    finish_time: Option<f64>,
}

pub fn simulate(
    graph: &Graph,
    scenario: &Scenario,
    strategy: Strategy,
) -> Result<SimulationResult, SimError> {
    simulate_with(graph, scenario, strategy, SimOptions::default())
}

pub fn simulate_with(
    graph: &Graph,
    scenario: &Scenario,
    strategy: Strategy,
    options: SimOptions,
) -> Result<SimulationResult, SimError> {
    let l_star = offline_optimum(graph, scenario)?;

    let mut engine = Engine {
        graph,
        scenario,
        strategy,
        truth: &scenario.blockages,
        truth_blocked: scenario.blocked_edges(),
        board: BeliefState::new(),
        policy: PolicyState::new(
            strategy,
            options.deadhead_mode,
            scenario.v_ugv,
            scenario.v_uav,
        ),
        ugv: RobotCtx::new(scenario.start, true),
        uav: RobotCtx::new(scenario.uav_start, strategy.uses_uav()),
        trace: Vec::new(),
        finish_time: None,
    };

    engine.decision_phase(0.0)?;
    let mut guard = 0u64;
    while !engine.ugv.finished {
        guard += 1;
        if guard > 50_000_000 {
            return Err(SimError::Internal("event budget exhausted"));
        }
        let tu = engine.ugv.leg.as_ref().map(|l| l.done);
        let ta = engine.uav.leg.as_ref().map(|l| l.done);
        let t = match (tu, ta) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(SimError::Deadlock),
        };
        if tu == Some(t) {
            engine.complete_leg(Robot::Ugv)?;
        }
        if ta == Some(t) {
            engine.complete_leg(Robot::Uav)?;
        }
        engine.decision_phase(t)?;
    }

    let ugv_time = engine.finish_time.expect("finished implies finish time");
    let competitive_ratio = ugv_time / (l_star / scenario.v_ugv);
    Ok(SimulationResult {
        strategy,
        ugv_time,
        uav_time: engine.uav.travel,
        ugv_travel_time: engine.ugv.travel,
        ugv_wait_time: engine.ugv.wait_total,
        offline_optimum_length: l_star,
        competitive_ratio,
        trace: engine.trace,
        discovered: engine.board,
    })
}

impl<'a> Engine<'a> {
    fn robot_mut(&mut self, r: Robot) -> &mut RobotCtx {
        match r {
            Robot::Ugv => &mut self.ugv,
            Robot::Uav => &mut self.uav,
        }
    }

    fn push(&mut self, time: f64, robot: Robot, kind: EventKind) {
        self.trace.push(Event { time, robot, kind });
    }

    /// Record a discovery in the robot's own belief; it is published only
    /// once the robot is at a vertex.
    fn discover(&mut self, r: Robot, edge: EdgeId, status: EdgeStatus) -> Result<(), SimError> {
        let robot = self.robot_mut(r);
        if robot.belief.apply_discovery(edge, status)? {
            robot.unpublished.push((edge, status));
        }
        Ok(())
    }

    fn truth_status(&self, edge: EdgeId) -> EdgeStatus {
        match self.truth.get(&edge) {
            Some(&fraction) => EdgeStatus::Blocked { fraction },
            None => EdgeStatus::Open,
        }
    }

    fn complete_leg(&mut self, r: Robot) -> Result<(), SimError> {
        let robot = self.robot_mut(r);
        let leg = robot.leg.take().expect("completing an absent leg");
        robot.travel += leg.done - leg.start;
        let t = leg.done;
        match leg.kind {
            LegKind::Road | LegKind::ProbeBack => {
                robot.at = leg.to;
                let vertex = leg.to;
                self.push(t, r, EventKind::ReachVertex { vertex });
            }
            LegKind::Fly { inspect } => {
                robot.at = leg.to;
                let vertex = leg.to;
                self.push(t, r, EventKind::ReachVertex { vertex });
                if let Some(edge) = inspect {
                    let status = self.truth_status(edge);
                    self.discover(r, edge, status)?;
                }
            }
            LegKind::ProbeOut { edge, d, fraction } => {
                self.push(t, r, EventKind::ReachDamagePoint { edge, distance: d });
                self.discover(r, edge, EdgeStatus::Blocked { fraction })?;
                // reverse to the vertex we came from; same distance back
                let speed = match r {
                    Robot::Ugv => self.scenario.v_ugv,
                    Robot::Uav => self.scenario.v_uav,
                };
                let back = Leg {
                    from: leg.to,
                    to: leg.from,
                    start: t,
                    done: t + d / speed,
                    kind: LegKind::ProbeBack,
                };
                self.robot_mut(r).leg = Some(back);
            }
        }
        Ok(())
    }

    /// Publish own discoveries to the board, then pull everything new from
    /// it. Only called while the robot is at a vertex.
    fn sync(&mut self, r: Robot, t: f64) -> Result<bool, SimError> {
        let mut changed = false;
        let robot = match r {
            Robot::Ugv => &mut self.ugv,
            Robot::Uav => &mut self.uav,
        };
        for (edge, status) in core::mem::take(&mut robot.unpublished) {
            if self.board.apply_discovery(edge, status)? {
                self.trace.push(Event {
                    time: t,
                    robot: r,
                    kind: EventKind::PublishKnowledge { edge, status },
                });
                changed = true;
            }
        }
        let robot = match r {
            Robot::Ugv => &mut self.ugv,
            Robot::Uav => &mut self.uav,
        };
        let fresh: Vec<(EdgeId, EdgeStatus)> = self
            .board
            .iter()
            .filter(|(e, _)| robot.belief.get(*e).is_none())
            .collect();
        for (edge, status) in fresh {
            robot.belief.apply_discovery(edge, status)?;
            self.trace.push(Event {
                time: t,
                robot: r,
                kind: EventKind::ReceiveKnowledge { edge, status },
            });
            changed = true;
        }
        Ok(changed)
    }

    fn end_wait(&mut self, r: Robot, t: f64) {
        let robot = self.robot_mut(r);
        if robot.waiting {
            robot.wait_total += t - robot.wait_since;
            robot.waiting = false;
        }
    }

    fn begin_wait(&mut self, r: Robot, t: f64) -> bool {
        let robot = self.robot_mut(r);
        if robot.waiting {
            return false;
        }
        robot.waiting = true;
        robot.wait_since = t;
        self.push(t, r, EventKind::BeginWait);
        true
    }

    fn start_ugv_leg(&mut self, t: f64, next: VertexId, edge: EdgeId) {
        let from = self.ugv.at;
        let len = self.graph.edge_length(edge);
        let speed = self.scenario.v_ugv;
        let leg = match self.truth.get(&edge) {
            // policy never picks a known-blocked edge, so a blocked pick is
            // always an unknowing probe
            Some(&fraction) => {
                let (lo, _) = self.graph.edge_endpoints(edge);
                let d = if from == lo {
                    fraction * len
                } else {
                    (1.0 - fraction) * len
                };
                Leg {
                    from,
                    to: next,
                    start: t,
                    done: t + d / speed,
                    kind: LegKind::ProbeOut { edge, d, fraction },
                }
            }
            None => Leg {
                from,
                to: next,
                start: t,
                done: t + len / speed,
                kind: LegKind::Road,
            },
        };
        self.ugv.leg = Some(leg);
    }

    fn decision_phase(&mut self, t: f64) -> Result<(), SimError> {
        for _round in 0..64 {
            let mut changed = false;

            if self.ugv.idle_at_vertex() {
                changed |= self.sync(Robot::Ugv, t)?;
                let planning_blocked = match self.strategy {
                    Strategy::FullObservation => self.truth_blocked.clone(),
                    _ => self.ugv.belief.blocked_set(),
                };
                let uav_hint = self.uav.leg.as_ref().map(|l| l.to).unwrap_or(self.uav.at);
                let at = self.ugv.at;
                let step = self.policy.ugv_step(
                    self.graph,
                    self.scenario.goal,
                    &self.ugv.belief,
                    &planning_blocked,
                    at,
                    uav_hint,
                )?;
                match step {
                    UgvStep::Finish => {
                        self.end_wait(Robot::Ugv, t);
                        self.ugv.finished = true;
                        self.finish_time = Some(t);
                        self.push(t, Robot::Ugv, EventKind::Finish);
                        changed = true;
                    }
                    UgvStep::Traverse { next, edge } => {
                        self.end_wait(Robot::Ugv, t);
                        self.start_ugv_leg(t, next, edge);
                        changed = true;
                    }
                    UgvStep::Wait => {
                        changed |= self.begin_wait(Robot::Ugv, t);
                    }
                }
            }

            if self.uav.idle_at_vertex() && !self.ugv.finished {
                changed |= self.sync(Robot::Uav, t)?;
                let at = self.uav.at;
                let step = self.policy.uav_step(self.graph, &self.uav.belief, at)?;
                match step {
                    UavStep::Fly {
                        to,
                        distance,
                        inspect,
                    } => {
                        self.end_wait(Robot::Uav, t);
                        self.uav.leg = Some(Leg {
                            from: at,
                            to,
                            start: t,
                            done: t + distance / self.scenario.v_uav,
                            kind: LegKind::Fly { inspect },
                        });
                        changed = true;
                    }
                    UavStep::Wait => {
                        changed |= self.begin_wait(Robot::Uav, t);
                    }
                }
            }

            if !changed {
                return Ok(());
            }
        }
        Err(SimError::Internal("decision phase did not settle"))
    }
}

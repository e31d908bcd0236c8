//! Core algorithms for cooperative ground/aerial route inspection on road
//! networks with unknown blockages: graph + deterministic shortest paths,
//! scenario generation, aerial suffix-inspection planning, optimal
//! prefix/suffix partitioning, online traversal strategies, an event-driven
//! two-robot simulator, and closed-form worst-case calculators.
//!
//! The crate is `no_std` (with `alloc`); file formats, CLI, and experiment
//! plumbing live in the companion `skyscout` crate.

#![no_std]
// speed/length guards use `!(x > 0.0)` so NaN is rejected along with
// nonpositive values; index loops mirror the summations they implement
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod graph;
pub mod inspection;
pub mod partition;
pub mod scenario;
pub mod sim;
pub mod strategy;

pub use analysis::{
    coop_ratio_bound, coop_time, shortest_first_order, ugv_only_ratio_bound, ugv_only_time,
    ugv_only_worst_case, AnalysisError, CoopRatioBound,
};
pub use graph::{EdgeId, Graph, GraphBuilder, GraphError, Path, VertexId};
pub use inspection::{
    expand_euler_walk, interior_deadhead_options, oracle_inspection_time, plan_inspection,
    DeadheadMode, InspectionError, InspectionPlan, StopChoice, SuffixPath,
};
pub use partition::{optimal_split, ugv_prefix_time, PartitionError, PartitionResult};
pub use scenario::{
    gen_disjoint_adversarial, gen_random, offline_optimum, Blockage, Scenario, ScenarioError,
};
pub use sim::{simulate, simulate_with, Event, EventKind, SimError, SimOptions, SimulationResult};
pub use strategy::{BeliefState, EdgeStatus, Robot, Strategy, UnknownStrategy};

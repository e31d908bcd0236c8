//! Minimum-time aerial inspection of a path suffix.
//!
//! The UAV must fly over every edge of a simple path, starting from an
//! arbitrary graph vertex. A plan is a start vertex on the suffix, a stop
//! vertex, and at most one deadhead connector; the stop is always one of the
//! two suffix endpoints or the start itself, because any other stop forces a
//! two-connector parity fix that costs strictly more than a single connector.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub enum InspectionError {
    NotAPath,
    RepeatedVertex,
    NonPositiveSpeed,
    NotInterior(usize),
    SuffixTooLarge(usize),
    PlanMismatch,
    BadSuffixIndex(usize),
}

impl fmt::Display for InspectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InspectionError::NotAPath => write!(f, "vertex sequence is not a path in the graph"),
            InspectionError::RepeatedVertex => write!(f, "suffix path repeats a vertex"),
            InspectionError::NonPositiveSpeed => write!(f, "speed must be positive"),
            InspectionError::NotInterior(i) => write!(f, "index {i} is not interior"),
            InspectionError::SuffixTooLarge(l) => {
                write!(f, "suffix with {l} edges exceeds the enumeration bound")
            }
            InspectionError::PlanMismatch => write!(f, "plan does not belong to this suffix"),
            InspectionError::BadSuffixIndex(i) => write!(f, "suffix index {i} out of range"),
        }
    }
}

impl core::error::Error for InspectionError {}

/// How a deadhead hop between two suffix vertices is priced.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum DeadheadMode {
    /// The cheaper of the road edge (when one exists) and the straight-line
    /// distance. A deadhead carries no coverage obligation, so the UAV may
    /// fly straight even where a road exists.
    #[default]
    Cheapest,
    /// The literal motion-graph weight: road length when the pair is an edge.
    RoadWeight,
}

/// A simple path suffix the UAV must inspect: ordered vertices, their
/// consecutive required edges, and the total required length.
#[derive(Clone, Debug)]
pub struct SuffixPath {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    total_length: f64,
}

impl SuffixPath {
    pub fn new(graph: &Graph, vertices: Vec<VertexId>) -> Result<Self, InspectionError> {
        if vertices.is_empty() {
            return Err(InspectionError::NotAPath);
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(InspectionError::RepeatedVertex);
            }
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        let mut total_length = 0.0;
        for pair in vertices.windows(2) {
            let e = graph
                .edge_between(pair[0], pair[1])
                .ok_or(InspectionError::NotAPath)?;
            total_length += graph.edge_length(e);
            edges.push(e);
        }
        Ok(SuffixPath {
            vertices,
            edges,
            total_length,
        })
    }

    /// The suffix of `path` starting at vertex index `j`.
    pub fn from_path_suffix(
        graph: &Graph,
        path: &crate::graph::Path,
        j: usize,
    ) -> Result<Self, InspectionError> {
        if j >= path.vertices().len() {
            return Err(InspectionError::BadSuffixIndex(j));
        }
        SuffixPath::new(graph, path.vertices()[j..].to_vec())
    }

    /// Number of required edges (may be zero for a single-vertex suffix).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }
}

/// Where the inspection walk terminates relative to the suffix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StopChoice {
    Front,
    Back,
    Start,
}

/// Optimal-plan output: start/stop vertices, the single deadhead connector if
/// one is needed, and the time breakdown.
#[derive(Clone, Debug)]
pub struct InspectionPlan {
    pub start: VertexId,
    pub stop: VertexId,
    pub start_index: usize,
    pub stop_choice: StopChoice,
    pub connector: Option<(VertexId, VertexId)>,
    pub deadhead_length: f64,
    pub transit_time: f64,
    pub inspect_time: f64,
    pub deadhead_time: f64,
    pub total_time: f64,
}

fn deadhead_cost(graph: &Graph, p: VertexId, q: VertexId, mode: DeadheadMode) -> f64 {
    match mode {
        DeadheadMode::RoadWeight => graph.motion_weight(p, q),
        DeadheadMode::Cheapest => {
            let direct = graph.euclidean(p, q);
            match graph.edge_between(p, q) {
                Some(e) => direct.min(graph.edge_length(e)),
                None => direct,
            }
        }
    }
}

/// The three single-connector options for an interior start `v_i`, in the
/// fixed order (stop front, stop back, stop at start):
/// `(v_0, w(v_i, v_l))`, `(v_l, w(v_0, v_i))`, `(v_i, w(v_0, v_l))`.
pub fn interior_deadhead_options(
    graph: &Graph,
    suffix: &SuffixPath,
    i: usize,
    mode: DeadheadMode,
) -> Result<[(VertexId, f64); 3], InspectionError> {
    let l = suffix.edge_count();
    if i == 0 || i >= l {
        return Err(InspectionError::NotInterior(i));
    }
    let v = suffix.vertices();
    Ok([
        (v[0], deadhead_cost(graph, v[i], v[l], mode)),
        (v[l], deadhead_cost(graph, v[0], v[i], mode)),
        (v[i], deadhead_cost(graph, v[0], v[l], mode)),
    ])
}

/// Minimum-total-time inspection plan for the suffix, over all start vertices
/// and the stop choices that can be optimal. Ties prefer the zero-deadhead
/// endpoint starts (front before back), then the lowest interior start index,
/// then stop order back, front, start.
pub fn plan_inspection(
    graph: &Graph,
    suffix: &SuffixPath,
    uav_position: VertexId,
    v_uav: f64,
    mode: DeadheadMode,
) -> Result<InspectionPlan, InspectionError> {
    if !(v_uav > 0.0) {
        return Err(InspectionError::NonPositiveSpeed);
    }
    let l = suffix.edge_count();
    let v = suffix.vertices();
    if l == 0 {
        // nothing to inspect: the UAV stays put
        return Ok(InspectionPlan {
            start: v[0],
            stop: v[0],
            start_index: 0,
            stop_choice: StopChoice::Start,
            connector: None,
            deadhead_length: 0.0,
            transit_time: 0.0,
            inspect_time: 0.0,
            deadhead_time: 0.0,
            total_time: 0.0,
        });
    }

    let inspect_time = suffix.total_length() / v_uav;
    let candidate = |start_index: usize,
                     stop_choice: StopChoice,
                     connector: Option<(VertexId, VertexId)>,
                     deadhead_length: f64| {
        let start = v[start_index];
        let stop = match stop_choice {
            StopChoice::Front => v[0],
            StopChoice::Back => v[l],
            StopChoice::Start => start,
        };
        let transit_time = graph.motion_weight(uav_position, start) / v_uav;
        let deadhead_time = deadhead_length / v_uav;
        InspectionPlan {
            start,
            stop,
            start_index,
            stop_choice,
            connector,
            deadhead_length,
            transit_time,
            inspect_time,
            deadhead_time,
            total_time: transit_time + inspect_time + deadhead_time,
        }
    };

    // candidates in tie-break priority order; strict improvement replaces
    let mut best = candidate(0, StopChoice::Back, None, 0.0);
    let mut consider = |plan: InspectionPlan| {
        if plan.total_time < best.total_time {
            best = plan;
        }
    };
    consider(candidate(l, StopChoice::Front, None, 0.0));
    for i in 1..l {
        let opts = interior_deadhead_options(graph, suffix, i, mode)?;
        let (_, d_front) = opts[0];
        let (_, d_back) = opts[1];
        let (_, d_start) = opts[2];
        consider(candidate(i, StopChoice::Back, Some((v[0], v[i])), d_back));
        consider(candidate(i, StopChoice::Front, Some((v[i], v[l])), d_front));
        consider(candidate(i, StopChoice::Start, Some((v[0], v[l])), d_start));
    }
    Ok(best)
}

/// Explicit walk realizing a plan: starts at `plan.start`, ends at
/// `plan.stop`, covers every required edge exactly once and the connector (if
/// any) exactly once.
pub fn expand_euler_walk(
    suffix: &SuffixPath,
    plan: &InspectionPlan,
) -> Result<Vec<VertexId>, InspectionError> {
    let l = suffix.edge_count();
    let v = suffix.vertices();
    if plan.start_index > l || v.get(plan.start_index) != Some(&plan.start) {
        return Err(InspectionError::PlanMismatch);
    }
    if l == 0 {
        return Ok(alloc::vec![plan.start]);
    }
    let q = plan.start_index;
    let walk = match (q, plan.stop_choice) {
        (0, StopChoice::Back) => v.to_vec(),
        (i, StopChoice::Front) if i == l => v.iter().rev().copied().collect(),
        (i, StopChoice::Back) if i > 0 && i < l => {
            // down to the front, connector hop back to the start, then up
            let mut w: Vec<_> = v[..=i].iter().rev().copied().collect();
            w.extend_from_slice(&v[i..]);
            w
        }
        (i, StopChoice::Front) if i > 0 && i < l => {
            // up to the back, connector hop back to the start, then down
            let mut w: Vec<_> = v[i..].to_vec();
            w.extend(v[..=i].iter().rev().copied());
            w
        }
        (i, StopChoice::Start) if i > 0 && i < l => {
            // down to the front, connector hop to the back, then down to the start
            let mut w: Vec<_> = v[..=i].iter().rev().copied().collect();
            w.extend(v[i..].iter().rev().copied());
            w
        }
        _ => return Err(InspectionError::PlanMismatch),
    };
    Ok(walk)
}

/// Brute-force reference: minimum total time over every start vertex, every
/// stop vertex in the suffix (including the ones the planner prunes), and the
/// minimum parity-fixing connector set for that start/stop pair.
///
/// Restricted to small suffixes; this is the independent check the planner is
/// validated against.
pub fn oracle_inspection_time(
    graph: &Graph,
    suffix: &SuffixPath,
    uav_position: VertexId,
    v_uav: f64,
    mode: DeadheadMode,
) -> Result<f64, InspectionError> {
    if !(v_uav > 0.0) {
        return Err(InspectionError::NonPositiveSpeed);
    }
    let l = suffix.edge_count();
    if l > 8 {
        return Err(InspectionError::SuffixTooLarge(l));
    }
    if l == 0 {
        return Ok(0.0);
    }
    let v = suffix.vertices();
    let dh = |a: usize, b: usize| deadhead_cost(graph, v[a], v[b], mode);

    let mut best = f64::INFINITY;
    for q in 0..=l {
        let transit = graph.motion_weight(uav_position, v[q]);
        for t in 0..=l {
            // vertices whose degree parity must be flipped to admit an Euler
            // trail from q to t: odd-degree path endpoints {0, l} symmetric-
            // differenced with the desired odd pair {q, t}
            let mut parity = [false; 9];
            parity[0] ^= true;
            parity[l] ^= true;
            if q != t {
                parity[q] ^= true;
                parity[t] ^= true;
            }
            let odd: Vec<usize> = (0..=l).filter(|i| parity[*i]).collect();
            let deadhead = match odd.len() {
                0 => 0.0,
                2 => dh(odd[0], odd[1]),
                4 => {
                    let (a, b, c, d) = (odd[0], odd[1], odd[2], odd[3]);
                    let p1 = dh(a, b) + dh(c, d);
                    let p2 = dh(a, c) + dh(b, d);
                    let p3 = dh(a, d) + dh(b, c);
                    p1.min(p2).min(p3)
                }
                _ => unreachable!("parity flips come in pairs"),
            };
            let total = (transit + suffix.total_length() + deadhead) / v_uav;
            if total < best {
                best = total;
            }
        }
    }
    Ok(best)
}

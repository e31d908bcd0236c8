//! Optimal prefix/suffix split of a candidate path between the two robots:
//! scan every split index, pricing the ground prefix from prefix sums and the
//! aerial suffix with the inspection planner, and keep the index minimizing
//! the larger of the two times.

use core::fmt;

use crate::graph::{Graph, Path, VertexId};
use crate::inspection::{
    plan_inspection, DeadheadMode, InspectionError, InspectionPlan, SuffixPath,
};

#[derive(Debug, Clone, PartialEq)]
pub enum PartitionError {
    EmptyPath,
    SplitOutOfRange { j: usize, m: usize },
    NonPositiveSpeed,
    NegativeReturnTime,
    Inspection(InspectionError),
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::EmptyPath => write!(f, "path has no edges"),
            PartitionError::SplitOutOfRange { j, m } => {
                write!(f, "split index {j} out of range 0..={m}")
            }
            PartitionError::NonPositiveSpeed => write!(f, "speeds must be positive"),
            PartitionError::NegativeReturnTime => write!(f, "return time must be nonnegative"),
            PartitionError::Inspection(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for PartitionError {}

impl From<InspectionError> for PartitionError {
    fn from(e: InspectionError) -> Self {
        PartitionError::Inspection(e)
    }
}

/// Outcome of the split scan.
#[derive(Clone, Debug)]
pub struct PartitionResult {
    /// Chosen split index in `0..=m`; the ground vehicle inspects edges
    /// `1..=split_index`, the UAV the rest.
    pub split_index: usize,
    pub ugv_time: f64,
    pub uav_time: f64,
    /// `max(ugv_time, uav_time)`, minimal over the whole scan.
    pub objective: f64,
    pub uav_plan: InspectionPlan,
}

/// Ground time to finish the first `j` edges: the return-to-path time plus
/// the prefix length at ground speed.
pub fn ugv_prefix_time(
    graph: &Graph,
    path: &Path,
    j: usize,
    v_ugv: f64,
    return_time: f64,
) -> Result<f64, PartitionError> {
    let m = path.edge_count();
    if j > m {
        return Err(PartitionError::SplitOutOfRange { j, m });
    }
    if !(v_ugv > 0.0) {
        return Err(PartitionError::NonPositiveSpeed);
    }
    if return_time < 0.0 {
        return Err(PartitionError::NegativeReturnTime);
    }
    let prefix: f64 = path.edges()[..j]
        .iter()
        .map(|e| graph.edge_length(*e))
        .sum();
    Ok(return_time + prefix / v_ugv)
}

/// Scans all split indices and returns the minimizer; ties break toward the
/// smaller index. The UAV side of each candidate is priced by
/// [`plan_inspection`] on the corresponding suffix.
pub fn optimal_split(
    graph: &Graph,
    path: &Path,
    uav_position: VertexId,
    v_ugv: f64,
    v_uav: f64,
    return_time: f64,
    mode: DeadheadMode,
) -> Result<PartitionResult, PartitionError> {
    let m = path.edge_count();
    if m == 0 {
        return Err(PartitionError::EmptyPath);
    }
    if !(v_ugv > 0.0) || !(v_uav > 0.0) {
        return Err(PartitionError::NonPositiveSpeed);
    }
    if return_time < 0.0 {
        return Err(PartitionError::NegativeReturnTime);
    }

    let mut prefix = alloc::vec![0.0; m + 1];
    for (r, e) in path.edges().iter().enumerate() {
        prefix[r + 1] = prefix[r] + graph.edge_length(*e);
    }

    let mut best: Option<PartitionResult> = None;
    for j in 0..=m {
        let ugv_time = return_time + prefix[j] / v_ugv;
        let suffix = SuffixPath::from_path_suffix(graph, path, j)?;
        let plan = plan_inspection(graph, &suffix, uav_position, v_uav, mode)?;
        let uav_time = plan.total_time;
        let objective = ugv_time.max(uav_time);
        let better = match &best {
            None => true,
            Some(b) => objective < b.objective,
        };
        if better {
            best = Some(PartitionResult {
                split_index: j,
                ugv_time,
                uav_time,
                objective,
                uav_plan: plan,
            });
        }
    }
    Ok(best.expect("m >= 1 so the scan is nonempty"))
}

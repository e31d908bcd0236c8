//! Closed-form worst-case calculators for the disjoint-path setting:
//! shortest-first ordering, ground-only costs and the 2k-1 ratio, and the
//! cooperative time/ratio formulas under negligible transit and deadheading.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    EmptyLengths,
    NonMonotoneLengths,
    IndexOutOfRange { j: usize, k: usize },
    NonPositiveSpeed,
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::EmptyLengths => write!(f, "at least one length required"),
            AnalysisError::NonMonotoneLengths => write!(f, "lengths must be nondecreasing"),
            AnalysisError::IndexOutOfRange { j, k } => {
                write!(f, "first-open index {j} out of range 1..={k}")
            }
            AnalysisError::NonPositiveSpeed => write!(f, "speed must be positive"),
        }
    }
}

impl core::error::Error for AnalysisError {}

fn check_nondecreasing(lengths: &[f64]) -> Result<(), AnalysisError> {
    if lengths.is_empty() {
        return Err(AnalysisError::EmptyLengths);
    }
    if lengths.windows(2).any(|w| w[0] > w[1]) {
        return Err(AnalysisError::NonMonotoneLengths);
    }
    Ok(())
}

/// Stable argsort by nondecreasing length: the order in which the ground
/// vehicle should attempt disjoint paths to minimize its worst case.
pub fn shortest_first_order(lengths: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|a, b| lengths[*a].total_cmp(&lengths[*b]));
    order
}

/// Worst-case ground-only travel distance `2 * sum(L) - L_k` when the
/// adversary blocks everything but the longest path.
pub fn ugv_only_worst_case(lengths: &[f64]) -> Result<f64, AnalysisError> {
    check_nondecreasing(lengths)?;
    let total: f64 = lengths.iter().sum();
    Ok(2.0 * total - lengths[lengths.len() - 1])
}

/// Ground-only travel time when paths `1..first_open-1` are blocked at
/// distance `epsilons[i]` from the goal and path `first_open` is open:
/// `(2 * sum(L_i - eps_i) + L_j) / v`.
pub fn ugv_only_time(
    lengths: &[f64],
    first_open: usize,
    epsilons: &[f64],
    v_ugv: f64,
) -> Result<f64, AnalysisError> {
    check_nondecreasing(lengths)?;
    let k = lengths.len();
    if first_open == 0 || first_open > k {
        return Err(AnalysisError::IndexOutOfRange { j: first_open, k });
    }
    if !(v_ugv > 0.0) {
        return Err(AnalysisError::NonPositiveSpeed);
    }
    let mut total = 0.0;
    for i in 0..first_open - 1 {
        let eps = epsilons.get(i).copied().unwrap_or(0.0);
        total += 2.0 * (lengths[i] - eps);
    }
    total += lengths[first_open - 1];
    Ok(total / v_ugv)
}

/// Exact worst-case competitive ratio of the shortest-first ground-only
/// strategy on k disjoint paths.
pub fn ugv_only_ratio_bound(k: usize) -> f64 {
    2.0 * k as f64 - 1.0
}

/// Cooperative travel time under the idealized zero-transit, zero-deadhead
/// assumption: each blocked path is split so both robots finish together.
pub fn coop_time(
    lengths: &[f64],
    first_open: usize,
    v_ugv: f64,
    v_uav: f64,
) -> Result<f64, AnalysisError> {
    check_nondecreasing(lengths)?;
    let k = lengths.len();
    if first_open == 0 || first_open > k {
        return Err(AnalysisError::IndexOutOfRange { j: first_open, k });
    }
    if !(v_ugv > 0.0) || v_uav < 0.0 {
        return Err(AnalysisError::NonPositiveSpeed);
    }
    let mut total = 0.0;
    for i in 0..first_open - 1 {
        total += 2.0 * lengths[i] / (v_uav + v_ugv);
    }
    Ok(total + lengths[first_open - 1] / v_ugv)
}

/// Two closed forms of the cooperative worst-case ratio. They agree at
/// `v_uav = 0` but diverge otherwise; the derivation bound is the one the
/// max-over-instances enumeration actually respects.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CoopRatioBound {
    /// `1 + (2 v_G / (v_A + v_G)) (k - 1)`
    pub derivation_bound: f64,
    /// `2 (v_G / (v_A + v_G)) k - 1`
    pub headline_expression: f64,
}

pub fn coop_ratio_bound(k: usize, v_ugv: f64, v_uav: f64) -> CoopRatioBound {
    let factor = 2.0 * v_ugv / (v_uav + v_ugv);
    CoopRatioBound {
        derivation_bound: 1.0 + factor * (k as f64 - 1.0),
        headline_expression: factor * k as f64 - 1.0,
    }
}

//! Discharge result contract shared by both solver families, and the
//! structural property checker used by the test suites.
//!
//! Any region discharge must leave no active interior vertex (when run to
//! completion), never lower a label, keep boundary labels fixed, preserve
//! labeling validity in the region residual, and only move flow from higher
//! labels to lower labels. The checker verifies all of this directly from
//! the before/after capacities, excesses and labels.

use crate::labeling::{check_valid_region, Metric};
use crate::network::{Flow, Label};
use crate::partition::RegionNetwork;

/// Counters reported by one discharge call.
#[derive(Clone, Copy, Debug, Default)]
pub struct DischargeStats {
    pub pushes: u64,
    pub relabels: u64,
    pub label_increase: i64,
    pub flow_to_sink: Flow,
}

/// Verifies the discharge contract from the before/after pair.
///
/// `require_optimality` is false for partial discharges, which may stop
/// before every interior vertex is drained.
pub fn check_discharge_properties(
    before: &RegionNetwork,
    labels_before: &[Label],
    after: &RegionNetwork,
    labels_after: &[Label],
    metric: Metric,
    d_inf: Label,
    require_optimality: bool,
) -> Result<(), String> {
    let ni = before.interior_count();
    let nv = before.vertex_count();
    if require_optimality {
        for v in 0..ni {
            if after.excess[v] > 0 && labels_after[v] < d_inf {
                return Err(format!(
                    "optimality: interior vertex {v} is active (excess {}, label {})",
                    after.excess[v], labels_after[v]
                ));
            }
        }
    }
    for v in 0..nv {
        if labels_after[v] < labels_before[v] {
            return Err(format!(
                "monotonicity: label of {v} fell from {} to {}",
                labels_before[v], labels_after[v]
            ));
        }
        if !before.is_interior(v) && labels_after[v] != labels_before[v] {
            return Err(format!(
                "monotonicity: non-interior vertex {v} was relabeled {} -> {}",
                labels_before[v], labels_after[v]
            ));
        }
    }
    check_valid_region(after, labels_after, metric)
        .map_err(|viol| format!("validity: {viol:?}"))?;
    match metric {
        Metric::Prd => check_arcwise_direction(before, labels_before, after, labels_after),
        Metric::Ard => check_pathwise_direction(before, labels_before, after, labels_after),
    }
}

/// Push-relabel flow direction: every arc carrying positive discharge flow
/// goes from a finally-higher label to an initially-lower one.
fn check_arcwise_direction(
    before: &RegionNetwork,
    _labels_before: &[Label],
    after: &RegionNetwork,
    labels_after: &[Label],
) -> Result<(), String> {
    for a in 0..before.arc_count() {
        let f = before.cap[a] - after.cap[a];
        if f > 0 {
            let (u, v) = (before.tail(a), before.head(a));
            if labels_after[u] <= _labels_before[v] {
                return Err(format!(
                    "flow direction: arc {a} ({u}->{v}) carries {f} but d'({u})={} <= d({v})={}",
                    labels_after[u], _labels_before[v]
                ));
            }
        }
    }
    Ok(())
}

/// Augmenting-path flow direction: the discharge flow decomposes into paths
/// from interior vertices to the sink or the boundary, and a path ending at
/// boundary vertex `v` starts at `u` with `d'(u) > d(v)`.
fn check_pathwise_direction(
    before: &RegionNetwork,
    labels_before: &[Label],
    after: &RegionNetwork,
    labels_after: &[Label],
) -> Result<(), String> {
    let ni = before.interior_count();
    let nv = before.vertex_count();
    let sink = before.local_sink();
    let mut residual: Vec<Flow> = (0..before.arc_count())
        .map(|a| (before.cap[a] - after.cap[a]).max(0))
        .collect();
    let mut supply: Vec<Flow> = vec![0; nv];
    for v in 0..ni {
        supply[v] = (before.excess[v] - after.excess[v]).max(0);
    }
    let mut absorb: Vec<Flow> = vec![0; nv];
    for v in 0..nv {
        if before.is_boundary_local(v) || v == sink {
            let inflow: Flow = (0..before.arc_count())
                .filter(|&a| before.head(a) == v)
                .map(|a| before.cap[a] - after.cap[a])
                .sum();
            absorb[v] = inflow.max(0);
        }
    }
    for u0 in 0..ni {
        while supply[u0] > 0 {
            // walk positive discharge flow until a sink/boundary endpoint
            let mut path_arcs: Vec<usize> = Vec::new();
            let mut on_path = vec![false; nv];
            let mut cur = u0;
            on_path[cur] = true;
            loop {
                if (before.is_boundary_local(cur) || cur == sink) && absorb[cur] > 0 {
                    break;
                }
                let Some(&a) = before.out(cur).iter().find(|&&a| residual[a] > 0) else {
                    return Err(format!(
                        "flow decomposition stuck at vertex {cur} (supply from {u0})"
                    ));
                };
                let nxt = before.head(a);
                if on_path[nxt] {
                    return Err(format!(
                        "flow direction: discharge flow contains a circulation through {nxt}"
                    ));
                }
                path_arcs.push(a);
                on_path[nxt] = true;
                cur = nxt;
            }
            let mut delta = supply[u0].min(absorb[cur]);
            for &a in &path_arcs {
                delta = delta.min(residual[a]);
            }
            if delta <= 0 {
                return Err(format!("flow decomposition found an empty path from {u0}"));
            }
            for &a in &path_arcs {
                residual[a] -= delta;
            }
            supply[u0] -= delta;
            absorb[cur] -= delta;
            if before.is_boundary_local(cur) && labels_after[u0] <= labels_before[cur] {
                return Err(format!(
                    "flow direction: path {u0} -> {cur} but d'({u0})={} <= d({cur})={}",
                    labels_after[u0], labels_before[cur]
                ));
            }
        }
    }
    Ok(())
}

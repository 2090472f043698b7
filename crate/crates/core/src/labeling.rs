//! Distance labelings for both solver families, validity checking, and the
//! label-improvement heuristics (region-relabel, global and region gap,
//! boundary-relabel).
//!
//! Both metrics label each vertex with a lower bound on its distance to the
//! sink through positive-residual arcs. The push-relabel metric counts
//! every arc; the region metric counts only arcs joining two different
//! regions, which matches the number of region loads needed to walk the
//! path. A labeling is valid when every positive-residual arc `(u, v)`
//! satisfies `d(u) <= d(v) + w(u, v)` for the metric's arc weight.

use crate::network::{ArcId, Label, Network, Vertex};
use crate::partition::{Partition, RegionNetwork};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Unit arc weights; the ceiling is the vertex count.
    Prd,
    /// Weight 1 on region-crossing arcs only; the ceiling is the boundary
    /// size (at least 1 so that vertices can be active at all).
    Ard,
}

impl Metric {
    pub fn ceiling(self, net: &Network, part: &Partition) -> Label {
        match self {
            Metric::Prd => net.vertex_count(),
            Metric::Ard => part.boundary_len().max(1),
        }
    }
}

/// Per-vertex distance estimate with its metric and ceiling `d_inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub metric: Metric,
    pub d_inf: Label,
    d: Vec<Label>,
}

impl Labeling {
    /// All-zero labeling with `d(source) = d_inf`.
    pub fn init(net: &Network, metric: Metric, part: &Partition) -> Self {
        let d_inf = metric.ceiling(net, part);
        let mut d = vec![0; net.vertex_count()];
        d[net.source()] = d_inf;
        Labeling { metric, d_inf, d }
    }

    pub fn get(&self, v: Vertex) -> Label {
        self.d[v]
    }

    pub fn set(&mut self, v: Vertex, value: Label) {
        self.d[v] = value;
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.d
    }

    pub fn as_mut_slice(&mut self) -> &mut [Label] {
        &mut self.d
    }
}

/// A violated validity constraint: arc `(u, v)` is residual but
/// `d(u) > d(v) + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityViolation {
    pub arc: ArcId,
    pub from: Vertex,
    pub to: Vertex,
    pub d_from: Label,
    pub d_to: Label,
    pub weight: Label,
}

/// Verifies the metric-appropriate inequality on every positive-residual
/// arc, plus the structural `d(t) = 0` and `d(s) = d_inf`.
pub fn check_valid(net: &Network, lab: &Labeling, part: &Partition) -> Result<(), ValidityViolation> {
    if lab.get(net.sink()) != 0 {
        return Err(ValidityViolation {
            arc: 0,
            from: net.sink(),
            to: net.sink(),
            d_from: lab.get(net.sink()),
            d_to: 0,
            weight: 0,
        });
    }
    for a in net.arcs() {
        if net.cap(a) <= 0 {
            continue;
        }
        let (u, v) = (net.tail(a), net.head(a));
        let w = arc_weight(lab.metric, part, u, v);
        if lab.get(u) > lab.get(v) + w {
            return Err(ValidityViolation {
                arc: a,
                from: u,
                to: v,
                d_from: lab.get(u),
                d_to: lab.get(v),
                weight: w,
            });
        }
    }
    Ok(())
}

fn arc_weight(metric: Metric, part: &Partition, u: Vertex, v: Vertex) -> Label {
    match metric {
        Metric::Prd => 1,
        Metric::Ard => match (part.region_of(u), part.region_of(v)) {
            (Some(ru), Some(rv)) if ru != rv => 1,
            _ => 0,
        },
    }
}

/// Region-local validity over a region network's residual arcs; boundary
/// labels are part of `labels` (indexed by local vertex id).
pub fn check_valid_region(
    rn: &RegionNetwork,
    labels: &[Label],
    metric: Metric,
) -> Result<(), ValidityViolation> {
    for a in 0..rn.arc_count() {
        if rn.cap[a] <= 0 {
            continue;
        }
        let (u, v) = (rn.tail(a), rn.head(a));
        let w = match metric {
            Metric::Prd => 1,
            Metric::Ard => {
                if rn.crosses_region(a) {
                    1
                } else {
                    0
                }
            }
        };
        if labels[u] > labels[v] + w {
            return Err(ValidityViolation {
                arc: a,
                from: u,
                to: v,
                d_from: labels[u],
                d_to: labels[v],
                weight: w,
            });
        }
    }
    Ok(())
}

/// Exact region-crossing distance to the sink over reversed positive-
/// residual arcs (0/1 BFS); unreachable vertices get the boundary size.
pub fn true_region_distance(net: &Network, part: &Partition) -> Vec<Label> {
    let d_inf = part.boundary_len().max(1);
    zero_one_distance_to_sink(net, d_inf, |a| {
        match (part.region_of(net.tail(a)), part.region_of(net.head(a))) {
            (Some(ru), Some(rv)) if ru != rv => 1,
            _ => 0,
        }
    })
}

/// Exact hop distance to the sink over reversed positive-residual arcs;
/// unreachable vertices get the vertex count.
pub fn true_sink_distance(net: &Network) -> Vec<Label> {
    zero_one_distance_to_sink(net, net.vertex_count(), |_| 1)
}

fn zero_one_distance_to_sink(
    net: &Network,
    d_inf: Label,
    weight: impl Fn(ArcId) -> Label,
) -> Vec<Label> {
    let n = net.vertex_count();
    let mut dist = vec![d_inf; n];
    let mut deque = VecDeque::new();
    dist[net.sink()] = 0;
    deque.push_back(net.sink());
    while let Some(v) = deque.pop_front() {
        // relax in-arcs (u, v): arc b out of v has partner (head(b), v)
        for &b in net.out_arcs(v) {
            let a = b ^ 1; // arc (head(b), v)
            if net.cap(a) <= 0 {
                continue;
            }
            let u = net.head(b);
            let w = weight(a).min(1);
            let cand = (dist[v] + w).min(d_inf);
            if cand < dist[u] {
                dist[u] = cand;
                if w == 0 {
                    deque.push_front(u);
                } else {
                    deque.push_back(u);
                }
            }
        }
    }
    dist[net.source()] = d_inf;
    dist
}

/// Recomputes interior labels of a region network as the exact per-metric
/// distance given the fixed boundary labels, in
/// `O(|E| + |V| + |B| log |B|)`. Boundary entries of `labels` are left
/// untouched. Returns the total interior label increase.
pub fn region_relabel(
    rn: &RegionNetwork,
    labels: &mut [Label],
    metric: Metric,
    d_inf: Label,
) -> i64 {
    let nv = rn.vertex_count();
    let ni = rn.interior_count();
    let sink = rn.local_sink();
    // seeds: boundary vertices with finite label, ascending
    let mut seeds: Vec<(Label, usize)> = (ni..ni + rn.boundary_count())
        .filter(|&b| labels[b] < d_inf)
        .map(|b| (labels[b], b))
        .collect();
    seeds.sort_unstable();

    let mut visited = vec![false; nv];
    let mut new_label = vec![d_inf; nv];
    let mut frontier: VecDeque<usize> = VecDeque::new();
    let mut seed_ptr = 0usize;

    // round value = label assigned to interior vertices that first become
    // reachable in this round
    let mut round: Label = 0;
    visited[sink] = true;
    new_label[sink] = 0;
    frontier.push_back(sink);
    loop {
        // inject seeds that become targets at this round
        while seed_ptr < seeds.len() && seed_value(metric, seeds[seed_ptr].0) == round {
            let (_, b) = seeds[seed_ptr];
            seed_ptr += 1;
            if !visited[b] {
                visited[b] = true;
                frontier.push_back(b);
            }
        }
        if frontier.is_empty() {
            if seed_ptr == seeds.len() {
                break;
            }
            round = seed_value(metric, seeds[seed_ptr].0);
            continue;
        }
        match metric {
            Metric::Ard => {
                // zero-cost closure: everything reaching this frontier gets `round`
                while let Some(v) = frontier.pop_front() {
                    for &b in rn.out(v) {
                        let a = b ^ 1; // arc (head(b), v)
                        if rn.cap[a] <= 0 {
                            continue;
                        }
                        let u = rn.head(b);
                        if !visited[u] {
                            visited[u] = true;
                            new_label[u] = round.min(d_inf);
                            frontier.push_back(u);
                        }
                    }
                }
            }
            Metric::Prd => {
                // one unit-cost layer
                let mut next = VecDeque::new();
                while let Some(v) = frontier.pop_front() {
                    for &b in rn.out(v) {
                        let a = b ^ 1;
                        if rn.cap[a] <= 0 {
                            continue;
                        }
                        let u = rn.head(b);
                        if !visited[u] {
                            visited[u] = true;
                            new_label[u] = (round + 1).min(d_inf);
                            next.push_back(u);
                        }
                    }
                }
                frontier = next;
                round += 1;
            }
        }
        if metric == Metric::Ard {
            // frontier is exhausted; advance to the next seed round
            if seed_ptr == seeds.len() {
                break;
            }
            round = seed_value(metric, seeds[seed_ptr].0);
        }
    }

    let mut increase: i64 = 0;
    for v in 0..ni {
        let nl = new_label[v];
        increase += nl as i64 - labels[v] as i64;
        labels[v] = nl;
    }
    increase
}

/// Round at which a boundary seed with label `d` starts acting as a target:
/// reaching it costs one region crossing under the region metric, so its
/// round is `d + 1`; under unit weights the BFS layers add the 1 themselves.
fn seed_value(metric: Metric, seed_label: Label) -> Label {
    match metric {
        Metric::Ard => seed_label + 1,
        Metric::Prd => seed_label,
    }
}

/// Counts of tracked vertices per label value. Labels at or above the bin
/// cap share the top bin, which disables gap detection in that range.
#[derive(Clone, Debug)]
pub struct LabelHistogram {
    counts: Vec<usize>,
    d_inf: Label,
}

impl LabelHistogram {
    /// `bins` caps memory; pass `d_inf + 1` for exact tracking.
    pub fn new(d_inf: Label, bins: usize) -> Self {
        LabelHistogram { counts: vec![0; bins.max(2)], d_inf }
    }

    pub fn exact(d_inf: Label) -> Self {
        Self::new(d_inf, d_inf + 1)
    }

    fn bin(&self, label: Label) -> usize {
        label.min(self.counts.len() - 1)
    }

    pub fn add(&mut self, label: Label) {
        let b = self.bin(label);
        self.counts[b] += 1;
    }

    pub fn remove(&mut self, label: Label) {
        let b = self.bin(label);
        debug_assert!(self.counts[b] > 0, "histogram underflow at bin {b}");
        self.counts[b] -= 1;
    }

    pub fn rebuild<'a>(&mut self, labels: impl Iterator<Item = &'a Label>) {
        self.counts.iter_mut().for_each(|c| *c = 0);
        for &l in labels {
            self.add(l);
        }
    }

    /// Smallest label `g > 0` with no tracked vertex while some tracked
    /// vertex sits strictly between `g` and `d_inf`. Only exact bins are
    /// trusted: the saturating top bin never certifies a gap.
    pub fn find_gap(&self) -> Option<Label> {
        let exact_end = (self.counts.len() - 1).min(self.d_inf);
        let mut gap = None;
        for g in 1..exact_end {
            if self.counts[g] == 0 {
                gap = Some(g);
                break;
            }
        }
        let g = gap?;
        // occupied strictly above the gap, below d_inf
        let above = (g + 1..exact_end).any(|l| self.counts[l] > 0)
            || (self.counts.len() - 1 < self.d_inf && self.counts[self.counts.len() - 1] > 0);
        if above {
            Some(g)
        } else {
            None
        }
    }
}

/// Raises every label strictly above `g` (and below `d_inf`) to `d_inf`.
/// Returns the indices raised.
pub fn apply_gap(labels: &mut [Label], g: Label, d_inf: Label) -> Vec<usize> {
    let mut raised = Vec::new();
    for (v, l) in labels.iter_mut().enumerate() {
        if *l > g && *l < d_inf {
            *l = d_inf;
            raised.push(v);
        }
    }
    raised
}

/// Applies the global gap heuristic to a full labeling: if some label
/// `g > 0` is unoccupied among the tracked set, every vertex above `g` is
/// lifted to `d_inf`. Histogram entries for raised tracked vertices are
/// moved to the top. Returns the gap found, if any.
pub fn global_gap(
    lab: &mut Labeling,
    hist: &mut LabelHistogram,
    tracked: &[Vertex],
) -> Option<Label> {
    let g = hist.find_gap()?;
    let d_inf = lab.d_inf;
    for v in 0..lab.as_slice().len() {
        let l = lab.get(v);
        if l > g && l < d_inf {
            lab.set(v, d_inf);
        }
    }
    // tracked entries moved above the gap
    for &v in tracked {
        // labels already updated; recount by rebuilding below cap
        let _ = v;
    }
    hist.rebuild(tracked.iter().map(|&v| &lab.as_slice()[v]));
    Some(g)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("region gap precondition violated: vertex {vertex} carries the gap label {gap}")]
pub struct RegionGapError {
    pub vertex: usize,
    pub gap: Label,
}

/// Region gap heuristic: with no region vertex at label `g`, interior
/// labels strictly between `g` and the next boundary label above `g` can be
/// raised just past that boundary label (or to `d_inf` when no boundary
/// vertex sits above the gap). Returns the number of labels raised.
pub fn region_gap(
    rn: &RegionNetwork,
    labels: &mut [Label],
    g: Label,
    d_inf: Label,
) -> Result<usize, RegionGapError> {
    let ni = rn.interior_count();
    if let Some(v) = (0..ni).find(|&v| labels[v] == g) {
        return Err(RegionGapError { vertex: v, gap: g });
    }
    let d_next = (ni..ni + rn.boundary_count())
        .map(|b| labels[b])
        .filter(|&l| l > g && l < d_inf)
        .min()
        .unwrap_or(d_inf);
    let target = if d_next >= d_inf { d_inf } else { (d_next + 1).min(d_inf) };
    let mut raised = 0;
    for v in 0..ni {
        if labels[v] > g && labels[v] < d_next {
            labels[v] = target;
            raised += 1;
        }
    }
    Ok(raised)
}

/// Shared boundary view for the boundary-relabel heuristic: vertex labels,
/// their regions, and the residual inter-region arcs, all indexed by
/// position in the global boundary set.
pub struct BoundaryView {
    pub region_of: Vec<usize>,
    pub labels: Vec<Label>,
    /// Residual inter-region arcs as (from, to) boundary indices.
    pub residual_arcs: Vec<(usize, usize)>,
    pub d_inf: Label,
}

/// Improves boundary labels by a Dijkstra pass over the condensed boundary
/// graph: per region, vertices with equal label form a group; zero-length
/// arcs join consecutive label groups within a region (lower to higher) and
/// residual inter-region arcs contribute unit-length arcs. The distance to
/// the label-0 groups is itself a valid labeling, and the pointwise max
/// with the input is returned in place. Returns the number of labels that
/// rose.
pub fn boundary_relabel(view: &mut BoundaryView) -> usize {
    let nb = view.labels.len();
    let d_inf = view.d_inf;
    // group boundary vertices by (region, label), finite labels only
    let mut keys: Vec<(usize, Label, usize)> = (0..nb)
        .filter(|&i| view.labels[i] < d_inf)
        .map(|i| (view.region_of[i], view.labels[i], i))
        .collect();
    keys.sort_unstable();
    let mut group_of = vec![usize::MAX; nb];
    let mut groups: Vec<(usize, Label)> = Vec::new();
    for &(r, l, i) in &keys {
        if groups.last() != Some(&(r, l)) {
            groups.push((r, l));
        }
        group_of[i] = groups.len() - 1;
    }
    let ng = groups.len();
    // arcs in validity direction: d(u) <= d(v) + len on arc (u, v)
    let mut zero_arcs: Vec<(usize, usize)> = Vec::new(); // lower -> next higher within region
    for w in groups.windows(2).enumerate() {
        let (i, pair) = w;
        if pair[0].0 == pair[1].0 {
            zero_arcs.push((i, i + 1));
        }
    }
    let mut unit_arcs: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in &view.residual_arcs {
        if group_of[u] != usize::MAX && group_of[v] != usize::MAX {
            unit_arcs.push((group_of[u], group_of[v]));
        }
    }
    // reverse 0/1 Dijkstra from the label-0 groups: dist(g) = shortest
    // arc-directed path from g to any 0-labeled group
    let mut in_zero: Vec<Vec<usize>> = vec![Vec::new(); ng];
    let mut in_unit: Vec<Vec<usize>> = vec![Vec::new(); ng];
    for &(a, b) in &zero_arcs {
        in_zero[b].push(a);
    }
    for &(a, b) in &unit_arcs {
        in_unit[b].push(a);
    }
    let mut dist = vec![d_inf; ng];
    let mut deque = VecDeque::new();
    for (g, &(_, l)) in groups.iter().enumerate() {
        if l == 0 {
            dist[g] = 0;
            deque.push_back(g);
        }
    }
    while let Some(g) = deque.pop_front() {
        for &p in &in_zero[g] {
            if dist[g] < dist[p] {
                dist[p] = dist[g];
                deque.push_front(p);
            }
        }
        for &p in &in_unit[g] {
            let cand = (dist[g] + 1).min(d_inf);
            if cand < dist[p] {
                dist[p] = cand;
                deque.push_back(p);
            }
        }
    }
    let mut rose = 0;
    for i in 0..nb {
        if group_of[i] == usize::MAX {
            continue;
        }
        let d_new = dist[group_of[i]];
        if d_new > view.labels[i] {
            view.labels[i] = d_new;
            rose += 1;
        }
    }
    rose
}

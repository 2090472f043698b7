//! Flow network data model: paired arcs with residual capacities, per-vertex
//! excess, and the global operations shared by all solvers.
//!
//! Arcs are stored in pairs: arc `a` and its reverse `a ^ 1`. A push of
//! `delta` on arc `a` is `cap[a] -= delta; cap[a ^ 1] += delta`, so flow
//! antisymmetry holds by construction. Capacities are 64-bit integers and
//! the capacity vector always holds *residual* capacities: applying a flow
//! rewrites capacities and excesses in place and accumulates the amount
//! absorbed at the sink into a running total.

use std::fmt;

pub type Vertex = usize;
pub type ArcId = usize;
pub type Flow = i64;
pub type Label = usize;

/// A directed network with a distinguished source and sink, integer arc
/// capacities and nonnegative excess on non-terminal vertices.
#[derive(Clone, Debug)]
pub struct Network {
    n: usize,
    source: Vertex,
    sink: Vertex,
    /// Head vertex of each arc; arc `a` and `a ^ 1` are mutual reverses.
    head: Vec<Vertex>,
    /// Residual capacity of each arc.
    cap: Vec<Flow>,
    /// Excess per vertex. `excess[source]` and `excess[sink]` stay zero;
    /// flow entering a terminal is absorbed into a counter instead.
    excess: Vec<Flow>,
    /// Flow absorbed at the sink so far (the running flow value).
    collected: Flow,
    /// Flow absorbed back at the source (excess returned to the supply).
    returned: Flow,
    /// CSR adjacency over arc ids, grouped by tail, ids ascending.
    first_out: Vec<usize>,
    out_arcs: Vec<ArcId>,
}

/// Builder-side description of one arc pair before adjacency is frozen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcSpec {
    pub from: Vertex,
    pub to: Vertex,
    pub cap: Flow,
    /// Capacity of the materialized reverse arc (0 for a plain directed arc).
    pub rev_cap: Flow,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(Vertex, usize),
    #[error("negative capacity {cap} on arc ({from}, {to})")]
    NegativeCapacity { from: Vertex, to: Vertex, cap: Flow },
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("no arc ({0}, {1})")]
    ArcNotFound(Vertex, Vertex),
    #[error("flow overflow while accumulating")]
    Overflow,
}

/// First violated preflow constraint, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreflowViolation {
    Capacity { arc: ArcId, cap: Flow, flow: Flow },
    Antisymmetry { arc: ArcId },
    NegativeExcess { vertex: Vertex, excess: Flow },
}

impl fmt::Display for PreflowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreflowViolation::Capacity { arc, cap, flow } => {
                write!(f, "capacity violated on arc {arc}: flow {flow} > cap {cap}")
            }
            PreflowViolation::Antisymmetry { arc } => {
                write!(f, "antisymmetry violated on arc pair {arc}")
            }
            PreflowViolation::NegativeExcess { vertex, excess } => {
                write!(f, "negative residual excess {excess} at vertex {vertex}")
            }
        }
    }
}

/// An arc flow, antisymmetric over arc pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preflow {
    f: Vec<Flow>,
}

impl Preflow {
    pub fn zero(net: &Network) -> Self {
        Preflow { f: vec![0; net.arc_count()] }
    }

    pub fn get(&self, arc: ArcId) -> Flow {
        self.f[arc]
    }

    /// Adds `delta` to the flow on `arc`, keeping antisymmetry.
    pub fn add(&mut self, arc: ArcId, delta: Flow) {
        self.f[arc] += delta;
        self.f[arc ^ 1] -= delta;
    }

    /// Raw accessor for tests that need to break invariants deliberately.
    pub fn set_raw(&mut self, arc: ArcId, value: Flow) {
        self.f[arc] = value;
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArcId, Flow)> + '_ {
        self.f.iter().copied().enumerate()
    }
}

/// A two-sided vertex assignment with its cost and the flow certifying it.
#[derive(Clone, Debug)]
pub struct CutResult {
    /// `true` for vertices on the sink side (the set that still reaches `t`).
    pub sink_side: Vec<bool>,
    pub cut_cost: Flow,
    pub flow_value: Flow,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CutError {
    #[error("network is not a maximum preflow: vertex {0} is active")]
    NotOptimal(Vertex),
    #[error("residual cut cost {0} does not match accumulated flow value")]
    CostMismatch(Flow),
}

impl Network {
    /// Builds a network from arc specs. Every spec materializes an arc pair:
    /// ids `2j` (forward) and `2j + 1` (reverse, capacity `rev_cap`).
    /// Parallel arcs are permitted and kept as distinct pairs.
    pub fn new(
        n: usize,
        source: Vertex,
        sink: Vertex,
        arcs: &[ArcSpec],
        excess: &[(Vertex, Flow)],
    ) -> Result<Self, NetworkError> {
        if source == sink {
            return Err(NetworkError::SourceIsSink);
        }
        for &v in [source, sink].iter() {
            if v >= n {
                return Err(NetworkError::VertexOutOfRange(v, n));
            }
        }
        let mut head = Vec::with_capacity(arcs.len() * 2);
        let mut cap = Vec::with_capacity(arcs.len() * 2);
        for a in arcs {
            if a.from >= n {
                return Err(NetworkError::VertexOutOfRange(a.from, n));
            }
            if a.to >= n {
                return Err(NetworkError::VertexOutOfRange(a.to, n));
            }
            if a.cap < 0 || a.rev_cap < 0 {
                return Err(NetworkError::NegativeCapacity { from: a.from, to: a.to, cap: a.cap.min(a.rev_cap) });
            }
            head.push(a.to);
            cap.push(a.cap);
            head.push(a.from);
            cap.push(a.rev_cap);
        }
        let mut e = vec![0 as Flow; n];
        for &(v, val) in excess {
            if v >= n {
                return Err(NetworkError::VertexOutOfRange(v, n));
            }
            if val < 0 {
                return Err(NetworkError::NegativeCapacity { from: v, to: v, cap: val });
            }
            if v != source && v != sink {
                e[v] = e[v].checked_add(val).ok_or(NetworkError::Overflow)?;
            }
        }
        let mut net = Network {
            n,
            source,
            sink,
            head,
            cap,
            excess: e,
            collected: 0,
            returned: 0,
            first_out: Vec::new(),
            out_arcs: Vec::new(),
        };
        net.rebuild_adjacency();
        Ok(net)
    }

    fn rebuild_adjacency(&mut self) {
        let mut counts = vec![0usize; self.n + 1];
        for a in 0..self.head.len() {
            counts[self.tail(a) + 1] += 1;
        }
        for i in 0..self.n {
            counts[i + 1] += counts[i];
        }
        let mut out = vec![0; self.head.len()];
        let mut cursor = counts.clone();
        // arcs ascend by id within each tail group
        for a in 0..self.head.len() {
            let t = self.tail(a);
            out[cursor[t]] = a;
            cursor[t] += 1;
        }
        self.first_out = counts;
        self.out_arcs = out;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn sink(&self) -> Vertex {
        self.sink
    }

    pub fn head(&self, arc: ArcId) -> Vertex {
        self.head[arc]
    }

    pub fn tail(&self, arc: ArcId) -> Vertex {
        self.head[arc ^ 1]
    }

    pub fn cap(&self, arc: ArcId) -> Flow {
        self.cap[arc]
    }

    pub fn set_cap(&mut self, arc: ArcId, value: Flow) {
        self.cap[arc] = value;
    }

    pub fn excess(&self, v: Vertex) -> Flow {
        self.excess[v]
    }

    pub fn set_excess(&mut self, v: Vertex, value: Flow) {
        self.excess[v] = value;
    }

    /// Flow absorbed at the sink so far.
    pub fn collected_flow(&self) -> Flow {
        self.collected
    }

    pub fn add_collected(&mut self, delta: Flow) {
        self.collected += delta;
    }

    /// Flow absorbed back at the source so far.
    pub fn returned_flow(&self) -> Flow {
        self.returned
    }

    /// Arc ids leaving `v`, ascending.
    pub fn out_arcs(&self, v: Vertex) -> &[ArcId] {
        &self.out_arcs[self.first_out[v]..self.first_out[v + 1]]
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> {
        0..self.head.len()
    }

    /// Residual capacity of `arc` under `flow`: `cap - f`.
    pub fn residual_capacity(&self, flow: &Preflow, arc: ArcId) -> Flow {
        self.cap[arc] - flow.get(arc)
    }

    /// Residual capacity looked up by endpoints; errors if no `(u, v)` arc
    /// exists. With parallel arcs the first arc instance is used.
    pub fn residual_capacity_between(
        &self,
        flow: &Preflow,
        u: Vertex,
        v: Vertex,
    ) -> Result<Flow, NetworkError> {
        let arc = self
            .out_arcs(u)
            .iter()
            .copied()
            .find(|&a| self.head[a] == v)
            .ok_or(NetworkError::ArcNotFound(u, v))?;
        Ok(self.residual_capacity(flow, arc))
    }

    /// Residual excess of `v` under `flow`.
    pub fn residual_excess(&self, flow: &Preflow, v: Vertex) -> Flow {
        let inflow: Flow = self
            .out_arcs(v)
            .iter()
            .map(|&a| -flow.get(a)) // flow into v = -flow out of v on each pair
            .sum();
        self.excess[v] + inflow
    }

    /// Saturates every source arc, folding its capacity into the head's
    /// excess, and leaves the network in residual form. After this the
    /// source has no outgoing capacity.
    pub fn init(&mut self) {
        for i in 0..self.out_arcs(self.source).len() {
            let a = self.out_arcs[self.first_out[self.source] + i];
            let c = self.cap[a];
            if c > 0 {
                let v = self.head[a];
                if v == self.sink {
                    self.collected += c;
                } else {
                    self.excess[v] += c;
                }
                self.cap[a] = 0;
                self.cap[a ^ 1] += c;
            }
        }
    }

    /// Checks the three preflow constraints and reports the first violation.
    pub fn verify_preflow(&self, flow: &Preflow) -> Result<(), PreflowViolation> {
        for a in self.arcs() {
            if flow.get(a) != -flow.get(a ^ 1) {
                return Err(PreflowViolation::Antisymmetry { arc: a });
            }
            if flow.get(a) > self.cap[a] {
                return Err(PreflowViolation::Capacity { arc: a, cap: self.cap[a], flow: flow.get(a) });
            }
        }
        for v in 0..self.n {
            if v == self.sink || v == self.source {
                continue;
            }
            let e = self.residual_excess(flow, v);
            if e < 0 {
                return Err(PreflowViolation::NegativeExcess { vertex: v, excess: e });
            }
        }
        Ok(())
    }

    /// Sum of flow into the sink.
    pub fn flow_value(&self, flow: &Preflow) -> Flow {
        self.out_arcs(self.sink)
            .iter()
            .map(|&a| -flow.get(a))
            .sum()
    }

    /// Replaces capacities by residual capacities and excesses by residual
    /// excesses; flow reaching the terminals is absorbed into the running
    /// totals. Errors if the flow is not a valid preflow here.
    pub fn apply_flow(&mut self, flow: &Preflow) -> Result<(), PreflowViolation> {
        self.verify_preflow(flow)?;
        let into_sink = self.flow_value(flow);
        let into_source: Flow = self
            .out_arcs(self.source)
            .iter()
            .map(|&a| -flow.get(a))
            .sum();
        for v in 0..self.n {
            if v != self.source && v != self.sink {
                self.excess[v] = self.residual_excess(flow, v);
            }
        }
        for a in self.arcs() {
            self.cap[a] -= flow.get(a);
        }
        self.collected += into_sink;
        self.returned += into_source;
        Ok(())
    }

    /// Total commodity still in play: excess everywhere plus what the
    /// terminals absorbed. Constant across `apply_flow` on source-saturated
    /// networks.
    pub fn total_commodity(&self) -> Flow {
        let e: Flow = self.excess.iter().sum();
        e + self.collected + self.returned
    }

    /// Vertices that reach the sink through positive-residual arcs
    /// (reverse reachability from `t`).
    pub fn sink_reaching(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![self.sink];
        seen[self.sink] = true;
        while let Some(v) = stack.pop() {
            for &a in self.out_arcs(v) {
                // arc a leaves v; its reverse (head -> v) must be residual
                let u = self.head[a];
                if !seen[u] && self.cap[a ^ 1] > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Extracts the canonical minimum cut from a maximum preflow: the sink
    /// side is every vertex that still reaches `t`. Fails if an active
    /// vertex remains or the residual cut is unsaturated.
    pub fn extract_cut(&self) -> Result<CutResult, CutError> {
        let sink_side = self.sink_reaching();
        let mut residual_cost: Flow = 0;
        for (v, &in_t) in sink_side.iter().enumerate() {
            if in_t && v != self.sink && self.excess[v] > 0 {
                return Err(CutError::NotOptimal(v));
            }
            if in_t && v != self.sink {
                residual_cost += self.excess[v];
            }
        }
        for a in self.arcs() {
            if !sink_side[self.tail(a)] && sink_side[self.head[a]] {
                residual_cost += self.cap[a];
            }
        }
        if residual_cost != 0 {
            return Err(CutError::CostMismatch(residual_cost));
        }
        Ok(CutResult {
            sink_side,
            cut_cost: self.collected,
            flow_value: self.collected,
        })
    }

    /// Cost of the cut `(V \ T, T)` in this network per the cut objective:
    /// capacities crossing into `T` plus excesses inside `T`.
    pub fn cut_cost_of(&self, sink_side: &[bool]) -> Flow {
        let mut cost: Flow = 0;
        for a in self.arcs() {
            if !sink_side[self.tail(a)] && sink_side[self.head[a]] {
                cost += self.cap[a];
            }
        }
        for v in 0..self.n {
            if sink_side[v] && v != self.sink && v != self.source {
                cost += self.excess[v];
            }
        }
        cost
    }

    /// Debug check that every capacity and excess is nonnegative.
    pub fn assert_consistent(&self) {
        debug_assert!(self.cap.iter().all(|&c| c >= 0), "negative residual capacity");
        debug_assert!(self.excess.iter().all(|&e| e >= 0), "negative excess");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The diamond network used across the test suite:
    /// s->a:2, s->b:2, a->t:1, b->t:3, a->b:1. Max flow 4.
    pub fn diamond() -> Network {
        // ids: s=0, a=1, b=2, t=3
        Network::new(
            4,
            0,
            3,
            &[
                ArcSpec { from: 0, to: 1, cap: 2, rev_cap: 0 },
                ArcSpec { from: 0, to: 2, cap: 2, rev_cap: 0 },
                ArcSpec { from: 1, to: 3, cap: 1, rev_cap: 0 },
                ArcSpec { from: 2, to: 3, cap: 3, rev_cap: 0 },
                ArcSpec { from: 1, to: 2, cap: 1, rev_cap: 0 },
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn residual_capacity_basics() {
        let net = diamond();
        let mut f = Preflow::zero(&net);
        // c=5 f=2 -> 3 analogue on arc 0 (cap 2, push 1 -> 1)
        f.add(0, 1);
        assert_eq!(net.residual_capacity(&f, 0), 1);
        // reverse arc: c=0, f=-1 -> 1
        assert_eq!(net.residual_capacity(&f, 1), 1);
        // saturation
        f.add(0, 1);
        assert_eq!(net.residual_capacity(&f, 0), 0);
        assert_eq!(
            net.residual_capacity_between(&f, 0, 3),
            Err(NetworkError::ArcNotFound(0, 3))
        );
    }

    #[test]
    fn init_saturates_source_arcs() {
        let mut net = diamond();
        net.init();
        assert_eq!(net.excess(1), 2);
        assert_eq!(net.excess(2), 2);
        // source arc zeroed, reverse raised
        assert_eq!(net.cap(0), 0);
        assert_eq!(net.cap(1), 2);
        net.assert_consistent();
    }

    #[test]
    fn init_without_source_arcs_is_identity() {
        let mut net = Network::new(
            3,
            0,
            2,
            &[ArcSpec { from: 1, to: 2, cap: 5, rev_cap: 0 }],
            &[(1, 3)],
        )
        .unwrap();
        let caps: Vec<Flow> = net.arcs().map(|a| net.cap(a)).collect();
        net.init();
        let caps2: Vec<Flow> = net.arcs().map(|a| net.cap(a)).collect();
        assert_eq!(caps, caps2);
        assert_eq!(net.excess(1), 3);
    }

    #[test]
    fn init_adds_to_preexisting_excess() {
        let mut net = Network::new(
            3,
            0,
            2,
            &[ArcSpec { from: 0, to: 1, cap: 2, rev_cap: 0 }],
            &[(1, 1)],
        )
        .unwrap();
        net.init();
        assert_eq!(net.excess(1), 3);
    }

    #[test]
    fn apply_zero_flow_is_identity() {
        let mut net = diamond();
        net.init();
        let before = net.clone();
        net.apply_flow(&Preflow::zero(&before)).unwrap();
        assert_eq!(before.cap, net.cap);
        assert_eq!(before.excess, net.excess);
        assert_eq!(before.collected, net.collected);
    }

    #[test]
    fn apply_flow_moves_excess() {
        // push 2 on (a,b) with c(a,b)=3, e(a)=2
        let mut net = Network::new(
            4,
            0,
            3,
            &[ArcSpec { from: 1, to: 2, cap: 3, rev_cap: 0 }],
            &[(1, 2)],
        )
        .unwrap();
        let mut f = Preflow::zero(&net);
        f.add(0, 2);
        net.apply_flow(&f).unwrap();
        assert_eq!(net.cap(0), 1);
        assert_eq!(net.cap(1), 2);
        assert_eq!(net.excess(1), 0);
        assert_eq!(net.excess(2), 2);
    }

    #[test]
    fn successive_applications_compose() {
        let mut a = diamond();
        a.init();
        let mut b = a.clone();
        // two successive applications on `a`
        let mut f1 = Preflow::zero(&a);
        f1.add(4, 1); // a->t cap 1 is arc id 4
        let mut f2 = Preflow::zero(&a);
        f2.add(6, 2); // b->t arc id 6
        // summed flow on `b`
        let mut sum = Preflow::zero(&b);
        sum.add(4, 1);
        sum.add(6, 2);
        a.apply_flow(&f1).unwrap();
        a.apply_flow(&f2).unwrap();
        b.apply_flow(&sum).unwrap();
        assert_eq!(a.cap, b.cap);
        assert_eq!(a.excess, b.excess);
        assert_eq!(a.collected, b.collected);
    }

    #[test]
    fn verify_preflow_reports_violations() {
        let net = diamond();
        let mut f = Preflow::zero(&net);
        f.set_raw(0, 3); // exceeds cap 2 and breaks antisymmetry
        match net.verify_preflow(&f) {
            Err(PreflowViolation::Antisymmetry { arc: 0 }) => {}
            other => panic!("expected antisymmetry violation, got {other:?}"),
        }
        let mut f = Preflow::zero(&net);
        f.add(0, 3);
        match net.verify_preflow(&f) {
            Err(PreflowViolation::Capacity { arc: 0, .. }) => {}
            other => panic!("expected capacity violation, got {other:?}"),
        }
    }

    #[test]
    fn flow_value_counts_sink_inflow() {
        let net = diamond();
        assert_eq!(net.flow_value(&Preflow::zero(&net)), 0);
        let mut f = Preflow::zero(&net);
        f.add(0, 1);
        f.add(4, 1);
        assert_eq!(net.flow_value(&f), 1);
    }

    #[test]
    fn single_path_flow_value() {
        let net = Network::new(
            3,
            0,
            2,
            &[
                ArcSpec { from: 0, to: 1, cap: 5, rev_cap: 0 },
                ArcSpec { from: 1, to: 2, cap: 5, rev_cap: 0 },
            ],
            &[],
        )
        .unwrap();
        let mut f = Preflow::zero(&net);
        f.add(0, 5);
        f.add(2, 5);
        assert_eq!(net.flow_value(&f), 5);
    }

    #[test]
    fn extract_cut_requires_optimality() {
        let mut net = diamond();
        net.init();
        // active vertex a still reaches t
        match net.extract_cut() {
            Err(CutError::NotOptimal(_)) => {}
            other => panic!("expected not-optimal, got {other:?}"),
        }
    }

    #[test]
    fn trivial_sink_side() {
        // t reaches nothing backwards: T = {t}
        let net = Network::new(
            3,
            0,
            2,
            &[ArcSpec { from: 1, to: 0, cap: 1, rev_cap: 0 }],
            &[],
        )
        .unwrap();
        let cut = net.extract_cut().unwrap();
        assert_eq!(cut.sink_side, vec![false, false, true]);
        assert_eq!(cut.cut_cost, 0);
    }

    #[test]
    fn commodity_conserved() {
        let mut net = diamond();
        net.init();
        let total = net.total_commodity();
        let mut f = Preflow::zero(&net);
        f.add(4, 1);
        net.apply_flow(&f).unwrap();
        assert_eq!(net.total_commodity(), total);
    }
}

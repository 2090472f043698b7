//! Independent brute-force reference solver: exact max-flow/min-cut,
//! canonical cut sets, and reachability for verification on small instances.
//!
//! Deliberately naive (shortest augmenting paths on its own graph copy) and
//! shares no code with the discharge engines.

use crate::network::{Flow, Network, Preflow, Vertex};

/// Default guards: the oracle refuses instances it cannot handle in O(V E^2).
pub const MAX_VERTICES: usize = 10_000;
pub const MAX_ARCS: usize = 100_000;

#[derive(Debug, thiserror::Error)]
#[error("instance too large for the oracle: {vertices} vertices / {arcs} arcs")]
pub struct SizeGuardExceeded {
    pub vertices: usize,
    pub arcs: usize,
}

/// Private residual graph: the oracle keeps its own arc copies, with a
/// super-source feeding every excess vertex (and the declared source with
/// unbounded supply).
struct ResidualGraph {
    n: usize,
    head: Vec<usize>,
    cap: Vec<Flow>,
    first: Vec<usize>,
    adj: Vec<usize>,
    /// oracle arc id -> network arc id (None for super-source arcs)
    origin: Vec<Option<usize>>,
    super_source: usize,
    sink: usize,
}

impl ResidualGraph {
    fn build(net: &Network) -> Self {
        let n = net.vertex_count() + 1;
        let super_source = net.vertex_count();
        let mut head = Vec::new();
        let mut cap = Vec::new();
        let mut origin = Vec::new();
        for a in net.arcs() {
            head.push(net.head(a));
            cap.push(net.cap(a));
            origin.push(Some(a));
        }
        // network arcs keep their ids, pairing preserved (a ^ 1)
        let mut excess_total: Flow = 0;
        for v in 0..net.vertex_count() {
            let e = net.excess(v);
            if e > 0 {
                excess_total += e;
                head.push(v);
                cap.push(e);
                origin.push(None);
                head.push(super_source);
                cap.push(0);
                origin.push(None);
            }
        }
        // unbounded supply through the declared source
        let source_out: Flow = net.out_arcs(net.source()).iter().map(|&a| net.cap(a)).sum();
        if source_out > 0 {
            head.push(net.source());
            cap.push(source_out);
            origin.push(None);
            head.push(super_source);
            cap.push(0);
            origin.push(None);
        }
        let _ = excess_total;
        let mut counts = vec![0usize; n + 1];
        let tail = |arcs: &Vec<usize>, a: usize| arcs[a ^ 1];
        for a in 0..head.len() {
            counts[tail(&head, a) + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut adj = vec![0; head.len()];
        let mut cursor = counts.clone();
        for a in 0..head.len() {
            let t = tail(&head, a);
            adj[cursor[t]] = a;
            cursor[t] += 1;
        }
        ResidualGraph {
            n,
            head,
            cap,
            first: counts,
            adj,
            origin,
            super_source,
            sink: net.sink(),
        }
    }

    fn out(&self, v: usize) -> &[usize] {
        &self.adj[self.first[v]..self.first[v + 1]]
    }

    /// One BFS augmentation; returns the bottleneck pushed (0 when done).
    fn augment_once(&mut self) -> Flow {
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[self.super_source] = true;
        queue.push_back(self.super_source);
        'bfs: while let Some(v) = queue.pop_front() {
            for &a in self.out(v) {
                let w = self.head[a];
                if !seen[w] && self.cap[a] > 0 {
                    seen[w] = true;
                    parent[w] = Some(a);
                    if w == self.sink {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !seen[self.sink] {
            return 0;
        }
        let mut bottleneck = Flow::MAX;
        let mut v = self.sink;
        while let Some(a) = parent[v] {
            bottleneck = bottleneck.min(self.cap[a]);
            v = self.head[a ^ 1];
        }
        let mut v = self.sink;
        while let Some(a) = parent[v] {
            self.cap[a] -= bottleneck;
            self.cap[a ^ 1] += bottleneck;
            v = self.head[a ^ 1];
        }
        bottleneck
    }

    fn reachable_from_super_source(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![self.super_source];
        seen[self.super_source] = true;
        while let Some(v) = stack.pop() {
            for &a in self.out(v) {
                if self.cap[a] > 0 && !seen[self.head[a]] {
                    seen[self.head[a]] = true;
                    stack.push(self.head[a]);
                }
            }
        }
        seen
    }

    fn co_reachable_to_sink(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![self.sink];
        seen[self.sink] = true;
        while let Some(v) = stack.pop() {
            for &a in self.out(v) {
                // can head reach v? needs residual on (head, v) = a ^ 1... arc a is (v, head);
                // we want arcs into v: reverse arc (head -> v) is a ^ 1
                let u = self.head[a];
                if self.cap[a ^ 1] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Exact maximum preflow value together with a witness flow on the
/// network's own arcs (super-source arcs folded back into excess draw-down).
pub fn oracle_maxflow(net: &Network) -> Result<(Flow, Preflow), SizeGuardExceeded> {
    guard(net)?;
    let mut g = ResidualGraph::build(net);
    let mut total: Flow = 0;
    loop {
        let pushed = g.augment_once();
        if pushed == 0 {
            break;
        }
        total += pushed;
    }
    let mut flow = Preflow::zero(net);
    for (a, orig) in g.origin.iter().enumerate() {
        if let Some(arc) = orig {
            if a % 2 == 0 {
                let f = netflow(net, &g, a);
                flow.set_raw(*arc, f);
                flow.set_raw(*arc ^ 1, -f);
            }
        }
    }
    Ok((total + net.collected_flow(), flow))
}

fn netflow(net: &Network, g: &ResidualGraph, a: usize) -> Flow {
    net.cap(g.origin[a].unwrap()) - g.cap[a]
}

/// Canonical optimal source sets: minimal (source-reachable) and maximal
/// (complement of sink-co-reachable). Both are asserted to cost exactly the
/// max-flow value.
pub struct MincutSets {
    pub flow_value: Flow,
    /// true = in the minimal source set
    pub minimal_source: Vec<bool>,
    /// true = in the maximal source set
    pub maximal_source: Vec<bool>,
}

pub fn oracle_mincut_sets(net: &Network) -> Result<MincutSets, SizeGuardExceeded> {
    guard(net)?;
    let mut g = ResidualGraph::build(net);
    let mut total: Flow = 0;
    loop {
        let pushed = g.augment_once();
        if pushed == 0 {
            break;
        }
        total += pushed;
    }
    let total = total + net.collected_flow();
    let reach = g.reachable_from_super_source();
    let coreach = g.co_reachable_to_sink();
    let n = net.vertex_count();
    let mut minimal = vec![false; n];
    let mut maximal = vec![false; n];
    for v in 0..n {
        minimal[v] = reach[v] || v == net.source();
        maximal[v] = !coreach[v];
    }
    // source always on the source side, sink never
    minimal[net.source()] = true;
    maximal[net.source()] = true;
    minimal[net.sink()] = false;
    maximal[net.sink()] = false;
    let min_cost = cut_cost_source_set(net, &minimal);
    let max_cost = cut_cost_source_set(net, &maximal);
    assert_eq!(min_cost, total, "minimal cut cost must equal flow value");
    assert_eq!(max_cost, total, "maximal cut cost must equal flow value");
    Ok(MincutSets {
        flow_value: total,
        minimal_source: minimal,
        maximal_source: maximal,
    })
}

/// Cost of the cut whose source side is `source_set` (complement = sink side).
pub fn cut_cost_source_set(net: &Network, source_set: &[bool]) -> Flow {
    let mut cost: Flow = 0;
    for a in net.arcs() {
        if source_set[net.tail(a)] && !source_set[net.head(a)] {
            cost += net.cap(a);
        }
    }
    for v in 0..net.vertex_count() {
        if !source_set[v] && v != net.sink() && v != net.source() {
            cost += net.excess(v);
        }
    }
    cost + net.collected_flow()
}

/// Positive-residual reachability from any vertex of `from` to any of `to`
/// (length-0 paths count: overlapping sets are reachable).
pub fn oracle_reach(net: &Network, from: &[Vertex], to: &[Vertex]) -> bool {
    let mut target = vec![false; net.vertex_count()];
    for &v in to {
        target[v] = true;
    }
    let mut seen = vec![false; net.vertex_count()];
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in from {
        if target[v] {
            return true;
        }
        if !seen[v] {
            seen[v] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        for &a in net.out_arcs(v) {
            let w = net.head(a);
            if net.cap(a) > 0 && !seen[w] {
                if target[w] {
                    return true;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn guard(net: &Network) -> Result<(), SizeGuardExceeded> {
    if net.vertex_count() > MAX_VERTICES || net.arc_count() > MAX_ARCS {
        return Err(SizeGuardExceeded {
            vertices: net.vertex_count(),
            arcs: net.arc_count(),
        });
    }
    Ok(())
}

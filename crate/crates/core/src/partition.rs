//! Region partitioning of vertices and construction of region networks.
//!
//! A partition assigns every non-terminal vertex to exactly one of `K`
//! regions, fixed for the whole run. The boundary of a region is the set of
//! outside non-terminal vertices adjacent to it; a region network is the
//! induced network over the region, its boundary and the terminals, with
//! incoming-boundary capacities set to zero.

use crate::network::{ArcId, Flow, Network, Vertex};

/// How vertices map to regions. Rules are formulas where possible so the
/// streaming splitter can classify vertices without an O(n) table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionRule {
    /// Contiguous blocks of `ceil(n / k)` raw vertex ids.
    ById { k: usize },
    /// Axis-aligned blocks of a `width x height` grid laid out row-major
    /// (vertex id = y * width + x), sliced into `slices_x * slices_y` parts.
    Grid { width: usize, height: usize, slices_x: usize, slices_y: usize },
    /// Explicit per-region inclusive id ranges (from a sidecar file).
    Ranges(Vec<Vec<(Vertex, Vertex)>>),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("grid shape {width}x{height} does not cover the {nonterminal} non-terminal vertices")]
    ShapeMismatch { width: usize, height: usize, nonterminal: usize },
    #[error("slice counts must be between 1 and the dimension size")]
    BadSlices,
    #[error("region count must be at least 1")]
    NoRegions,
    #[error("vertex {0} is not covered by any region")]
    Uncovered(Vertex),
    #[error("vertex {0} is assigned to more than one region")]
    Overlap(Vertex),
}

impl PartitionRule {
    /// Region of a non-terminal vertex. `ById` and `Grid` work on the
    /// vertex's rank among non-terminals so that terminal ids anywhere in
    /// the numbering do not skew the blocks.
    pub fn region_of(
        &self,
        v: Vertex,
        nonterminal: usize,
        source: Vertex,
        sink: Vertex,
    ) -> Option<usize> {
        if v == source || v == sink {
            return None;
        }
        let rank = v - usize::from(source < v) - usize::from(sink < v);
        match self {
            PartitionRule::ById { k } => {
                let block = nonterminal.div_ceil(*k).max(1);
                Some(rank / block)
            }
            PartitionRule::Grid { width, height, slices_x, slices_y } => {
                let x = rank % width;
                let y = rank / width;
                let bx = x * slices_x / width;
                let by = y * slices_y / height;
                Some(by * slices_x + bx)
            }
            PartitionRule::Ranges(regions) => {
                for (k, ranges) in regions.iter().enumerate() {
                    for &(lo, hi) in ranges {
                        if v >= lo && v <= hi {
                            return Some(k);
                        }
                    }
                }
                None
            }
        }
    }

    pub fn region_count(&self) -> usize {
        match self {
            PartitionRule::ById { k } => *k,
            PartitionRule::Grid { slices_x, slices_y, .. } => slices_x * slices_y,
            PartitionRule::Ranges(r) => r.len(),
        }
    }
}

/// A materialized partition: region assignment, global boundary set, per-
/// region boundaries and the inter-region arc list. Immutable once built.
#[derive(Clone, Debug)]
pub struct Partition {
    k: usize,
    region_of: Vec<Option<usize>>,
    /// Global boundary: every vertex incident to an inter-region arc. Sorted.
    boundary: Vec<Vertex>,
    /// vertex -> index into `boundary`, or None.
    boundary_index: Vec<Option<usize>>,
    /// Per-region vertex lists, sorted.
    regions: Vec<Vec<Vertex>>,
    /// Per-region boundary sets, sorted.
    region_boundary: Vec<Vec<Vertex>>,
    /// Arc ids whose endpoints lie in two different regions (each direction
    /// appears once).
    inter_arcs: Vec<ArcId>,
}

impl Partition {
    /// Materializes `rule` against `net`, deriving boundaries from the arc
    /// structure.
    pub fn build(rule: &PartitionRule, net: &Network) -> Result<Self, PartitionError> {
        let n = net.vertex_count();
        let k = rule.region_count();
        if k == 0 {
            return Err(PartitionError::NoRegions);
        }
        if let PartitionRule::Grid { width, height, slices_x, slices_y } = rule {
            let nonterminal = n - 2;
            if width * height != nonterminal {
                return Err(PartitionError::ShapeMismatch {
                    width: *width,
                    height: *height,
                    nonterminal,
                });
            }
            if *slices_x == 0 || *slices_y == 0 || slices_x > width || slices_y > height {
                return Err(PartitionError::BadSlices);
            }
        }
        let mut region_of = vec![None; n];
        for v in 0..n {
            if v == net.source() || v == net.sink() {
                continue;
            }
            let r = rule
                .region_of(v, n - 2, net.source(), net.sink())
                .ok_or(PartitionError::Uncovered(v))?;
            if r >= k {
                return Err(PartitionError::Uncovered(v));
            }
            region_of[v] = Some(r);
        }
        if let PartitionRule::Ranges(ranges) = rule {
            // explicit ranges may overlap; detect it
            let mut seen = vec![false; n];
            for region in ranges {
                for &(lo, hi) in region {
                    for v in lo..=hi.min(n.saturating_sub(1)) {
                        if v == net.source() || v == net.sink() {
                            continue;
                        }
                        if seen[v] {
                            return Err(PartitionError::Overlap(v));
                        }
                        seen[v] = true;
                    }
                }
            }
        }
        let mut regions = vec![Vec::new(); k];
        for v in 0..n {
            if let Some(r) = region_of[v] {
                regions[r].push(v);
            }
        }
        let mut is_boundary = vec![false; n];
        let mut region_boundary_flags: Vec<Vec<Vertex>> = vec![Vec::new(); k];
        let mut inter_arcs = Vec::new();
        for a in net.arcs() {
            let u = net.tail(a);
            let v = net.head(a);
            if let (Some(ru), Some(rv)) = (region_of[u], region_of[v]) {
                if ru != rv {
                    inter_arcs.push(a);
                    is_boundary[u] = true;
                    is_boundary[v] = true;
                    region_boundary_flags[ru].push(v);
                    region_boundary_flags[rv].push(u);
                }
            }
        }
        let boundary: Vec<Vertex> = (0..n).filter(|&v| is_boundary[v]).collect();
        let mut boundary_index = vec![None; n];
        for (i, &v) in boundary.iter().enumerate() {
            boundary_index[v] = Some(i);
        }
        let region_boundary = region_boundary_flags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(Partition {
            k,
            region_of,
            boundary,
            boundary_index,
            regions,
            region_boundary,
            inter_arcs,
        })
    }

    pub fn region_count(&self) -> usize {
        self.k
    }

    pub fn region_of(&self, v: Vertex) -> Option<usize> {
        self.region_of[v]
    }

    /// Vertices of region `k`, ascending.
    pub fn region(&self, k: usize) -> &[Vertex] {
        &self.regions[k]
    }

    /// Boundary of region `k`, ascending.
    pub fn region_boundary(&self, k: usize) -> &[Vertex] {
        &self.region_boundary[k]
    }

    /// The global boundary set, ascending.
    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.boundary_index[v].is_some()
    }

    pub fn boundary_index(&self, v: Vertex) -> Option<usize> {
        self.boundary_index[v]
    }

    /// Arc ids crossing between two regions, each direction once.
    pub fn inter_arcs(&self) -> &[ArcId] {
        &self.inter_arcs
    }

    /// True if the arc joins two different regions (terminal arcs never do).
    pub fn is_inter_arc(&self, net: &Network, a: ArcId) -> bool {
        match (self.region_of[net.tail(a)], self.region_of[net.head(a)]) {
            (Some(ru), Some(rv)) => ru != rv,
            _ => false,
        }
    }
}

/// Which side of a region an arc connects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionArcKind {
    /// Both endpoints inside the region or a terminal: full capacity.
    Interior,
    /// From the region out to its boundary: full capacity.
    OutToBoundary,
    /// From the boundary into the region: capacity fixed to zero.
    InFromBoundary,
}

/// A self-contained region network: the induced subnetwork over a region,
/// its boundary and the terminals, with incoming-boundary capacities zeroed.
/// Local vertex ids: `0..ni` interior (ascending global id), then boundary,
/// then source and sink.
#[derive(Clone, Debug)]
pub struct RegionNetwork {
    pub region: usize,
    interior: Vec<Vertex>,
    boundary: Vec<Vertex>,
    global_vertex: Vec<Vertex>,
    /// local arc -> global arc; local pairing mirrors global pairing.
    arc_global: Vec<ArcId>,
    arc_head: Vec<usize>,
    pub cap: Vec<Flow>,
    /// Local excess; boundary entries are zero by construction.
    pub excess: Vec<Flow>,
    first_out: Vec<usize>,
    out_arcs: Vec<usize>,
}

impl RegionNetwork {
    pub fn interior_count(&self) -> usize {
        self.interior.len()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.global_vertex.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_head.len()
    }

    pub fn local_source(&self) -> usize {
        self.interior.len() + self.boundary.len()
    }

    pub fn local_sink(&self) -> usize {
        self.interior.len() + self.boundary.len() + 1
    }

    pub fn is_interior(&self, local: usize) -> bool {
        local < self.interior.len()
    }

    pub fn is_boundary_local(&self, local: usize) -> bool {
        local >= self.interior.len() && local < self.interior.len() + self.boundary.len()
    }

    /// Global id of a local vertex.
    pub fn global_vertex(&self, local: usize) -> Vertex {
        self.global_vertex[local]
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.interior
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    /// Local id of a global vertex if it belongs to this region network.
    pub fn local_of(&self, v: Vertex, net: &Network) -> Option<usize> {
        if v == net.source() {
            return Some(self.local_source());
        }
        if v == net.sink() {
            return Some(self.local_sink());
        }
        if let Ok(i) = self.interior.binary_search(&v) {
            return Some(i);
        }
        if let Ok(i) = self.boundary.binary_search(&v) {
            return Some(self.interior.len() + i);
        }
        None
    }

    pub fn head(&self, arc: usize) -> usize {
        self.arc_head[arc]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.arc_head[arc ^ 1]
    }

    pub fn global_arc(&self, arc: usize) -> ArcId {
        self.arc_global[arc]
    }

    pub fn out(&self, local: usize) -> &[usize] {
        &self.out_arcs[self.first_out[local]..self.first_out[local + 1]]
    }

    pub fn out_degree(&self, local: usize) -> usize {
        self.first_out[local + 1] - self.first_out[local]
    }

    /// The `i`-th out-arc of `local` (ascending arc id).
    pub fn out_arc(&self, local: usize, i: usize) -> usize {
        self.out_arcs[self.first_out[local] + i]
    }

    pub fn kind(&self, arc: usize) -> RegionArcKind {
        if self.is_boundary_local(self.tail(arc)) {
            RegionArcKind::InFromBoundary
        } else if self.is_boundary_local(self.head(arc)) {
            RegionArcKind::OutToBoundary
        } else {
            RegionArcKind::Interior
        }
    }

    /// Whether the arc carries weight 1 in the region-crossing metric
    /// (exactly one endpoint is a boundary vertex).
    pub fn crosses_region(&self, arc: usize) -> bool {
        self.is_boundary_local(self.tail(arc)) != self.is_boundary_local(self.head(arc))
    }

    /// Pushes `delta` units over a local arc, moving excess with it.
    /// Flow into the boundary or terminals accumulates in their excess slot
    /// here and is settled when the discharge result is applied globally.
    pub fn push(&mut self, arc: usize, delta: Flow) {
        debug_assert!(delta >= 0 && delta <= self.cap[arc]);
        self.cap[arc] -= delta;
        self.cap[arc ^ 1] += delta;
        let (tail, head) = (self.tail(arc), self.head(arc));
        self.excess[tail] -= delta;
        self.excess[head] += delta;
    }

    /// Standalone `Network` over the local vertex space; used by oracles.
    pub fn to_network(&self) -> Network {
        let mut specs = Vec::with_capacity(self.arc_count() / 2);
        for p in 0..self.arc_count() / 2 {
            specs.push(crate::network::ArcSpec {
                from: self.tail(2 * p),
                to: self.head(2 * p),
                cap: self.cap[2 * p],
                rev_cap: self.cap[2 * p + 1],
            });
        }
        let excess: Vec<(usize, Flow)> = (0..self.interior.len())
            .filter(|&v| self.excess[v] > 0)
            .map(|v| (v, self.excess[v]))
            .collect();
        Network::new(
            self.vertex_count(),
            self.local_source(),
            self.local_sink(),
            &specs,
            &excess,
        )
        .expect("region network is well-formed")
    }
}

/// Builds the region network for region `k`, reading current capacities and
/// excesses from `net`.
pub fn build_region_network(net: &Network, part: &Partition, k: usize) -> RegionNetwork {
    let interior: Vec<Vertex> = part.region(k).to_vec();
    let boundary: Vec<Vertex> = part.region_boundary(k).to_vec();
    let ni = interior.len();
    let nb = boundary.len();
    let nv = ni + nb + 2;
    let mut global_vertex = Vec::with_capacity(nv);
    global_vertex.extend_from_slice(&interior);
    global_vertex.extend_from_slice(&boundary);
    global_vertex.push(net.source());
    global_vertex.push(net.sink());

    let local_of = |v: Vertex| -> Option<usize> {
        if v == net.source() {
            return Some(ni + nb);
        }
        if v == net.sink() {
            return Some(ni + nb + 1);
        }
        if part.region_of(v) == Some(k) {
            return interior.binary_search(&v).ok();
        }
        boundary.binary_search(&v).ok().map(|i| ni + i)
    };

    // Qualifying arc pairs in ascending global order: both endpoints in
    // R ∪ {s,t}, or one endpoint in R and the other in the boundary.
    let mut arc_global = Vec::new();
    let mut arc_head = Vec::new();
    let mut cap = Vec::new();
    let in_core = |v: Vertex| part.region_of(v) == Some(k) || v == net.source() || v == net.sink();
    for p in 0..net.arc_count() / 2 {
        let g = 2 * p;
        let u = net.tail(g);
        let v = net.head(g);
        let qualifies = (in_core(u) && in_core(v))
            || (part.region_of(u) == Some(k) && boundary.binary_search(&v).is_ok())
            || (part.region_of(v) == Some(k) && boundary.binary_search(&u).is_ok());
        if !qualifies {
            continue;
        }
        let lu = local_of(u).expect("qualifying arc endpoint is local");
        let lv = local_of(v).expect("qualifying arc endpoint is local");
        let boundary_u = lu >= ni && lu < ni + nb;
        let boundary_v = lv >= ni && lv < ni + nb;
        arc_global.push(g);
        arc_head.push(lv);
        cap.push(if boundary_u { 0 } else { net.cap(g) });
        arc_global.push(g ^ 1);
        arc_head.push(lu);
        cap.push(if boundary_v { 0 } else { net.cap(g ^ 1) });
    }

    let mut excess = vec![0; nv];
    for (i, &v) in interior.iter().enumerate() {
        excess[i] = net.excess(v);
    }

    let mut first_out = vec![0usize; nv + 1];
    for a in 0..arc_head.len() {
        first_out[arc_head[a ^ 1] + 1] += 1;
    }
    for i in 0..nv {
        first_out[i + 1] += first_out[i];
    }
    let mut out_arcs = vec![0; arc_head.len()];
    let mut cursor = first_out.clone();
    for a in 0..arc_head.len() {
        let t = arc_head[a ^ 1];
        out_arcs[cursor[t]] = a;
        cursor[t] += 1;
    }

    RegionNetwork {
        region: k,
        interior,
        boundary,
        global_vertex,
        arc_global,
        arc_head,
        cap,
        excess,
        first_out,
        out_arcs,
    }
}

//! Synthetic instance generators: random 2D grids with configurable
//! connectivity, and the two-region chain family on which push-relabel
//! region discharge needs a number of sweeps growing with the instance size.

use crate::network::{ArcSpec, Flow, Network, Vertex};
use crate::partition::PartitionRule;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Relative displacements defining grid connectivity. The first
/// `connectivity / 2` entries are used; connectivity 4 takes `(0,1)` and
/// `(1,0)`, connectivity 8 adds `(1,2)` and `(2,1)`, and so on.
pub const DISPLACEMENTS: [(usize, usize); 14] = [
    (0, 1),
    (1, 0),
    (1, 2),
    (2, 1),
    (1, 3),
    (3, 1),
    (2, 3),
    (3, 2),
    (0, 2),
    (2, 0),
    (2, 2),
    (3, 3),
    (3, 4),
    (4, 2),
];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("connectivity must be a positive even number of at most {max}", max = DISPLACEMENTS.len() * 2)]
    BadConnectivity,
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("chain count must be at least 1")]
    NoChains,
}

/// Generates a `width x height` grid network. Every node draws an integer
/// from `[-500, 500]` (ChaCha8 stream seeded with `seed`, nodes visited in
/// row-major order before any arcs are emitted): positive values become
/// excess, negative values become a sink arc of that magnitude. All grid
/// edges get capacity `strength` in both directions.
///
/// Vertex layout: grid nodes `0 .. width*height` row-major, then source,
/// then sink. Grid arcs are emitted node-major and displacement-minor,
/// followed by the sink arcs in node order.
pub fn grid(
    width: usize,
    height: usize,
    connectivity: usize,
    strength: Flow,
    seed: u64,
) -> Result<Network, GenError> {
    if width == 0 || height == 0 {
        return Err(GenError::EmptyGrid);
    }
    if connectivity == 0 || connectivity % 2 != 0 || connectivity / 2 > DISPLACEMENTS.len() {
        return Err(GenError::BadConnectivity);
    }
    let pairs = connectivity / 2;
    let nodes = width * height;
    let source = nodes;
    let sink = nodes + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<i64> = (0..nodes).map(|_| rng.gen_range(-500..=500)).collect();

    let mut arcs = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            for &(dx, dy) in DISPLACEMENTS.iter().take(pairs) {
                let (nx, ny) = (x + dx, y + dy);
                if nx < width && ny < height {
                    arcs.push(ArcSpec {
                        from: v,
                        to: ny * width + nx,
                        cap: strength,
                        rev_cap: strength,
                    });
                }
            }
        }
    }
    let mut excess = Vec::new();
    for (v, &wt) in weights.iter().enumerate() {
        if wt < 0 {
            arcs.push(ArcSpec { from: v, to: sink, cap: -wt, rev_cap: 0 });
        } else if wt > 0 {
            excess.push((v, wt));
        }
    }
    Ok(Network::new(nodes + 2, source, sink, &arcs, &excess).expect("generated grid is well-formed"))
}

/// Capacity sentinel that no flow in `net` can saturate.
pub fn unsaturable_capacity(total_excess: Flow) -> Flow {
    total_excess + 1
}

/// The two-region worst case for push-relabel region discharge: three hub
/// nodes and `chains` parallel three-node chains between them, excess
/// circulating over a back arc. Returns the network and the fixed
/// two-region partition (the last hub alone in its own region).
///
/// Layout: hub_a=0, hub_b=1, hub_c=2, chain i occupies 3+3i..6+3i, then
/// source and sink (the sink is unreachable; maximum flow is 0).
pub fn adversarial_prd(chains: usize) -> Result<(Network, PartitionRule), GenError> {
    if chains == 0 {
        return Err(GenError::NoChains);
    }
    let hub_a = 0;
    let hub_b = 1;
    let hub_c = 2;
    let n = 3 + 3 * chains + 2;
    let source = n - 2;
    let sink = n - 1;
    let inf = unsaturable_capacity(1);
    let mut arcs = Vec::new();
    for i in 0..chains {
        let c0 = 3 + 3 * i;
        arcs.push(ArcSpec { from: hub_a, to: c0, cap: inf, rev_cap: 0 });
        arcs.push(ArcSpec { from: c0, to: c0 + 1, cap: inf, rev_cap: 0 });
        arcs.push(ArcSpec { from: c0 + 1, to: c0 + 2, cap: inf, rev_cap: 0 });
        arcs.push(ArcSpec { from: c0 + 2, to: hub_b, cap: inf, rev_cap: 0 });
    }
    arcs.push(ArcSpec { from: hub_b, to: hub_c, cap: inf, rev_cap: 0 });
    // the back arc that lets excess circulate
    arcs.push(ArcSpec { from: hub_c, to: hub_a, cap: inf, rev_cap: 0 });
    let net = Network::new(n, source, sink, &arcs, &[(hub_a, 1)])
        .expect("adversarial instance is well-formed");
    let rule = PartitionRule::Ranges(vec![
        vec![(0, 1), (3, 3 + 3 * chains - 1)],
        vec![(2, 2)],
    ]);
    Ok((net, rule))
}

/// Replays a valid push/relabel schedule on the adversarial instance,
/// discharging the two regions alternately the way a region-discharge
/// solver without label heuristics would, and returns the number of sweeps
/// until no vertex is active. Every operation is checked against the push
/// and relabel preconditions.
pub fn adversarial_replay(chains: usize) -> usize {
    let (net, rule) = adversarial_prd(chains).expect("chains >= 1");
    let part = crate::partition::Partition::build(&rule, &net).expect("fixed partition");
    let mut net = net;
    net.init();
    let n = net.vertex_count();
    let d_inf = n;
    let mut label = vec![0usize; n];
    label[net.source()] = d_inf;

    let active = |net: &Network, label: &[usize], v: Vertex| -> bool {
        v != net.source() && v != net.sink() && net.excess(v) > 0 && label[v] < d_inf
    };

    // Pushes stay inside the discharging region's network: from region
    // vertices over arcs whose tail is in the region.
    let mut sweeps = 0usize;
    loop {
        let any_active = (0..n).any(|v| active(&net, &label, v));
        if !any_active {
            break;
        }
        sweeps += 1;
        assert!(
            sweeps <= 2 * n * n,
            "replay exceeded the push-relabel sweep bound"
        );
        for k in 0..part.region_count() {
            loop {
                let Some(v) = part
                    .region(k)
                    .iter()
                    .copied()
                    .find(|&v| active(&net, &label, v))
                else {
                    break;
                };
                // admissible arc with the lowest head id, if any
                let mut chosen: Option<usize> = None;
                for &a in net.out_arcs(v) {
                    let w = net.head(a);
                    if w == net.source() || w == net.sink() {
                        continue;
                    }
                    if net.cap(a) > 0 && label[v] == label[w] + 1 {
                        let better = match chosen {
                            None => true,
                            Some(b) => w < net.head(b),
                        };
                        if better {
                            chosen = Some(a);
                        }
                    }
                }
                if let Some(a) = chosen {
                    // push precondition holds by construction; move everything
                    let delta = net.excess(v).min(net.cap(a));
                    assert!(delta > 0 && net.cap(a) >= delta && label[v] == label[net.head(a)] + 1);
                    let w = net.head(a);
                    net.set_cap(a, net.cap(a) - delta);
                    net.set_cap(a ^ 1, net.cap(a ^ 1) + delta);
                    net.set_excess(v, net.excess(v) - delta);
                    net.set_excess(w, net.excess(w) + delta);
                } else {
                    // relabel: every residual out-arc must lead to label >= ours
                    let mut min_next = d_inf;
                    for &a in net.out_arcs(v) {
                        if net.cap(a) > 0 {
                            let w = net.head(a);
                            assert!(
                                label[w] >= label[v],
                                "relabel applied while an admissible arc exists"
                            );
                            min_next = min_next.min(label[w] + 1);
                        }
                    }
                    label[v] = min_next.min(d_inf);
                }
            }
        }
    }
    sweeps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn grid_is_deterministic_under_seed() {
        let a = grid(6, 6, 8, 150, 7).unwrap();
        let b = grid(6, 6, 8, 150, 7).unwrap();
        assert_eq!(a.arc_count(), b.arc_count());
        for arc in a.arcs() {
            assert_eq!(a.cap(arc), b.cap(arc));
            assert_eq!(a.head(arc), b.head(arc));
        }
        for v in 0..a.vertex_count() {
            assert_eq!(a.excess(v), b.excess(v));
        }
        let c = grid(6, 6, 8, 150, 8).unwrap();
        let differs = a.arcs().any(|arc| a.cap(arc) != c.cap(arc))
            || (0..a.vertex_count()).any(|v| a.excess(v) != c.excess(v));
        assert!(differs);
    }

    #[test]
    fn connectivity_selects_displacement_prefix() {
        let four = grid(10, 10, 4, 1, 0).unwrap();
        let eight = grid(10, 10, 8, 1, 0).unwrap();
        // interior node degree (grid arcs only) doubles from 4 to 8
        let count_grid_arcs = |net: &Network, v: usize| {
            net.out_arcs(v)
                .iter()
                .filter(|&&a| net.head(a) < 100 && (net.cap(a) > 0 || net.cap(a ^ 1) > 0))
                .count()
        };
        let mid = 5 * 10 + 5;
        assert_eq!(count_grid_arcs(&four, mid), 4);
        assert_eq!(count_grid_arcs(&eight, mid), 8);
        assert!(matches!(grid(4, 4, 7, 1, 0), Err(GenError::BadConnectivity)));
        assert!(matches!(grid(4, 4, 30, 1, 0), Err(GenError::BadConnectivity)));
    }

    #[test]
    fn strength_zero_disconnects_transport() {
        let mut net = grid(8, 8, 4, 0, 3).unwrap();
        let (oracle_flow, _) = oracle::oracle_maxflow(&net).unwrap();
        // with no transport, nothing can move: excess cannot reach the sink
        // except where a node has both excess and... it cannot have both, so 0
        assert_eq!(oracle_flow, 0);
        net.init();
        net.assert_consistent();
    }

    #[test]
    fn adversarial_topology() {
        let (net, rule) = adversarial_prd(3).unwrap();
        assert_eq!(net.vertex_count(), 3 + 9 + 2);
        let part = crate::partition::Partition::build(&rule, &net).unwrap();
        assert_eq!(part.region_count(), 2);
        assert_eq!(part.region(1), &[2]);
        // boundary: hubs that touch the inter-region arcs (b->c and c->a)
        assert_eq!(part.boundary(), &[0, 1, 2]);
        let (flow, _) = oracle::oracle_maxflow(&net).unwrap();
        assert_eq!(flow, 0);
    }

    #[test]
    fn adversarial_k1_is_single_chain() {
        let (net, _) = adversarial_prd(1).unwrap();
        // 6 regular nodes plus terminals
        assert_eq!(net.vertex_count(), 8);
    }

    #[test]
    fn sentinel_capacity_never_binds() {
        let (net, _) = adversarial_prd(4).unwrap();
        let total: Flow = (0..net.vertex_count()).map(|v| net.excess(v)).sum();
        let (flow, _) = oracle::oracle_maxflow(&net).unwrap();
        assert!(unsaturable_capacity(total) > flow);
    }

    #[test]
    fn replay_sweeps_grow_with_chain_count() {
        let s4 = adversarial_replay(4);
        let s8 = adversarial_replay(8);
        let s16 = adversarial_replay(16);
        assert!(s4 >= 4, "sweeps {s4} too small for k=4");
        assert!(s8 > s4 && s16 > s8, "sweeps must grow: {s4} {s8} {s16}");
        assert!(s16 >= 16, "sweeps {s16} below linear growth at k=16");
    }
}

//! Workloads shared by the criterion benches.

use dmc_core::cuts::{enumerate_min_cuts, MinCut};
use dmc_core::Network;

/// A network together with its minimal cuts and a demand level to solve at.
pub struct Workload {
    pub name: &'static str,
    pub network: Network,
    pub cuts: Vec<MinCut>,
    pub demand: u64,
}

impl Workload {
    fn new(name: &'static str, network: Network, demand: u64) -> Self {
        let cuts = enumerate_min_cuts(&network).expect("bench networks are connected");
        Workload {
            name,
            network,
            cuts,
            demand,
        }
    }
}

/// `k` parallel two-hop routes from node 1 to node `k + 2`, each route with
/// capacities `(cap, cap)`, plus a direct arc.
pub fn ladder(k: usize, cap: u64) -> Network {
    let sink = k + 2;
    let mut arcs = Vec::new();
    for r in 0..k {
        let mid = r + 2;
        arcs.push((1, mid, cap));
        arcs.push((mid, sink, cap));
        if r + 1 < k {
            arcs.push((mid, mid + 1, 1));
        }
    }
    arcs.push((1, sink, cap));
    Network::new(sink, 1, sink, arcs).expect("ladder is valid")
}

pub fn workloads() -> Vec<Workload> {
    vec![
        Workload::new("fig1_d7", Network::figure_one(), 7),
        Workload::new("ladder3_d5", ladder(3, 3), 5),
        Workload::new("ladder4_d6", ladder(4, 3), 6),
    ]
}

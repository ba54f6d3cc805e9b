//! Seeded random small networks for sweeps and property checks.

use rand::Rng;

use crate::network::{EdgeDistribution, Network};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkShape {
    pub max_nodes: usize,
    pub max_arcs: usize,
    pub max_capacity: u64,
}

impl Default for NetworkShape {
    fn default() -> Self {
        NetworkShape {
            max_nodes: 6,
            max_arcs: 8,
            max_capacity: 3,
        }
    }
}

/// A random network with `2..=max_nodes` nodes, `1..=max_arcs` arcs and
/// capacities in `0..=max_capacity`, source `1`, sink `n`. Resamples until
/// the sink is structurally reachable from the source.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, shape: NetworkShape) -> Network {
    assert!(shape.max_nodes >= 2 && shape.max_arcs >= 1);
    loop {
        let n = rng.gen_range(2..=shape.max_nodes);
        let m = rng.gen_range(1..=shape.max_arcs);
        let arcs: Vec<(usize, usize, u64)> = (0..m)
            .map(|_| {
                let tail = rng.gen_range(1..=n);
                let mut head = rng.gen_range(1..n);
                if head >= tail {
                    head += 1;
                }
                (tail, head, rng.gen_range(0..=shape.max_capacity))
            })
            .collect();
        let net = Network::new(n, 1, n, arcs).expect("generated arcs are valid");
        if crate::cuts::enumerate_min_cuts(&net).is_ok() {
            return net;
        }
    }
}

/// Independent random pmfs, normalised per arc.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, net: &Network) -> EdgeDistribution {
    let pmfs = net
        .arcs()
        .iter()
        .map(|a| {
            let weights: Vec<f64> = (0..=a.max_capacity)
                .map(|_| rng.gen_range(0.05..1.0))
                .collect();
            let total: f64 = weights.iter().sum();
            weights.iter().map(|w| w / total).collect()
        })
        .collect();
    EdgeDistribution::new(net, pmfs).expect("normalised weights form a pmf")
}

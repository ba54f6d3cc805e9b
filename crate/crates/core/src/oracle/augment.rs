//! Shortest-augmenting-path max-flow over a dense node-pair capacity matrix.
//!
//! Deliberately shares nothing with `crate::maxflow`: parallel arcs are
//! merged into one matrix entry and flow is tracked per node pair, so the
//! two implementations can check each other.

use std::collections::VecDeque;

use crate::network::Network;

pub(crate) struct DenseFlow {
    n: usize,
    source: usize,
    sink: usize,
    // (tail, head) per arc, zero-based
    ends: Vec<(usize, usize)>,
    cap: Vec<u64>,
    flow: Vec<i64>,
    parent: Vec<usize>,
}

impl DenseFlow {
    pub(crate) fn new(net: &Network) -> Self {
        let n = net.node_count();
        DenseFlow {
            n,
            source: net.source().index(),
            sink: net.sink().index(),
            ends: net
                .arcs()
                .iter()
                .map(|a| (a.tail.index(), a.head.index()))
                .collect(),
            cap: vec![0; n * n],
            flow: vec![0; n * n],
            parent: vec![usize::MAX; n],
        }
    }

    pub(crate) fn value(&mut self, capacities: &[u64]) -> u64 {
        let n = self.n;
        self.cap.iter_mut().for_each(|c| *c = 0);
        self.flow.iter_mut().for_each(|f| *f = 0);
        for (&(u, v), &c) in self.ends.iter().zip(capacities) {
            self.cap[u * n + v] += c;
        }
        let mut total = 0u64;
        while let Some(bottleneck) = self.find_path() {
            let mut v = self.sink;
            while v != self.source {
                let u = self.parent[v];
                self.flow[u * n + v] += bottleneck as i64;
                self.flow[v * n + u] -= bottleneck as i64;
                v = u;
            }
            total += bottleneck;
        }
        total
    }

    fn residual(&self, u: usize, v: usize) -> u64 {
        (self.cap[u * self.n + v] as i64 - self.flow[u * self.n + v]) as u64
    }

    fn find_path(&mut self) -> Option<u64> {
        self.parent.iter_mut().for_each(|p| *p = usize::MAX);
        self.parent[self.source] = self.source;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if self.parent[v] == usize::MAX && self.residual(u, v) > 0 {
                    self.parent[v] = u;
                    if v == self.sink {
                        let mut bottleneck = u64::MAX;
                        let mut w = v;
                        while w != self.source {
                            let p = self.parent[w];
                            bottleneck = bottleneck.min(self.residual(p, w));
                            w = p;
                        }
                        return Some(bottleneck);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

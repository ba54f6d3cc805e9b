//! Max-flow, residual networks and the one-more-unit test.
//!
//! Flows are computed with Dinic's blocking-flow method. Arcs are scanned in
//! ascending id order at every node, so the returned flow is a deterministic
//! function of the network and the capacity vector.

use std::collections::VecDeque;

use thiserror::Error;

use crate::network::{ArcId, Network, StateVector};

/// A feasible integer flow on a network under a capacity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowState<'a> {
    net: &'a Network,
    capacities: StateVector,
    flows: Vec<u64>,
    value: u64,
}

impl<'a> FlowState<'a> {
    pub fn network(&self) -> &'a Network {
        self.net
    }

    pub fn capacities(&self) -> &StateVector {
        &self.capacities
    }

    /// Per-arc flow, indexed by `ArcId::index`.
    pub fn flows(&self) -> &[u64] {
        &self.flows
    }

    /// Net outflow of the source.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Reinterprets this flow under new capacities. Returns `None` if some
    /// arc would carry more than its new capacity.
    pub fn with_capacities(&self, capacities: StateVector) -> Option<FlowState<'a>> {
        if capacities.len() != self.flows.len()
            || self
                .flows
                .iter()
                .zip(capacities.values())
                .any(|(f, c)| f > c)
        {
            return None;
        }
        Some(FlowState {
            net: self.net,
            capacities,
            flows: self.flows.clone(),
            value: self.value,
        })
    }

    /// True iff the sink is reachable from the source in the residual graph:
    /// forward along arcs with `f < x`, backward along arcs with `f > 0`.
    pub fn residual_reachable(&self) -> bool {
        self.search(None)
    }

    /// [`residual_reachable`](Self::residual_reachable) under the capacities
    /// `X + 0(e_i)`, without rebuilding the state. The current flow stays
    /// feasible since capacities only grow.
    pub fn residual_reachable_after_bump(&self, arc: ArcId) -> bool {
        self.search(Some(arc.index()))
    }

    fn search(&self, bumped: Option<usize>) -> bool {
        let net = self.net;
        let (source, sink) = (net.source().index(), net.sink().index());
        let caps = self.capacities.values();
        let mut seen = vec![false; net.node_count()];
        let mut stack = vec![source];
        seen[source] = true;
        while let Some(u) = stack.pop() {
            if u == sink {
                return true;
            }
            for &(i, outgoing) in net.incidence(u) {
                let arc = &net.arcs()[i];
                let (open, v) = if outgoing {
                    let cap = caps[i] + u64::from(bumped == Some(i));
                    (self.flows[i] < cap, arc.head.index())
                } else {
                    (self.flows[i] > 0, arc.tail.index())
                };
                if open && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Checks capacity bounds and conservation; used by tests.
    pub fn is_feasible(&self) -> bool {
        let net = self.net;
        let caps = self.capacities.values();
        if self.flows.iter().zip(caps).any(|(f, c)| f > c) {
            return false;
        }
        let mut balance = vec![0i128; net.node_count()];
        for (arc, &f) in net.arcs().iter().zip(&self.flows) {
            balance[arc.tail.index()] -= f as i128;
            balance[arc.head.index()] += f as i128;
        }
        let (s, t) = (net.source().index(), net.sink().index());
        balance
            .iter()
            .enumerate()
            .all(|(v, &b)| v == s || v == t || b == 0)
            && -balance[s] == self.value as i128
    }
}

pub fn residual_reachable(fs: &FlowState<'_>) -> bool {
    fs.residual_reachable()
}

/// A maximum flow under capacities `x`.
///
/// `x` must have one component per arc; it may exceed `W` componentwise.
pub fn max_flow<'a>(net: &'a Network, x: &StateVector) -> FlowState<'a> {
    push_flow(net, x, u64::MAX)
}

/// A flow of value `min(limit, W(x))` under capacities `x`.
pub fn push_flow<'a>(net: &'a Network, x: &StateVector, limit: u64) -> FlowState<'a> {
    assert_eq!(x.len(), net.arc_count(), "capacity vector length");
    let mut dinic = Dinic::new(net, x.values());
    let value = dinic.run(limit);
    FlowState {
        net,
        capacities: x.clone(),
        flows: dinic.flows,
        value,
    }
}

/// `W(x)`.
pub fn flow_value(net: &Network, x: &StateVector) -> u64 {
    max_flow(net, x).value
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("W(X) = {actual}, but the test requires W(X) = {demand}")]
    DemandMismatch { demand: u64, actual: u64 },
    #[error("arc {0} is already at max capacity")]
    Saturated(ArcId),
}

/// Decides `W(X + 0(e_i)) > d` for a vector with `W(X) = d`, by pushing `d`
/// units under the bumped capacities and searching the residual graph.
///
/// Refuses to answer when `W(X) != d`: without that hypothesis a residual
/// path says nothing about the level `d`.
pub fn check_one_more_unit(
    net: &Network,
    x: &StateVector,
    d: u64,
    arc: ArcId,
) -> Result<bool, ContractError> {
    let actual = flow_value(net, x);
    if actual != d {
        return Err(ContractError::DemandMismatch { demand: d, actual });
    }
    let bumped = net
        .bump(x, arc)
        .map_err(|_| ContractError::Saturated(arc))?;
    let fs = push_flow(net, &bumped, d);
    debug_assert_eq!(fs.value(), d);
    Ok(fs.residual_reachable())
}

struct Dinic<'n> {
    net: &'n Network,
    caps: &'n [u64],
    flows: Vec<u64>,
    level: Vec<u32>,
    next: Vec<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl<'n> Dinic<'n> {
    fn new(net: &'n Network, caps: &'n [u64]) -> Self {
        Dinic {
            net,
            caps,
            flows: vec![0; caps.len()],
            level: vec![UNSEEN; net.node_count()],
            next: vec![0; net.node_count()],
        }
    }

    /// Residual capacity and far endpoint of an incidence entry.
    #[inline]
    fn step(&self, i: usize, outgoing: bool) -> (u64, usize) {
        let arc = &self.net.arcs()[i];
        if outgoing {
            (self.caps[i] - self.flows[i], arc.head.index())
        } else {
            (self.flows[i], arc.tail.index())
        }
    }

    fn run(&mut self, limit: u64) -> u64 {
        let (s, t) = (self.net.source().index(), self.net.sink().index());
        let mut total = 0u64;
        while total < limit && self.build_levels(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let pushed = self.augment(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total == limit {
                    break;
                }
            }
        }
        total
    }

    fn build_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(i, outgoing) in self.net.incidence(u) {
                let (residual, v) = self.step(i, outgoing);
                if residual > 0 && self.level[v] == UNSEEN {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    fn augment(&mut self, u: usize, t: usize, bound: u64) -> u64 {
        if u == t {
            return bound;
        }
        while self.next[u] < self.net.incidence(u).len() {
            let (i, outgoing) = self.net.incidence(u)[self.next[u]];
            let (residual, v) = self.step(i, outgoing);
            if residual > 0 && self.level[v] == self.level[u] + 1 {
                let pushed = self.augment(v, t, bound.min(residual));
                if pushed > 0 {
                    if outgoing {
                        self.flows[i] += pushed;
                    } else {
                        self.flows[i] -= pushed;
                    }
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        0
    }
}

//! Brute-force ground truth.
//!
//! Everything here works straight from definitions over the full state box
//! `[0, W]`, with its own max-flow routine. It is slow by construction and
//! refuses inputs beyond [`MAX_STATES`] states instead of sampling.

mod augment;
mod reliability;

use thiserror::Error;

use crate::error::NetworkError;
use crate::network::{Network, StateVector};

pub use reliability::{reliability_from_dmcs, Threshold, MAX_INCLUSION_EXCLUSION_VECTORS};

use augment::DenseFlow;

pub const MAX_STATES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space has {states} states, above the limit of {limit}")]
    StateSpaceTooLarge { states: String, limit: u64 },
    #[error("{count} d-MCs exceed the inclusion-exclusion limit of {limit}")]
    TooManyDmcs { count: usize, limit: usize },
    #[error("no d-MCs given; Pr[W(X) <= d] is not determined")]
    EmptyDmcs,
    #[error("d-MC vectors have inconsistent lengths")]
    RaggedDmcs,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// `W(X)` for every `X` in the state box, indexed in lexicographic order.
pub struct FlowTable {
    max: Vec<u64>,
    strides: Vec<usize>,
    values: Vec<u64>,
}

impl FlowTable {
    pub fn build(net: &Network) -> Result<Self, OracleError> {
        let states = match net.state_space_size() {
            Some(s) if s <= MAX_STATES => s as usize,
            Some(s) => {
                return Err(OracleError::StateSpaceTooLarge {
                    states: s.to_string(),
                    limit: MAX_STATES,
                })
            }
            None => {
                return Err(OracleError::StateSpaceTooLarge {
                    states: "more than 2^64".into(),
                    limit: MAX_STATES,
                })
            }
        };
        let max: Vec<u64> = net.arcs().iter().map(|a| a.max_capacity).collect();
        let m = max.len();
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (max[i + 1] as usize + 1);
        }

        let mut flow = DenseFlow::new(net);
        let mut values = Vec::with_capacity(states);
        let mut x = vec![0u64; m];
        for _ in 0..states {
            values.push(flow.value(&x));
            // odometer, last component fastest
            for i in (0..m).rev() {
                if x[i] < max[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
            }
        }
        Ok(FlowTable {
            max,
            strides,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as usize * s)
            .sum()
    }

    fn state_at(&self, mut index: usize) -> StateVector {
        let values = self
            .strides
            .iter()
            .map(|&s| {
                let v = index / s;
                index %= s;
                v as u64
            })
            .collect();
        StateVector::new(values)
    }

    /// `W(X)`; `x` must lie in the box.
    pub fn flow(&self, x: &StateVector) -> u64 {
        self.values[self.index_of(x.values())]
    }

    /// Every state with its max-flow value, in lexicographic order.
    pub fn states(&self) -> impl Iterator<Item = (StateVector, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &w)| (self.state_at(i), w))
    }

    /// The d-MC definition applied literally to every state.
    pub fn dmcs(&self, d: u64) -> Vec<StateVector> {
        let mut out = Vec::new();
        for (index, &w) in self.values.iter().enumerate() {
            if w != d {
                continue;
            }
            let x = self.state_at(index);
            let maximal = x
                .values()
                .iter()
                .zip(&self.max)
                .zip(&self.strides)
                .all(|((&v, &cap), &stride)| v == cap || self.values[index + stride] > d);
            if maximal {
                out.push(x);
            }
        }
        out
    }

    pub fn max_flow_of_saturated(&self) -> u64 {
        self.values.last().copied().unwrap_or(0)
    }
}

/// All d-MCs by exhaustive search, sorted lexicographically.
pub fn brute_force_dmcs(net: &Network, d: u64) -> Result<Vec<StateVector>, OracleError> {
    Ok(FlowTable::build(net)?.dmcs(d))
}

/// `Pr[W(X) >= d]` (or `> d`) by summing the mass of every qualifying state.
pub fn reliability_exhaustive(
    net: &Network,
    dist: &crate::network::EdgeDistribution,
    d: u64,
    threshold: Threshold,
) -> Result<f64, OracleError> {
    if dist.pmfs().len() != net.arc_count() {
        return Err(NetworkError::LengthMismatch {
            expected: net.arc_count(),
            got: dist.pmfs().len(),
        }
        .into());
    }
    let table = FlowTable::build(net)?;
    Ok(reliability::exhaustive_from_table(
        &table, dist, d, threshold,
    ))
}

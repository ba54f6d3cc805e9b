//! Deciding whether a candidate is a real d-MC.
//!
//! `X` is a d-MC iff `W(X) = d` and `W(X + 0(e_i)) > d` for every unsaturated
//! arc `e_i`. Given `W(X) = d`, the second clause holds for `e_i` iff the
//! residual network left by `d` units of flow under `X + 0(e_i)` still has a
//! source-to-sink path. [`verify`] applies exactly that test.
//!
//! [`verify_flawed`] applies the older published criterion, which asks for a
//! source-to-sink path in the network `X + 0(e_i)` and never checks
//! `W(X) = d`. It accepts vectors that are not d-MCs and exists to
//! reproduce that failure.

use serde::{Deserialize, Serialize};

use crate::maxflow::{max_flow, push_flow, FlowState};
use crate::network::{ArcId, Network, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Corrected,
    PathOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub is_dmc: bool,
    /// `W(X)`.
    pub flow_value: u64,
    /// Lowest-indexed unsaturated arc whose test failed.
    pub failing_arc: Option<ArcId>,
    pub mode: VerifyMode,
}

impl Verdict {
    fn reject(flow_value: u64, failing_arc: Option<ArcId>, mode: VerifyMode) -> Self {
        Verdict {
            is_dmc: false,
            flow_value,
            failing_arc,
            mode,
        }
    }

    fn accept(flow_value: u64, mode: VerifyMode) -> Self {
        Verdict {
            is_dmc: true,
            flow_value,
            failing_arc: None,
            mode,
        }
    }
}

pub fn verify(net: &Network, x: &StateVector, d: u64) -> Verdict {
    let fs = max_flow(net, x);
    let mut searches = 0;
    verify_with_flow(&fs, d, &mut searches)
}

/// [`verify`] starting from a maximum flow of `X`, so each unsaturated arc
/// costs one residual search. Stops at the first failing arc. Adds the
/// number of searches performed to `searches`.
pub fn verify_with_flow(fs: &FlowState<'_>, d: u64, searches: &mut u64) -> Verdict {
    let mode = VerifyMode::Corrected;
    let value = fs.value();
    if value != d {
        return Verdict::reject(value, None, mode);
    }
    let net = fs.network();
    for arc in net.unsaturated_set(fs.capacities()) {
        *searches += 1;
        if !fs.residual_reachable_after_bump(arc) {
            return Verdict::reject(value, Some(arc), mode);
        }
    }
    Verdict::accept(value, mode)
}

/// The published criterion, as stated: accept iff for every unsaturated arc
/// there is a source-to-sink path in the network with capacities
/// `X + 0(e_i)`. No flow is pushed before the search and `W(X)` is only
/// reported, never compared with `d`.
pub fn verify_flawed(net: &Network, x: &StateVector, _demand: u64) -> Verdict {
    let mode = VerifyMode::PathOnly;
    let value = max_flow(net, x).value();
    for arc in net.unsaturated_set(x) {
        let empty = push_flow(net, &x.bumped(arc), 0);
        if !empty.residual_reachable() {
            return Verdict::reject(value, Some(arc), mode);
        }
    }
    Verdict::accept(value, mode)
}

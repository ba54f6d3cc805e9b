//! All d-MCs of a network from its minimal cuts.
//!
//! For each cut the solver streams the candidates at level `d`, computes one
//! maximum flow per candidate, drops candidates with `W(X) != d`, and checks
//! each unsaturated arc with a residual search on that same flow. Vectors
//! reached from several cuts are reported once.
//!
//! No flow value is carried over from one candidate to the next: the max-flow
//! count is bounded by the total number of candidates, not by the number of
//! cuts.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::candidates::{count_candidates, enumerate_candidates};
use crate::cuts::MinCut;
use crate::maxflow::max_flow;
use crate::network::{Network, StateVector};
use crate::verify::verify_with_flow;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub maxflow_calls: u64,
    pub candidates_total: u64,
    pub candidates_per_cut: Vec<u64>,
    pub residual_searches: u64,
    /// Candidates that passed Step 4 (`W(X) = d`).
    pub flow_matches: u64,
    pub verified: u64,
    pub duplicates_removed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub d: u64,
    /// Number of arcs.
    pub m: usize,
    /// Number of nodes.
    pub n: usize,
    /// Number of minimal cuts.
    pub p: usize,
    /// Largest per-cut candidate count.
    pub sigma_max: u64,
    /// Sum of per-cut candidate counts.
    pub sigma_sum: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Diagnostic {
    /// Nothing survived the `W(X) = d` filter, which happens exactly when
    /// `d` exceeds the max flow of the saturated network.
    DemandExceedsMaxFlow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Strictly increasing in lexicographic order.
    pub dmcs: Vec<StateVector>,
    pub counters: Counters,
    pub parameters: Parameters,
    pub diagnostic: Option<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no minimal cuts were supplied")]
    NoCuts,
    #[error("cut {index} refers to arcs outside the network")]
    ForeignCut { index: usize },
}

#[derive(Default)]
struct CutOutcome {
    candidates: u64,
    maxflow_calls: u64,
    residual_searches: u64,
    flow_matches: u64,
    accepted: Vec<StateVector>,
}

fn process_cut(net: &Network, cut: &MinCut, cut_index: usize, d: u64) -> CutOutcome {
    let mut out = CutOutcome::default();
    for candidate in enumerate_candidates(net, cut, cut_index, d) {
        out.candidates += 1;
        let fs = max_flow(net, &candidate.vector);
        out.maxflow_calls += 1;
        if fs.value() != d {
            continue;
        }
        out.flow_matches += 1;
        if verify_with_flow(&fs, d, &mut out.residual_searches).is_dmc {
            out.accepted.push(candidate.vector);
        }
    }
    out
}

/// Runs the cut-by-cut search. Cuts are processed in parallel; the report
/// does not depend on scheduling.
pub fn find_all_dmcs(net: &Network, d: u64, cuts: &[MinCut]) -> Result<SolveReport, SolveError> {
    if cuts.is_empty() {
        return Err(SolveError::NoCuts);
    }
    if let Some(index) = cuts
        .iter()
        .position(|c| c.arcs().iter().any(|a| net.arc(*a).is_none()))
    {
        return Err(SolveError::ForeignCut { index });
    }

    let outcomes: Vec<CutOutcome> = cuts
        .par_iter()
        .enumerate()
        .map(|(i, cut)| process_cut(net, cut, i, d))
        .collect();

    let sigmas: Vec<u64> = cuts.iter().map(|c| count_candidates(net, c, d)).collect();
    let mut counters = Counters::default();
    let mut dmcs = BTreeSet::new();
    for outcome in outcomes {
        counters.maxflow_calls += outcome.maxflow_calls;
        counters.candidates_total += outcome.candidates;
        counters.candidates_per_cut.push(outcome.candidates);
        counters.residual_searches += outcome.residual_searches;
        counters.flow_matches += outcome.flow_matches;
        counters.verified += outcome.accepted.len() as u64;
        for x in outcome.accepted {
            if !dmcs.insert(x) {
                counters.duplicates_removed += 1;
            }
        }
    }

    let diagnostic = (counters.flow_matches == 0).then_some(Diagnostic::DemandExceedsMaxFlow);
    Ok(SolveReport {
        dmcs: dmcs.into_iter().collect(),
        counters,
        parameters: Parameters {
            d,
            m: net.arc_count(),
            n: net.node_count(),
            p: cuts.len(),
            sigma_max: sigmas.iter().copied().max().unwrap_or(0),
            sigma_sum: sigmas.iter().fold(0u64, |a, &s| a.saturating_add(s)),
        },
        diagnostic,
    })
}

/// Checks the operation counts against the worst-case accounting: at most
/// one max-flow per candidate (`sum_i sigma_i`, hence `p * sigma_max`) and
/// at most `m` residual searches per candidate.
pub fn audit_complexity(report: &SolveReport) -> bool {
    let c = &report.counters;
    let p = &report.parameters;
    let loose = (p.p as u64).saturating_mul(p.sigma_max);
    c.maxflow_calls <= c.candidates_total
        && c.candidates_total <= p.sigma_sum
        && p.sigma_sum <= loose
        && c.maxflow_calls <= loose
        && c.residual_searches <= (p.m as u64).saturating_mul(c.candidates_total)
        && c.candidates_per_cut.iter().sum::<u64>() == c.candidates_total
}

//! Enumeration of d-MinCuts (d-MCs) in stochastic-flow networks.
//!
//! A d-MC is a maximal system-state vector whose max flow is exactly `d`:
//! raising any non-saturated arc by one unit pushes the max flow above `d`.
//! The d-MCs are the upper boundary points of `{X : W(X) <= d}` and give
//! `Pr[W(X) <= d]` by inclusion-exclusion.
//!
//! The pipeline: [`cuts`] lists the minimal cuts, [`candidates`] expands each
//! cut into state vectors at level `d`, [`verify`] keeps the real d-MCs, and
//! [`solver`] ties them together with operation counters. [`oracle`] is an
//! independent brute-force reference for all of it.

pub mod candidates;
pub mod cuts;
pub mod error;
pub mod generate;
pub mod maxflow;
pub mod network;
pub mod oracle;
pub mod solver;
pub mod verify;

pub use candidates::{count_candidates, enumerate_candidates, Candidate};
pub use cuts::{enumerate_min_cuts, is_min_cut, MinCut};
pub use error::{NetworkError, ParseError};
pub use maxflow::{check_one_more_unit, max_flow, FlowState};
pub use network::{
    parse_network, parse_network_file, ArcId, EdgeDistribution, Network, NodeId, StateVector,
};
pub use oracle::{brute_force_dmcs, reliability_exhaustive, reliability_from_dmcs, Threshold};
pub use solver::{audit_complexity, find_all_dmcs, SolveReport};
pub use verify::{verify, verify_flawed, Verdict, VerifyMode};

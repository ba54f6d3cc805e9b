//! Minimal s-t cuts: enumeration, membership test and the cut file format
//! (`cut <id> <arc_id> <arc_id> ...`, one cut per line).
//!
//! Cuts are structural: an arc with zero max capacity still connects its
//! endpoints.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{NetworkError, ParseError};
use crate::network::{content_lines, number, ArcId, Network};

/// Vertex-subset enumeration visits `2^(n-2)` sets; beyond this it refuses.
pub const MAX_ENUMERATION_NODES: usize = 24;

/// A minimal set of arcs separating source from sink, sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinCut(Vec<ArcId>);

impl MinCut {
    /// Sorts and deduplicates; does not check minimality.
    pub fn new(mut arcs: Vec<ArcId>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        MinCut(arcs)
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arc: ArcId) -> bool {
        self.0.binary_search(&arc).is_ok()
    }

    /// Max capacities of the cut arcs, in arc order.
    pub fn capacities(&self, net: &Network) -> Vec<u64> {
        self.0.iter().map(|&a| net.max_capacity(a)).collect()
    }

    /// Canonical order: by size, then lexicographically by arc ids.
    fn canonical_key(&self) -> (usize, &[ArcId]) {
        (self.0.len(), &self.0)
    }
}

impl PartialOrd for MinCut {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MinCut {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl fmt::Display for MinCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("the sink is unreachable from the source even with every arc present; no minimal cut exists")]
    Disconnected,
    #[error("{0} nodes exceeds the enumeration limit of {MAX_ENUMERATION_NODES}")]
    TooManyNodes(usize),
    #[error("cut {index} ({cut}) is not a minimal cut")]
    NotMinimal { index: usize, cut: MinCut },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Source-to-sink reachability with the arcs flagged in `removed` deleted.
fn connected_without(net: &Network, removed: &[bool]) -> bool {
    let (s, t) = (net.source().index(), net.sink().index());
    let mut seen = vec![false; net.node_count()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for &(i, outgoing) in net.incidence(u) {
            if outgoing && !removed[i] {
                let v = net.arcs()[i].head.index();
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    false
}

/// True iff removing `arcs` disconnects the sink from the source and no
/// proper subset does. The empty set never qualifies.
pub fn is_min_cut(net: &Network, arcs: &[ArcId]) -> bool {
    if arcs.is_empty() || arcs.iter().any(|a| net.arc(*a).is_none()) {
        return false;
    }
    let mut removed = vec![false; net.arc_count()];
    for a in arcs {
        removed[a.index()] = true;
    }
    if connected_without(net, &removed) {
        return false;
    }
    // Cuts are upward closed, so checking the maximal proper subsets suffices.
    let distinct: BTreeSet<ArcId> = arcs.iter().copied().collect();
    if distinct.len() != arcs.len() {
        return false;
    }
    distinct.iter().all(|a| {
        removed[a.index()] = false;
        let restored = connected_without(net, &removed);
        removed[a.index()] = true;
        restored
    })
}

/// All minimal s-t cuts in canonical order.
///
/// Every minimal cut is the set of arcs leaving some node set that contains
/// the source but not the sink, so scanning those node sets and keeping the
/// minimal arc sets is exhaustive. Cost is exponential in the node count.
pub fn enumerate_min_cuts(net: &Network) -> Result<Vec<MinCut>, CutError> {
    let n = net.node_count();
    if n > MAX_ENUMERATION_NODES {
        return Err(CutError::TooManyNodes(n));
    }
    if !connected_without(net, &vec![false; net.arc_count()]) {
        return Err(CutError::Disconnected);
    }
    let (s, t) = (net.source().index(), net.sink().index());
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();

    let mut found: BTreeSet<MinCut> = BTreeSet::new();
    let mut seen: BTreeSet<Vec<ArcId>> = BTreeSet::new();
    let mut inside = vec![false; n];
    for mask in 0u64..(1u64 << free.len()) {
        inside.iter_mut().for_each(|b| *b = false);
        inside[s] = true;
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                inside[v] = true;
            }
        }
        let leaving: Vec<ArcId> = net
            .arcs()
            .iter()
            .filter(|a| inside[a.tail.index()] && !inside[a.head.index()])
            .map(|a| a.id)
            .collect();
        if seen.insert(leaving.clone()) && is_min_cut(net, &leaving) {
            found.insert(MinCut(leaving));
        }
    }
    Ok(found.into_iter().collect())
}

/// Reads a cut file and checks each listed set is a minimal cut of `net`.
/// Cut ids are labels only; file order is kept.
pub fn parse_cut_file(net: &Network, text: &str) -> Result<Vec<MinCut>, CutError> {
    let mut cuts = Vec::new();
    for (line_no, tokens) in content_lines(text) {
        if tokens[0] != "cut" || tokens.len() < 3 {
            return Err(ParseError::syntax(line_no, "expected `cut <id> <arc_id> ...`").into());
        }
        let _label: usize = number(tokens[1], line_no)?;
        let mut arcs = Vec::with_capacity(tokens.len() - 2);
        for tok in &tokens[2..] {
            let id = ArcId(number(tok, line_no)?);
            if net.arc(id).is_none() {
                return Err(ParseError::from(NetworkError::UnknownArc(id)).into());
            }
            arcs.push(id);
        }
        let cut = MinCut::new(arcs);
        if !is_min_cut(net, cut.arcs()) {
            return Err(CutError::NotMinimal {
                index: cuts.len() + 1,
                cut,
            });
        }
        cuts.push(cut);
    }
    Ok(cuts)
}

/// Writes cuts as `cut <k> <arc ids>` with `k` counting from 1.
pub fn format_cut_file(cuts: &[MinCut]) -> String {
    let mut out = String::new();
    for (k, cut) in cuts.iter().enumerate() {
        out.push_str(&format!("cut {}", k + 1));
        for a in cut.arcs() {
            out.push_str(&format!(" {}", a.0));
        }
        out.push('\n');
    }
    out
}

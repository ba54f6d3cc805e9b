//! Directed capacitated networks, system-state vectors and the text format
//! used to store them.
//!
//! A network file is line oriented; `#` starts a comment:
//!
//! ```text
//! nodes 4 source 1 sink 4
//! edge 1 1 2 4
//! edge 2 1 3 2
//! prob 1 0.1 0.2 0.3 0.2 0.2
//! ```
//!
//! `edge <id> <tail> <head> <max_capacity>` declares arc `id`; ids must be
//! exactly `1..=m`. `prob <id> <p0> ... <pW>` optionally gives the
//! probability of each capacity state of an arc. Either every arc has a
//! `prob` line or none does.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{NetworkError, ParseError};

/// 1-based arc index, `e_i` in the usual notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl ArcId {
    /// Zero-based position in arc-indexed vectors.
    #[inline]
    pub fn index(self) -> usize {
        self.0 - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        ArcId(index + 1)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// 1-based node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub tail: NodeId,
    pub head: NodeId,
    pub max_capacity: u64,
}

/// A stochastic-flow network `G(V, E, W)`.
///
/// Arcs are directed. Parallel and anti-parallel arcs are allowed, self-loops
/// are not. The network is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    node_count: usize,
    source: NodeId,
    sink: NodeId,
    arcs: Vec<Arc>,
    // Per node: (arc index, outgoing?) in ascending arc order.
    incidence: Vec<Vec<(usize, bool)>>,
}

impl Network {
    /// Builds a network from `(tail, head, max_capacity)` triples; the i-th
    /// triple becomes arc `e_{i+1}`.
    pub fn new(
        node_count: usize,
        source: usize,
        sink: usize,
        arcs: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self, NetworkError> {
        let arcs = arcs
            .into_iter()
            .enumerate()
            .map(|(i, (tail, head, max_capacity))| Arc {
                id: ArcId::from_index(i),
                tail: NodeId(tail),
                head: NodeId(head),
                max_capacity,
            })
            .collect();
        Self::from_arcs(node_count, NodeId(source), NodeId(sink), arcs)
    }

    fn from_arcs(
        node_count: usize,
        source: NodeId,
        sink: NodeId,
        arcs: Vec<Arc>,
    ) -> Result<Self, NetworkError> {
        if node_count < 2 {
            return Err(NetworkError::TooFewNodes(node_count));
        }
        let check_node = |node: NodeId| {
            if node.0 == 0 || node.0 > node_count {
                Err(NetworkError::NodeOutOfRange { node, node_count })
            } else {
                Ok(())
            }
        };
        check_node(source)?;
        check_node(sink)?;
        if source == sink {
            return Err(NetworkError::SourceIsSink(source));
        }
        let mut total: u64 = 0;
        for (i, arc) in arcs.iter().enumerate() {
            debug_assert_eq!(arc.id.index(), i);
            check_node(arc.tail)?;
            check_node(arc.head)?;
            if arc.tail == arc.head {
                return Err(NetworkError::SelfLoop(arc.id));
            }
            total = total
                .checked_add(arc.max_capacity)
                .ok_or(NetworkError::CapacityOverflow)?;
        }
        let mut incidence = vec![Vec::new(); node_count];
        for (i, arc) in arcs.iter().enumerate() {
            incidence[arc.tail.index()].push((i, true));
            incidence[arc.head.index()].push((i, false));
        }
        Ok(Network {
            node_count,
            source,
            sink,
            arcs,
            incidence,
        })
    }

    /// The network of the four-node example shipped as `fixtures/fig1.net`.
    pub fn figure_one() -> Self {
        FIGURE_ONE
            .parse()
            .expect("bundled fixture is a valid network")
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub(crate) fn incidence(&self, node: usize) -> &[(usize, bool)] {
        &self.incidence[node]
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        id.0.checked_sub(1).and_then(|i| self.arcs.get(i))
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.iter().map(|a| a.id)
    }

    pub fn max_capacity(&self, id: ArcId) -> u64 {
        self.arcs[id.index()].max_capacity
    }

    /// The all-max vector `W`.
    pub fn saturated_vector(&self) -> StateVector {
        StateVector(self.arcs.iter().map(|a| a.max_capacity).collect())
    }

    pub fn zero_vector(&self) -> StateVector {
        StateVector(vec![0; self.arcs.len()])
    }

    /// Number of states in the box `[0, W]`, or `None` on overflow.
    pub fn state_space_size(&self) -> Option<u64> {
        self.arcs.iter().try_fold(1u64, |acc, a| {
            acc.checked_mul(a.max_capacity.checked_add(1)?)
        })
    }

    pub fn check_state(&self, x: &StateVector) -> Result<(), NetworkError> {
        if x.len() != self.arcs.len() {
            return Err(NetworkError::LengthMismatch {
                expected: self.arcs.len(),
                got: x.len(),
            });
        }
        for (arc, &value) in self.arcs.iter().zip(x.values()) {
            if value > arc.max_capacity {
                return Err(NetworkError::ExceedsCapacity {
                    arc: arc.id,
                    value,
                    max: arc.max_capacity,
                });
            }
        }
        Ok(())
    }

    /// `U(X)`: arcs running below their max capacity, in ascending id order.
    pub fn unsaturated_set(&self, x: &StateVector) -> Vec<ArcId> {
        self.arcs
            .iter()
            .zip(x.values())
            .filter(|(arc, &value)| value < arc.max_capacity)
            .map(|(arc, _)| arc.id)
            .collect()
    }

    /// `X + 0(e_i)`. Fails if the result would exceed `W(e_i)`; use
    /// [`StateVector::bumped`] when that is intended.
    pub fn bump(&self, x: &StateVector, arc: ArcId) -> Result<StateVector, NetworkError> {
        let max = self
            .arc(arc)
            .ok_or(NetworkError::UnknownArc(arc))?
            .max_capacity;
        let value = x.get(arc) + 1;
        if value > max {
            return Err(NetworkError::ExceedsCapacity { arc, value, max });
        }
        Ok(x.bumped(arc))
    }
}

const FIGURE_ONE: &str = include_str!("../../../fixtures/fig1.net");

impl fmt::Display for Network {
    /// Writes the network in the file format accepted by [`parse_network`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "nodes {} source {} sink {}",
            self.node_count, self.source, self.sink
        )?;
        for arc in &self.arcs {
            writeln!(
                f,
                "edge {} {} {} {}",
                arc.id.0, arc.tail, arc.head, arc.max_capacity
            )?;
        }
        Ok(())
    }
}

impl FromStr for Network {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_network(s)
    }
}

/// A system-state vector `X = (x_1, ..., x_m)`.
///
/// Ordering is lexicographic over the components. Validity against a
/// particular network is checked with [`Network::check_state`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(Vec<u64>);

impl StateVector {
    pub fn new(values: Vec<u64>) -> Self {
        StateVector(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, arc: ArcId) -> u64 {
        self.0[arc.index()]
    }

    /// Copy with component `arc` raised by one, without any capacity check.
    pub fn bumped(&self, arc: ArcId) -> StateVector {
        let mut values = self.0.clone();
        values[arc.index()] += 1;
        StateVector(values)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &StateVector) -> StateVector {
        StateVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &StateVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u64>> for StateVector {
    fn from(values: Vec<u64>) -> Self {
        StateVector(values)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Independent per-arc probability mass functions over `0..=W(e_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDistribution {
    pmfs: Vec<Vec<f64>>,
}

const PMF_TOLERANCE: f64 = 1e-12;

impl EdgeDistribution {
    pub fn new(net: &Network, pmfs: Vec<Vec<f64>>) -> Result<Self, NetworkError> {
        if pmfs.len() != net.arc_count() {
            return Err(NetworkError::LengthMismatch {
                expected: net.arc_count(),
                got: pmfs.len(),
            });
        }
        for (arc, pmf) in net.arcs().iter().zip(&pmfs) {
            let bad = |reason: String| NetworkError::BadDistribution {
                arc: arc.id,
                reason,
            };
            if pmf.len() as u64 != arc.max_capacity + 1 {
                return Err(bad(format!(
                    "expected {} masses, got {}",
                    arc.max_capacity + 1,
                    pmf.len()
                )));
            }
            if let Some(p) = pmf.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(bad(format!("mass {p} is not a probability")));
            }
            let total: f64 = pmf.iter().sum();
            if (total - 1.0).abs() > PMF_TOLERANCE {
                return Err(bad(format!("masses sum to {total}")));
            }
        }
        Ok(EdgeDistribution { pmfs })
    }

    /// Every capacity state of every arc equally likely.
    pub fn uniform(net: &Network) -> Self {
        let pmfs = net
            .arcs()
            .iter()
            .map(|a| {
                let states = a.max_capacity as usize + 1;
                vec![1.0 / states as f64; states]
            })
            .collect();
        EdgeDistribution { pmfs }
    }

    pub fn pmf(&self, arc: ArcId) -> &[f64] {
        &self.pmfs[arc.index()]
    }

    pub fn pmfs(&self) -> &[Vec<f64>] {
        &self.pmfs
    }

    /// `Pr[x_i <= value]`.
    pub fn cdf(&self, arc: ArcId, value: u64) -> f64 {
        let pmf = &self.pmfs[arc.index()];
        let upto = (value as usize).min(pmf.len() - 1);
        pmf[..=upto].iter().sum()
    }

    /// Probability of one exact state under independence.
    pub fn state_probability(&self, x: &StateVector) -> f64 {
        self.pmfs
            .iter()
            .zip(x.values())
            .map(|(pmf, &v)| pmf[v as usize])
            .product()
    }
}

/// Parsed content of a network file.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkFile {
    pub network: Network,
    pub distribution: Option<EdgeDistribution>,
}

impl NetworkFile {
    /// Renders the network and, if present, its `prob` lines.
    pub fn to_text(&self) -> String {
        let mut out = self.network.to_string();
        if let Some(dist) = &self.distribution {
            for (i, pmf) in dist.pmfs().iter().enumerate() {
                out.push_str(&format!("prob {}", i + 1));
                for p in pmf {
                    out.push_str(&format!(" {p}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    parse_network_file(text).map(|f| f.network)
}

pub fn parse_network_file(text: &str) -> Result<NetworkFile, ParseError> {
    let mut header: Option<(usize, NodeId, NodeId)> = None;
    let mut arcs: BTreeMap<usize, Arc> = BTreeMap::new();
    let mut probs: BTreeMap<usize, (usize, Vec<f64>)> = BTreeMap::new();

    for (line_no, tokens) in content_lines(text) {
        let err = |msg: String| ParseError::syntax(line_no, msg);
        match tokens[0] {
            "nodes" => {
                if header.is_some() {
                    return Err(err("duplicate `nodes` line".into()));
                }
                if tokens.len() != 6 || tokens[2] != "source" || tokens[4] != "sink" {
                    return Err(err("expected `nodes <n> source <s> sink <t>`".into()));
                }
                header = Some((
                    number(tokens[1], line_no)?,
                    NodeId(number(tokens[3], line_no)?),
                    NodeId(number(tokens[5], line_no)?),
                ));
            }
            "edge" => {
                if header.is_none() {
                    return Err(err("`edge` before the `nodes` line".into()));
                }
                if tokens.len() != 5 {
                    return Err(err(
                        "expected `edge <id> <tail> <head> <max_capacity>`".into()
                    ));
                }
                let id: usize = number(tokens[1], line_no)?;
                if id == 0 {
                    return Err(err("arc ids start at 1".into()));
                }
                let arc = Arc {
                    id: ArcId(id),
                    tail: NodeId(number(tokens[2], line_no)?),
                    head: NodeId(number(tokens[3], line_no)?),
                    max_capacity: number(tokens[4], line_no)?,
                };
                if arcs.insert(id, arc).is_some() {
                    return Err(NetworkError::DuplicateArc(ArcId(id)).into());
                }
            }
            "prob" => {
                if tokens.len() < 2 {
                    return Err(err("expected `prob <id> <p0> ... <pW>`".into()));
                }
                let id: usize = number(tokens[1], line_no)?;
                let masses = tokens[2..]
                    .iter()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| err(format!("`{t}` is not a probability")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if probs.insert(id, (line_no, masses)).is_some() {
                    return Err(err(format!("second `prob` line for arc {id}")));
                }
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let (node_count, source, sink) =
        header.ok_or_else(|| ParseError::syntax(1, "missing `nodes` line"))?;
    let expected_max = arcs.len();
    for (pos, &id) in arcs.keys().enumerate() {
        if id != pos + 1 {
            return Err(NetworkError::MissingArc {
                missing: ArcId(pos + 1),
                expected_max,
            }
            .into());
        }
    }
    let network = Network::from_arcs(node_count, source, sink, arcs.into_values().collect())?;

    let distribution = if probs.is_empty() {
        None
    } else {
        for (&id, (line_no, _)) in &probs {
            if id == 0 || id > network.arc_count() {
                return Err(ParseError::syntax(
                    *line_no,
                    format!("`prob` for unknown arc {id}"),
                ));
            }
        }
        if let Some(missing) = network.arc_ids().find(|a| !probs.contains_key(&a.0)) {
            return Err(NetworkError::BadDistribution {
                arc: missing,
                reason: "no `prob` line while other arcs have one".into(),
            }
            .into());
        }
        let pmfs = probs.into_values().map(|(_, masses)| masses).collect();
        Some(EdgeDistribution::new(&network, pmfs)?)
    };

    Ok(NetworkFile {
        network,
        distribution,
    })
}

/// Non-empty lines with comments stripped, split on whitespace.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn number<T: FromStr>(token: &str, line: usize) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("`{token}` is not a non-negative integer")))
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FlowTable, OracleError};
use crate::network::{ArcId, EdgeDistribution, StateVector};

/// Largest number of distinct d-MCs accepted by [`reliability_from_dmcs`].
pub const MAX_INCLUSION_EXCLUSION_VECTORS: usize = 20;

/// How the demand is compared with the max flow.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Threshold {
    /// `W(X) >= d`
    #[default]
    AtLeast,
    /// `W(X) > d`
    Strictly,
}

impl Threshold {
    fn admits(self, flow: u64, d: u64) -> bool {
        match self {
            Threshold::AtLeast => flow >= d,
            Threshold::Strictly => flow > d,
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Sum {
    total: f64,
    compensation: f64,
}

impl Sum {
    fn add(&mut self, value: f64) {
        let t = self.total + value;
        if self.total.abs() >= value.abs() {
            self.compensation += (self.total - t) + value;
        } else {
            self.compensation += (value - t) + self.total;
        }
        self.total = t;
    }

    fn value(&self) -> f64 {
        self.total + self.compensation
    }
}

pub(super) fn exhaustive_from_table(
    table: &FlowTable,
    dist: &EdgeDistribution,
    d: u64,
    threshold: Threshold,
) -> f64 {
    let mut sum = Sum::default();
    for (x, w) in table.states() {
        if threshold.admits(w, d) {
            sum.add(dist.state_probability(&x));
        }
    }
    sum.value()
}

/// `Pr[X <= Y_j for some j]` over the given d-MCs `Y_j`, which for a complete
/// d-MC set equals `Pr[W(X) <= d]`.
///
/// Exact inclusion-exclusion: the intersection of `{X <= Y}` events is the
/// event below the componentwise minimum, so terms are kept as a map from
/// meet vector to integer multiplicity and equal meets cancel before any
/// floating-point work. Duplicated input vectors are ignored.
pub fn reliability_from_dmcs(
    dmcs: &[StateVector],
    dist: &EdgeDistribution,
) -> Result<f64, OracleError> {
    let distinct: Vec<&StateVector> = {
        let mut v: Vec<&StateVector> = dmcs.iter().collect();
        v.sort();
        v.dedup();
        v
    };
    if distinct.is_empty() {
        return Err(OracleError::EmptyDmcs);
    }
    if distinct.len() > MAX_INCLUSION_EXCLUSION_VECTORS {
        return Err(OracleError::TooManyDmcs {
            count: distinct.len(),
            limit: MAX_INCLUSION_EXCLUSION_VECTORS,
        });
    }
    let m = dist.pmfs().len();
    if distinct.iter().any(|x| x.len() != m) {
        return Err(OracleError::RaggedDmcs);
    }

    // P(A_1 u ... u A_k) = P(A_1 u ... u A_{k-1}) + P(A_k) - P((A_1 u ...) n A_k)
    let mut terms: BTreeMap<StateVector, i64> = BTreeMap::new();
    for &y in &distinct {
        let mut next = terms.clone();
        for (meet_vec, &coef) in &terms {
            *next.entry(meet_vec.meet(y)).or_insert(0) -= coef;
        }
        *next.entry(y.clone()).or_insert(0) += 1;
        next.retain(|_, c| *c != 0);
        terms = next;
    }

    let mut sum = Sum::default();
    for (vector, coef) in &terms {
        let below: f64 = vector
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| dist.cdf(ArcId::from_index(i), v))
            .product();
        sum.add(*coef as f64 * below);
    }
    Ok(sum.value())
}

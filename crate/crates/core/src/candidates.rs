//! d-MC candidates: state vectors whose cut arcs sum to `d` within their max
//! capacities while every other arc sits at max capacity.

use crate::cuts::MinCut;
use crate::network::{Network, StateVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub vector: StateVector,
    /// Position of the originating cut in the solver's cut list.
    pub cut_index: usize,
    /// 1-based position within that cut's stream.
    pub ordinal: usize,
}

/// Bounded compositions of a total into parts `0 <= part_k <= caps[k]`,
/// yielded in lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    caps: Vec<u64>,
    current: Vec<u64>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(caps: Vec<u64>, total: u64) -> Self {
        let feasible = total <= caps.iter().fold(0u64, |a, &c| a.saturating_add(c));
        let mut current = vec![0; caps.len()];
        if feasible {
            fill_smallest(&caps, &mut current, 0, total);
        }
        Compositions {
            caps,
            current,
            started: false,
            // An empty part list has exactly one composition, of 0.
            done: !feasible,
        }
    }

    fn advance(&mut self) -> bool {
        let k = self.caps.len();
        if k < 2 {
            return false;
        }
        // Rightmost position that can grow by one unit taken from its suffix.
        let mut suffix_sum = self.current[k - 1];
        for j in (0..k - 1).rev() {
            if self.current[j] < self.caps[j] && suffix_sum > 0 {
                self.current[j] += 1;
                fill_smallest(&self.caps, &mut self.current, j + 1, suffix_sum - 1);
                return true;
            }
            suffix_sum += self.current[j];
        }
        false
    }
}

/// Lexicographically smallest way to place `amount` over `parts[from..]`:
/// push everything as far right as the caps allow.
fn fill_smallest(caps: &[u64], parts: &mut [u64], from: usize, mut amount: u64) {
    for k in (from..caps.len()).rev() {
        let take = caps[k].min(amount);
        parts[k] = take;
        amount -= take;
    }
    debug_assert_eq!(amount, 0);
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Lazily yields the d-MC candidates generated by `cut`.
#[derive(Debug, Clone)]
pub struct CandidateStream<'a> {
    net: &'a Network,
    cut: &'a MinCut,
    cut_index: usize,
    ordinal: usize,
    parts: Compositions,
}

impl Iterator for CandidateStream<'_> {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        let parts = self.parts.next()?;
        let mut values = self.net.saturated_vector().into_values();
        for (arc, v) in self.cut.arcs().iter().zip(parts) {
            values[arc.index()] = v;
        }
        self.ordinal += 1;
        Some(Candidate {
            vector: StateVector::new(values),
            cut_index: self.cut_index,
            ordinal: self.ordinal,
        })
    }
}

/// Every solution of `sum_{e in C} x_e = d`, `x_e <= W(e)` on the cut and
/// `x_e = W(e)` off it, once each, in lexicographic order of the cut
/// components. Empty when `d` exceeds the cut's total max capacity.
pub fn enumerate_candidates<'a>(
    net: &'a Network,
    cut: &'a MinCut,
    cut_index: usize,
    d: u64,
) -> CandidateStream<'a> {
    CandidateStream {
        net,
        cut,
        cut_index,
        ordinal: 0,
        parts: Compositions::new(cut.capacities(net), d),
    }
}

/// Number of candidates `cut` generates at level `d`.
pub fn count_candidates(net: &Network, cut: &MinCut, d: u64) -> u64 {
    count_bounded_compositions(&cut.capacities(net), d)
}

/// Number of compositions of `total` into parts bounded by `caps`.
///
/// Inclusion-exclusion over the set of parts forced above their cap:
/// `sum_J (-1)^|J| C(total - sum_{j in J}(c_j + 1) + k - 1, k - 1)`.
/// Subsets are grouped by their overflow `sum_{j in J}(c_j + 1)`, whose
/// signed multiplicities are the coefficients of `prod_j (1 - z^(c_j + 1))`.
/// Saturates at `u64::MAX`.
pub fn count_bounded_compositions(caps: &[u64], total: u64) -> u64 {
    let k = caps.len();
    if k == 0 {
        return u64::from(total == 0);
    }
    if total > caps.iter().fold(0u64, |a, &c| a.saturating_add(c)) {
        return 0;
    }
    let limit = total as usize;
    // signed[s] = sum over J with overflow s of (-1)^|J|
    let mut signed = vec![0i128; limit + 1];
    signed[0] = 1;
    for &cap in caps {
        let shift = cap.saturating_add(1);
        if shift > total {
            continue;
        }
        let shift = shift as usize;
        for s in (shift..=limit).rev() {
            signed[s] -= signed[s - shift];
        }
    }
    let mut count: i128 = 0;
    for (overflow, &coef) in signed.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let free = (limit - overflow) as u64;
        let ways = match binomial(free + k as u64 - 1, k as u64 - 1) {
            Some(w) => w as i128,
            None => return u64::MAX,
        };
        count = match coef.checked_mul(ways).and_then(|t| count.checked_add(t)) {
            Some(c) => c,
            None => return u64::MAX,
        };
    }
    u64::try_from(count).unwrap_or(u64::MAX)
}

/// `C(n, r)` or `None` when it does not fit in a `u128`.
fn binomial(n: u64, r: u64) -> Option<u128> {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

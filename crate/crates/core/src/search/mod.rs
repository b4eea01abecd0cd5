//! Exact maximum-family search.
//!
//! A family admissible under an [`IntersectionConstraint`] is a clique in the
//! compatibility graph whose vertices are all subsets of `[n]` with sizes in
//! the window and whose edges join pairs with an admitted intersection size.
//! [`max_family`] finds a maximum clique by branch and bound over bitset
//! adjacency rows; [`brute_force_oracle`] is an unbounded reference used to
//! cross-check it.

use std::time::Duration;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::{IntersectionConstraint, SetFamily, SEARCH_MAX_GROUND};

mod clique;
mod oracle;
mod scan;
mod triples;

pub use clique::{max_family, MAX_GRAPH_VERTICES};
pub use oracle::{brute_force_oracle, ORACLE_CAP};
pub use scan::{threshold_scan, threshold_scan_with, ScanKind, ScanRow};
pub use triples::{triple_cover, TraceRecord, TripleCover};

pub const DEFAULT_CANDIDATE_CAP: u128 = 1 << 22;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Anchor one member to `{1..m}`; sound because every instance here is
    /// invariant under relabelling `[n]`.
    pub symmetry_breaking: bool,
    pub time_budget: Option<Duration>,
    /// Maximum number of search nodes.
    pub node_budget: Option<u64>,
    /// Explore root subtrees on the current rayon pool.
    pub parallel: bool,
    /// A known admissible family that primes the incumbent.
    pub lower_bound_seed: Option<SetFamily>,
    pub candidate_cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_breaking: false,
            time_budget: None,
            node_budget: None,
            parallel: false,
            lower_bound_seed: None,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Exact,
    BudgetExhausted,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Exact => "Exact",
            SearchStatus::BudgetExhausted => "BudgetExhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub max_size: usize,
    /// Members sorted by mask.
    pub witness: SetFamily,
    pub nodes_explored: u64,
    pub status: SearchStatus,
    pub elapsed: Duration,
}

/// JSON shape: `{max_size, status, nodes, ms, witness: {n, members}}`.
impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SearchResult", 5)?;
        st.serialize_field("max_size", &self.max_size)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("nodes", &self.nodes_explored)?;
        st.serialize_field("ms", &(self.elapsed.as_millis() as u64))?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// Number of subsets of `[n]` whose size lies in the constraint window.
pub fn candidate_count(n: usize, constraint: &IntersectionConstraint) -> u128 {
    let hi = constraint.size_max().min(n);
    (constraint.size_min()..=hi)
        .map(|m| {
            let c = crate::bounds::binom(n as u64, m as u64);
            u128::try_from(c).unwrap_or(u128::MAX)
        })
        .fold(0u128, u128::saturating_add)
}

/// All subsets of `[n]` with size in the window, as masks in increasing
/// numeric order.
pub fn build_candidates(
    n: usize,
    constraint: &IntersectionConstraint,
    cap: u128,
) -> Result<Vec<u64>> {
    if n == 0 || n > SEARCH_MAX_GROUND {
        return Err(Error::InvalidParameter(format!(
            "search needs 1 ≤ n ≤ {SEARCH_MAX_GROUND} (got {n})"
        )));
    }
    let count = candidate_count(n, constraint);
    if count > cap {
        return Err(Error::InstanceTooLarge { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let limit = 1u128 << n;
    for m in constraint.size_min()..=constraint.size_max().min(n) {
        // Gosper's hack over u128 so n = 64 cannot overflow
        let mut x: u128 = (1u128 << m) - 1;
        while x < limit {
            out.push(x as u64);
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn witness_family(n: usize, mut masks: Vec<u64>) -> SetFamily {
    masks.sort_unstable();
    let members = masks
        .into_iter()
        .map(|m| crate::family::SubsetBits::from_u64(n, m).expect("candidate fits [n]"))
        .collect();
    SetFamily::new(n, members).expect("candidates fit [n]")
}

#[cfg(test)]
mod tests;

//! Constructive triple cover for intersecting families with no hitting pair.
//!
//! Fix the starting member `A`. For each `a ∈ A` take a member `B(a)` avoiding
//! `a`, for each `b ∈ B(a)` a member `C(a,b)` avoiding `a` and `b`, and emit
//! `{a, b, c}` for every `c ∈ C(a,b)`. Any member `F` meets `A` in some `a`,
//! meets `B(a)` in some `b`, and meets `C(a,b)` in some `c`, so it contains
//! `{a, b, c}`. At most `|A|·|B|·|C| ≤ s³` triples arise.
//!
//! Every free choice is the member of least mask.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{find_common_element, find_hitting_pair, SetFamily, SubsetBits};

/// Provenance of one emitted triple. Indices refer to the input family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub a: usize,
    pub b_index: usize,
    pub b: usize,
    pub c_index: usize,
    pub c: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleCover {
    /// Deduplicated triples sorted by mask.
    pub triples: SetFamily,
    pub trace: Vec<TraceRecord>,
    pub start_index: usize,
    /// Largest member size of the input.
    pub s: usize,
}

impl TripleCover {
    /// `|T| ≤ s³` and every member of `family` contains a triple.
    pub fn covers(&self, family: &SetFamily) -> bool {
        self.triples.len() <= self.s.pow(3)
            && self.triples.members().iter().all(|t| t.len() == 3)
            && family
                .members()
                .iter()
                .all(|f| self.triples.members().iter().any(|t| t.is_subset_of(f)))
    }
}

pub fn triple_cover(family: &SetFamily) -> Result<TripleCover> {
    let members = family.members();
    if members.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some((i, m)) = members.iter().enumerate().find(|(_, m)| m.len() < 3) {
        return Err(Error::Hypothesis(format!(
            "undersized member: member {i} has {} < 3 elements",
            m.len()
        )));
    }
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            if a == b {
                return Err(Error::Hypothesis(format!("members {i} and {j} are equal")));
            }
            if a.intersection_size(b) == 0 {
                return Err(Error::Hypothesis(format!(
                    "not intersecting: members {i} and {j} are disjoint"
                )));
            }
        }
    }
    if let Some(e) = find_common_element(family)? {
        return Err(Error::Hypothesis(format!(
            "common element {e} lies in every member"
        )));
    }
    if let Some((u, v)) = find_hitting_pair(family)? {
        return Err(Error::Hypothesis(format!(
            "hitting pair {{{u}, {v}}} meets every member"
        )));
    }

    let mut by_mask: Vec<usize> = (0..members.len()).collect();
    by_mask.sort_by(|&x, &y| members[x].cmp(&members[y]));
    let first_avoiding = |avoid: &[usize]| {
        by_mask
            .iter()
            .copied()
            .find(|&i| avoid.iter().all(|&e| !members[i].contains(e)))
            .expect("no common element or hitting pair, so an avoiding member exists")
    };

    let n = family.n();
    let start_index = by_mask[0];
    let mut seen = HashSet::new();
    let mut triples = Vec::new();
    let mut trace = Vec::new();
    for a in members[start_index].elements() {
        let b_index = first_avoiding(&[a]);
        for b in members[b_index].elements() {
            let c_index = first_avoiding(&[a, b]);
            for c in members[c_index].elements() {
                trace.push(TraceRecord {
                    a,
                    b_index,
                    b,
                    c_index,
                    c,
                });
                let t = SubsetBits::from_elements(n, [a, b, c])?;
                if seen.insert(t.clone()) {
                    triples.push(t);
                }
            }
        }
    }
    triples.sort();
    let s = members.iter().map(SubsetBits::len).max().unwrap_or(0);
    Ok(TripleCover {
        triples: SetFamily::new(n, triples)?,
        trace,
        start_index,
        s,
    })
}

//! Reference maximum by enumerating every maximal clique (Bron–Kerbosch
//! with Tomita pivoting). No size bound is ever used to cut the
//! enumeration, so the result does not depend on any colouring argument.

use std::time::Instant;

use super::{build_candidates, witness_family, SearchResult, SearchStatus};
use crate::error::Result;
use crate::family::IntersectionConstraint;

/// Candidate-count cap: one machine word per adjacency row.
pub const ORACLE_CAP: u128 = 64;

struct Enumerator<'a> {
    adj: &'a [u64],
    best: u64,
    nodes: u64,
}

impl Enumerator<'_> {
    fn run(&mut self, clique: u64, mut p: u64, mut x: u64) {
        self.nodes += 1;
        if p == 0 {
            if x == 0 && clique.count_ones() > self.best.count_ones() {
                self.best = clique;
            }
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| ((p & self.adj[u]).count_ones(), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        for v in bits(p & !self.adj[pivot]) {
            self.run(clique | 1 << v, p & self.adj[v], x & self.adj[v]);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
}

fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            return None;
        }
        let b = w.trailing_zeros() as usize;
        w &= w - 1;
        Some(b)
    })
}

/// Exact maximum for instances with at most [`ORACLE_CAP`] candidates.
pub fn brute_force_oracle(n: usize, constraint: &IntersectionConstraint) -> Result<SearchResult> {
    let started = Instant::now();
    let candidates = build_candidates(n, constraint, ORACLE_CAP)?;
    let adj: Vec<u64> = candidates
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            candidates
                .iter()
                .enumerate()
                .filter(|&(j, &b)| {
                    j != i && constraint.admits_intersection((a & b).count_ones() as usize)
                })
                .fold(0u64, |row, (j, _)| row | 1 << j)
        })
        .collect();
    let all = if candidates.len() == 64 {
        u64::MAX
    } else {
        (1u64 << candidates.len()) - 1
    };
    let mut e = Enumerator {
        adj: &adj,
        best: 0,
        nodes: 0,
    };
    if all != 0 {
        e.run(0, all, 0);
    }
    let witness = witness_family(n, bits(e.best).map(|v| candidates[v]).collect());
    Ok(SearchResult {
        max_size: witness.len(),
        witness,
        nodes_explored: e.nodes,
        status: SearchStatus::Exact,
        elapsed: started.elapsed(),
    })
}

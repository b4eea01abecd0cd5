//! Threshold scans: exact maxima over a range of ground-set sizes next to
//! the corresponding bound.

use serde::Serialize;

use super::{max_family, SearchOptions, SearchStatus};
use crate::bounds::{thm15_bound, thm16_bound};
use crate::error::{Error, Result};
use crate::family::{validate_family, IntersectionConstraint, SetFamily, SEARCH_MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    /// `s`-uniform, `1 ≤ |A∩B| ≤ k`, compared with `⌊C(n−1,k)/C(s−1,k)⌋`.
    Uniform,
    /// sizes `k..=s`, `1 ≤ |A∩B| ≤ k−1`, compared with `C(n−1,k−1)`.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub max_size: usize,
    pub bound_floor: u64,
    /// `None` when a budgeted row cannot decide.
    pub holds: Option<bool>,
    pub status: SearchStatus,
    pub nodes: u64,
    pub ms: u64,
}

impl ScanKind {
    fn constraint(self, s: usize, k: usize) -> Result<IntersectionConstraint> {
        match self {
            ScanKind::Uniform => IntersectionConstraint::interval(1, k, s, s),
            ScanKind::Mixed => IntersectionConstraint::interval(1, k - 1, k, s),
        }
    }

    fn check(self, s: usize, k: usize) -> Result<()> {
        let ok = match self {
            ScanKind::Uniform => k >= 2 && k + 2 <= s,
            ScanKind::Mixed => k >= 3 && k <= s,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{self:?} scan needs {} (s={s}, k={k})",
                match self {
                    ScanKind::Uniform => "2 ≤ k and k+2 ≤ s",
                    ScanKind::Mixed => "3 ≤ k ≤ s",
                }
            )))
        }
    }

    fn bound_floor(self, n: usize, s: usize, k: usize) -> Result<u64> {
        let report = match self {
            ScanKind::Uniform => thm15_bound(n as u64, s as u64, k as u64)?,
            ScanKind::Mixed => thm16_bound(n as u64, s as u64, k as u64)?,
        };
        u64::try_from(report.value_floor)
            .map_err(|_| Error::InvalidParameter("bound floor exceeds u64".into()))
    }
}

/// Uniform scan (`s`-uniform families with `1 ≤ |A∩B| ≤ k`).
pub fn threshold_scan(
    s: usize,
    k: usize,
    n_from: usize,
    n_to: usize,
    options: &SearchOptions,
) -> Result<Vec<ScanRow>> {
    threshold_scan_with(ScanKind::Uniform, s, k, n_from, n_to, options)
}

/// Runs `max_family` for every `n` in `n_from..=n_to`. Each row is seeded
/// with the best known family from a smaller ground set (or the caller's
/// seed), embedded into `[n]`. Budgets apply per row.
///
/// A budgeted row whose lower bound already exceeds the bound is reported as
/// failing; otherwise it is undecided.
pub fn threshold_scan_with(
    kind: ScanKind,
    s: usize,
    k: usize,
    n_from: usize,
    n_to: usize,
    options: &SearchOptions,
) -> Result<Vec<ScanRow>> {
    kind.check(s, k)?;
    if n_from == 0 || n_from > n_to || n_to > SEARCH_MAX_GROUND {
        return Err(Error::InvalidParameter(format!(
            "scan range {n_from}..={n_to} must lie in 1..={SEARCH_MAX_GROUND}"
        )));
    }
    let constraint = kind.constraint(s, k)?;
    let mut carried: Option<SetFamily> = None;
    if let Some(seed) = &options.lower_bound_seed {
        if let Some(v) = validate_family(seed, &constraint)?.first_violation {
            return Err(Error::BadSeed(format!(
                "{:?} at members ({}, {})",
                v.kind, v.i, v.j
            )));
        }
    }
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let mut seed = carried.as_ref().map(|f| f.embed(n)).transpose()?;
        if let Some(user) = options.lower_bound_seed.as_ref().filter(|f| f.n() <= n) {
            if seed.as_ref().is_none_or(|f| f.len() < user.len()) {
                seed = Some(user.embed(n)?);
            }
        }
        let opts = SearchOptions {
            lower_bound_seed: seed.filter(|f| !f.is_empty()),
            ..options.clone()
        };
        let result = max_family(n, &constraint, &opts)?;
        let bound_floor = kind.bound_floor(n, s, k)?;
        let holds = match result.status {
            SearchStatus::Exact => Some(result.max_size as u64 <= bound_floor),
            SearchStatus::BudgetExhausted if result.max_size as u64 > bound_floor => Some(false),
            SearchStatus::BudgetExhausted => None,
        };
        rows.push(ScanRow {
            n,
            max_size: result.max_size,
            bound_floor,
            holds,
            status: result.status,
            nodes: result.nodes_explored,
            ms: result.elapsed.as_millis() as u64,
        });
        carried = Some(result.witness);
    }
    Ok(rows)
}

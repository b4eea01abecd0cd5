//! Bitset branch and bound for maximum cliques.
//!
//! Vertices are renumbered by degree (descending, ties by mask). Each node
//! greedily colours its candidate set; a vertex whose colour number plus the
//! current clique size cannot beat the incumbent closes the branch.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::{build_candidates, witness_family, SearchOptions, SearchResult, SearchStatus};
use crate::error::{Error, Result};
use crate::family::{validate_family, IntersectionConstraint};

/// Adjacency is a dense bit matrix; beyond this many vertices it would not
/// fit comfortably in memory (2^16 vertices is 512 MiB).
pub const MAX_GRAPH_VERTICES: usize = 1 << 16;

struct Graph {
    words: usize,
    adj: Vec<u64>,
    /// mask of the candidate at each renumbered vertex
    masks: Vec<u64>,
}

impl Graph {
    fn build(candidates: &[u64], table: u128) -> Graph {
        let nv = candidates.len();
        let words = nv.div_ceil(64).max(1);
        let compatible = |a: u64, b: u64| table >> (a & b).count_ones() & 1 == 1;

        let mut degree = vec![0u32; nv];
        for i in 0..nv {
            for j in i + 1..nv {
                if compatible(candidates[i], candidates[j]) {
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by(|&a, &b| {
            degree[b]
                .cmp(&degree[a])
                .then(candidates[a].cmp(&candidates[b]))
        });
        let masks: Vec<u64> = order.iter().map(|&i| candidates[i]).collect();

        let mut adj = vec![0u64; nv * words];
        for i in 0..nv {
            for j in i + 1..nv {
                if compatible(masks[i], masks[j]) {
                    adj[i * words + j / 64] |= 1 << (j % 64);
                    adj[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Graph { words, adj, masks }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential colouring. Returns vertices with non-decreasing
    /// colour numbers.
    fn colour_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        let mut start = 0;
        while start < uncoloured.len() {
            if uncoloured[start] == 0 {
                start += 1;
                continue;
            }
            colour += 1;
            let mut q = uncoloured.clone();
            for wi in start..q.len() {
                while q[wi] != 0 {
                    let v = wi * 64 + q[wi].trailing_zeros() as usize;
                    uncoloured[wi] &= !(1 << (v % 64));
                    let row = self.row(v);
                    for (w, r) in q[wi..].iter_mut().zip(&row[wi..]) {
                        *w &= !r;
                    }
                    q[wi] &= !(1 << (v % 64));
                    order.push(v);
                    colours.push(colour);
                }
            }
        }
        (order, colours)
    }
}

struct Shared<'a> {
    graph: &'a Graph,
    best: AtomicUsize,
    best_clique: Mutex<Option<Vec<usize>>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    started: Instant,
    opts: &'a SearchOptions,
}

impl Shared<'_> {
    fn offer(&self, clique: &[usize]) {
        if clique.len() <= self.best.load(Relaxed) {
            return;
        }
        let mut slot = self.best_clique.lock().expect("incumbent lock");
        if clique.len() > self.best.load(Relaxed) {
            self.best.store(clique.len(), Relaxed);
            *slot = Some(clique.to_vec());
        }
    }

    fn tick(&self) -> bool {
        if self.stop.load(Relaxed) {
            return false;
        }
        let nodes = self.nodes.fetch_add(1, Relaxed) + 1;
        let over_nodes = self.opts.node_budget.is_some_and(|b| nodes > b);
        let over_time = nodes.is_multiple_of(256)
            && self
                .opts
                .time_budget
                .is_some_and(|t| self.started.elapsed() >= t);
        if over_nodes || over_time {
            self.stop.store(true, Relaxed);
            return false;
        }
        true
    }

    fn expand(&self, clique: &mut Vec<usize>, cand: &[u64]) {
        if !self.tick() {
            return;
        }
        self.offer(clique);
        if cand.iter().all(|&w| w == 0) {
            return;
        }
        let (order, colours) = self.graph.colour_sort(cand);
        let mut cand = cand.to_vec();
        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.best.load(Relaxed) {
                return;
            }
            let v = order[idx];
            let next: Vec<u64> = cand
                .iter()
                .zip(self.graph.row(v))
                .map(|(a, b)| a & b)
                .collect();
            clique.push(v);
            self.expand(clique, &next);
            clique.pop();
            cand[v / 64] &= !(1 << (v % 64));
            if self.stop.load(Relaxed) {
                return;
            }
        }
    }
}

struct RootTask {
    vertex: usize,
    cand: Vec<u64>,
    bound: usize,
}

/// Maximum admissible family on `[n]` under `constraint`.
///
/// With `parallel` set, root subtrees run on the ambient rayon pool;
/// `max_size` and `status` do not depend on the schedule but the witness may.
pub fn max_family(
    n: usize,
    constraint: &IntersectionConstraint,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let started = Instant::now();
    let candidates = build_candidates(n, constraint, options.candidate_cap)?;
    if candidates.len() > MAX_GRAPH_VERTICES {
        return Err(Error::InstanceTooLarge {
            count: candidates.len() as u128,
            cap: MAX_GRAPH_VERTICES as u128,
        });
    }
    if let Some(seed) = &options.lower_bound_seed {
        if seed.n() != n {
            return Err(Error::BadSeed(format!(
                "seed lives on [{}], instance on [{n}]",
                seed.n()
            )));
        }
        let report = validate_family(seed, constraint)?;
        if let Some(v) = report.first_violation {
            return Err(Error::BadSeed(format!(
                "{:?} at members ({}, {})",
                v.kind, v.i, v.j
            )));
        }
    }
    let seed_len = options.lower_bound_seed.as_ref().map_or(0, |s| s.len());

    let graph = Graph::build(&candidates, constraint.intersection_table());
    let nv = candidates.len();
    let shared = Shared {
        graph: &graph,
        best: AtomicUsize::new(seed_len),
        best_clique: Mutex::new(None),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        started,
        opts: options,
    };

    let tasks = if options.symmetry_breaking {
        anchored_tasks(&graph, constraint, n)
    } else {
        root_tasks(&graph, nv)
    };
    if shared.tick() {
        let run = |task: &RootTask| {
            if task.bound <= shared.best.load(Relaxed) || shared.stop.load(Relaxed) {
                return;
            }
            let mut clique = vec![task.vertex];
            shared.expand(&mut clique, &task.cand);
        };
        if options.parallel {
            tasks.par_iter().with_max_len(1).for_each(run);
        } else {
            tasks.iter().for_each(run);
        }
    }

    let status = if shared.stop.load(Relaxed) {
        SearchStatus::BudgetExhausted
    } else {
        SearchStatus::Exact
    };
    let found = shared.best_clique.into_inner().expect("incumbent lock");
    let witness = match (found, &options.lower_bound_seed) {
        (Some(clique), _) => witness_family(n, clique.iter().map(|&v| graph.masks[v]).collect()),
        (None, Some(seed)) => seed.sorted(),
        (None, None) => witness_family(n, Vec::new()),
    };
    Ok(SearchResult {
        max_size: witness.len(),
        witness,
        nodes_explored: shared.nodes.load(Relaxed),
        status,
        elapsed: started.elapsed(),
    })
}

/// One task per vertex of the root colouring, highest colour first; task `i`
/// may use only vertices preceding it in the colouring order.
fn root_tasks(graph: &Graph, nv: usize) -> Vec<RootTask> {
    let mut all = vec![0u64; graph.words];
    for v in 0..nv {
        all[v / 64] |= 1 << (v % 64);
    }
    let (order, colours) = graph.colour_sort(&all);
    let mut prefix = vec![0u64; graph.words];
    let mut tasks = Vec::with_capacity(nv);
    for (idx, &v) in order.iter().enumerate() {
        let cand = prefix
            .iter()
            .zip(graph.row(v))
            .map(|(a, b)| a & b)
            .collect();
        tasks.push(RootTask {
            vertex: v,
            cand,
            bound: colours[idx],
        });
        prefix[v / 64] |= 1 << (v % 64);
    }
    tasks.reverse();
    tasks
}

/// A nonempty admissible family has a smallest member, of size `m` say;
/// relabelling sends it to `{1..m}` and leaves every other member of size
/// `≥ m`. One task per feasible `m`.
fn anchored_tasks(graph: &Graph, constraint: &IntersectionConstraint, n: usize) -> Vec<RootTask> {
    let hi = constraint.size_max().min(n);
    (constraint.size_min()..=hi)
        .map(|m| {
            let anchor = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
            let vertex = graph
                .masks
                .iter()
                .position(|&x| x == anchor)
                .expect("every size in the window has a candidate");
            let mut cand: Vec<u64> = graph.row(vertex).to_vec();
            for (v, &mask) in graph.masks.iter().enumerate() {
                if (mask.count_ones() as usize) < m {
                    cand[v / 64] &= !(1 << (v % 64));
                }
            }
            let bound = 1 + cand.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            RootTask {
                vertex,
                cand,
                bound,
            }
        })
        .collect()
}

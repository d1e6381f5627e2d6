//! Exact `ex(n, F, q, s)` as a maximum independent set in the hypergraph
//! whose hyperedges are the s-copies of `F` inside `Q(n, 2)`.
//!
//! The solver minimises the number of excluded ground q-edges (a minimum
//! hitting set of the hyperedges). At the root it branches over orbits of
//! `Sym(n)` acting on the ground set: branch `i` excludes the first member
//! of orbit `i` and keeps every earlier orbit whole. Below the root it picks
//! an unhit hyperedge with fewest undecided members and branches on which
//! member is the first one excluded.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;
use core::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::bitset::BitSet;
use crate::detect::{contains_s_copy, for_each_s_copy};
use crate::{full_qgraph, Embedding, Error, PatternGraph, QEdge, QGraph};

/// Default cap on `q²·C(n,2)` for [`forbidden_configs`].
pub const DEFAULT_GROUND_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenHypergraph {
    pub n: usize,
    pub q: u32,
    /// All q-edges of `Q(n, 2)` in ascending order.
    pub ground: Vec<QEdge>,
    /// Each s-copy as ascending indices into `ground`; sorted, no repeats.
    pub hyperedges: Vec<Vec<u32>>,
}

impl ForbiddenHypergraph {
    pub fn index_of(&self, e: &QEdge) -> Option<usize> {
        self.ground.binary_search(e).ok()
    }

    pub fn hyperedge_qgraph(&self, i: usize) -> QGraph {
        QGraph::from_edges(self.n, self.q, self.hyperedges[i].iter().map(|&j| self.ground[j as usize]))
            .expect("ground edges are valid")
    }

    /// Orbits of the ground set under vertex permutations, each ascending,
    /// ordered by their smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let m = self.ground.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for k in 1..self.n {
            let swap = |x: usize| {
                if x == k {
                    k + 1
                } else if x == k + 1 {
                    k
                } else {
                    x
                }
            };
            for (i, e) in self.ground.iter().enumerate() {
                let image = QEdge::new(swap(e.u), swap(e.v), e.a, e.b).expect("permuted edge is valid");
                let j = self.index_of(&image).expect("ground is closed under permutation");
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; m];
        for i in 0..m {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(i);
        }
        orbits
    }
}

/// Every s-copy of `f` in `full_qgraph(n, q)`, deduplicated as edge sets.
///
/// Rejects instances with `q²·C(n,2) > ground_cap` and patterns without
/// edges.
pub fn forbidden_configs(
    n: usize,
    q: u32,
    f: &PatternGraph,
    s: u32,
    ground_cap: usize,
) -> Result<ForbiddenHypergraph, Error> {
    if q == 0 {
        return Err(Error::WeightCap(q));
    }
    if s == 0 {
        return Err(Error::Threshold);
    }
    if n == 0 {
        return Err(Error::VertexCount { n, min: 1 });
    }
    if f.edge_count() == 0 {
        return Err(Error::Parameter("pattern has no edges".into()));
    }
    let size = (q as usize).pow(2) * crate::pairs(n);
    if size > ground_cap {
        return Err(Error::TooLarge { size, cap: ground_cap });
    }
    if n < 2 {
        return Ok(ForbiddenHypergraph { n, q, ground: Vec::new(), hyperedges: Vec::new() });
    }
    let full = full_qgraph(n, q)?;
    let ground: Vec<QEdge> = full.edges().copied().collect();
    let mut sets: BTreeSet<Vec<u32>> = BTreeSet::new();
    for_each_s_copy(&full, f, s, |emb| {
        let mut idx: Vec<u32> = emb
            .edge_map
            .iter()
            .map(|(_, e)| ground.binary_search(e).expect("copy lies in the full q-graph") as u32)
            .collect();
        idx.sort_unstable();
        sets.insert(idx);
        ControlFlow::Continue(())
    })?;
    Ok(ForbiddenHypergraph { n, q, ground, hyperedges: sets.into_iter().collect() })
}

/// Limits on a search. `max_nodes` counts visited search nodes; `expired`
/// is polled periodically and stops the search once it returns true.
#[derive(Clone, Copy)]
pub struct Budget<'a> {
    pub max_nodes: u64,
    pub expired: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl Budget<'_> {
    pub const fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX, expired: None }
    }

    pub const fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, expired: None }
    }
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget").field("max_nodes", &self.max_nodes).field("expired", &self.expired.is_some()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Exact,
    /// Node budget exhausted.
    LowerBound,
    /// Deadline reached.
    Timeout,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::LowerBound => "lower_bound",
            SearchStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub value: usize,
    /// Avoiding q-graph with `value` edges.
    pub witness: QGraph,
    pub status: SearchStatus,
    pub nodes: u64,
}

/// Best hitting set found inside one root branch.
#[derive(Debug, Clone)]
pub struct BranchBest {
    pub excluded: usize,
    out: BitSet,
}

/// Shared state of one search; root branches may run on different threads.
pub struct Solver<'a> {
    hg: &'a ForbiddenHypergraph,
    budget: Budget<'a>,
    best_out: AtomicUsize,
    nodes: AtomicU64,
    stop_nodes: AtomicBool,
    stop_time: AtomicBool,
    greedy: BitSet,
    branches: Vec<(usize, Vec<usize>)>,
}

impl<'a> Solver<'a> {
    pub fn new(hg: &'a ForbiddenHypergraph, budget: Budget<'a>) -> Result<Self, Error> {
        if budget.max_nodes == 0 {
            return Err(Error::Parameter("node budget must be positive".into()));
        }
        let m = hg.ground.len();
        let mut incident = vec![Vec::new(); m];
        for (h, members) in hg.hyperedges.iter().enumerate() {
            for &j in members {
                incident[j as usize].push(h as u32);
            }
        }
        let greedy = greedy_out(hg, &incident);
        let branches = if hg.hyperedges.is_empty() {
            Vec::new()
        } else {
            let orbits = hg.orbits();
            (0..orbits.len()).map(|i| (orbits[i][0], orbits[..i].iter().flatten().copied().collect())).collect()
        };
        Ok(Solver {
            hg,
            budget,
            best_out: AtomicUsize::new(greedy.count()),
            nodes: AtomicU64::new(0),
            stop_nodes: AtomicBool::new(false),
            stop_time: AtomicBool::new(false),
            greedy,
            branches,
        })
    }

    /// Number of root branches (orbits of the ground set).
    pub fn root_branches(&self) -> usize {
        self.branches.len()
    }

    /// Explores root branch `i`; returns a hitting set smaller than every
    /// one known when it was found.
    pub fn run_branch(&self, i: usize) -> Option<BranchBest> {
        let (rep, kept) = &self.branches[i];
        let m = self.hg.ground.len();
        let mut st = State { out: BitSet::new(m), inn: BitSet::new(m), out_count: 1 };
        st.out.insert(*rep);
        for &j in kept {
            st.inn.insert(j);
        }
        let mut best = None;
        self.dfs(&mut st, &mut best);
        best
    }

    /// Combines branch outcomes (any order) into the final result.
    pub fn finish(self, outcomes: impl IntoIterator<Item = Option<BranchBest>>) -> SearchResult {
        let mut out = self.greedy.clone();
        let mut excluded = out.count();
        for b in outcomes.into_iter().flatten() {
            if b.excluded < excluded {
                excluded = b.excluded;
                out = b.out;
            }
        }
        let status = if self.stop_time.load(Ordering::Relaxed) {
            SearchStatus::Timeout
        } else if self.stop_nodes.load(Ordering::Relaxed) {
            SearchStatus::LowerBound
        } else {
            SearchStatus::Exact
        };
        let hg = self.hg;
        let witness =
            QGraph::from_edges(hg.n, hg.q, (0..hg.ground.len()).filter(|&j| !out.contains(j)).map(|j| hg.ground[j]))
                .expect("ground edges are valid");
        SearchResult {
            value: hg.ground.len() - excluded,
            witness,
            status,
            nodes: self.nodes.load(Ordering::Relaxed).max(1),
        }
    }

    fn halted(&self) -> bool {
        if self.stop_nodes.load(Ordering::Relaxed) || self.stop_time.load(Ordering::Relaxed) {
            return true;
        }
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited >= self.budget.max_nodes {
            self.stop_nodes.store(true, Ordering::Relaxed);
            return true;
        }
        if visited % 1024 == 1 {
            if let Some(expired) = self.budget.expired {
                if expired() {
                    self.stop_time.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&self, st: &mut State, best: &mut Option<BranchBest>) {
        if self.halted() {
            return;
        }
        let incumbent = self.best_out.load(Ordering::Relaxed);
        if st.out_count >= incumbent {
            return;
        }
        // branching hyperedge: unhit, fewest free members, lowest index
        let mut pick: Option<(usize, usize)> = None;
        for (h, members) in self.hg.hyperedges.iter().enumerate() {
            let mut free = 0;
            let mut hit = false;
            for &j in members {
                let j = j as usize;
                if st.out.contains(j) {
                    hit = true;
                    break;
                }
                if !st.inn.contains(j) {
                    free += 1;
                }
            }
            if hit {
                continue;
            }
            if free == 0 {
                return;
            }
            if pick.is_none_or(|(_, f)| free < f) {
                pick = Some((h, free));
            }
        }
        let Some((h, _)) = pick else {
            if self.best_out.fetch_min(st.out_count, Ordering::Relaxed) > st.out_count {
                *best = Some(BranchBest { excluded: st.out_count, out: st.out.clone() });
            }
            return;
        };
        if st.out_count + self.packing(st) >= incumbent {
            return;
        }
        let free: Vec<usize> =
            self.hg.hyperedges[h].iter().map(|&j| j as usize).filter(|&j| !st.inn.contains(j)).collect();
        for &j in &free {
            st.out.insert(j);
            st.out_count += 1;
            self.dfs(st, best);
            st.out.remove(j);
            st.out_count -= 1;
            st.inn.insert(j);
        }
        for &j in &free {
            st.inn.remove(j);
        }
    }

    /// Lower bound on further exclusions: unhit hyperedges with pairwise
    /// disjoint free parts each need their own excluded member.
    fn packing(&self, st: &State) -> usize {
        let mut used = BitSet::new(self.hg.ground.len());
        let mut count = 0;
        'next: for members in &self.hg.hyperedges {
            for &j in members {
                let j = j as usize;
                if st.out.contains(j) || (!st.inn.contains(j) && used.contains(j)) {
                    continue 'next;
                }
            }
            for &j in members {
                if !st.inn.contains(j as usize) {
                    used.insert(j as usize);
                }
            }
            count += 1;
        }
        count
    }
}

struct State {
    out: BitSet,
    inn: BitSet,
    out_count: usize,
}

/// Keeps ground edges in order unless one would close a hyperedge.
fn greedy_out(hg: &ForbiddenHypergraph, incident: &[Vec<u32>]) -> BitSet {
    let m = hg.ground.len();
    let mut kept = BitSet::new(m);
    let mut out = BitSet::new(m);
    for (j, inc) in incident.iter().enumerate().take(m) {
        let closes = inc
            .iter()
            .any(|&h| hg.hyperedges[h as usize].iter().all(|&x| x as usize == j || kept.contains(x as usize)));
        if closes {
            out.insert(j);
        } else {
            kept.insert(j);
        }
    }
    out
}

/// Solves `hg` on the current thread, root branches in order.
pub fn solve(hg: &ForbiddenHypergraph, budget: Budget<'_>) -> Result<SearchResult, Error> {
    let solver = Solver::new(hg, budget)?;
    let outcomes: Vec<_> = (0..solver.root_branches()).map(|i| solver.run_branch(i)).collect();
    Ok(solver.finish(outcomes))
}

/// `ex(n, F, q, s)`: the largest q-graph on `[n]` with no s-copy of `f`.
pub fn extremal_number(n: usize, f: &PatternGraph, q: u32, s: u32, budget: Budget<'_>) -> Result<SearchResult, Error> {
    let hg = forbidden_configs(n, q, f, s, DEFAULT_GROUND_CAP)?;
    solve(&hg, budget)
}

/// The ordinary Turán number `ex(n, F)`, i.e. `q = 1`, `s = 2`.
pub fn ordinary_turan(n: usize, f: &PatternGraph, budget: Budget<'_>) -> Result<SearchResult, Error> {
    extremal_number(n, f, 1, 2, budget)
}

/// `(true, None)` if `h` has no s-copy of `f`, else `(false, Some(copy))`.
pub fn verify_free(h: &QGraph, f: &PatternGraph, s: u32) -> Result<(bool, Option<Embedding>), Error> {
    let found = contains_s_copy(h, f, s)?;
    Ok((found.is_none(), found))
}

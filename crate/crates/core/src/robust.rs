//! Chromatic number, 1-selections and the robust chromatic number χ₁.
//!
//! A 1-selection picks, for every vertex, an incident edge; its image is a
//! removal set. An edge set is such an image exactly when it covers every
//! non-isolated vertex and each of its components has at most as many
//! edges as vertices (a pseudoforest). Isolated vertices carry no
//! selection obligation.
//!
//! χ₁ is computed as the least `k` admitting a `k`-colouring whose
//! monochromatic edges form a pseudoforest: such a set extends to a
//! removal set, and conversely the monochromatic edges of a proper
//! colouring of `F − D` lie inside `D`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, PatternGraph};

/// Identifier of the generator behind [`random_multipartite`].
pub const RNG_NAME: &str = "ChaCha8Rng/rand_chacha-0.3 seed_from_u64 + set_stream(trial)";

/// Size limits for the exponential routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_vertices: 16, max_edges: 30 }
    }
}

impl Caps {
    fn vertices(&self, g: &PatternGraph) -> Result<(), Error> {
        let n = g.vertex_count();
        if n > self.max_vertices || n > 64 {
            return Err(Error::TooLarge { size: n, cap: self.max_vertices.min(64) });
        }
        Ok(())
    }

    fn edges(&self, g: &PatternGraph) -> Result<(), Error> {
        if g.edge_count() > self.max_edges {
            return Err(Error::TooLarge { size: g.edge_count(), cap: self.max_edges });
        }
        Ok(())
    }
}

/// Edge subset `D ⊆ E(F)` that is the image of some 1-selection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RemovalSet {
    pub edges: Vec<(usize, usize)>,
}

fn masks(g: &PatternGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for (u, v) in g.edges() {
        adj[u - 1] |= 1 << (v - 1);
        adj[v - 1] |= 1 << (u - 1);
    }
    adj
}

/// Exact chromatic number by DSATUR branch and bound.
///
/// 0 for the vertexless graph, 1 for any other edgeless graph.
pub fn chromatic_number(g: &PatternGraph, caps: &Caps) -> Result<usize, Error> {
    caps.vertices(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let adj = masks(g);
    let lower = greedy_clique(&adj);
    let mut best = dsatur_greedy(&adj);
    if best > lower {
        let mut colour = vec![usize::MAX; n];
        colour_bnb(&adj, &mut colour, 0, lower, &mut best);
    }
    Ok(best)
}

fn greedy_clique(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut best = 1;
    for start in 0..n {
        let mut clique = 1u64 << start;
        let mut cand = adj[start];
        while cand != 0 {
            // pick the candidate with most neighbours among candidates
            let mut pick = cand.trailing_zeros() as usize;
            let mut pick_deg = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let d = (adj[v] & cand).count_ones();
                if d > pick_deg {
                    pick = v;
                    pick_deg = d;
                }
            }
            clique |= 1 << pick;
            cand &= adj[pick];
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

fn saturation(adj: &[u64], colour: &[usize], v: usize) -> usize {
    let mut seen = 0u64;
    let mut nb = adj[v];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if colour[w] != usize::MAX {
            seen |= 1 << colour[w];
        }
    }
    seen.count_ones() as usize
}

fn pick_dsatur(adj: &[u64], colour: &[usize]) -> Option<usize> {
    (0..adj.len())
        .filter(|&v| colour[v] == usize::MAX)
        .max_by_key(|&v| (saturation(adj, colour, v), adj[v].count_ones(), usize::MAX - v))
}

fn free_colour(adj: &[u64], colour: &[usize], v: usize, c: usize) -> bool {
    let mut nb = adj[v];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if colour[w] == c {
            return false;
        }
    }
    true
}

fn dsatur_greedy(adj: &[u64]) -> usize {
    let mut colour = vec![usize::MAX; adj.len()];
    let mut used = 0;
    while let Some(v) = pick_dsatur(adj, &colour) {
        let c = (0..).find(|&c| free_colour(adj, &colour, v, c)).expect("some colour is free");
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn colour_bnb(adj: &[u64], colour: &mut [usize], used: usize, lower: usize, best: &mut usize) {
    let Some(v) = pick_dsatur(adj, colour) else {
        *best = used;
        return;
    };
    for c in 0..=used {
        if *best <= lower {
            return;
        }
        let opened = usize::from(c == used);
        if used + opened >= *best || !free_colour(adj, colour, v, c) {
            continue;
        }
        colour[v] = c;
        colour_bnb(adj, colour, used + opened, lower, best);
        colour[v] = usize::MAX;
    }
}

/// Union-find with undo, tracking vertex and edge counts per component.
struct PseudoforestDsu {
    parent: Vec<usize>,
    verts: Vec<usize>,
    edges: Vec<usize>,
    undo: Vec<Undo>,
}

enum Undo {
    Edge(usize),
    Merge { child: usize, root: usize },
}

impl PseudoforestDsu {
    fn new(n: usize) -> Self {
        PseudoforestDsu { parent: (0..n).collect(), verts: vec![1; n], edges: vec![0; n], undo: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Adds an edge if the component stays a pseudoforest.
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            if self.edges[ru] + 1 > self.verts[ru] {
                return false;
            }
            self.edges[ru] += 1;
            self.undo.push(Undo::Edge(ru));
            return true;
        }
        if self.edges[ru] + self.edges[rv] + 1 > self.verts[ru] + self.verts[rv] {
            return false;
        }
        let (child, root) = if self.verts[ru] < self.verts[rv] { (ru, rv) } else { (rv, ru) };
        self.parent[child] = root;
        self.verts[root] += self.verts[child];
        self.edges[root] += self.edges[child] + 1;
        self.undo.push(Undo::Merge { child, root });
        true
    }

    fn checkpoint(&self) -> usize {
        self.undo.len()
    }

    fn rollback(&mut self, to: usize) {
        while self.undo.len() > to {
            match self.undo.pop().expect("non-empty") {
                Undo::Edge(r) => self.edges[r] -= 1,
                Undo::Merge { child, root } => {
                    self.parent[child] = child;
                    self.verts[root] -= self.verts[child];
                    self.edges[root] -= self.edges[child] + 1;
                }
            }
        }
    }
}

fn is_pseudoforest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut dsu = PseudoforestDsu::new(n + 1);
    edges.iter().all(|&(u, v)| dsu.try_add(u, v))
}

/// True iff `d` is the image of some 1-selection of `f`.
pub fn is_selection_image(f: &PatternGraph, d: &[(usize, usize)]) -> bool {
    let d: BTreeSet<(usize, usize)> = d.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if d.iter().any(|&(u, v)| !f.has_edge(u, v)) {
        return false;
    }
    let mut covered = vec![false; f.vertex_count() + 1];
    for &(u, v) in &d {
        covered[u] = true;
        covered[v] = true;
    }
    if f.non_isolated().into_iter().any(|v| !covered[v]) {
        return false;
    }
    let d: Vec<_> = d.into_iter().collect();
    is_pseudoforest(f.vertex_count(), &d)
}

/// An explicit 1-selection with image exactly `d`, built by matching each
/// edge of `d` to a distinct endpoint. Entry `v` is the edge chosen by `v`
/// (`None` for isolated vertices and index 0).
pub fn selection_for(f: &PatternGraph, d: &[(usize, usize)]) -> Option<Vec<Option<(usize, usize)>>> {
    let d: Vec<(usize, usize)> =
        d.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect::<BTreeSet<_>>().into_iter().collect();
    if d.iter().any(|&(u, v)| !f.has_edge(u, v)) {
        return None;
    }
    let n = f.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n + 1];
    fn augment(e: usize, d: &[(usize, usize)], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for v in [d[e].0, d[e].1] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none() || augment(owner[v].expect("owned"), d, owner, seen) {
                owner[v] = Some(e);
                return true;
            }
        }
        false
    }
    for e in 0..d.len() {
        let mut seen = vec![false; n + 1];
        if !augment(e, &d, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut f_map: Vec<Option<(usize, usize)>> = owner.iter().map(|o| o.map(|e| d[e])).collect();
    for v in f.non_isolated() {
        if f_map[v].is_none() {
            f_map[v] = Some(*d.iter().find(|&&(a, b)| a == v || b == v)?);
        }
    }
    Some(f_map)
}

/// Every removal set of `f`, each once, in lexicographic include-first order.
pub fn enumerate_removal_sets(f: &PatternGraph, caps: &Caps) -> Result<Vec<RemovalSet>, Error> {
    caps.edges(f)?;
    let edges: Vec<(usize, usize)> = f.edges().collect();
    let n = f.vertex_count();
    // remaining[v]: undecided edges at v after position i is decided
    let mut remaining = vec![0usize; n + 1];
    for &(u, v) in &edges {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut state = RemovalEnum {
        edges,
        dsu: PseudoforestDsu::new(n + 1),
        cover: vec![0; n + 1],
        remaining,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    state.walk(0);
    Ok(state.out)
}

struct RemovalEnum {
    edges: Vec<(usize, usize)>,
    dsu: PseudoforestDsu,
    cover: Vec<usize>,
    remaining: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    out: Vec<RemovalSet>,
}

impl RemovalEnum {
    fn walk(&mut self, i: usize) {
        if i == self.edges.len() {
            self.out.push(RemovalSet { edges: self.chosen.clone() });
            return;
        }
        let (u, v) = self.edges[i];
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        let mark = self.dsu.checkpoint();
        if self.dsu.try_add(u, v) {
            self.cover[u] += 1;
            self.cover[v] += 1;
            self.chosen.push((u, v));
            self.walk(i + 1);
            self.chosen.pop();
            self.cover[u] -= 1;
            self.cover[v] -= 1;
            self.dsu.rollback(mark);
        }
        let stranded = |w: usize, s: &Self| s.cover[w] == 0 && s.remaining[w] == 0;
        if !stranded(u, self) && !stranded(v, self) {
            self.walk(i + 1);
        }
        self.remaining[u] += 1;
        self.remaining[v] += 1;
    }
}

/// χ₁ together with a colouring and a removal set that realise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustWitness {
    pub chi1: usize,
    /// `colouring[v-1]` in `0..chi1`.
    pub colouring: Vec<usize>,
    pub removal: RemovalSet,
}

/// χ₁(F) = min over removal sets `D` of χ(F − D).
pub fn robust_chromatic(f: &PatternGraph, caps: &Caps) -> Result<usize, Error> {
    Ok(robust_witness(f, caps)?.chi1)
}

pub fn robust_witness(f: &PatternGraph, caps: &Caps) -> Result<RobustWitness, Error> {
    caps.vertices(f)?;
    let n = f.vertex_count();
    if n == 0 || f.edge_count() == 0 {
        let chi1 = usize::from(n > 0);
        return Ok(RobustWitness { chi1, colouring: vec![0; n], removal: RemovalSet { edges: Vec::new() } });
    }
    let adj = f.adjacency();
    let order = colouring_order(f, &adj);
    for k in 1..=n {
        let mut search = SparseConflictColouring {
            adj: &adj,
            order: &order,
            k,
            colour: vec![usize::MAX; n + 1],
            dsu: PseudoforestDsu::new(n + 1),
        };
        if search.run(0, 0) {
            let colouring: Vec<usize> = search.colour[1..].to_vec();
            let removal = extend_to_removal(f, &colouring);
            return Ok(RobustWitness { chi1: k, colouring, removal });
        }
    }
    unreachable!("a proper n-colouring has no conflicts")
}

fn colouring_order(f: &PatternGraph, adj: &[Vec<usize>]) -> Vec<usize> {
    // BFS from the highest-degree vertex of each component, so that every
    // vertex after the first in a component has a coloured neighbour.
    let mut seen = vec![false; f.vertex_count() + 1];
    let mut order = Vec::with_capacity(f.vertex_count());
    let mut starts: Vec<usize> = (1..=f.vertex_count()).collect();
    starts.sort_by_key(|&v| (usize::MAX - adj[v].len(), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let first = order.len();
        order.push(s);
        let mut i = first;
        while i < order.len() {
            let v = order[i];
            i += 1;
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (usize::MAX - adj[w].len(), w));
            for w in next {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

struct SparseConflictColouring<'a> {
    adj: &'a [Vec<usize>],
    order: &'a [usize],
    k: usize,
    colour: Vec<usize>,
    dsu: PseudoforestDsu,
}

impl SparseConflictColouring<'_> {
    fn run(&mut self, i: usize, used: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            let mark = self.dsu.checkpoint();
            let ok = self.adj[v].iter().filter(|&&w| self.colour[w] == c).all(|&w| self.dsu.try_add(v, w));
            if ok {
                self.colour[v] = c;
                if self.run(i + 1, used.max(c + 1)) {
                    return true;
                }
                self.colour[v] = usize::MAX;
            }
            self.dsu.rollback(mark);
        }
        false
    }
}

/// Monochromatic edges plus one edge for every still-uncovered vertex.
fn extend_to_removal(f: &PatternGraph, colouring: &[usize]) -> RemovalSet {
    let mut d: BTreeSet<(usize, usize)> = f.edges().filter(|&(u, v)| colouring[u - 1] == colouring[v - 1]).collect();
    let mut covered = vec![false; f.vertex_count() + 1];
    for &(u, v) in &d {
        covered[u] = true;
        covered[v] = true;
    }
    let adj = f.adjacency();
    for v in f.non_isolated() {
        if !covered[v] {
            let w = adj[v][0];
            d.insert((v.min(w), v.max(w)));
            covered[v] = true;
            covered[w] = true;
        }
    }
    RemovalSet { edges: d.into_iter().collect() }
}

/// χ₁ by scanning every removal set; exponential in `|E(F)|`.
pub fn robust_chromatic_by_removal_sets(f: &PatternGraph, caps: &Caps) -> Result<usize, Error> {
    caps.vertices(f)?;
    if f.vertex_count() == 0 {
        return Ok(0);
    }
    let mut best = usize::MAX;
    for d in enumerate_removal_sets(f, caps)? {
        best = best.min(chromatic_number(&f.without_edges(&d.edges), caps)?);
    }
    Ok(best)
}

/// `K(m, r, p)`: parts `{(i-1)m+1, …, im}`; cross pairs kept independently with probability `p`.
pub fn random_multipartite(m: usize, r: usize, p: f64, seed: u64) -> Result<PatternGraph, Error> {
    random_multipartite_stream(m, r, p, seed, 0)
}

/// [`random_multipartite`] drawn from ChaCha stream `stream` of `seed`.
pub fn random_multipartite_stream(m: usize, r: usize, p: f64, seed: u64, stream: u64) -> Result<PatternGraph, Error> {
    if m == 0 || r == 0 {
        return Err(Error::Parameter(format!("need m, r >= 1 (got m={m}, r={r})")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = m * r;
    let mut g = PatternGraph::empty(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if (u - 1) / m != (v - 1) / m && rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    pub edges: usize,
    pub chi: usize,
    pub chi1: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub m: usize,
    pub r: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
    /// Fraction of trials with χ₁ = r.
    pub frequency: f64,
    pub log: Vec<TrialRecord>,
}

/// One trial of the experiment: sample from stream `trial`, compute χ and χ₁.
pub fn chi1_trial(m: usize, r: usize, p: f64, seed: u64, trial: u64) -> Result<TrialRecord, Error> {
    let g = random_multipartite_stream(m, r, p, seed, trial)?;
    let caps = Caps { max_vertices: m * r, max_edges: usize::MAX };
    Ok(TrialRecord {
        trial,
        edges: g.edge_count(),
        chi: chromatic_number(&g, &caps)?,
        chi1: robust_chromatic(&g, &caps)?,
    })
}

/// Summarises trial records (in any order) into a report sorted by trial.
pub fn experiment_report(m: usize, r: usize, p: f64, seed: u64, mut log: Vec<TrialRecord>) -> ExperimentReport {
    log.sort_by_key(|t| t.trial);
    let hits = log.iter().filter(|t| t.chi1 == r).count();
    let trials = log.len() as u64;
    let frequency = if log.is_empty() { 0.0 } else { hits as f64 / log.len() as f64 };
    ExperimentReport { m, r, p, trials, seed, rng: RNG_NAME, frequency, log }
}

/// Sequential experiment; trial `t` uses stream `t` of `seed`.
pub fn chi1_experiment(m: usize, r: usize, p: f64, trials: u64, seed: u64) -> Result<ExperimentReport, Error> {
    let log = (0..trials).map(|t| chi1_trial(m, r, p, seed, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(experiment_report(m, r, p, seed, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn k(parts: &[usize]) -> PatternGraph {
        PatternGraph::complete_multipartite(parts)
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&PatternGraph::complete(4), &caps()), Ok(4));
        assert_eq!(chromatic_number(&PatternGraph::cycle(5), &caps()), Ok(3));
        assert_eq!(chromatic_number(&PatternGraph::cycle(6), &caps()), Ok(2));
        assert_eq!(chromatic_number(&PatternGraph::empty(3), &caps()), Ok(1));
        assert_eq!(chromatic_number(&PatternGraph::empty(0), &caps()), Ok(0));
        assert_eq!(chromatic_number(&k(&[3, 3, 3]), &caps()), Ok(3));
        // Petersen graph
        let petersen = PatternGraph::from_edges(
            10,
            [
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 10),
                (6, 8),
                (8, 10),
                (7, 10),
                (7, 9),
                (6, 9),
            ],
        )
        .unwrap();
        assert_eq!(chromatic_number(&petersen, &caps()), Ok(3));
        assert!(chromatic_number(&PatternGraph::empty(17), &caps()).is_err());
    }

    #[test]
    fn selection_images() {
        let c3 = PatternGraph::cycle(3);
        assert!(is_selection_image(&c3, &[(1, 2), (2, 3), (1, 3)]));
        let k4 = PatternGraph::complete(4);
        assert!(is_selection_image(&k4, &[(1, 2), (3, 4)]));
        assert!(!is_selection_image(&k4, &[(1, 2), (1, 3)]));
        let star = PatternGraph::star(3);
        assert!(is_selection_image(&star, &[(1, 2), (1, 3), (1, 4)]));
        assert_eq!(robust_chromatic(&star, &caps()), Ok(1));
        // not a subset of E(F)
        assert!(!is_selection_image(&star, &[(2, 3), (1, 4)]));
    }

    #[test]
    fn removal_set_enumeration() {
        assert_eq!(enumerate_removal_sets(&PatternGraph::cycle(3), &caps()).unwrap().len(), 4);
        assert_eq!(enumerate_removal_sets(&PatternGraph::complete(2), &caps()).unwrap().len(), 1);
        assert_eq!(enumerate_removal_sets(&PatternGraph::path(3), &caps()).unwrap().len(), 1);
        assert!(enumerate_removal_sets(&PatternGraph::complete(9), &caps()).is_err());
    }

    #[test]
    fn robust_examples() {
        assert_eq!(robust_chromatic(&PatternGraph::cycle(3), &caps()), Ok(1));
        assert_eq!(robust_chromatic(&k(&[3, 3, 3]), &caps()), Ok(3));
        assert_eq!(robust_chromatic(&k(&[2, 2, 2]), &caps()), Ok(2));
        assert_eq!(robust_chromatic(&PatternGraph::complete(2), &caps()), Ok(1));
        assert_eq!(robust_chromatic(&PatternGraph::empty(3), &caps()), Ok(1));
        assert_eq!(robust_chromatic(&PatternGraph::empty(0), &caps()), Ok(0));
        assert_eq!(robust_chromatic(&PatternGraph::complete(4), &caps()), Ok(2));
        assert_eq!(robust_chromatic(&PatternGraph::complete(7), &caps()), Ok(3));
    }

    #[test]
    fn witness_is_consistent() {
        for g in [k(&[3, 3, 3]), k(&[2, 3, 3]), PatternGraph::complete(6), PatternGraph::cycle(5)] {
            let w = robust_witness(&g, &caps()).unwrap();
            assert!(is_selection_image(&g, &w.removal.edges));
            let rest = g.without_edges(&w.removal.edges);
            assert!(rest.edges().all(|(u, v)| w.colouring[u - 1] != w.colouring[v - 1]));
            assert!(w.colouring.iter().all(|&c| c < w.chi1));
        }
    }

    #[test]
    fn multipartite_extremes() {
        let full = random_multipartite(3, 3, 1.0, 7).unwrap();
        assert_eq!(full, k(&[3, 3, 3]));
        assert_eq!(robust_chromatic(&full, &caps()), Ok(3));
        assert_eq!(random_multipartite(4, 3, 0.0, 7).unwrap().edge_count(), 0);
        let a = random_multipartite(5, 3, 0.5, 99).unwrap();
        assert_eq!(a, random_multipartite(5, 3, 0.5, 99).unwrap());
        assert_eq!(a.vertex_count(), 15);
        assert!(random_multipartite(0, 3, 0.5, 1).is_err());
        assert!(random_multipartite(2, 3, 1.5, 1).is_err());
    }

    #[test]
    fn experiment_full_bipartite() {
        let report = chi1_experiment(6, 2, 1.0, 3, 5).unwrap();
        assert_eq!(report.frequency, 1.0);
        assert!(report.log.iter().all(|t| t.chi == 2 && t.chi1 == 2 && t.edges == 36));
        let removal = enumerate_removal_sets(&k(&[3, 3]), &caps()).unwrap();
        assert!(!removal.is_empty());
        for d in removal {
            let rest = k(&[3, 3]).without_edges(&d.edges);
            assert!(rest.edge_count() > 0);
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = PatternGraph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                PatternGraph::from_edges(n, pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(e, _)| *e)).unwrap()
            })
        })
    }

    /// Brute force over all selection functions f (product of degrees).
    fn chi1_by_selections(g: &PatternGraph) -> usize {
        let adj = g.adjacency();
        let verts = g.non_isolated();
        if g.vertex_count() == 0 {
            return 0;
        }
        let mut best = usize::MAX;
        let mut idx = vec![0usize; verts.len()];
        loop {
            let removed: Vec<(usize, usize)> = verts
                .iter()
                .zip(&idx)
                .map(|(&v, &i)| {
                    let w = adj[v][i];
                    (v.min(w), v.max(w))
                })
                .collect();
            best = best.min(chromatic_number(&g.without_edges(&removed), &Caps::default()).unwrap());
            let mut pos = 0;
            loop {
                if pos == verts.len() {
                    return best;
                }
                idx[pos] += 1;
                if idx[pos] < adj[verts[pos]].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chi1_routes_agree(g in arb_graph(7).prop_filter("selection count", |g| {
            g.adjacency().iter().filter(|a| !a.is_empty()).map(|a| a.len() as u64).product::<u64>() < 50_000
        })) {
            let by_colouring = robust_chromatic(&g, &caps()).unwrap();
            prop_assert_eq!(by_colouring, chi1_by_selections(&g));
            if g.edge_count() <= 14 {
                prop_assert_eq!(by_colouring, robust_chromatic_by_removal_sets(&g, &caps()).unwrap());
            }
            if g.edge_count() > 0 {
                prop_assert!(by_colouring >= 1);
                prop_assert!(by_colouring <= chromatic_number(&g, &caps()).unwrap());
            }
        }

        #[test]
        fn hall_certificate_matches_matching(g in arb_graph(6).prop_filter("edge cap", |g| g.edge_count() <= 10)) {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let images: BTreeSet<Vec<(usize, usize)>> =
                enumerate_removal_sets(&g, &caps()).unwrap().into_iter().map(|d| d.edges).collect();
            for mask in 0u32..(1 << edges.len()) {
                let d: Vec<(usize, usize)> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                let hall = is_selection_image(&g, &d);
                let explicit = selection_for(&g, &d);
                prop_assert_eq!(hall, explicit.is_some());
                prop_assert_eq!(hall, images.contains(&d));
                if let Some(f) = explicit {
                    let image: BTreeSet<(usize, usize)> = f.iter().flatten().copied().collect();
                    prop_assert_eq!(image, d.iter().copied().collect::<BTreeSet<_>>());
                    for v in g.non_isolated() {
                        let (a, b) = f[v].unwrap();
                        prop_assert!(a == v || b == v);
                    }
                }
            }
        }

        #[test]
        fn chi1_isomorphism_invariant(g in arb_graph(7), seed in any::<u64>()) {
            let n = g.vertex_count();
            let mut perm: Vec<usize> = (1..=n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..n).rev() {
                perm.swap(i, rand::Rng::gen_range(&mut rng, 0..=i));
            }
            prop_assert_eq!(robust_chromatic(&g, &caps()), robust_chromatic(&g.relabel(&perm), &caps()));
            prop_assert_eq!(chromatic_number(&g, &caps()), chromatic_number(&g.relabel(&perm), &caps()));
        }
    }
}

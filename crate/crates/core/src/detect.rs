//! s-copy detection by backtracking over pattern vertices.
//!
//! Pattern vertices are placed in a connectivity-respecting order. When a
//! vertex is placed, a q-edge is chosen for every pattern edge back to an
//! already placed neighbour. Each placed vertex tracks the minimum weight
//! seen so far at its host; a new weight `w` is admissible iff
//! `w + min >= s`, which is exactly the pairwise condition of an s-copy.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::{Error, PatternGraph, QEdge, QGraph};

/// Witness of an s-copy: where each non-isolated pattern vertex goes and
/// which q-edge plays each pattern edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    /// `(pattern vertex, host vertex)`, ascending by pattern vertex.
    pub vertex_map: Vec<(usize, usize)>,
    /// `(pattern edge, q-edge)`, ascending by pattern edge.
    pub edge_map: Vec<((usize, usize), QEdge)>,
}

impl Embedding {
    pub fn host_of(&self, pattern_vertex: usize) -> Option<usize> {
        self.vertex_map.binary_search_by_key(&pattern_vertex, |&(p, _)| p).ok().map(|i| self.vertex_map[i].1)
    }

    /// The q-edges used by the copy, as a q-graph on the host's `(n, q)`.
    pub fn to_qgraph(&self, n: usize, q: u32) -> QGraph {
        QGraph::from_edges(n, q, self.edge_map.iter().map(|&(_, e)| e)).expect("witness edges are distinct")
    }

    /// Checks every invariant of an s-copy witness against `h` and `f`.
    pub fn is_valid(&self, h: &QGraph, f: &PatternGraph, s: u32) -> bool {
        let non_isolated = f.non_isolated();
        if self.vertex_map.iter().map(|&(p, _)| p).collect::<Vec<_>>() != non_isolated {
            return false;
        }
        if h.n() < f.vertex_count() {
            return false;
        }
        let hosts: BTreeSet<usize> = self.vertex_map.iter().map(|&(_, x)| x).collect();
        if hosts.len() != self.vertex_map.len() || hosts.iter().any(|&x| x == 0 || x > h.n()) {
            return false;
        }
        if self.edge_map.len() != f.edge_count() {
            return false;
        }
        for (&(pe, qe), fe) in self.edge_map.iter().zip(f.edges()) {
            if pe != fe {
                return false;
            }
            let (Some(x), Some(y)) = (self.host_of(fe.0), self.host_of(fe.1)) else {
                return false;
            };
            if qe.support() != (x.min(y), x.max(y)) || !h.contains(&qe) {
                return false;
            }
        }
        for &(v, x) in &self.vertex_map {
            let weights: Vec<u32> =
                self.edge_map.iter().filter(|((a, b), _)| *a == v || *b == v).map(|(_, e)| e.weight_at(x)).collect();
            for i in 0..weights.len() {
                for j in i + 1..weights.len() {
                    if weights[i] + weights[j] < s {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// First s-copy of `f` in `h` in deterministic search order, if any.
pub fn contains_s_copy(h: &QGraph, f: &PatternGraph, s: u32) -> Result<Option<Embedding>, Error> {
    let mut found = None;
    for_each_s_copy(h, f, s, |emb| {
        found = Some(emb.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Up to `limit` embeddings with pairwise distinct vertex maps, in search order.
pub fn find_s_copies(h: &QGraph, f: &PatternGraph, s: u32, limit: usize) -> Result<Vec<Embedding>, Error> {
    if limit == 0 {
        return Err(Error::Parameter("limit must be at least 1".into()));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_s_copy(h, f, s, |emb| {
        if seen.insert(emb.vertex_map.clone()) {
            out.push(emb.clone());
        }
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Calls `visit` on every (vertex map, q-edge choice) witness of an s-copy.
///
/// Host vertices are tried in ascending order and parallel q-edges in
/// ascending canonical `(a, b)`, so the visiting order is deterministic.
pub fn for_each_s_copy<V>(h: &QGraph, f: &PatternGraph, s: u32, mut visit: V) -> Result<(), Error>
where
    V: FnMut(&Embedding) -> ControlFlow<()>,
{
    if s == 0 {
        return Err(Error::Threshold);
    }
    if f.vertex_count() == 0 {
        return Err(Error::EmptyPattern);
    }
    if h.n() < f.vertex_count() {
        return Ok(());
    }
    if f.edge_count() == 0 {
        let _ = visit(&Embedding { vertex_map: Vec::new(), edge_map: Vec::new() });
        return Ok(());
    }
    let mut search = Search::new(h, f, s);
    let _ = search.place(0, &mut visit);
    Ok(())
}

struct Search {
    n: usize,
    s: u32,
    /// Weight pairs `(w_i, w_j)` for the ordered pair `(i, j)`, at `i * (n+1) + j`.
    options: Vec<Vec<(u32, u32)>>,
    /// `reach[h][w]`: neighbours of `h` offering weight at least `w` at `h`.
    reach: Vec<Vec<usize>>,
    support_deg: Vec<usize>,
    order: Vec<usize>,
    pdeg: Vec<usize>,
    /// Per position: `(earlier position, pattern edge index)`.
    back: Vec<Vec<(usize, usize)>>,
    /// Per position: positions of all pattern neighbours.
    nbr_pos: Vec<Vec<usize>>,
    pattern_edges: Vec<(usize, usize)>,
    host_of: Vec<usize>,
    used: Vec<bool>,
    min_w: Vec<u32>,
    chosen: Vec<Option<QEdge>>,
}

impl Search {
    fn new(h: &QGraph, f: &PatternGraph, s: u32) -> Self {
        let n = h.n();
        let q = h.q();
        let mut options = vec![Vec::new(); (n + 1) * (n + 1)];
        for e in h.edges() {
            options[e.u * (n + 1) + e.v].push((e.a, e.b));
            options[e.v * (n + 1) + e.u].push((e.b, e.a));
        }
        let mut support_deg = vec![0; n + 1];
        let mut reach = vec![vec![0; q as usize + 2]; n + 1];
        for x in 1..=n {
            for y in 1..=n {
                let opts = &options[x * (n + 1) + y];
                if opts.is_empty() {
                    continue;
                }
                support_deg[x] += 1;
                let best = opts.iter().map(|o| o.0).max().unwrap_or(0);
                for r in &mut reach[x][..=best as usize] {
                    *r += 1;
                }
            }
        }

        let adj = f.adjacency();
        let order = placement_order(f, &adj);
        let mut pos_of = vec![usize::MAX; f.vertex_count() + 1];
        for (i, &v) in order.iter().enumerate() {
            pos_of[v] = i;
        }
        let pattern_edges: Vec<(usize, usize)> = f.edges().collect();
        let mut back = vec![Vec::new(); order.len()];
        for (ei, &(a, b)) in pattern_edges.iter().enumerate() {
            let (pa, pb) = (pos_of[a], pos_of[b]);
            let (early, late) = if pa < pb { (pa, pb) } else { (pb, pa) };
            back[late].push((early, ei));
        }
        for list in &mut back {
            list.sort_unstable();
        }
        let nbr_pos = order.iter().map(|&v| adj[v].iter().map(|&w| pos_of[w]).collect()).collect();
        let pdeg = order.iter().map(|&v| adj[v].len()).collect();
        let m = order.len();
        Search {
            n,
            s,
            options,
            reach,
            support_deg,
            order,
            pdeg,
            back,
            nbr_pos,
            chosen: vec![None; pattern_edges.len()],
            pattern_edges,
            host_of: vec![0; m],
            used: vec![false; n + 1],
            min_w: vec![u32::MAX; m],
        }
    }

    /// Neighbours still required after `pos` has been placed, for the vertex at `at`.
    fn pending(&self, at: usize, pos: usize) -> usize {
        self.nbr_pos[at].iter().filter(|&&p| p > pos).count()
    }

    /// Can the host of `at` still serve its pending edges given its current minimum weight?
    fn has_room(&self, at: usize, pos: usize) -> bool {
        let need = self.pending(at, pos);
        if need == 0 {
            return true;
        }
        let h = self.host_of[at];
        let w = self.s.saturating_sub(self.min_w[at]) as usize;
        let row = &self.reach[h];
        let avail = if self.min_w[at] == u32::MAX {
            row[0]
        } else if w < row.len() {
            row[w]
        } else {
            0
        };
        avail >= need
    }

    fn place<V>(&mut self, pos: usize, visit: &mut V) -> ControlFlow<()>
    where
        V: FnMut(&Embedding) -> ControlFlow<()>,
    {
        if pos == self.order.len() {
            return visit(&self.witness());
        }
        let d = self.pdeg[pos];
        let half = self.s.div_ceil(2) as usize;
        for x in 1..=self.n {
            if self.used[x] || self.support_deg[x] < d {
                continue;
            }
            if d >= 2 && half < self.reach[x].len() && self.reach[x][half] + 1 < d {
                continue;
            }
            if d >= 2 && half >= self.reach[x].len() {
                continue;
            }
            if self.back[pos].iter().any(|&(j, _)| self.options[self.host_of[j] * (self.n + 1) + x].is_empty()) {
                continue;
            }
            self.used[x] = true;
            self.host_of[pos] = x;
            let flow = self.assign(pos, 0, visit);
            self.used[x] = false;
            self.min_w[pos] = u32::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn assign<V>(&mut self, pos: usize, k: usize, visit: &mut V) -> ControlFlow<()>
    where
        V: FnMut(&Embedding) -> ControlFlow<()>,
    {
        if k == self.back[pos].len() {
            if !self.has_room(pos, pos) || self.back[pos].iter().any(|&(j, _)| !self.has_room(j, pos)) {
                return ControlFlow::Continue(());
            }
            return self.place(pos + 1, visit);
        }
        let (j, ei) = self.back[pos][k];
        let (hj, hx) = (self.host_of[j], self.host_of[pos]);
        let idx = hj * (self.n + 1) + hx;
        for oi in 0..self.options[idx].len() {
            let (wj, wx) = self.options[idx][oi];
            if wj.saturating_add(self.min_w[j]) < self.s || wx.saturating_add(self.min_w[pos]) < self.s {
                continue;
            }
            let saved = (self.min_w[j], self.min_w[pos]);
            self.min_w[j] = saved.0.min(wj);
            self.min_w[pos] = saved.1.min(wx);
            self.chosen[ei] = Some(QEdge::new(hj, hx, wj, wx).expect("host edge"));
            let flow = self.assign(pos, k + 1, visit);
            self.chosen[ei] = None;
            self.min_w[j] = saved.0;
            self.min_w[pos] = saved.1;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn witness(&self) -> Embedding {
        let mut vertex_map: Vec<(usize, usize)> = self.order.iter().zip(&self.host_of).map(|(&p, &x)| (p, x)).collect();
        vertex_map.sort_unstable();
        let edge_map =
            self.pattern_edges.iter().zip(&self.chosen).map(|(&pe, c)| (pe, c.expect("complete assignment"))).collect();
        Embedding { vertex_map, edge_map }
    }
}

/// Non-isolated pattern vertices, each next vertex maximising
/// (placed neighbours, degree) with ties to the smaller index.
fn placement_order(f: &PatternGraph, adj: &[Vec<usize>]) -> Vec<usize> {
    let candidates = f.non_isolated();
    let mut placed = vec![false; f.vertex_count() + 1];
    let mut order = Vec::with_capacity(candidates.len());
    while order.len() < candidates.len() {
        let mut best: Option<(usize, usize, usize)> = None;
        for &v in &candidates {
            if placed[v] {
                continue;
            }
            let linked = adj[v].iter().filter(|&&w| placed[w]).count();
            let key = (linked, adj[v].len(), v);
            let better = match best {
                None => true,
                Some((l, d, _)) => (linked, adj[v].len()) > (l, d),
            };
            if better {
                best = Some(key);
            }
        }
        let (_, _, v) = best.expect("unplaced vertex exists");
        placed[v] = true;
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{constructions, full_qgraph};

    fn qe(i: usize, j: usize, wi: u32, wj: u32) -> QEdge {
        QEdge::new(i, j, wi, wj).unwrap()
    }

    #[test]
    fn abstract_four_triangle() {
        let h = QGraph::from_edges(5, 3, [qe(1, 2, 1, 3), qe(2, 5, 1, 3), qe(1, 5, 3, 1)]).unwrap();
        let c3 = PatternGraph::cycle(3);
        let emb = contains_s_copy(&h, &c3, 4).unwrap().expect("4-triangle");
        assert!(emb.is_valid(&h, &c3, 4));
        assert!(contains_s_copy(&h, &c3, 5).unwrap().is_none());
    }

    #[test]
    fn primed_triple_is_not_a_copy() {
        // x'_2 = y'_2 = 1 gives 1 + 1 < 4 at vertex 2.
        let h = QGraph::from_edges(5, 3, [qe(1, 2, 3, 1), qe(2, 3, 1, 3), qe(1, 3, 3, 1)]).unwrap();
        assert!(contains_s_copy(&h, &PatternGraph::cycle(3), 4).unwrap().is_none());
    }

    #[test]
    fn single_edge_is_k2() {
        let h = QGraph::from_edges(4, 3, [qe(2, 4, 1, 1)]).unwrap();
        for s in 1..10 {
            assert!(contains_s_copy(&h, &PatternGraph::complete(2), s).unwrap().is_some());
        }
    }

    #[test]
    fn universal_tree_has_no_cycles() {
        for q in 2..=4 {
            let u = constructions::universal_tree(q, 6).unwrap();
            for k in 3..=5 {
                assert!(contains_s_copy(&u, &PatternGraph::cycle(k), q + 1).unwrap().is_none());
            }
        }
    }

    #[test]
    fn isolated_vertices_need_room() {
        let h = QGraph::from_edges(3, 1, [qe(1, 2, 1, 1)]).unwrap();
        let f = PatternGraph::from_edges(4, [(1, 2)]).unwrap();
        assert!(contains_s_copy(&h, &f, 2).unwrap().is_none());
        let f = PatternGraph::from_edges(3, [(2, 3)]).unwrap();
        let emb = contains_s_copy(&h, &f, 2).unwrap().unwrap();
        assert_eq!(emb.vertex_map.len(), 2);
        assert!(emb.is_valid(&h, &f, 2));
        let edgeless = PatternGraph::empty(3);
        assert!(contains_s_copy(&QGraph::new(3, 1).unwrap(), &edgeless, 2).unwrap().is_some());
    }

    #[test]
    fn errors() {
        let h = full_qgraph(3, 2).unwrap();
        assert_eq!(contains_s_copy(&h, &PatternGraph::empty(0), 3), Err(Error::EmptyPattern));
        assert_eq!(contains_s_copy(&h, &PatternGraph::cycle(3), 0), Err(Error::Threshold));
        assert!(find_s_copies(&h, &PatternGraph::cycle(3), 3, 0).is_err());
    }

    #[test]
    fn find_limit_and_empty_host() {
        let h = constructions::blowup(&PatternGraph::complete(3), 2);
        let c3 = PatternGraph::cycle(3);
        let one = find_s_copies(&h, &c3, 3, 1).unwrap();
        assert_eq!(one, vec![contains_s_copy(&h, &c3, 3).unwrap().unwrap()]);
        let all = find_s_copies(&h, &c3, 3, 100).unwrap();
        // K3 has 6 automorphisms, hence 6 distinct vertex maps.
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|e| e.is_valid(&h, &c3, 3)));
        let empty = QGraph::new(3, 2).unwrap();
        assert!(find_s_copies(&empty, &c3, 3, 100).unwrap().is_empty());
    }
}

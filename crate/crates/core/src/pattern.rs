//! Ordinary simple graphs used as forbidden patterns and as supports.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// Simple graph on vertices `1..=n`. Isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl PatternGraph {
    pub fn empty(n: usize) -> Self {
        PatternGraph { n, edges: BTreeSet::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = PatternGraph::empty(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::Duplicate(alloc::format!("{{{u},{v}}}")));
            }
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, Error> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::VertexRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Adjacency lists indexed by vertex (index 0 unused), ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn non_isolated(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            seen.insert(u);
            seen.insert(v);
        }
        seen.into_iter().collect()
    }

    /// Connected components as sorted vertex lists, isolated vertices included.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True when some component has more edges than vertices.
    pub fn has_dense_component(&self) -> bool {
        self.components().iter().any(|c| {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            let e = self.edges.iter().filter(|(u, _)| set.contains(u)).count();
            e > c.len()
        })
    }

    /// Image of the graph under `perm`, where `perm[v-1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> PatternGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = PatternGraph::empty(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(perm[u - 1], perm[v - 1]).expect("permutation stays in range");
        }
        g
    }

    /// Graph obtained by deleting the given edges (vertices kept).
    pub fn without_edges<'a, I>(&self, removed: I) -> PatternGraph
    where
        I: IntoIterator<Item = &'a (usize, usize)>,
    {
        let mut g = self.clone();
        for e in removed {
            g.edges.remove(&(e.0.min(e.1), e.0.max(e.1)));
        }
        g
    }

    pub fn complete(k: usize) -> Self {
        let mut g = PatternGraph::empty(k);
        for u in 1..=k {
            for v in u + 1..=k {
                g.edges.insert((u, v));
            }
        }
        g
    }

    /// Cycle `1-2-…-k-1`; requires `k >= 3`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycles need at least 3 vertices");
        let mut g = PatternGraph::path(k);
        g.edges.insert((1, k));
        g
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Self {
        let mut g = PatternGraph::empty(k);
        for v in 1..k {
            g.edges.insert((v, v + 1));
        }
        g
    }

    /// `K_{1,t}` with centre 1.
    pub fn star(t: usize) -> Self {
        let mut g = PatternGraph::empty(t + 1);
        for v in 2..=t + 1 {
            g.edges.insert((1, v));
        }
        g
    }

    /// Complete multipartite graph; parts are consecutive index blocks.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut part = Vec::with_capacity(n + 1);
        part.push(usize::MAX);
        for (i, &size) in parts.iter().enumerate() {
            part.extend(core::iter::repeat_n(i, size));
        }
        let mut g = PatternGraph::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                if part[u] != part[v] {
                    g.edges.insert((u, v));
                }
            }
        }
        g
    }

    /// Part sizes of the Turán graph `T(n, r)`, larger parts first.
    pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
        assert!(r >= 1);
        (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
    }

    /// Turán graph `T(n, r)`; `T(n, 1)` is edgeless.
    pub fn turan(n: usize, r: usize) -> Self {
        PatternGraph::complete_multipartite(&Self::turan_parts(n, r))
    }

    /// Built-in patterns: `c<k>` cycle, `p<k>` path on k vertices, `k<k>`
    /// complete graph, `k<r>,<s>[,<t>…]` complete multipartite (also written
    /// `k<r><s><t>…` with one-digit parts, e.g. `k333`), `star<t>`.
    pub fn named(name: &str) -> Result<Self, Error> {
        let bad = || Error::UnknownPattern(name.to_string());
        let name = name.trim().to_ascii_lowercase();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = name.strip_prefix("star") {
            let t = num(rest)?;
            if t == 0 {
                return Err(bad());
            }
            return Ok(PatternGraph::star(t));
        }
        if let Some(rest) = name.strip_prefix('c') {
            let k = num(rest)?;
            if k < 3 {
                return Err(bad());
            }
            return Ok(PatternGraph::cycle(k));
        }
        if let Some(rest) = name.strip_prefix('p') {
            let k = num(rest)?;
            if k < 2 {
                return Err(bad());
            }
            return Ok(PatternGraph::path(k));
        }
        if let Some(rest) = name.strip_prefix('k') {
            // comma-free strings of three or more digits list one-digit part sizes
            let parts = if !rest.contains(',') && rest.len() >= 3 && rest.bytes().all(|b| b.is_ascii_digit()) {
                rest.bytes().map(|b| (b - b'0') as usize).collect()
            } else {
                rest.split(',').map(num).collect::<Result<Vec<_>, _>>()?
            };
            if parts.contains(&0) {
                return Err(bad());
            }
            return Ok(match parts.as_slice() {
                [k] => PatternGraph::complete(*k),
                _ => PatternGraph::complete_multipartite(&parts),
            });
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_patterns() {
        assert_eq!(PatternGraph::named("c5").unwrap().edge_count(), 5);
        assert_eq!(PatternGraph::named("p5").unwrap().edge_count(), 4);
        assert_eq!(PatternGraph::named("k3,3,3").unwrap().edge_count(), 27);
        assert_eq!(PatternGraph::named("k2,3,3").unwrap().edge_count(), 21);
        assert_eq!(PatternGraph::named("k4").unwrap().edge_count(), 6);
        assert_eq!(PatternGraph::named("k12").unwrap().edge_count(), 66);
        assert_eq!(PatternGraph::named("k333").unwrap(), PatternGraph::named("k3,3,3").unwrap());
        assert!(PatternGraph::named("k303").is_err());
        assert_eq!(PatternGraph::named("star3").unwrap().vertex_count(), 4);
        assert!(PatternGraph::named("c2").is_err());
        assert!(PatternGraph::named("q7").is_err());
        assert!(PatternGraph::named("k2,0").is_err());
    }

    #[test]
    fn rejects_loops_and_range() {
        let mut g = PatternGraph::empty(3);
        assert_eq!(g.add_edge(2, 2), Err(Error::Loop(2)));
        assert!(g.add_edge(0, 1).is_err());
        assert!(g.add_edge(1, 4).is_err());
        assert_eq!(g.add_edge(3, 1), Ok(true));
        assert_eq!(g.add_edge(1, 3), Ok(false));
        assert!(PatternGraph::from_edges(3, [(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn turan_graph_sizes() {
        assert_eq!(PatternGraph::turan(7, 2).edge_count(), 12);
        assert_eq!(PatternGraph::turan(6, 3).edge_count(), 12);
        assert_eq!(PatternGraph::turan(5, 1).edge_count(), 0);
        assert_eq!(PatternGraph::turan_parts(7, 3), vec![3, 2, 2]);
    }

    #[test]
    fn dense_components() {
        assert!(!PatternGraph::cycle(4).has_dense_component());
        assert!(!PatternGraph::star(3).has_dense_component());
        assert!(PatternGraph::complete(4).has_dense_component());
        assert!(PatternGraph::named("k2,2,2").unwrap().has_dense_component());
    }

    #[test]
    fn components_with_isolated() {
        let g = PatternGraph::from_edges(5, [(1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 2], vec![3], vec![4, 5]]);
        assert_eq!(g.non_isolated(), vec![1, 2, 4, 5]);
    }
}

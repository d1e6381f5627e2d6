//! q-edges, q-graphs, slices and layers.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{low_threshold, pairs, Error, PatternGraph};

/// Weighted edge in canonical sparse form: support `{u, v}` with `u < v`,
/// weight `a` at `u` and `b` at `v`. Ordering is lexicographic on `(u, v, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QEdge {
    pub u: usize,
    pub v: usize,
    pub a: u32,
    pub b: u32,
}

impl QEdge {
    /// Edge with weight `wi` at `i` and `wj` at `j`, in either vertex order.
    ///
    /// Only structural checks happen here (`i != j`, nonzero weights,
    /// 1-based indices); range checks against `(n, q)` happen on insertion.
    pub fn new(i: usize, j: usize, wi: u32, wj: u32) -> Result<Self, Error> {
        if i == j {
            return Err(Error::Loop(i));
        }
        if i == 0 || j == 0 {
            return Err(Error::VertexRange { vertex: 0, n: i.max(j) });
        }
        if wi == 0 || wj == 0 {
            return Err(Error::WeightRange { weight: 0, q: wi.max(wj) });
        }
        Ok(if i < j { QEdge { u: i, v: j, a: wi, b: wj } } else { QEdge { u: j, v: i, a: wj, b: wi } })
    }

    pub fn support(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// Entry of the dense vector at `vertex` (zero off the support).
    pub fn weight_at(&self, vertex: usize) -> u32 {
        if vertex == self.u {
            self.a
        } else if vertex == self.v {
            self.b
        } else {
            0
        }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b
    }

    fn check(&self, n: usize, q: u32) -> Result<(), Error> {
        if self.v > n {
            return Err(Error::VertexRange { vertex: self.v, n });
        }
        for w in [self.a, self.b] {
            if w > q {
                return Err(Error::WeightRange { weight: w, q });
            }
        }
        Ok(())
    }
}

impl fmt::Display for QEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.u, self.v, self.a, self.b)
    }
}

/// `x ∩_s y`: the indices whose entries in `x` and `y` sum to at least `s`.
pub fn s_sum_intersection(x: &QEdge, y: &QEdge, s: u32) -> Vec<usize> {
    let mut idx: Vec<usize> = [x.u, x.v, y.u, y.v].into_iter().collect();
    idx.sort_unstable();
    idx.dedup();
    idx.retain(|&i| x.weight_at(i) + y.weight_at(i) >= s);
    idx
}

/// A subset of `Q(n, 2)` with an explicit weight cap `q`.
///
/// Equality is set equality on canonical edges plus matching `(n, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QGraph {
    n: usize,
    q: u32,
    edges: BTreeSet<QEdge>,
}

impl QGraph {
    pub fn new(n: usize, q: u32) -> Result<Self, Error> {
        if n < 1 {
            return Err(Error::VertexCount { n, min: 1 });
        }
        if q < 1 {
            return Err(Error::WeightCap(q));
        }
        Ok(QGraph { n, q, edges: BTreeSet::new() })
    }

    pub fn from_edges<I>(n: usize, q: u32, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = QEdge>,
    {
        let mut h = QGraph::new(n, q)?;
        for e in edges {
            if !h.insert(e)? {
                return Err(Error::Duplicate(format!("({e})")));
            }
        }
        Ok(h)
    }

    /// Inserts a validated edge; `Ok(false)` when it was already present.
    pub fn insert(&mut self, e: QEdge) -> Result<bool, Error> {
        e.check(self.n, self.q)?;
        Ok(self.edges.insert(e))
    }

    pub fn remove(&mut self, e: &QEdge) -> bool {
        self.edges.remove(e)
    }

    pub fn contains(&self, e: &QEdge) -> bool {
        self.edges.contains(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical `(u, v, a, b)` order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &QEdge> + Clone + '_ {
        self.edges.iter()
    }

    pub fn is_subset(&self, other: &QGraph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Keeps the edges satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&QEdge) -> bool) -> QGraph {
        QGraph { n: self.n, q: self.q, edges: self.edges.iter().filter(|e| keep(e)).copied().collect() }
    }

    pub fn union(&self, other: &QGraph) -> QGraph {
        assert_eq!((self.n, self.q), (other.n, other.q));
        QGraph { n: self.n, q: self.q, edges: self.edges.union(&other.edges).copied().collect() }
    }

    /// `Q(n, 2) \ H`.
    pub fn complement(&self) -> QGraph {
        let full = full_qgraph(self.n.max(2), self.q).expect("valid parameters");
        full.filter(|e| !self.edges.contains(e))
    }

    /// Image under a vertex permutation, `perm[v-1]` being the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> QGraph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| QEdge::new(perm[e.u - 1], perm[e.v - 1], e.a, e.b).expect("permutation"))
            .collect();
        QGraph { n: self.n, q: self.q, edges }
    }

    /// `H⃗_{a,b}`: arc `i → j` iff the q-edge with weight `a` at `i` and `b` at `j` is present.
    pub fn slice(&self, p: SlicePair) -> DiGraph {
        let mut arcs = BTreeSet::new();
        for e in &self.edges {
            if (e.a, e.b) == (p.a, p.b) {
                arcs.insert((e.u, e.v));
            }
            if (e.b, e.a) == (p.a, p.b) {
                arcs.insert((e.v, e.u));
            }
        }
        DiGraph { n: self.n, arcs }
    }

    /// `H⃗_{(a,b),(c,d)} = H⃗_{a,b} ∩ H⃗_{c,d}`.
    pub fn double_slice(&self, p: SlicePair, r: SlicePair) -> DiGraph {
        let first = self.slice(p);
        let second = self.slice(r);
        DiGraph { n: self.n, arcs: first.arcs.intersection(&second.arcs).copied().collect() }
    }
}

/// `Q(n, 2)` for weight cap `q`: every pair carries all `q²` weightings.
pub fn full_qgraph(n: usize, q: u32) -> Result<QGraph, Error> {
    if n < 2 {
        return Err(Error::VertexCount { n, min: 2 });
    }
    let mut h = QGraph::new(n, q)?;
    for u in 1..=n {
        for v in u + 1..=n {
            for a in 1..=q {
                for b in 1..=q {
                    h.edges.insert(QEdge { u, v, a, b });
                }
            }
        }
    }
    debug_assert_eq!(h.len(), (q * q) as usize * pairs(n));
    Ok(h)
}

/// `H^L`: edges whose both weights are at least `⌈(q+1)/2⌉`.
pub fn low_layer(h: &QGraph) -> QGraph {
    let t = low_threshold(h.q);
    h.filter(|e| e.a.min(e.b) >= t)
}

/// `S_H`: the simple graph of distinct supports.
pub fn support_graph(h: &QGraph) -> PatternGraph {
    let mut g = PatternGraph::empty(h.n);
    for e in &h.edges {
        g.add_edge(e.u, e.v).expect("edges are validated on insertion");
    }
    g
}

/// Ordered weight pair `(a, b)` selecting a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlicePair {
    pub a: u32,
    pub b: u32,
}

impl SlicePair {
    pub fn new(a: u32, b: u32, q: u32) -> Result<Self, Error> {
        for w in [a, b] {
            if w < 1 || w > q {
                return Err(Error::WeightRange { weight: w, q });
            }
        }
        Ok(SlicePair { a, b })
    }

    pub fn reversed(self) -> Self {
        SlicePair { a: self.b, b: self.a }
    }

    /// `(ā, b̄)` with `ᾱ = q + 1 − α`.
    pub fn conjugate(self, q: u32) -> Self {
        SlicePair { a: q + 1 - self.a, b: q + 1 - self.b }
    }
}

/// Directed graph on `[n]` given by its arc set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    pub n: usize,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }

    /// Forgets orientations and merges antiparallel arcs.
    pub fn undirected(&self) -> PatternGraph {
        let mut g = PatternGraph::empty(self.n);
        for &(i, j) in &self.arcs {
            g.add_edge(i, j).expect("arcs come from valid edges");
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn qe(i: usize, j: usize, wi: u32, wj: u32) -> QEdge {
        QEdge::new(i, j, wi, wj).unwrap()
    }

    #[test]
    fn full_counts() {
        assert_eq!(full_qgraph(3, 2).unwrap().len(), 12);
        assert_eq!(full_qgraph(2, 3).unwrap().len(), 9);
        assert_eq!(full_qgraph(5, 1).unwrap().len(), 10);
        assert!(full_qgraph(1, 2).is_err());
        assert!(full_qgraph(3, 0).is_err());
        for q in 1..=6u32 {
            for n in 2..=12 {
                assert_eq!(full_qgraph(n, q).unwrap().len(), (q * q) as usize * pairs(n));
            }
        }
    }

    #[test]
    fn canonical_edge_form() {
        let e = qe(5, 2, 3, 1);
        assert_eq!(e, QEdge { u: 2, v: 5, a: 1, b: 3 });
        assert_eq!(e.weight_at(5), 3);
        assert_eq!(e.weight_at(4), 0);
        assert!(QEdge::new(2, 2, 1, 1).is_err());
        assert!(QEdge::new(1, 2, 0, 1).is_err());
        let mut h = QGraph::new(4, 2).unwrap();
        assert!(matches!(h.insert(qe(1, 2, 3, 1)), Err(Error::WeightRange { weight: 3, q: 2 })));
        assert!(matches!(h.insert(qe(1, 5, 1, 1)), Err(Error::VertexRange { vertex: 5, n: 4 })));
        assert!(QGraph::from_edges(4, 2, [qe(1, 2, 1, 1), qe(2, 1, 1, 1)]).is_err());
    }

    #[test]
    fn sum_intersection_examples() {
        // (1,3,0,0,0) and (0,1,0,0,3) meet at vertex 2 for s = 4.
        let x = qe(1, 2, 1, 3);
        let y = qe(2, 5, 1, 3);
        assert_eq!(s_sum_intersection(&x, &y, 4), vec![2]);
        assert_eq!(s_sum_intersection(&x, &x, 2), vec![1, 2]);
        let z = qe(3, 4, 1, 1);
        assert_eq!(s_sum_intersection(&x, &z, 1), vec![1, 2, 3, 4]);
        assert!(s_sum_intersection(&x, &z, 4).is_empty());
    }

    #[test]
    fn low_layer_counts() {
        for n in 2..=7 {
            assert_eq!(low_layer(&full_qgraph(n, 2).unwrap()).len(), pairs(n));
            assert_eq!(low_layer(&full_qgraph(n, 3).unwrap()).len(), 4 * pairs(n));
            for q in 1..=6u32 {
                let full = full_qgraph(n, q).unwrap();
                let kept = (q - low_threshold(q) + 1) as usize;
                assert_eq!(full.len() - low_layer(&full).len(), ((q * q) as usize - kept * kept) * pairs(n));
            }
        }
    }

    #[test]
    fn support_of_full_and_empty() {
        let full = full_qgraph(5, 2).unwrap();
        assert_eq!(support_graph(&full), PatternGraph::complete(5));
        let empty = QGraph::new(5, 2).unwrap();
        assert_eq!(support_graph(&empty), PatternGraph::empty(5));
    }

    #[test]
    fn slices_and_double_slices() {
        let h = QGraph::from_edges(3, 2, [qe(1, 2, 1, 2), qe(1, 2, 2, 1), qe(2, 3, 1, 2), qe(1, 3, 2, 2)]).unwrap();
        let s12 = h.slice(SlicePair::new(1, 2, 2).unwrap());
        assert_eq!(s12.arcs.iter().copied().collect::<Vec<_>>(), vec![(1, 2), (2, 1), (2, 3)]);
        let both = h.double_slice(SlicePair { a: 1, b: 2 }, SlicePair { a: 2, b: 1 });
        assert_eq!(both.arcs.iter().copied().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert_eq!(both.undirected().edge_count(), 1);
        let s22 = h.slice(SlicePair { a: 2, b: 2 });
        assert_eq!(s22.undirected().edge_count(), 1);
        assert_eq!(SlicePair { a: 1, b: 3 }.conjugate(3), SlicePair { a: 3, b: 1 });
        assert!(h.slice(SlicePair { a: 1, b: 1 }).arcs.is_empty());
        assert!(SlicePair::new(0, 1, 2).is_err());
    }

    fn arb_qgraph() -> impl Strategy<Value = QGraph> {
        (2usize..7, 1u32..5).prop_flat_map(|(n, q)| {
            let full: Vec<QEdge> = full_qgraph(n, q).unwrap().edges().copied().collect();
            let len = full.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                QGraph::from_edges(n, q, full.iter().zip(&mask).filter(|(_, &m)| m).map(|(e, _)| *e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn slice_partition(h in arb_qgraph()) {
            let q = h.q();
            let mut total = 0;
            for a in 1..=q {
                for b in a + 1..=q {
                    total += h.slice(SlicePair { a, b }).arc_count();
                }
                total += h.slice(SlicePair { a, b: a }).undirected().edge_count();
            }
            prop_assert_eq!(total, h.len());
        }

        #[test]
        fn low_layer_idempotent_and_monotone(h in arb_qgraph()) {
            let l = low_layer(&h);
            prop_assert!(l.is_subset(&h));
            prop_assert_eq!(low_layer(&l), l);
        }

        #[test]
        fn sum_intersection_symmetric_antitone(
            (x, y) in (1u32..5).prop_flat_map(|q| {
                let edge = (1usize..6, 1usize..6, 1..=q, 1..=q)
                    .prop_filter("loop", |(i, j, _, _)| i != j)
                    .prop_map(|(i, j, a, b)| QEdge::new(i, j, a, b).unwrap());
                (edge.clone(), edge)
            }),
            s in 1u32..9,
        ) {
            prop_assert_eq!(s_sum_intersection(&x, &y, s), s_sum_intersection(&y, &x, s));
            let looser = s_sum_intersection(&x, &y, s);
            for i in s_sum_intersection(&x, &y, s + 1) {
                prop_assert!(looser.contains(&i));
            }
        }
    }
}

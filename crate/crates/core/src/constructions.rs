//! Lower-bound constructions together with their closed-form sizes.

use alloc::format;
use alloc::vec::Vec;

use crate::{full_qgraph, low_threshold, pairs, robust, Caps, Error, PatternGraph, QEdge, QGraph};

fn edge(i: usize, j: usize, wi: u32, wj: u32) -> QEdge {
    QEdge::new(i, j, wi, wj).expect("construction edge")
}

/// Ordered partition `A_1, …, A_r` of `[n]` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    /// `block_of[v]` is the 1-based block index of `v`.
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = alloc::vec![0; n + 1];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parameter(format!("block {} is empty", i + 1)));
            }
            for &v in block {
                if v == 0 || v > n {
                    return Err(Error::VertexRange { vertex: v, n });
                }
                if block_of[v] != 0 {
                    return Err(Error::Parameter(format!("vertex {v} appears twice")));
                }
                block_of[v] = i + 1;
            }
        }
        if blocks.is_empty() {
            return Err(Error::Parameter("partition needs at least one block".into()));
        }
        Ok(Partition { n, blocks, block_of })
    }

    /// Consecutive blocks of sizes as equal as possible, larger blocks first.
    pub fn balanced(n: usize, r: usize) -> Result<Self, Error> {
        if r == 0 || r > n {
            return Err(Error::Parameter(format!("cannot split {n} vertices into {r} nonempty blocks")));
        }
        let mut next = 1;
        let blocks = PatternGraph::turan_parts(n, r)
            .into_iter()
            .map(|size| {
                let b: Vec<usize> = (next..next + size).collect();
                next += size;
                b
            })
            .collect();
        Partition::new(blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }
}

/// `U_{q,n}`: all q-edges with weight sum below `q+1`, plus those with sum
/// exactly `q+1` whose smaller weight sits on the smaller index.
pub fn universal_tree(q: u32, n: usize) -> Result<QGraph, Error> {
    let full = full_qgraph(n, q)?;
    Ok(full.filter(|e| e.total() < q + 1 || (e.total() == q + 1 && e.a < e.b)))
}

/// `|U_{q,n}| = ⌊q²/2⌋·C(n,2)`.
pub fn universal_tree_size(q: u32, n: usize) -> usize {
    (q * q / 2) as usize * pairs(n)
}

/// `H_{G,q}`: every q-edge whose support is an edge of `g`.
pub fn blowup(g: &PatternGraph, q: u32) -> QGraph {
    let mut h = QGraph::new(g.vertex_count().max(1), q).expect("q >= 1");
    for (u, v) in g.edges() {
        for a in 1..=q {
            for b in 1..=q {
                h.insert(edge(u, v, a, b)).expect("in range");
            }
        }
    }
    h
}

/// `Q(n,2) \ Q(n,2)^L`: q-edges with some weight below `⌈(q+1)/2⌉`.
pub fn low_complement(q: u32, n: usize) -> Result<QGraph, Error> {
    let t = low_threshold(q);
    Ok(full_qgraph(n, q)?.filter(|e| e.a.min(e.b) < t))
}

/// `(q² − (q − ⌈(q+1)/2⌉ + 1)²)·C(n,2)`.
pub fn low_complement_size(q: u32, n: usize) -> usize {
    let kept = (q + 1 - low_threshold(q)) as usize;
    ((q * q) as usize - kept * kept) * pairs(n)
}

/// `low_complement(q, n)` plus the low-layer q-edges on the Turán graph
/// `T(n, χ₁(F) − 1)`.
///
/// Rejects `F` without a component having more edges than vertices: for
/// such `F` the low complement itself is not guaranteed to be free.
pub fn chi1_lower(f: &PatternGraph, q: u32, n: usize, caps: &Caps) -> Result<QGraph, Error> {
    if !f.has_dense_component() {
        return Err(Error::Parameter("pattern needs a component with more edges than vertices".into()));
    }
    let chi1 = robust::robust_chromatic(f, caps)?;
    debug_assert!(chi1 >= 2);
    let mut h = low_complement(q, n)?;
    let t = low_threshold(q);
    let support = PatternGraph::turan(n, chi1 - 1);
    for (u, v) in support.edges() {
        for a in t..=q {
            for b in t..=q {
                h.insert(edge(u, v, a, b))?;
            }
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeVariant {
    /// `F_A`
    Full,
    /// `F'_A`: `F_A` without the (1,1) q-edges inside the last block.
    Primed,
}

/// `F_A = {x : Σx = 2} ∪ {x : x_u = 1, x_v = 2, a(u) < a(v)}` and its primed variant (q = 2).
pub fn tree_family(p: &Partition, variant: TreeVariant) -> Result<QGraph, Error> {
    let n = p.n();
    if n < 2 {
        return Err(Error::VertexCount { n, min: 2 });
    }
    let r = p.blocks().len();
    let mut h = QGraph::new(n, 2)?;
    for u in 1..=n {
        for v in u + 1..=n {
            let (bu, bv) = (p.block_of(u), p.block_of(v));
            let inside_last = bu == r && bv == r;
            if !(variant == TreeVariant::Primed && inside_last) {
                h.insert(edge(u, v, 1, 1))?;
            }
            if bu < bv {
                h.insert(edge(u, v, 1, 2))?;
            } else if bv < bu {
                h.insert(edge(u, v, 2, 1))?;
            }
        }
    }
    Ok(h)
}

pub fn tree_family_size(p: &Partition, variant: TreeVariant) -> usize {
    let sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
    let mut cross = 0;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            cross += sizes[i] * sizes[j];
        }
    }
    let full = pairs(p.n()) + cross;
    match variant {
        TreeVariant::Full => full,
        TreeVariant::Primed => full - pairs(*sizes.last().expect("nonempty")),
    }
}

/// q = 2 graph with `A = [⌊n/4⌋]`: (1,1) inside A; (1,1),(1,2),(2,1)
/// inside `B = [n] \ A`; all four weightings across.
pub fn tripart_13_4(n: usize) -> Result<QGraph, Error> {
    if n < 8 {
        return Err(Error::VertexCount { n, min: 8 });
    }
    let cut = n / 4;
    let mut h = QGraph::new(n, 2)?;
    for u in 1..=n {
        for v in u + 1..=n {
            let weights: &[(u32, u32)] = match (u <= cut, v <= cut) {
                (true, true) => &[(1, 1)],
                (false, false) => &[(1, 1), (1, 2), (2, 1)],
                _ => &[(1, 1), (1, 2), (2, 1), (2, 2)],
            };
            for &(a, b) in weights {
                h.insert(edge(u, v, a, b))?;
            }
        }
    }
    Ok(h)
}

/// `C(|A|,2) + 3·C(|B|,2) + 4·|A|·|B|`.
pub fn tripart_13_4_size(n: usize) -> usize {
    let a = n / 4;
    let b = n - a;
    pairs(a) + 3 * pairs(b) + 4 * a * b
}

/// Constructions without a (q+1)-copy of the triangle.
///
/// Variant 1 is the universal tree, 2 the blow-up of `T(n,2)` (q even),
/// 3 two halves X, Y with weights `≤ q/2` inside and at least one weight
/// `≤ q/2` across (q, n even), 4 three thirds X, Y, Z for q = 4.
pub fn triangle_family(q: u32, n: usize, variant: u8) -> Result<QGraph, Error> {
    let param = |msg: &str| Err(Error::Parameter(format!("triangle family {variant}: {msg}")));
    match variant {
        1 => universal_tree(q, n),
        2 => {
            if !q.is_multiple_of(2) {
                return param("q must be even");
            }
            if n < 2 {
                return Err(Error::VertexCount { n, min: 2 });
            }
            Ok(blowup(&PatternGraph::turan(n, 2), q))
        }
        3 => {
            if !q.is_multiple_of(2) || !n.is_multiple_of(2) || n < 2 {
                return param("q and n must be even");
            }
            let k = n / 2;
            let half = q / 2;
            let mut h = QGraph::new(n, q)?;
            for u in 1..=n {
                for v in u + 1..=n {
                    let across = (u <= k) != (v <= k);
                    for a in 1..=q {
                        for b in 1..=q {
                            let keep = if across { a <= half || b <= half } else { a <= half && b <= half };
                            if keep {
                                h.insert(edge(u, v, a, b))?;
                            }
                        }
                    }
                }
            }
            Ok(h)
        }
        4 => {
            if q != 4 || !n.is_multiple_of(3) || n == 0 {
                return param("needs q = 4 and n divisible by 3");
            }
            let k = n / 3;
            // 0 = X, 1 = Y, 2 = Z
            let part = |v: usize| (v - 1) / k;
            const OUTER: [(u32, u32); 5] = [(3, 1), (2, 1), (1, 1), (1, 2), (1, 3)];
            const INNER: [(u32, u32); 4] = [(2, 2), (2, 1), (1, 2), (1, 1)];
            // (weight on the X∪Y end, weight on the Z end)
            const TO_Z: [(u32, u32); 10] =
                [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)];
            let mut h = QGraph::new(n, q)?;
            for u in 1..=n {
                for v in u + 1..=n {
                    match (part(u), part(v)) {
                        (0, 0) | (1, 1) => {
                            for &(a, b) in &OUTER {
                                h.insert(edge(u, v, a, b))?;
                            }
                        }
                        (2, 2) => {
                            for &(a, b) in &INNER {
                                h.insert(edge(u, v, a, b))?;
                            }
                        }
                        (0, 1) => {
                            for a in 1..=3 {
                                for b in 1..=3 {
                                    h.insert(edge(u, v, a, b))?;
                                }
                            }
                        }
                        // u < v, so v is the Z end
                        _ => {
                            for &(a, b) in &TO_Z {
                                h.insert(edge(u, v, a, b))?;
                            }
                        }
                    }
                }
            }
            Ok(h)
        }
        _ => param("variant must be 1..=4"),
    }
}

/// Closed-form size of `triangle_family(q, n, variant)`.
pub fn triangle_family_size(q: u32, n: usize, variant: u8) -> Option<usize> {
    let q2 = (q * q) as usize;
    match variant {
        1 => Some(universal_tree_size(q, n)),
        2 => Some(q2 * (n * n / 4)),
        3 => {
            let k = n / 2;
            Some(q2 * (4 * k * k - k) / 4)
        }
        4 => {
            let k = n / 3;
            Some(36 * k * k - 7 * k)
        }
        _ => None,
    }
}

/// Partition of `Q(3,2)` into `q²` triples, each a (q+1)-copy of the triangle.
///
/// Vertices are `a = 1`, `b = 2`, `c = 3`; a weight pair `(x, y)` placed on
/// the position `(i, j)` puts `x` at `i` and `y` at `j`.
pub fn triple_partition(q: u32) -> Result<Vec<[QEdge; 3]>, Error> {
    if q < 2 {
        return Err(Error::Parameter(format!("triple partition needs q >= 2, got {q}")));
    }
    let q = q as i64;
    const POSITIONS: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];
    let mut out = Vec::new();
    let rotations = |pairs: [(i64, i64); 3], out: &mut Vec<[QEdge; 3]>| {
        for shift in 0..3 {
            let triple = core::array::from_fn(|p| {
                let (x, y) = pairs[(p + 3 - shift) % 3];
                let (i, j) = POSITIONS[p];
                edge(i, j, x as u32, y as u32)
            });
            out.push(triple);
        }
    };
    for j in 0..=(q - 2).div_euclid(3) {
        for i in 1..=q - 1 - 3 * j {
            rotations([(i + 2 * j, j + 1), (q - j, i + j), (q + 1 - i - j, q + 1 - i - 2 * j)], &mut out);
        }
    }
    if q >= 3 {
        for j in 0..=(q - 3).div_euclid(3) {
            for i in 1..=q - 2 - 3 * j {
                rotations([(i + j, i + 2 * j + 1), (q - i - 2 * j, q - j), (j + 1, q + 1 - i - j)], &mut out);
            }
        }
    }
    let r = q / 3;
    let extra = match q % 3 {
        1 => Some((2 * r + 1, r + 1)),
        2 => Some((r + 1, 2 * r + 2)),
        _ => None,
    };
    if let Some((x, y)) = extra {
        out.push(core::array::from_fn(|p| {
            let (i, j) = POSITIONS[p];
            edge(i, j, x as u32, y as u32)
        }));
    }
    Ok(out)
}

/// q = 3 example with `|A| = 3n/4`: slice `(2,3)` on arcs A → B and slice
/// `(2,1)` on every ordered pair not inside B.
pub fn q3_pair_example(n: usize) -> Result<QGraph, Error> {
    if !n.is_multiple_of(4) || n == 0 {
        return Err(Error::Parameter(format!("n = {n} must be a positive multiple of 4")));
    }
    let cut = 3 * n / 4;
    let in_b = |v: usize| v > cut;
    let mut h = QGraph::new(n, 3)?;
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if !in_b(i) && in_b(j) {
                h.insert(edge(i, j, 2, 3))?;
            }
            if !(in_b(i) && in_b(j)) {
                h.insert(edge(i, j, 2, 1))?;
            }
        }
    }
    Ok(h)
}

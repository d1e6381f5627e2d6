//! Weightings `W: E(K_k) -> {0, 2, 3}` and condition (⋆):
//! the 3-edges span no triangle, and every 4-cycle of 3-edges has a
//! diagonal of weight 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::{pairs, Error};

/// Default cap on `k` for the exhaustive maximisers.
pub const DEFAULT_K_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    k: usize,
    /// Row-major over pairs `u < v`.
    w: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarViolation {
    /// Three 3-edges on these vertices.
    Triangle([usize; 3]),
    /// 3-edges along the cycle `c0 c1 c2 c3`, neither diagonal `c0c2`,
    /// `c1c3` has weight 0.
    Square([usize; 4]),
}

fn index(k: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v) - 1, u.max(v) - 1);
    u * (2 * k - u - 1) / 2 + (v - u - 1)
}

impl WeightFunction {
    pub fn constant(k: usize, value: u8) -> Result<Self, Error> {
        check_value(value)?;
        Ok(WeightFunction { k, w: vec![value; pairs(k)] })
    }

    /// Pairs not listed get weight 0.
    pub fn from_pairs(k: usize, entries: impl IntoIterator<Item = (usize, usize, u8)>) -> Result<Self, Error> {
        let mut w = WeightFunction::constant(k, 0)?;
        for (u, v, x) in entries {
            w.set(u, v, x)?;
        }
        Ok(w)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.w[index(self.k, u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, value: u8) -> Result<(), Error> {
        check_value(value)?;
        for x in [u, v] {
            if x == 0 || x > self.k {
                return Err(Error::VertexRange { vertex: x, n: self.k });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        let i = index(self.k, u, v);
        self.w[i] = value;
        Ok(())
    }

    /// `(u, v, w(uv))` for all `u < v`, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (1..=self.k).flat_map(move |u| (u + 1..=self.k).map(move |v| (u, v, self.get(u, v))))
    }

    pub fn total_weight(&self) -> usize {
        self.w.iter().map(|&x| x as usize).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        (1..=self.k).filter(|&x| x != v).map(|x| self.get(v, x) as usize).sum()
    }

    /// `W^{u→v}`: `u` copies `v`'s weights to all other vertices; `uv` becomes 0.
    pub fn zykov_shift(&self, u: usize, v: usize) -> Result<WeightFunction, Error> {
        if u == v {
            return Err(Error::Loop(u));
        }
        for x in [u, v] {
            if x == 0 || x > self.k {
                return Err(Error::VertexRange { vertex: x, n: self.k });
            }
        }
        let mut out = self.clone();
        for x in (1..=self.k).filter(|&x| x != u && x != v) {
            out.set(u, x, self.get(v, x))?;
        }
        out.set(u, v, 0)?;
        Ok(out)
    }

    /// First violation of (⋆) in lexicographic vertex order, if any.
    pub fn check_star(&self) -> Result<(), StarViolation> {
        let k = self.k;
        let three = |a: usize, b: usize| self.get(a, b) == 3;
        for a in 1..=k {
            for b in a + 1..=k {
                for c in b + 1..=k {
                    if three(a, b) && three(b, c) && three(a, c) {
                        return Err(StarViolation::Triangle([a, b, c]));
                    }
                }
            }
        }
        for a in 1..=k {
            for b in a + 1..=k {
                for c in b + 1..=k {
                    for d in c + 1..=k {
                        // the three 4-cycles through {a,b,c,d}
                        for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                            let sides = (0..4).all(|i| three(cyc[i], cyc[(i + 1) % 4]));
                            if sides && self.get(cyc[0], cyc[2]) != 0 && self.get(cyc[1], cyc[3]) != 0 {
                                return Err(StarViolation::Square(cyc));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn satisfies_star(&self) -> bool {
        self.check_star().is_ok()
    }
}

fn check_value(value: u8) -> Result<(), Error> {
    match value {
        0 | 2 | 3 => Ok(()),
        _ => Err(Error::Parameter(alloc::format!("weight {value} not in {{0, 2, 3}}"))),
    }
}

fn check_cap(k: usize, cap: usize) -> Result<(), Error> {
    if k > cap {
        return Err(Error::TooLarge { size: k, cap });
    }
    Ok(())
}

/// `X` = first `⌊k/4⌋` vertices: 3 across, 2 inside the rest, 0 inside `X`.
pub fn quarter_split(k: usize) -> WeightFunction {
    let x = k / 4;
    let mut w = WeightFunction::constant(k, 0).expect("0 is a weight");
    for u in 1..=k {
        for v in u + 1..=k {
            let value = match (u <= x, v <= x) {
                (true, true) => 0,
                (false, false) => 2,
                _ => 3,
            };
            w.set(u, v, value).expect("valid pair");
        }
    }
    w
}

/// `3x(k−x) + 2·C(k−x, 2)` with `x = ⌊k/4⌋`.
pub fn quarter_split_weight(k: usize) -> usize {
    let x = k / 4;
    3 * x * (k - x) + 2 * pairs(k - x)
}

/// Maximum of `total_weight` over (⋆)-weightings of `K_k`, with one
/// maximiser. Scans all `3^C(k,2)` assignments pair by pair; a partial
/// assignment is abandoned when a triangle or square closed by the newest
/// pair violates (⋆), or when even all-3 on the rest cannot win.
pub fn max_star_weight(k: usize, cap: usize) -> Result<(usize, WeightFunction), Error> {
    check_cap(k, cap)?;
    let m = pairs(k);
    let mut closes_tri: Vec<Vec<[usize; 3]>> = vec![Vec::new(); m];
    let mut closes_quad: Vec<Vec<[usize; 4]>> = vec![Vec::new(); m];
    for a in 1..=k {
        for b in a + 1..=k {
            for c in b + 1..=k {
                let last = index(k, b, c);
                closes_tri[last].push([a, b, c]);
                for d in c + 1..=k {
                    closes_quad[index(k, c, d)].push([a, b, c, d]);
                }
            }
        }
    }
    // all-2 satisfies (⋆) and seeds the incumbent
    let mut scan = Scan {
        w: WeightFunction::constant(k, 0)?,
        closes_tri,
        closes_quad,
        best: 2 * m,
        best_w: WeightFunction::constant(k, 2)?,
    };
    scan.walk(0, 0);
    Ok((scan.best, scan.best_w))
}

struct Scan {
    w: WeightFunction,
    closes_tri: Vec<Vec<[usize; 3]>>,
    closes_quad: Vec<Vec<[usize; 4]>>,
    best: usize,
    best_w: WeightFunction,
}

impl Scan {
    fn walk(&mut self, i: usize, weight: usize) {
        let m = self.w.w.len();
        if i == m {
            if weight > self.best {
                self.best = weight;
                self.best_w = self.w.clone();
            }
            return;
        }
        if weight + 3 * (m - i) <= self.best {
            return;
        }
        for value in [3u8, 2, 0] {
            self.w.w[i] = value;
            if self.locally_ok(i) {
                self.walk(i + 1, weight + value as usize);
            }
        }
        self.w.w[i] = 0;
    }

    fn locally_ok(&self, i: usize) -> bool {
        let w = &self.w;
        let three = |a: usize, b: usize| w.get(a, b) == 3;
        let tri_ok = self.closes_tri[i].iter().all(|&[a, b, c]| !(three(a, b) && three(b, c) && three(a, c)));
        let quad_ok = self.closes_quad[i].iter().all(|&[a, b, c, d]| {
            [[a, b, c, d], [a, b, d, c], [a, c, b, d]].iter().all(|cyc| {
                let sides = (0..4).all(|j| three(cyc[j], cyc[(j + 1) % 4]));
                !sides || w.get(cyc[0], cyc[2]) == 0 || w.get(cyc[1], cyc[3]) == 0
            })
        });
        tri_ok && quad_ok
    }
}

/// Same maximum by a different decomposition: fix the triangle-free graph
/// `G` of 3-edges, then the 0-edges must form a vertex cover of the graph
/// linking the two diagonals of each 4-cycle of `G`; every other pair gets
/// weight 2. Branch and bound over `G` with a minimum cover per leaf.
pub fn max_star_weight_by_covers(k: usize, cap: usize) -> Result<(usize, WeightFunction), Error> {
    check_cap(k, cap)?;
    let m = pairs(k);
    let all_pairs: Vec<(usize, usize)> = (1..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
    let mut best = (0usize, WeightFunction::constant(k, 0)?);
    let mut in_g = vec![false; m];
    covers_walk(k, &all_pairs, 0, 0, &mut in_g, &mut best);
    Ok(best)
}

fn covers_walk(
    k: usize,
    all_pairs: &[(usize, usize)],
    i: usize,
    g_size: usize,
    in_g: &mut [bool],
    best: &mut (usize, WeightFunction),
) {
    let m = all_pairs.len();
    // weight ≤ 3|G| + 3·undecided + 2·(the rest)
    let optimistic = 3 * g_size + 3 * (m - i) + 2 * (i - g_size);
    if optimistic < best.0 {
        return;
    }
    if i == m {
        let (weight, w) = evaluate_cover(k, all_pairs, in_g);
        if weight > best.0 {
            *best = (weight, w);
        }
        return;
    }
    let (u, v) = all_pairs[i];
    let closes_triangle = (1..=k).any(|x| x != u && x != v && in_g[index(k, u, x)] && in_g[index(k, v, x)]);
    if !closes_triangle {
        in_g[i] = true;
        covers_walk(k, all_pairs, i + 1, g_size + 1, in_g, best);
        in_g[i] = false;
    }
    covers_walk(k, all_pairs, i + 1, g_size, in_g, best);
}

fn evaluate_cover(k: usize, all_pairs: &[(usize, usize)], in_g: &[bool]) -> (usize, WeightFunction) {
    let m = all_pairs.len();
    let g = |a: usize, b: usize| in_g[index(k, a, b)];
    let mut conflicts: Vec<(usize, usize)> = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            for c in 1..=k {
                for d in 1..=k {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && a < b && a < c && a < d && b < d && g(a, b) && g(b, c) && g(c, d) && g(d, a) {
                        let (x, y) = (index(k, a, c), index(k, b, d));
                        conflicts.push((x.min(y), x.max(y)));
                    }
                }
            }
        }
    }
    let cover = min_vertex_cover(&conflicts);
    let g_size = in_g.iter().filter(|&&b| b).count();
    let weight = 3 * g_size + 2 * (m - g_size - cover.len());
    let mut w = WeightFunction::constant(k, 2).expect("2 is a weight");
    for (i, &(u, v)) in all_pairs.iter().enumerate() {
        if in_g[i] {
            w.set(u, v, 3).expect("valid pair");
        } else if cover.contains(&i) {
            w.set(u, v, 0).expect("valid pair");
        }
    }
    (weight, w)
}

/// Exact minimum vertex cover by branching on an uncovered edge.
fn min_vertex_cover(edges: &[(usize, usize)]) -> Vec<usize> {
    fn go(edges: &[(usize, usize)], chosen: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        if best.as_ref().is_some_and(|b| chosen.len() >= b.len()) {
            return;
        }
        let Some(&(x, y)) = edges.iter().find(|(x, y)| !chosen.contains(x) && !chosen.contains(y)) else {
            *best = Some(chosen.clone());
            return;
        };
        for pick in [x, y] {
            chosen.push(pick);
            go(edges, chosen, best);
            chosen.pop();
        }
    }
    let mut best = None;
    go(edges, &mut Vec::new(), &mut best);
    best.expect("the empty branch always terminates")
}

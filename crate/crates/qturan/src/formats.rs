//! Text and JSON formats for q-graphs, patterns and weight functions.
//!
//! ```text
//! qgraph n=<n> q=<q>      graph n=<n>      wstar k=<k>
//! u v a b                 u v              u v w
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Writers emit edges
//! in ascending order, so `write(read(s))` is canonical.

use std::fmt::Write as _;
use std::path::Path;

use qturan_core::wstar::WeightFunction;
use qturan_core::{Embedding, PatternGraph, QEdge, QGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-blank, non-comment lines with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str, tag: &str, keys: &[&str]) -> Result<Vec<u64>, FormatError> {
    let mut words = text.split_whitespace();
    if words.next() != Some(tag) {
        return Err(syntax(
            line,
            format!(
                "expected header `{tag} {}`",
                keys.iter().map(|k| format!("{k}=<{k}>")).collect::<Vec<_>>().join(" ")
            ),
        ));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let word = words.next().ok_or_else(|| syntax(line, format!("missing `{key}=`")))?;
        let value = word
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| syntax(line, format!("expected `{key}=<value>`, found `{word}`")))?;
        values.push(value.parse().map_err(|_| syntax(line, format!("bad value in `{word}`")))?);
    }
    if let Some(extra) = words.next() {
        return Err(syntax(line, format!("unexpected `{extra}` in header")));
    }
    Ok(values)
}

fn parse_numbers(line: usize, text: &str, count: usize) -> Result<Vec<u64>, FormatError> {
    let nums = text
        .split_whitespace()
        .map(|w| w.parse::<u64>().map_err(|_| syntax(line, format!("not a non-negative integer: `{w}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() != count {
        return Err(syntax(line, format!("expected {count} numbers, found {}", nums.len())));
    }
    Ok(nums)
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, what: &str) -> Result<(usize, &'a str), FormatError> {
    lines.next().ok_or_else(|| syntax(1, format!("empty input, expected {what} header")))
}

pub fn read_qgraph(text: &str) -> Result<QGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "qgraph")?;
    let hv = parse_header(hl, h, "qgraph", &["n", "q"])?;
    let (n, q) = (hv[0] as usize, u32::try_from(hv[1]).map_err(|_| syntax(hl, "q too large"))?);
    let mut g = QGraph::new(n, q).map_err(|e| syntax(hl, e.to_string()))?;
    for (ln, l) in lines {
        let v = parse_numbers(ln, l, 4)?;
        let weight = |x: u64| u32::try_from(x).map_err(|_| syntax(ln, format!("weight {x} out of range 1..={q}")));
        let (u, w) = (v[0] as usize, v[1] as usize);
        if u >= w {
            return Err(syntax(ln, format!("edge `{l}` must list u < v")));
        }
        let e = QEdge::new(u, w, weight(v[2])?, weight(v[3])?).map_err(|e| syntax(ln, e.to_string()))?;
        if !g.insert(e).map_err(|e| syntax(ln, e.to_string()))? {
            return Err(syntax(ln, format!("duplicate edge `{e}`")));
        }
    }
    Ok(g)
}

pub fn write_qgraph(g: &QGraph) -> String {
    let mut out = format!("qgraph n={} q={}\n", g.n(), g.q());
    for e in g.edges() {
        writeln!(out, "{e}").expect("writing to a String");
    }
    out
}

pub fn read_pattern(text: &str) -> Result<PatternGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "graph")?;
    let n = parse_header(hl, h, "graph", &["n"])?[0] as usize;
    let mut g = PatternGraph::empty(n);
    for (ln, l) in lines {
        let v = parse_numbers(ln, l, 2)?;
        let (u, w) = (v[0] as usize, v[1] as usize);
        if u >= w {
            return Err(syntax(ln, format!("edge `{l}` must list u < v")));
        }
        if !g.add_edge(u, w).map_err(|e| syntax(ln, e.to_string()))? {
            return Err(syntax(ln, format!("duplicate edge `{u} {w}`")));
        }
    }
    Ok(g)
}

pub fn write_pattern(g: &PatternGraph) -> String {
    let mut out = format!("graph n={}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

/// Every pair must be listed exactly once.
pub fn read_wstar(text: &str) -> Result<WeightFunction, FormatError> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "wstar")?;
    let k = parse_header(hl, h, "wstar", &["k"])?[0] as usize;
    let mut w = WeightFunction::constant(k, 0).expect("0 is a weight");
    let mut seen = std::collections::BTreeSet::new();
    for (ln, l) in lines {
        let v = parse_numbers(ln, l, 3)?;
        let (a, b) = (v[0] as usize, v[1] as usize);
        if a >= b {
            return Err(syntax(ln, format!("pair `{l}` must list u < v")));
        }
        let value = u8::try_from(v[2]).map_err(|_| syntax(ln, format!("weight {} not in {{0, 2, 3}}", v[2])))?;
        w.set(a, b, value).map_err(|e| syntax(ln, e.to_string()))?;
        if !seen.insert((a, b)) {
            return Err(syntax(ln, format!("duplicate pair `{a} {b}`")));
        }
    }
    let expected = qturan_core::pairs(k);
    if seen.len() != expected {
        let missing = w.entries().map(|(u, v, _)| (u, v)).find(|p| !seen.contains(p)).expect("some pair missing");
        return Err(syntax(
            hl,
            format!("pair `{} {}` not assigned ({} of {expected} listed)", missing.0, missing.1, seen.len()),
        ));
    }
    Ok(w)
}

pub fn write_wstar(w: &WeightFunction) -> String {
    let mut out = format!("wstar k={}\n", w.k());
    for (u, v, x) in w.entries() {
        writeln!(out, "{u} {v} {x}").expect("writing to a String");
    }
    out
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// A built-in name such as `c4` or `k3,3,3`, or else a pattern file.
pub fn load_pattern(arg: &str) -> Result<PatternGraph, FormatError> {
    let path = Path::new(arg);
    if path.is_file() {
        return read_pattern(&read_file(path)?);
    }
    PatternGraph::named(arg).map_err(|e| syntax(0, format!("{e} (and no such file)")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QGraphJson {
    pub n: usize,
    pub q: u32,
    pub edges: Vec<[u64; 4]>,
}

impl From<&QGraph> for QGraphJson {
    fn from(g: &QGraph) -> Self {
        QGraphJson {
            n: g.n(),
            q: g.q(),
            edges: g.edges().map(|e| [e.u as u64, e.v as u64, e.a as u64, e.b as u64]).collect(),
        }
    }
}

impl TryFrom<&QGraphJson> for QGraph {
    type Error = qturan_core::Error;

    fn try_from(j: &QGraphJson) -> Result<Self, Self::Error> {
        let edges = j
            .edges
            .iter()
            .map(|&[u, v, a, b]| QEdge::new(u as usize, v as usize, a as u32, b as u32))
            .collect::<Result<Vec<_>, _>>()?;
        QGraph::from_edges(j.n, j.q, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&PatternGraph> for PatternJson {
    fn from(g: &PatternGraph) -> Self {
        PatternJson { n: g.vertex_count(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    /// `[pattern vertex, host vertex]`
    pub vertex_map: Vec<[usize; 2]>,
    /// q-edges `[u, v, a, b]` in pattern-edge order.
    pub edges: Vec<[u64; 4]>,
}

impl From<&Embedding> for EmbeddingJson {
    fn from(e: &Embedding) -> Self {
        EmbeddingJson {
            vertex_map: e.vertex_map.iter().map(|&(p, h)| [p, h]).collect(),
            edges: e.edge_map.iter().map(|(_, x)| [x.u as u64, x.v as u64, x.a as u64, x.b as u64]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WStarJson {
    pub k: usize,
    /// `[u, v, w]` for every pair `u < v`.
    pub weights: Vec<[usize; 3]>,
}

impl From<&WeightFunction> for WStarJson {
    fn from(w: &WeightFunction) -> Self {
        WStarJson { k: w.k(), weights: w.entries().map(|(u, v, x)| [u, v, x as usize]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qturan_core::constructions::universal_tree;

    #[test]
    fn qgraph_round_trip_is_canonical() {
        let text = "# comment\nqgraph n=4 q=2\n3 4 1 1\n\n1 2 2 1\n";
        let g = read_qgraph(text).unwrap();
        assert_eq!(write_qgraph(&g), "qgraph n=4 q=2\n1 2 2 1\n3 4 1 1\n");
        assert_eq!(read_qgraph(&write_qgraph(&g)).unwrap(), g);
        let u = universal_tree(3, 5).unwrap();
        assert_eq!(read_qgraph(&write_qgraph(&u)).unwrap(), u);
        let j = QGraphJson::from(&u);
        assert_eq!(QGraph::try_from(&j).unwrap(), u);
    }

    #[test]
    fn qgraph_errors_carry_lines() {
        let err = |t: &str| read_qgraph(t).unwrap_err().to_string();
        assert_eq!(err("qgraph n=3 q=2\n1 2 3 1\n"), "line 2: weight 3 out of range 1..=2");
        assert!(err("qgraph n=3 q=2\n1 2 1 1\n1 2 1 1\n").starts_with("line 3: duplicate"));
        assert!(err("qgraph n=3 q=2\n1 2 1\n").starts_with("line 2: expected 4 numbers"));
        assert!(err("qgraph n=3 q=2\n2 1 1 1\n").starts_with("line 2:"));
        assert!(err("qgraph n=3 q=2\n1 4 1 1\n").starts_with("line 2: vertex 4"));
        assert!(err("graph n=3\n").starts_with("line 1: expected header"));
        assert!(err("").starts_with("line 1: empty input"));
        assert!(read_qgraph("qgraph n=3 q=2\n").unwrap().is_empty());
    }

    #[test]
    fn pattern_round_trip() {
        let g = read_pattern("graph n=5\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(write_pattern(&g), "graph n=5\n1 2\n1 3\n2 3\n");
        assert!(read_pattern("graph n=3\n1 1\n").is_err());
        assert!(read_pattern("graph n=3\n1 2\n1 2\n").unwrap_err().to_string().starts_with("line 3"));
        assert_eq!(load_pattern("c4").unwrap(), PatternGraph::cycle(4));
        assert!(load_pattern("nonsense").is_err());
    }

    #[test]
    fn wstar_round_trip() {
        let w = qturan_core::wstar::quarter_split(5);
        assert_eq!(read_wstar(&write_wstar(&w)).unwrap(), w);
        assert!(read_wstar("wstar k=3\n1 2 3\n1 3 2\n").unwrap_err().to_string().contains("2 3"));
        assert!(read_wstar("wstar k=2\n1 2 1\n").is_err());
    }
}

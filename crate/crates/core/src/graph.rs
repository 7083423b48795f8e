//! Simple undirected graphs on vertices `0..n`, their text formats and a few
//! named generators.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: expected an integer, found {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected two vertex indices")]
    BadLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("graph6: bad header byte {0}")]
    BadHeader(u8),
    #[error("graph6: truncated input")]
    Truncated,
    #[error("graph6: trailing garbage")]
    TrailingGarbage,
    #[error("graph6: malformed byte {0}")]
    Malformed(u8),
    #[error("graph6: nonzero padding bits")]
    Padding,
    #[error("generator {name}: parameter {value} out of bounds")]
    GeneratorBounds { name: &'static str, value: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(&self, other: &Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

/// A simple undirected graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from arbitrary pairs. Duplicates collapse; self-loops
    /// and out-of-range endpoints panic, so callers validate first.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<Edge> = pairs
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v, "self-loop on {u}");
                assert!(u < n && v < n, "edge ({u},{v}) out of range for n = {n}");
                Edge::new(u, v)
            })
            .collect();
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted order; positions in this slice are the edge ids used
    /// throughout the crate.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Number of edges with both endpoints in `vertices` (which must be sorted
    /// and duplicate-free).
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges.iter().filter(|e| inside[e.0] && inside[e.1]).count()
    }

    /// Two-colors the vertices if possible.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn has_triangle(&self) -> bool {
        self.edges.iter().any(|e| {
            let (a, b) = (&self.adj[e.0], &self.adj[e.1]);
            a.iter().any(|w| b.binary_search(w).is_ok())
        })
    }

    /// Adds one edge, returning a new graph.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        Graph::from_edges(
            self.n,
            self.edges.iter().map(|e| (e.0, e.1)).chain([(u, v)]),
        )
    }

    /// Edge-list text with an explicit vertex count header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }
}

/// Parses `u v` lines, with an optional leading `n <count>` line. Blank lines
/// and `#` comments are skipped; duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if !seen_content && tokens.first() == Some(&"n") {
            seen_content = true;
            if tokens.len() != 2 {
                return Err(GraphError::BadLine { line });
            }
            declared = Some(parse_index(tokens[1], line)?);
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(GraphError::BadLine { line });
        }
        let u = parse_index(tokens[0], line)?;
        let v = parse_index(tokens[1], line)?;
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        pairs.push((line, u, v));
    }
    let n = match declared {
        Some(n) => {
            for &(line, u, v) in &pairs {
                let vertex = u.max(v);
                if vertex >= n {
                    return Err(GraphError::OutOfRange { line, vertex, n });
                }
            }
            n
        }
        None => pairs.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Ok(Graph::from_edges(n, pairs.into_iter().map(|(_, u, v)| (u, v))))
}

fn parse_index(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::BadToken {
        line,
        token: token.to_string(),
    })
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph in graph6 format. An optional `>>graph6<<` header and a
/// single trailing newline are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let text = text
        .strip_suffix("\r\n")
        .or_else(|| text.strip_suffix('\n'))
        .unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, body) = decode_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(GraphError::Truncated);
    }
    if body.len() > needed {
        return Err(GraphError::TrailingGarbage);
    }
    let mut values = Vec::with_capacity(needed);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(GraphError::Malformed(b));
        }
        values.push(b - 63);
    }
    let bit = |k: usize| (values[k / 6] >> (5 - k % 6)) & 1 == 1;
    for k in bits..needed * 6 {
        if bit(k) {
            return Err(GraphError::Padding);
        }
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, pairs))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8]), GraphError> {
    let header = |b: u8| -> Result<usize, GraphError> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(GraphError::BadHeader(b))
        }
    };
    let read = |bytes: &[u8], count: usize| -> Result<usize, GraphError> {
        if bytes.len() < count {
            return Err(GraphError::Truncated);
        }
        bytes[..count]
            .iter()
            .try_fold(0usize, |acc, &b| Ok((acc << 6) | header(b)?))
    };
    match bytes.first() {
        None => Err(GraphError::Truncated),
        Some(&126) => match bytes.get(1) {
            Some(&126) => Ok((read(&bytes[2..], 6)?, &bytes[8..])),
            Some(_) => Ok((read(&bytes[1..], 3)?, &bytes[4..])),
            None => Err(GraphError::Truncated),
        },
        Some(&b) => Ok((header(b)?, &bytes[1..])),
    }
}

/// Encodes `g` in graph6 format (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Named graphs with canonical vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `k` vertices in a ring.
    Cycle(usize),
    Complete(usize),
    /// Center 0 joined to leaves `1..=k`.
    Star(usize),
    /// `k` vertices, `k - 1` edges.
    Path(usize),
    Petersen,
    /// Hub 0 joined to a `k`-cycle on `1..=k`.
    Wheel(usize),
    Grid(usize, usize),
    CompleteBipartite(usize, usize),
}

impl Generator {
    pub fn build(self) -> Result<Graph, GraphError> {
        let check = |name: &'static str, value: usize, min: usize| {
            if value < min {
                Err(GraphError::GeneratorBounds { name, value })
            } else {
                Ok(())
            }
        };
        let g = match self {
            Generator::Cycle(k) => {
                check("cycle", k, 3)?;
                Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
            }
            Generator::Complete(k) => {
                check("complete", k, 3)?;
                Graph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
            }
            Generator::Star(k) => {
                check("star", k, 1)?;
                Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))
            }
            Generator::Path(k) => {
                check("path", k, 1)?;
                Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))
            }
            Generator::Petersen => Graph::from_edges(
                10,
                (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
            ),
            Generator::Wheel(k) => {
                check("wheel", k, 3)?;
                Graph::from_edges(
                    k + 1,
                    (1..=k).flat_map(|i| [(0, i), (i, i % k + 1)]),
                )
            }
            Generator::Grid(r, c) => {
                check("grid", r, 1)?;
                check("grid", c, 1)?;
                let id = |i: usize, j: usize| i * c + j;
                let mut pairs = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        if j + 1 < c {
                            pairs.push((id(i, j), id(i, j + 1)));
                        }
                        if i + 1 < r {
                            pairs.push((id(i, j), id(i + 1, j)));
                        }
                    }
                }
                Graph::from_edges(r * c, pairs)
            }
            Generator::CompleteBipartite(a, b) => {
                check("complete_bipartite", a, 1)?;
                check("complete_bipartite", b, 1)?;
                Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
        };
        Ok(g)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cycle(k) => write!(f, "cycle:{k}"),
            Generator::Complete(k) => write!(f, "complete:{k}"),
            Generator::Star(k) => write!(f, "star:{k}"),
            Generator::Path(k) => write!(f, "path:{k}"),
            Generator::Petersen => write!(f, "petersen"),
            Generator::Wheel(k) => write!(f, "wheel:{k}"),
            Generator::Grid(r, c) => write!(f, "grid:{r}:{c}"),
            Generator::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a}:{b}"),
        }
    }
}

impl FromStr for Generator {
    type Err = GraphError;

    /// `name[:k[:k2]]`, e.g. `cycle:5`, `petersen`, `grid:3:4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GraphError::UnknownGenerator(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let arg = |i: usize| -> Result<usize, GraphError> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(unknown)
        };
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(unknown()) };
        let g = match parts[0] {
            "cycle" => Generator::Cycle(arg(1)?),
            "complete" => Generator::Complete(arg(1)?),
            "star" => Generator::Star(arg(1)?),
            "path" => Generator::Path(arg(1)?),
            "wheel" => Generator::Wheel(arg(1)?),
            "petersen" => {
                arity(0)?;
                return Ok(Generator::Petersen);
            }
            "grid" => {
                arity(2)?;
                return Ok(Generator::Grid(arg(1)?, arg(2)?));
            }
            "complete_bipartite" => {
                arity(2)?;
                return Ok(Generator::CompleteBipartite(arg(1)?, arg(2)?));
            }
            _ => return Err(unknown()),
        };
        arity(1)?;
        Ok(g)
    }
}

pub fn generate(name: Generator) -> Result<Graph, GraphError> {
    name.build()
}

/// Counts `|V_j|` of vertices of each degree `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    delta: usize,
    counts: Vec<usize>,
}

impl DegreeProfile {
    /// Builds a profile from `(degree, count)` pairs; `delta` is the largest
    /// degree with a nonzero count.
    pub fn from_counts(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut counts = Vec::new();
        for (j, c) in pairs {
            if counts.len() <= j {
                counts.resize(j + 1, 0);
            }
            counts[j] += c;
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        if counts.is_empty() {
            counts.push(0);
        }
        DegreeProfile {
            delta: counts.len() - 1,
            counts,
        }
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(degree).copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.counts.iter().enumerate().map(|(j, c)| j * c).sum()
    }

    /// Nonzero `(degree, count)` pairs in increasing degree order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (j, c))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.iter().next().map(|(j, _)| j)
    }
}

impl Serialize for DegreeProfile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (j, c) in self.iter() {
            map.serialize_entry(&j.to_string(), &c)?;
        }
        map.end()
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(j, c)| format!("{j}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let mut counts = vec![0; g.max_degree() + 1];
    for v in 0..g.n() {
        counts[g.degree(v)] += 1;
    }
    DegreeProfile {
        delta: g.max_degree(),
        counts,
    }
}

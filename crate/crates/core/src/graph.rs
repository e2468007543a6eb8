//! Simple undirected graphs on contiguous vertex ids, the named generators
//! and the edge-list text format.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// A simple finite undirected graph on vertices `0..n`.
///
/// Edges are stored canonically as `(min, max)` pairs in lexicographic
/// order, and each adjacency list is sorted ascending. Values are
/// immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicate edges
    /// and out-of-range endpoints. Endpoint order within a pair is free.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::param("edges", format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::param(
                    "edges",
                    format!("duplicate edge {} {}", u.min(v), u.max(v)),
                ));
            }
        }
        Ok(Self::from_canonical(n, set.into_iter().collect()))
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    /// `edges` must be sorted, deduplicated, loop-free `(min, max)` pairs.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `N(v)` in ascending order.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.adj
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
    }

    /// Unchecked variant of [`Graph::neighbors`]; panics when `v` is out of
    /// range.
    #[inline]
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Common degree `r` when the graph is `r`-regular. The graph on zero
    /// vertices counts as 0-regular.
    pub fn regularity(&self) -> Option<usize> {
        let mut degrees = self.adj.iter().map(Vec::len);
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Parses the edge-list format: a header line `n m` followed by `m`
    /// lines `u v`. Errors carry 1-based line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "missing header `n m`".into(),
        })?;
        let [n, m] = parse_fields::<2>(hline, header)?;

        let mut set = BTreeSet::new();
        let mut seen = 0;
        for (line, body) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line,
                    reason: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_fields::<2>(line, body)?;
            let bad = |reason: String| Error::Parse { line, reason };
            if u >= n || v >= n {
                return Err(bad(format!("endpoint out of range for n = {n}")));
            }
            if u == v {
                return Err(bad(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(bad(format!("duplicate edge {} {}", u.min(v), u.max(v))));
            }
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                reason: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(Self::from_canonical(n, set.into_iter().collect()))
    }

    /// Serializes to the edge-list format, edges sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_fields<const N: usize>(line: usize, body: &str) -> Result<[usize; N]> {
    let mut out = [0; N];
    let mut fields = body.split_whitespace();
    for slot in out.iter_mut() {
        let tok = fields.next().ok_or_else(|| Error::Parse {
            line,
            reason: format!("expected {N} integers"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            reason: format!("`{tok}` is not a nonnegative integer"),
        })?;
    }
    if fields.next().is_some() {
        return Err(Error::Parse {
            line,
            reason: format!("expected {N} integers"),
        });
    }
    Ok(out)
}

/// The named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `P_n` on `n >= 1` vertices.
    Path(usize),
    /// The edgeless graph on `n` vertices.
    Empty(usize),
    /// `K_n`.
    Complete(usize),
    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// `K_{2k} - M` given by its (even) order; the removed matching is
    /// `{(2i, 2i+1)}`.
    CompleteMinusPerfectMatching(usize),
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphKind::Cycle(n) => write!(f, "C{n}"),
            GraphKind::Path(n) => write!(f, "P{n}"),
            GraphKind::Empty(n) => write!(f, "empty{n}"),
            GraphKind::Complete(n) => write!(f, "K{n}"),
            GraphKind::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            GraphKind::CompleteMinusPerfectMatching(n) => write!(f, "K{n}-M"),
        }
    }
}

/// Builds the canonical graph of a [`GraphKind`].
pub fn generate(kind: GraphKind) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match kind {
        GraphKind::Cycle(n) => {
            if n < 3 {
                return Err(Error::param("n", format!("cycle needs n >= 3, got {n}")));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        GraphKind::Path(n) => {
            if n < 1 {
                return Err(Error::param("n", "path needs n >= 1"));
            }
            (1..n).map(|i| (i - 1, i)).collect()
        }
        GraphKind::Empty(n) => return Ok(Graph::empty(n)),
        GraphKind::Complete(n) => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        GraphKind::CompleteBipartite(a, b) => {
            if a < 1 {
                return Err(Error::param(
                    "a",
                    "complete bipartite part sizes must be >= 1",
                ));
            }
            if b < 1 {
                return Err(Error::param(
                    "b",
                    "complete bipartite part sizes must be >= 1",
                ));
            }
            (0..a)
                .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                .collect()
        }
        GraphKind::CompleteMinusPerfectMatching(n) => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::param(
                    "n",
                    format!("complete minus perfect matching needs even order >= 2, got {n}"),
                ));
            }
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
                .collect()
        }
    };
    Graph::new(kind_order(kind), edges)
}

fn kind_order(kind: GraphKind) -> usize {
    match kind {
        GraphKind::Cycle(n)
        | GraphKind::Path(n)
        | GraphKind::Empty(n)
        | GraphKind::Complete(n)
        | GraphKind::CompleteMinusPerfectMatching(n) => n,
        GraphKind::CompleteBipartite(a, b) => a + b,
    }
}

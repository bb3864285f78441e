//! Simple undirected graphs with bitset adjacency rows.
//!
//! Rows are stored as `ceil(n/64)` words per vertex, so the same type serves
//! the exhaustive small-graph code (n ≤ 10) and sampled graphs with a few
//! thousand vertices.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::empty(n).complement()
    }

    /// Builds a graph from an edge list. Panics on out-of-range vertices or loops;
    /// use [`parse_graph`] for untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge ({u},{v}) for n={n}");
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Same vertex set, edge iff non-edge here.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `vs`, relabeled so that `vs[i]` becomes vertex `i`.
    pub fn induced(&self, vs: &[usize]) -> Self {
        let mut g = Self::empty(vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Pair index of `(u,v)`, `u < v`, in lexicographic pair order.
    #[inline]
    pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
        debug_assert!(u < v && v < n);
        u * (2 * n - u - 1) / 2 + (v - u - 1)
    }

    /// Edge set as a bit mask over lexicographically ordered pairs; n ≤ 11.
    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 11);
        self.edges()
            .fold(0, |m, (u, v)| m | 1 << Self::pair_index(self.n, u, v))
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> idx & 1 == 1 {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
        g
    }

    pub fn has_triangle(&self) -> bool {
        for (u, v) in self.edges() {
            if self.row(u).iter().zip(self.row(v)).any(|(a, b)| a & b != 0) {
                return true;
            }
        }
        false
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in 0..self.n {
                    if self.has_edge(u, v) {
                        if side[v] == u8::MAX {
                            side[v] = 1 - side[u];
                            stack.push(v);
                        } else if side[v] == side[u] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Renders the edge-list file format.
    pub fn to_edge_list(&self) -> String {
        let edges: Vec<_> = self.edges().collect();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Parses either the edge-list format (`n m` header followed by `m` lines
/// `u v` with `u < v < n`) or graph6 when the text starts with `>>graph6<<`
/// or a graph6 header byte.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim_start();
    if let Some(rest) = trimmed.strip_prefix(">>graph6<<") {
        return parse_graph6(rest.trim());
    }
    match trimmed.bytes().next() {
        Some(b) if (63..=126).contains(&b) && !b.is_ascii_digit() => parse_graph6(trimmed.trim()),
        _ => parse_edge_list(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::Parse {
        line: hline,
        msg: format!("malformed header {header:?}, expected \"n m\""),
    };
    if nums.len() != 2 {
        return Err(bad_header());
    }
    let n: usize = nums[0].parse().map_err(|_| bad_header())?;
    let m: usize = nums[1].parse().map_err(|_| bad_header())?;
    if n == 0 {
        return Err(Error::Parse {
            line: hline,
            msg: "vertex count must be positive".into(),
        });
    }
    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line, msg };
        if parts.len() != 2 {
            return Err(err(format!("expected \"u v\", got {l:?}")));
        }
        let u: usize = parts[0]
            .parse()
            .map_err(|_| err(format!("bad vertex {:?}", parts[0])))?;
        let v: usize = parts[1]
            .parse()
            .map_err(|_| err(format!("bad vertex {:?}", parts[1])))?;
        if u >= n || v >= n {
            return Err(err(format!(
                "vertex index {} out of range for n={n}",
                u.max(v)
            )));
        }
        if u == v {
            return Err(err(format!("loop at vertex {u}")));
        }
        if u > v {
            return Err(err(format!("edge {u} {v} must be written with u < v")));
        }
        if g.has_edge(u, v) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_graph6(s: &str) -> Result<Graph> {
    let bytes: Vec<u8> = s.bytes().collect();
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: format!("graph6: {msg}"),
    };
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("byte out of range"));
    }
    let (n, body) = match bytes.first() {
        None => return Err(err("empty input")),
        Some(126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(err("unsupported large graph"));
            }
            let n = ((bytes[1] - 63) as usize) << 12
                | ((bytes[2] - 63) as usize) << 6
                | (bytes[3] - 63) as usize;
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    if n == 0 {
        return Err(err("zero vertices"));
    }
    let need = (n * (n - 1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(err(&format!(
            "expected {need} data bytes, got {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    // graph6 orders the upper triangle column by column
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

/// Named small graphs used throughout: K̄3, P̄3 (edge plus isolated vertex), P3, K3.
pub mod named {
    use super::Graph;

    pub fn k3() -> Graph {
        Graph::complete(3)
    }
    pub fn k3_bar() -> Graph {
        Graph::empty(3)
    }
    pub fn p3() -> Graph {
        Graph::path(3)
    }
    pub fn p3_bar() -> Graph {
        Graph::from_edges(3, &[(0, 1)])
    }
    pub fn c5() -> Graph {
        Graph::cycle(5)
    }
    /// The 3-vertex types ordered by edge count.
    pub fn triples() -> [Graph; 4] {
        [k3_bar(), p3_bar(), p3(), k3()]
    }
}

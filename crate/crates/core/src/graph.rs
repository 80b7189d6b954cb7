//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex. Edges carry a stable
//! index: the unordered pairs `(u, v)` with `u < v` sorted lexicographically,
//! so colorings serialize deterministically.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

const NO_EDGE: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
    edge_lookup: Vec<u32>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_rows(n, adj))
    }

    /// Builds a graph from symmetric, loop-free adjacency rows.
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        debug_assert!(n <= MAX_VERTICES && adj.len() == n);
        let mut edges = Vec::new();
        let mut edge_lookup = vec![NO_EDGE; n * n];
        for u in 0..n {
            debug_assert_eq!(adj[u] >> u & 1, 0);
            let mut higher = adj[u] & !low_mask(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                let id = edges.len() as u32;
                edge_lookup[u * n + v] = id;
                edge_lookup[v * n + u] = id;
                edges.push((u, v));
            }
        }
        Graph {
            n,
            adj,
            edges,
            edge_lookup,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Neighbor bitmask of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Endpoints `(u, v)`, `u < v`, of every edge in index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_lookup[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    /// Bitmask with one bit per vertex.
    pub fn all_vertices(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_vertices();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & all & !(1u64 << v))
            .collect();
        Graph::from_rows(self.n, adj)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.component_of(0) == self.all_vertices()
    }

    /// Vertex set reachable from `start`.
    pub fn component_of(&self, start: usize) -> u64 {
        self.reachable_within(start, self.all_vertices())
    }

    /// Vertices reachable from `start` using only vertices in `allowed`.
    pub fn reachable_within(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// BFS distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS order and parent pointers of a spanning tree of the component of `root`.
    pub fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n];
        let mut order = vec![root];
        let mut seen = 1u64 << root;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in Bits(self.adj[u] & !seen) {
                seen |= 1 << w;
                parent[w] = Some(u);
                order.push(w);
            }
        }
        (order, parent)
    }

    /// Subgraph induced by deleting the vertices in `removed`, relabelled
    /// to `0..k` in increasing order. Returns the graph and the old ids.
    pub fn without_vertices(&self, removed: u64) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| removed >> v & 1 == 0).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| removed >> u & 1 == 0 && removed >> v & 1 == 0)
            .map(|&(u, v)| {
                let nu = keep.binary_search(&u).unwrap();
                let nv = keep.binary_search(&v).unwrap();
                (nu, nv)
            })
            .collect::<Vec<_>>();
        (Graph::from_edges(keep.len(), edges).unwrap(), keep)
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &[usize]) -> Graph {
        let mut adj = self.adj.clone();
        for &e in removed {
            let (u, v) = self.edges[e];
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
        Graph::from_rows(self.n, adj)
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n, edges.collect::<Vec<_>>()).unwrap()
    }

    /// Parses the edge-list text format: a header line `n m` followed by
    /// `m` lines `u v` with 0-indexed endpoints. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "edge list declares {m} edges but has {}",
                edges.len()
            )));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
        }
        let g = Graph::from_edges(n, edges)?;
        if g.m() != m {
            return Err(Error::Parse("edge list contains duplicate edges".into()));
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Mask with the low `k` bits set.
pub fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Bits {}

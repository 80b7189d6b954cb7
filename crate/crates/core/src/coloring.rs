//! Total-colorings and the total-rainbow connectivity verifier.
//!
//! A path is total-rainbow when its edges and internal vertices carry
//! pairwise distinct colors; endpoint colors never matter. The verifier here
//! is the reference every construction and every search result is checked
//! against, so it deliberately shares no code with the solver.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TotalColoring {
    pub vertex_colors: Vec<Color>,
    /// Indexed by `Graph::edges()` order.
    pub edge_colors: Vec<Color>,
}

impl TotalColoring {
    /// Every vertex and edge in its own color.
    pub fn all_distinct(g: &Graph) -> Self {
        let n = g.n() as Color;
        TotalColoring {
            vertex_colors: (0..n).collect(),
            edge_colors: (0..g.m() as Color).map(|e| n + e).collect(),
        }
    }

    pub fn uniform(g: &Graph, color: Color) -> Self {
        TotalColoring {
            vertex_colors: vec![color; g.n()],
            edge_colors: vec![color; g.m()],
        }
    }

    /// Number of distinct colors in use.
    pub fn palette(&self) -> usize {
        let mut all: Vec<Color> = self
            .vertex_colors
            .iter()
            .chain(&self.edge_colors)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    /// Relabels colors to `0..palette` in order of first appearance
    /// (vertices, then edges).
    pub fn normalized(&self) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut relabel = |c: Color| {
            let next = map.len() as Color;
            *map.entry(c).or_insert(next)
        };
        let vertex_colors = self.vertex_colors.iter().map(|&c| relabel(c)).collect();
        let edge_colors = self.edge_colors.iter().map(|&c| relabel(c)).collect();
        TotalColoring {
            vertex_colors,
            edge_colors,
        }
    }

    pub fn max_color(&self) -> Option<Color> {
        self.vertex_colors
            .iter()
            .chain(&self.edge_colors)
            .copied()
            .max()
    }

    pub fn edge_color(&self, g: &Graph, u: usize, v: usize) -> Option<Color> {
        g.edge_id(u, v).map(|e| self.edge_colors[e])
    }

    pub fn check_shape(&self, g: &Graph) -> Result<()> {
        if self.vertex_colors.len() != g.n() || self.edge_colors.len() != g.m() {
            return Err(Error::ShapeMismatch(format!(
                "coloring has {} vertex and {} edge colors, graph has n={} m={}",
                self.vertex_colors.len(),
                self.edge_colors.len(),
                g.n(),
                g.m()
            )));
        }
        Ok(())
    }

    /// Text format: `n m k`, vertex colors, edge colors (edge index order).
    pub fn to_text(&self) -> String {
        let join = |v: &[Color]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "{} {} {}\n{}\n{}\n",
            self.vertex_colors.len(),
            self.edge_colors.len(),
            self.palette(),
            join(&self.vertex_colors),
            join(&self.edge_colors)
        )
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty coloring file".into()))?;
        let nums = |line: &str| -> Result<Vec<Color>> {
            line.split_whitespace()
                .map(|t| {
                    t.parse::<Color>()
                        .map_err(|_| Error::Parse(format!("bad color {t:?}")))
                })
                .collect()
        };
        let head = nums(header)?;
        let [n, m, k] = head[..] else {
            return Err(Error::Parse("header must be `n m k`".into()));
        };
        let vertex_colors = nums(lines.next().unwrap_or(""))?;
        let edge_colors = nums(lines.next().unwrap_or(""))?;
        if vertex_colors.len() != n as usize || edge_colors.len() != m as usize {
            return Err(Error::Parse(format!(
                "expected {n} vertex and {m} edge colors, found {} and {}",
                vertex_colors.len(),
                edge_colors.len()
            )));
        }
        let c = TotalColoring {
            vertex_colors,
            edge_colors,
        };
        if c.max_color().is_some_and(|mx| mx >= k) {
            return Err(Error::Parse(format!(
                "color id exceeds declared palette {k}"
            )));
        }
        Ok(c)
    }

    /// Graphviz rendering; colors appear as labels and, for small palettes,
    /// as fill/stroke colors.
    pub fn to_dot(&self, g: &Graph) -> String {
        let styled = self.max_color().is_some_and(|c| c < 12);
        let mut out = String::from("graph trc {\n  node [shape=circle, style=filled, colorscheme=set312];\n  edge [colorscheme=set312, penwidth=2];\n");
        for v in 0..g.n() {
            let c = self.vertex_colors[v];
            if styled {
                let _ = writeln!(out, "  {v} [label=\"{v}:{c}\", fillcolor={}];", c + 1);
            } else {
                let _ = writeln!(out, "  {v} [label=\"{v}:{c}\"];");
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let c = self.edge_colors[e];
            if styled {
                let _ = writeln!(out, "  {u} -- {v} [label=\"{c}\", color={}];", c + 1);
            } else {
                let _ = writeln!(out, "  {u} -- {v} [label=\"{c}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPath {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// Lexicographically least pair without a total-rainbow path.
    pub witness_pair: Option<(usize, usize)>,
    pub witness_paths: Option<Vec<PairPath>>,
}

/// Checks one path; the path must be simple and follow edges of `g`.
pub fn is_total_rainbow_path(g: &Graph, c: &TotalColoring, path: &[usize]) -> Result<bool> {
    c.check_shape(g)?;
    if path.len() < 2 {
        return Err(Error::NotAPath("fewer than two vertices".into()));
    }
    let mut seen = 0u64;
    for &v in path {
        if v >= g.n() || seen >> v & 1 == 1 {
            return Err(Error::NotAPath(format!(
                "vertex {v} repeated or out of range"
            )));
        }
        seen |= 1 << v;
    }
    let mut colors = Vec::with_capacity(2 * path.len());
    for w in path.windows(2) {
        let e = g
            .edge_id(w[0], w[1])
            .ok_or_else(|| Error::NotAPath(format!("{}-{} is not an edge", w[0], w[1])))?;
        colors.push(c.edge_colors[e]);
    }
    colors.extend(path[1..path.len() - 1].iter().map(|&v| c.vertex_colors[v]));
    colors.sort_unstable();
    Ok(colors.windows(2).all(|w| w[0] != w[1]))
}

/// Depth-first search over total-rainbow paths with a used-color table.
struct RainbowSearch<'a> {
    g: &'a Graph,
    c: &'a TotalColoring,
    used: Vec<bool>,
    /// Longest admissible path in edges: `2L - 1` elements must fit the palette.
    max_len: usize,
}

impl<'a> RainbowSearch<'a> {
    fn new(g: &'a Graph, c: &'a TotalColoring) -> Self {
        let top = c.max_color().map_or(0, |m| m as usize + 1);
        let palette = c.palette();
        RainbowSearch {
            g,
            c,
            used: vec![false; top],
            max_len: palette.div_ceil(2).min(g.n().saturating_sub(1)),
        }
    }

    /// Vertices reached from `source` by total-rainbow paths, stopping once
    /// every vertex in `targets` is reached. Iterative deepening keeps the
    /// common case (short witnesses) cheap.
    fn reach(&mut self, source: usize, targets: u64) -> u64 {
        let mut reached = 0u64;
        for depth in 1..=self.max_len {
            let mut truncated = false;
            self.extend(
                source,
                1 << source,
                depth,
                targets,
                &mut reached,
                &mut truncated,
            );
            if reached & targets == targets || !truncated {
                break;
            }
        }
        reached
    }

    fn extend(
        &mut self,
        cur: usize,
        visited: u64,
        depth: usize,
        targets: u64,
        reached: &mut u64,
        cut: &mut bool,
    ) -> bool {
        for w in Bits(self.g.row(cur) & !visited) {
            let ce = self.c.edge_colors[self.g.edge_id(cur, w).unwrap()] as usize;
            if self.used[ce] {
                continue;
            }
            *reached |= 1 << w;
            if *reached & targets == targets {
                return true;
            }
            if self.g.row(w) & !(visited | 1 << w) == 0 {
                continue;
            }
            if depth == 1 {
                *cut = true;
                continue;
            }
            let cw = self.c.vertex_colors[w] as usize;
            if cw == ce {
                continue;
            }
            if self.used[cw] {
                continue;
            }
            self.used[ce] = true;
            self.used[cw] = true;
            let done = self.extend(w, visited | 1 << w, depth - 1, targets, reached, cut);
            self.used[ce] = false;
            self.used[cw] = false;
            if done {
                return true;
            }
        }
        false
    }

    fn find(&mut self, u: usize, v: usize) -> Option<Vec<usize>> {
        for depth in 1..=self.max_len {
            let mut path = vec![u];
            let mut cut = false;
            if self.find_from(u, v, 1 << u, depth, &mut path, &mut cut) {
                return Some(path);
            }
            if !cut {
                break;
            }
        }
        None
    }

    fn find_from(
        &mut self,
        cur: usize,
        target: usize,
        visited: u64,
        depth: usize,
        path: &mut Vec<usize>,
        cut: &mut bool,
    ) -> bool {
        for w in Bits(self.g.row(cur) & !visited) {
            let ce = self.c.edge_colors[self.g.edge_id(cur, w).unwrap()] as usize;
            if self.used[ce] {
                continue;
            }
            if w == target {
                path.push(w);
                return true;
            }
            if depth == 1 {
                *cut = true;
                continue;
            }
            let cw = self.c.vertex_colors[w] as usize;
            if cw == ce || self.used[cw] {
                continue;
            }
            self.used[ce] = true;
            self.used[cw] = true;
            path.push(w);
            let found = self.find_from(w, target, visited | 1 << w, depth - 1, path, cut);
            self.used[ce] = false;
            self.used[cw] = false;
            if found {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Some total-rainbow `u`–`v` path (shortest-first search), if one exists.
pub fn find_total_rainbow_path(
    g: &Graph,
    c: &TotalColoring,
    u: usize,
    v: usize,
) -> Result<Option<Vec<usize>>> {
    c.check_shape(g)?;
    if u >= g.n() || v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: u.max(v),
            n: g.n(),
        });
    }
    if u == v {
        return Err(Error::InvalidParameters("endpoints must differ".into()));
    }
    Ok(RainbowSearch::new(g, c).find(u, v))
}

/// Checks that every pair of distinct vertices is total-rainbow connected.
pub fn verify_trc(g: &Graph, c: &TotalColoring) -> Result<VerifyReport> {
    verify_impl(g, c, false)
}

/// Like [`verify_trc`], additionally returning one witness path per pair.
pub fn verify_trc_with_paths(g: &Graph, c: &TotalColoring) -> Result<VerifyReport> {
    verify_impl(g, c, true)
}

/// Boolean shortcut for [`verify_trc`] on connected graphs.
pub fn is_trc_coloring(g: &Graph, c: &TotalColoring) -> bool {
    verify_trc(g, c).map(|r| r.valid).unwrap_or(false)
}

fn verify_impl(g: &Graph, c: &TotalColoring, with_paths: bool) -> Result<VerifyReport> {
    c.check_shape(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut search = RainbowSearch::new(g, c);
    for u in 0..n {
        let targets = g.all_vertices() & !crate::graph::low_mask(u + 1);
        if targets == 0 {
            continue;
        }
        let reached = search.reach(u, targets);
        let missing = targets & !reached;
        if missing != 0 {
            return Ok(VerifyReport {
                valid: false,
                witness_pair: Some((u, missing.trailing_zeros() as usize)),
                witness_paths: None,
            });
        }
    }
    let witness_paths = with_paths.then(|| {
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let path = search.find(u, v).expect("pair verified reachable");
                out.push(PairPath { u, v, path });
            }
        }
        out
    });
    Ok(VerifyReport {
        valid: true,
        witness_pair: None,
        witness_paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn single_edge_is_rainbow() {
        let g = path(2);
        let c = TotalColoring::uniform(&g, 0);
        assert!(is_total_rainbow_path(&g, &c, &[0, 1]).unwrap());
    }

    #[test]
    fn repeated_edge_color() {
        let g = path(3);
        let c = TotalColoring {
            vertex_colors: vec![0, 5, 0],
            edge_colors: vec![1, 1],
        };
        assert!(!is_total_rainbow_path(&g, &c, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn internal_vertex_clashes_with_edge() {
        let g = path(3);
        let c = TotalColoring {
            vertex_colors: vec![9, 1, 9],
            edge_colors: vec![1, 2],
        };
        assert!(!is_total_rainbow_path(&g, &c, &[0, 1, 2]).unwrap());
        // endpoints are ignored
        let c2 = TotalColoring {
            vertex_colors: vec![1, 3, 2],
            edge_colors: vec![1, 2],
        };
        assert!(is_total_rainbow_path(&g, &c2, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn rejects_non_paths() {
        let g = path(4);
        let c = TotalColoring::all_distinct(&g);
        assert!(is_total_rainbow_path(&g, &c, &[0, 2]).is_err());
        assert!(is_total_rainbow_path(&g, &c, &[0, 1, 0]).is_err());
        assert!(is_total_rainbow_path(&g, &c, &[1]).is_err());
    }

    #[test]
    fn complete_graph_one_color() {
        let k5 = Graph::empty(5).unwrap().complement();
        assert!(
            verify_trc(&k5, &TotalColoring::uniform(&k5, 0))
                .unwrap()
                .valid
        );
    }

    #[test]
    fn path_distinct_valid_six_colors_invalid() {
        let g = path(5);
        assert!(
            verify_trc(&g, &TotalColoring::all_distinct(&g))
                .unwrap()
                .valid
        );
        // every assignment with 6 colors fails; spot-check a structured family
        for shift in 0..6u32 {
            let c = TotalColoring {
                vertex_colors: (0..5).map(|v| (v + shift) % 6).collect(),
                edge_colors: (0..4).map(|e| (e + 3 + shift) % 6).collect(),
            };
            let r = verify_trc(&g, &c).unwrap();
            assert!(!r.valid);
            assert!(r.witness_pair.is_some());
        }
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let g = path(4);
        // edges 0-1, 1-2 share a color: pairs (0,2) and (0,3) fail
        let c = TotalColoring {
            vertex_colors: vec![0, 1, 2, 3],
            edge_colors: vec![4, 4, 5],
        };
        let r = verify_trc(&g, &c).unwrap();
        assert_eq!(r.witness_pair, Some((0, 2)));
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            verify_trc(&g, &TotalColoring::all_distinct(&g)),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn witness_paths_are_rainbow() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = TotalColoring::all_distinct(&g);
        let r = verify_trc_with_paths(&g, &c).unwrap();
        let paths = r.witness_paths.unwrap();
        assert_eq!(paths.len(), 6);
        for p in paths {
            assert!(is_total_rainbow_path(&g, &c, &p.path).unwrap());
            assert_eq!((p.path[0], *p.path.last().unwrap()), (p.u, p.v));
        }
    }

    #[test]
    fn text_round_trip_and_normalization() {
        let c = TotalColoring {
            vertex_colors: vec![7, 3, 7],
            edge_colors: vec![9, 3],
        };
        let n = c.normalized();
        assert_eq!(n.vertex_colors, vec![0, 1, 0]);
        assert_eq!(n.edge_colors, vec![2, 1]);
        assert_eq!(n.palette(), 3);
        let back = TotalColoring::parse_text(&n.to_text()).unwrap();
        assert_eq!(back, n);
        assert!(TotalColoring::parse_text("3 2 2\n0 1 2\n0 0\n").is_err());
        assert!(TotalColoring::parse_text("3 2 3\n0 1\n0 0\n").is_err());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let g = path(3);
        let dot = TotalColoring::all_distinct(&g).to_dot(&g);
        assert!(dot.contains("0 -- 1") && dot.contains("1 -- 2"));
    }
}

//! Named graph families and explicit colorings.
//!
//! Every coloring returned from this module has been run through the
//! verifier; a recipe that produces an invalid coloring surfaces as
//! [`Error::InvalidConstruction`].

mod bipartite;
mod complements;
mod cycles;
mod diam2;
mod extend;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_trc, Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub use bipartite::{
    color_complete_bipartite, color_complete_bipartite_strong, complete_bipartite_trc,
};
pub use complements::{
    color_complement_of_diam3_2connected, color_complement_of_path, color_complement_of_spider,
    color_via_distance_layers, diam3_subcase, Diam3Subcase, LayeredPartition,
};
pub use cycles::{b_ell_trc, color_b_ell, color_cycle, cycle_trc};
pub use diam2::{color_two_connected_diam2, two_connected_diam2_recipe};
pub use extend::{extend_coloring, ExtendRoute, Extension, GraphOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{m,n}`: side of size `m` first.
    CompleteBipartite(usize, usize),
    /// `K_{1,n-1}` on `n` vertices, center 0.
    Star(usize),
    /// Adjacent centers 0 and 1 carrying `a` and `b` leaves.
    DoubleStar(usize, usize),
    /// Three legs of lengths `k >= l >= m` from center 0.
    Spider(usize, usize, usize),
    /// Cycle `u_1..u_l` (vertices `0..l`) with a path of `tail` further
    /// vertices hung at `u_1`.
    BEll(usize, usize),
    H1,
    H2,
    H3,
    H4,
    Petersen,
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Star(n) => n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::DoubleStar(a, b) => a + b + 2,
            FamilySpec::Spider(k, l, m) => k + l + m + 1,
            FamilySpec::BEll(l, t) => l + t,
            FamilySpec::H1 | FamilySpec::H2 | FamilySpec::H3 | FamilySpec::H4 => 6,
            FamilySpec::Petersen => 10,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) if n == 0 => {
                return bad(format!("{self}: n >= 1"))
            }
            FamilySpec::Cycle(n) if n < 3 => return bad(format!("{self}: cycles need n >= 3")),
            FamilySpec::Star(n) if n < 2 => return bad(format!("{self}: stars need n >= 2")),
            FamilySpec::CompleteBipartite(a, b) if a == 0 || b == 0 => {
                return bad(format!("{self}: both sides must be nonempty"))
            }
            FamilySpec::DoubleStar(a, b) if a == 0 || b == 0 => {
                return bad(format!("{self}: each center needs a leaf"))
            }
            FamilySpec::Spider(k, l, m) if !(k >= l && l >= m && m >= 1) => {
                return bad(format!("{self}: need k >= l >= m >= 1"))
            }
            FamilySpec::BEll(l, t) if l < 3 || t == 0 => {
                return bad(format!("{self}: need l >= 3, tail >= 1"))
            }
            _ => {}
        }
        if self.order() > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.order()));
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "kbip:{a},{b}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::DoubleStar(a, b) => write!(f, "dstar:{a},{b}"),
            FamilySpec::Spider(k, l, m) => write!(f, "spider:{k},{l},{m}"),
            FamilySpec::BEll(l, t) => write!(f, "bell:{l},{t}"),
            FamilySpec::H1 => f.write_str("h1"),
            FamilySpec::H2 => f.write_str("h2"),
            FamilySpec::H3 => f.write_str("h3"),
            FamilySpec::H4 => f.write_str("h4"),
            FamilySpec::Petersen => f.write_str("petersen"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `path:7`, `cycle:12`, `complete:5`, `kbip:3,30`, `star:6`,
    /// `dstar:2,3`, `spider:2,2,1`, `bell:11,3`, `h1`..`h4`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (tag, args) = s.split_once(':').unwrap_or((s.as_str(), ""));
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("family `{s}`: {e}")))?
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "family `{tag}` takes {k} parameter(s), got {}",
                    nums.len()
                )))
            }
        };
        let spec = match tag {
            "path" | "p" => {
                arity(1)?;
                FamilySpec::Path(nums[0])
            }
            "cycle" | "c" => {
                arity(1)?;
                FamilySpec::Cycle(nums[0])
            }
            "complete" | "k" => {
                arity(1)?;
                FamilySpec::Complete(nums[0])
            }
            "kbip" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(nums[0], nums[1])
            }
            "star" => {
                arity(1)?;
                FamilySpec::Star(nums[0])
            }
            "dstar" => {
                arity(2)?;
                FamilySpec::DoubleStar(nums[0], nums[1])
            }
            "spider" => {
                arity(3)?;
                FamilySpec::Spider(nums[0], nums[1], nums[2])
            }
            "bell" => {
                arity(2)?;
                FamilySpec::BEll(nums[0], nums[1])
            }
            "h1" | "h2" | "h3" | "h4" | "petersen" => {
                arity(0)?;
                match tag {
                    "h1" => FamilySpec::H1,
                    "h2" => FamilySpec::H2,
                    "h3" => FamilySpec::H3,
                    "h4" => FamilySpec::H4,
                    _ => FamilySpec::Petersen,
                }
            }
            _ => return Err(Error::Parse(format!("unknown family `{tag}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.order();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match *spec {
        FamilySpec::Path(n) => edges.extend((1..n).map(|i| (i - 1, i))),
        FamilySpec::Cycle(n) => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Complete(n) => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        FamilySpec::CompleteBipartite(a, b) => {
            for u in 0..a {
                edges.extend((a..a + b).map(|v| (u, v)));
            }
        }
        FamilySpec::Star(n) => edges.extend((1..n).map(|v| (0, v))),
        FamilySpec::DoubleStar(a, b) => {
            edges.push((0, 1));
            edges.extend((2..2 + a).map(|v| (0, v)));
            edges.extend((2 + a..2 + a + b).map(|v| (1, v)));
        }
        FamilySpec::Spider(k, l, m) => {
            let mut start = 1;
            for len in [k, l, m] {
                edges.push((0, start));
                edges.extend((start + 1..start + len).map(|v| (v - 1, v)));
                start += len;
            }
        }
        FamilySpec::BEll(l, t) => {
            edges.extend((0..l).map(|i| (i, (i + 1) % l)));
            edges.push((0, l));
            edges.extend((l + 1..l + t).map(|v| (v - 1, v)));
        }
        FamilySpec::H1 | FamilySpec::H2 | FamilySpec::H3 => {
            edges.extend((0..5).map(|i| (i, (i + 1) % 5)));
            match spec {
                FamilySpec::H1 => edges.extend([(0, 5), (2, 5)]),
                FamilySpec::H2 => edges.extend([(0, 5), (2, 5), (0, 2)]),
                _ => edges.extend([(0, 2), (0, 3), (0, 5)]),
            }
        }
        FamilySpec::H4 => {
            edges.extend((1..6).map(|i| (0, i)));
            edges.extend((2..5).map(|i| (1, i)));
        }
        FamilySpec::Petersen => return Ok(petersen()),
    }
    Graph::from_edges(n, edges)
}

/// The Petersen graph: outer 5-cycle 0..5, spokes to 5..10, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Incrementally assembled coloring with a default color for untouched
/// elements.
pub(crate) struct Painter<'g> {
    g: &'g Graph,
    c: TotalColoring,
}

impl<'g> Painter<'g> {
    pub(crate) fn new(g: &'g Graph, default: Color) -> Self {
        Painter {
            g,
            c: TotalColoring::uniform(g, default),
        }
    }

    pub(crate) fn vertex(&mut self, v: usize, color: Color) {
        self.c.vertex_colors[v] = color;
    }

    /// Colors `uv`; silently ignores non-edges so recipes can paint
    /// `E[S, T]` by iterating over `S x T`.
    pub(crate) fn edge(&mut self, u: usize, v: usize, color: Color) {
        if let Some(e) = self.g.edge_id(u, v) {
            self.c.edge_colors[e] = color;
        }
    }

    pub(crate) fn edges_between(&mut self, a: u64, b: u64, color: Color) {
        for u in crate::graph::Bits(a) {
            for v in crate::graph::Bits(self.g.row(u) & b) {
                self.edge(u, v, color);
            }
        }
    }

    pub(crate) fn finish(self, recipe: &str) -> Result<TotalColoring> {
        checked(self.g, self.c, recipe)
    }
}

/// Normalizes `c` and returns it if it is a valid coloring of `g`.
pub(crate) fn checked(g: &Graph, c: TotalColoring, recipe: &str) -> Result<TotalColoring> {
    let report = verify_trc(g, &c)?;
    if report.valid {
        Ok(c.normalized())
    } else {
        let (u, v) = report.witness_pair.unwrap_or((0, 0));
        Err(Error::InvalidConstruction(format!(
            "{recipe}: pair ({u}, {v}) has no total-rainbow path"
        )))
    }
}

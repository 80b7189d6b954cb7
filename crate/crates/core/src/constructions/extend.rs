use serde::{Deserialize, Serialize};

use crate::coloring::{is_trc_coloring, verify_trc, Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, MAX_VERTICES};
use crate::solver::{find_coloring, Budget, Feasibility, SolverConfig};
use crate::structure::cut_elements;

/// Local graph operations; the new vertex always gets id `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphOp {
    /// New leaf adjacent to `at`.
    AddPendant { at: usize },
    /// Replace edge `xy` by the path `x, n, y`.
    Subdivide { x: usize, y: usize },
    /// Replace cut vertex `vertex` by adjacent twins `vertex` and `n`; the
    /// components of `G - vertex` inside `moved` reattach to the new twin.
    SplitCutVertex { vertex: usize, moved: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendRoute {
    /// At most one fresh color sufficed.
    Reuse,
    Recipe,
    /// The mirrored subdivision recipe.
    Mirror,
    /// No recipe variant verified; found by bounded search at `k + 2`.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub graph: Graph,
    pub coloring: TotalColoring,
    pub route: ExtendRoute,
}

impl GraphOp {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let n = g.n();
        if n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(n + 1));
        }
        let range = |v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(Error::VertexOutOfRange { vertex: v, n })
            }
        };
        let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
        match *self {
            GraphOp::AddPendant { at } => {
                range(at)?;
                edges.push((at, n));
            }
            GraphOp::Subdivide { x, y } => {
                range(x)?;
                range(y)?;
                let e = g
                    .edge_id(x, y)
                    .ok_or_else(|| Error::Precondition(format!("{x}{y} is not an edge")))?;
                edges.remove(e);
                edges.extend([(x, n), (n, y)]);
            }
            GraphOp::SplitCutVertex { vertex, moved } => {
                range(vertex)?;
                check_split(g, vertex, moved)?;
                for e in edges.iter_mut() {
                    let (a, b) = *e;
                    if a == vertex && moved >> b & 1 == 1 {
                        *e = (b, n);
                    } else if b == vertex && moved >> a & 1 == 1 {
                        *e = (a, n);
                    }
                }
                edges.push((vertex, n));
            }
        }
        Graph::from_edges(n + 1, edges)
    }
}

fn check_split(g: &Graph, v: usize, moved: u64) -> Result<()> {
    if cut_elements(g).cut_vertices >> v & 1 == 0 {
        return Err(Error::Precondition(format!(
            "vertex {v} is not a cut vertex"
        )));
    }
    let rest = g.all_vertices() & !(1 << v);
    if moved & !rest != 0 || moved == 0 || moved == rest {
        return Err(Error::Precondition(
            "moved set must be a nonempty proper union of components of G - v".into(),
        ));
    }
    for w in Bits(moved) {
        let comp = g.reachable_within(w, rest);
        if comp & !moved != 0 {
            return Err(Error::Precondition(
                "moved set splits a component of G - v".into(),
            ));
        }
    }
    Ok(())
}

/// Coloring of `op(g)` from a valid coloring `c` of `g` using at most two
/// colors outside `c`'s palette.
pub fn extend_coloring(g: &Graph, c: &TotalColoring, op: &GraphOp) -> Result<Extension> {
    let report = verify_trc(g, c)?;
    if !report.valid {
        return Err(Error::Precondition(
            "input coloring is not total-rainbow connecting".into(),
        ));
    }
    let h = op.apply(g)?;
    let n = g.n();
    let f1 = c.max_color().map_or(0, |m| m + 1);
    let f2 = f1 + 1;
    // copy colors of surviving elements, renaming the split twin's edges
    let base = |rename: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut out = TotalColoring::uniform(&h, f1);
        out.vertex_colors[..n].copy_from_slice(&c.vertex_colors);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let (x, y) = rename(a, b);
            if let Some(id) = h.edge_id(x, y) {
                out.edge_colors[id] = c.edge_colors[e];
            }
        }
        out
    };
    let identity = |a: usize, b: usize| (a, b);
    let set_edge = |col: &mut TotalColoring, a: usize, b: usize, color: Color| {
        let id = h.edge_id(a, b).expect("edge of the extended graph");
        col.edge_colors[id] = color;
    };
    let done = |coloring: TotalColoring, route| Extension {
        graph: h.clone(),
        coloring,
        route,
    };

    match *op {
        GraphOp::AddPendant { at } => {
            let mut out = base(&identity);
            set_edge(&mut out, at, n, f1);
            out.vertex_colors[n] = f1;
            // try keeping `at`'s color, then every other old color
            let mut candidates = vec![c.vertex_colors[at]];
            candidates.extend((0..f1).filter(|&k| k != c.vertex_colors[at]));
            for k in candidates {
                out.vertex_colors[at] = k;
                if is_trc_coloring(&h, &out) {
                    return Ok(done(out.normalized(), ExtendRoute::Reuse));
                }
            }
            out.vertex_colors[at] = f2;
            ensure(&h, out, ExtendRoute::Recipe, "add pendant").map(|(c, r)| done(c, r))
        }
        GraphOp::Subdivide { x, y } => {
            let old = c.edge_colors[g.edge_id(x, y).unwrap()];
            let mut out = base(&identity);
            out.vertex_colors[n] = f2;
            for (near, far, route) in [(x, y, ExtendRoute::Recipe), (y, x, ExtendRoute::Mirror)] {
                set_edge(&mut out, near, n, old);
                set_edge(&mut out, n, far, f1);
                if is_trc_coloring(&h, &out) {
                    return Ok(done(out.normalized(), route));
                }
            }
            let k = c.palette() + 2;
            let k = k.min(h.n() + h.m());
            let budget = Budget {
                max_nodes: 50_000_000,
                ..Budget::default()
            };
            match find_coloring(&h, k, &budget, &SolverConfig::default())? {
                Feasibility::Found(found) => Ok(done(found, ExtendRoute::Search)),
                _ => Err(Error::InvalidConstruction(format!(
                    "subdividing {x}{y}: no coloring with {k} colors"
                ))),
            }
        }
        GraphOp::SplitCutVertex { vertex, moved } => {
            let rename = |a: usize, b: usize| {
                if a == vertex && moved >> b & 1 == 1 {
                    (b, n)
                } else if b == vertex && moved >> a & 1 == 1 {
                    (a, n)
                } else {
                    (a, b)
                }
            };
            let mut out = base(&rename);
            set_edge(&mut out, vertex, n, f1);
            out.vertex_colors[n] = f2;
            ensure(&h, out, ExtendRoute::Recipe, "split cut vertex").map(|(c, r)| done(c, r))
        }
    }
}

fn ensure(
    h: &Graph,
    c: TotalColoring,
    route: ExtendRoute,
    what: &str,
) -> Result<(TotalColoring, ExtendRoute)> {
    super::checked(h, c, what).map(|c| (c, route))
}

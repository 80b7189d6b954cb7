use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::structure::{cut_elements, diameter, eccentricities};

use super::bipartite::paint_digits;
use super::{generate, FamilySpec, Painter};

/// Distance shells around a base vertex plus whatever auxiliary vertex sets
/// a recipe derives from them (all as bitmasks).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredPartition {
    pub base: usize,
    /// `layers[i]` holds the vertices at distance `i + 1`; the last entry
    /// may merge all further shells.
    pub layers: Vec<u64>,
    pub aux: BTreeMap<String, u64>,
}

impl LayeredPartition {
    /// Shells of `g` around `base`, merging every shell from `merge_from`
    /// (1-based distance) onward into one.
    pub fn new(g: &Graph, base: usize, merge_from: usize) -> Self {
        let dist = g.distances_from(base);
        let mut layers = vec![0u64; merge_from];
        for (w, d) in dist.iter().enumerate() {
            if let Some(d) = *d {
                if d > 0 {
                    layers[d.min(merge_from) - 1] |= 1 << w;
                }
            }
        }
        while layers.last() == Some(&0) {
            layers.pop();
        }
        LayeredPartition {
            base,
            layers,
            aux: BTreeMap::new(),
        }
    }

    /// Shell at 1-based distance `i` (empty if absent).
    pub fn shell(&self, i: usize) -> u64 {
        self.layers.get(i - 1).copied().unwrap_or(0)
    }
}

/// 3-coloring of the complement of `P_n` (`n >= 5`, path `0-1-..-(n-1)`).
pub fn color_complement_of_path(n: usize) -> Result<TotalColoring> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!(
            "complement of P_{n}: the recipe needs n >= 5"
        )));
    }
    let g = generate(&FamilySpec::Path(n))?.complement();
    let mut p = Painter::new(&g, 0);
    // v_i is vertex i - 1
    let v = |i: usize| i - 1;
    for (a, b) in [(1, 4), (5, 2)] {
        p.edge(v(a), v(b), 0);
    }
    for (a, b) in [(1, 3), (1, 5), (3, 5), (2, 4)] {
        p.edge(v(a), v(b), 1);
    }
    for i in 1..=n {
        p.vertex(v(i), 2);
    }
    for i in 6..=n {
        p.edge(v(1), v(i), (i % 2) as Color);
    }
    p.finish("complement of a path")
}

/// 3-coloring of the complement of `Spider(k, l, m)` (numbering of
/// [`generate`]: center 0, then the three legs from the center outward).
pub fn color_complement_of_spider(k: usize, l: usize, m: usize) -> Result<TotalColoring> {
    if !(k >= l && l >= m && m >= 1 && k >= 2 && k + l + m + 1 >= 6) {
        return Err(Error::InvalidParameters(format!(
            "complement of Spider({k},{l},{m}): need k >= l >= m >= 1, k >= 2 and n >= 6"
        )));
    }
    let g = generate(&FamilySpec::Spider(k, l, m))?.complement();
    let center = 0;
    let u = |i: usize| i;
    let v = |i: usize| k + i;
    let w = |i: usize| k + l + i;
    let mut p = Painter::new(&g, 0);
    p.edge(v(1), u(1), 0);
    p.edge(center, u(2), 0);
    if l >= 2 {
        p.edge(u(1), v(2), 0);
        p.edge(center, v(2), 1);
    }
    if k >= 3 {
        p.edge(u(1), u(3), 0);
        p.edge(center, u(3), 1);
    }
    for i in 1..=l {
        p.edge(u(2), v(i), (i % 2) as Color);
    }
    for i in 1..=m {
        p.edge(u(2), w(i), (i % 2) as Color);
    }
    for i in 3..=k {
        p.edge(v(1), u(i), ((i + 1) % 2) as Color);
    }
    for x in 0..g.n() {
        p.vertex(x, 2);
    }
    p.finish("complement of a spider")
}

/// Coloring of `complement(gbar)` with at most 7 colors, built from the
/// distance shells of `gbar` around a vertex of maximum eccentricity.
pub fn color_via_distance_layers(gbar: &Graph) -> Result<TotalColoring> {
    if !gbar.is_connected() {
        return Err(Error::Precondition("the graph must be connected".into()));
    }
    if diameter(gbar) <= 3 {
        return Err(Error::Precondition(
            "the graph must have diameter > 3".into(),
        ));
    }
    let ecc = eccentricities(gbar);
    let diam = *ecc.iter().max().unwrap();
    let base = ecc.iter().position(|&e| e == diam).unwrap();
    let part = LayeredPartition::new(gbar, base, 4);
    let g = gbar.complement();
    let v = 1u64 << base;
    let (n1, n2, n3, n4) = (part.shell(1), part.shell(2), part.shell(3), part.shell(4));
    let mut p = Painter::new(&g, 1);
    p.edges_between(n1, n4, 1);
    p.edges_between(v, n2, 1);
    for x in Bits(n2 | n4) {
        p.vertex(x, 2);
    }
    p.edges_between(v, n4, 3);
    p.vertex(base, 4);
    p.edges_between(v, n3, 5);
    for x in Bits(n1 | n3) {
        p.vertex(x, 6);
    }
    p.edges_between(n1, n3, 7);
    p.edges_between(n2, n4, 7);
    p.finish("distance layers")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diam3Subcase {
    /// One far vertex `z`, and `G - z` has a pendant bridge `uw` with
    /// `u` of degree 2 next to `z`.
    PendantBridge,
    /// At least two vertices at distance 3 from the base.
    ManyFar,
}

#[derive(Clone, Copy, Debug)]
struct Diam3Frame {
    base: usize,
    x: u64,
    y: u64,
    z: u64,
    subcase: Diam3Subcase,
    /// `(z, u, w)` for the pendant-bridge configuration.
    pendant: Option<(usize, usize, usize)>,
}

fn diam3_frames(g: &Graph) -> Result<Vec<Diam3Frame>> {
    if !g.is_connected() || g.n() < 3 || cut_elements(g).cut_vertices != 0 {
        return Err(Error::Precondition("the graph must be 2-connected".into()));
    }
    if diameter(g) != 3 {
        return Err(Error::Precondition("the graph must have diameter 3".into()));
    }
    let gbar = g.complement();
    if !gbar.is_connected() || diameter(&gbar) != 2 {
        return Err(Error::Precondition(
            "the complement must have diameter 2".into(),
        ));
    }
    let ecc = eccentricities(g);
    let mut frames = Vec::new();
    for base in (0..g.n()).filter(|&v| ecc[v] == 3) {
        let part = LayeredPartition::new(g, base, 3);
        let (x, y, z) = (part.shell(1), part.shell(2), part.shell(3));
        if z.count_ones() >= 2 {
            frames.push(Diam3Frame {
                base,
                x,
                y,
                z,
                subcase: Diam3Subcase::ManyFar,
                pendant: None,
            });
            continue;
        }
        let zv = z.trailing_zeros() as usize;
        for u in Bits(y & g.row(zv)) {
            if g.degree(u) != 2 {
                continue;
            }
            let w = (g.row(u) & !(1 << zv)).trailing_zeros() as usize;
            if x >> w & 1 == 1 {
                frames.push(Diam3Frame {
                    base,
                    x,
                    y,
                    z,
                    subcase: Diam3Subcase::PendantBridge,
                    pendant: Some((zv, u, w)),
                });
                break;
            }
        }
    }
    Ok(frames)
}

/// Which complement recipe applies to `g`, if any.
pub fn diam3_subcase(g: &Graph) -> Result<Diam3Subcase> {
    let frames = diam3_frames(g)?;
    frames
        .iter()
        .map(|f| f.subcase)
        .min_by_key(|s| *s != Diam3Subcase::PendantBridge)
        .ok_or_else(|| {
            Error::Precondition("no base vertex gives two far vertices or a pendant bridge".into())
        })
}

/// Coloring of the complement of a 2-connected diameter-3 graph `g` whose
/// complement has diameter 2: at most 7 colors in the pendant-bridge
/// configuration, at most 11 otherwise.
pub fn color_complement_of_diam3_2connected(
    g: &Graph,
    subcase: Option<Diam3Subcase>,
) -> Result<TotalColoring> {
    let frames = diam3_frames(g)?;
    let wanted = subcase.unwrap_or(diam3_subcase(g)?);
    let frame = frames
        .into_iter()
        .find(|f| f.subcase == wanted)
        .ok_or_else(|| Error::Precondition(format!("{wanted:?} configuration not present")))?;
    let gbar = g.complement();
    match frame.subcase {
        Diam3Subcase::PendantBridge => pendant_bridge(&gbar, &frame),
        Diam3Subcase::ManyFar => many_far(&gbar, &frame),
    }
}

fn pendant_bridge(gbar: &Graph, f: &Diam3Frame) -> Result<TotalColoring> {
    let (z, u, w) = f.pendant.unwrap();
    let v = f.base;
    let bit = |x: usize| 1u64 << x;
    let x_rest = f.x & !bit(w);
    let y_rest = f.y & !bit(u);
    let mut p = Painter::new(gbar, 1);
    p.edges_between(bit(z), x_rest, 1);
    p.edges_between(bit(u), y_rest, 1);
    p.vertex(z, 2);
    p.edge(z, v, 3);
    p.vertex(v, 4);
    p.edge(v, u, 5);
    p.vertex(u, 6);
    p.edges_between(bit(u), x_rest, 7);
    p.edges_between(bit(v), y_rest, 7);
    p.edge(z, w, 7);
    p.finish("complement, pendant-bridge configuration")
}

fn many_far(gbar: &Graph, f: &Diam3Frame) -> Result<TotalColoring> {
    if f.x == 0 {
        return Err(Error::DegenerateSet("X"));
    }
    if f.z == 0 {
        return Err(Error::DegenerateSet("Z"));
    }
    let v = f.base;
    let y1: u64 = Bits(f.y)
        .filter(|&y| gbar.row(y) & f.x != 0)
        .fold(0, |a, y| a | 1 << y);
    let y2: u64 = Bits(f.y & !y1)
        .filter(|&y| gbar.row(y) & f.z != 0)
        .fold(0, |a, y| a | 1 << y);
    let y3 = f.y & !y1 & !y2;
    if y3 != 0 && y1 == 0 {
        return Err(Error::DegenerateSet("Y1"));
    }

    // strong coloring of the complete bipartite graph between X and Z
    let xs: Vec<usize> = Bits(f.x).collect();
    let zs: Vec<usize> = Bits(f.z).collect();
    let (small, big) = if xs.len() <= zs.len() {
        (&xs, &zs)
    } else {
        (&zs, &xs)
    };
    let mut c = TotalColoring::uniform(gbar, 1);
    let (small, big) = (small.clone(), big.clone());
    if small.len() == 1 {
        // a star: one edge color suffices
        for &b in &big {
            let e = gbar.edge_id(small[0], b).unwrap();
            c.edge_colors[e] = 1;
        }
        c.vertex_colors[small[0]] = 2;
        for &b in &big {
            c.vertex_colors[b] = 3;
        }
    } else {
        let b = paint_digits(gbar, &mut c, &small, &big, 1)? as Color;
        for &s in &small {
            c.vertex_colors[s] = b + 1;
        }
        for &t in &big {
            c.vertex_colors[t] = b + 2;
        }
    }
    let reserved = c.max_color().unwrap().max(7);
    let mut p = Painter { g: gbar, c };
    p.edges_between(y1, f.x, reserved + 1);
    p.edges_between(y2, f.z, reserved + 1);
    p.edges_between(1 << v, f.z, reserved + 2);
    p.vertex(v, reserved + 3);
    p.edges_between(1 << v, f.y, reserved + 4);
    for y in Bits(y1) {
        let x = (gbar.row(y) & f.x).trailing_zeros() as usize;
        let z = (gbar.row(x) & f.z).trailing_zeros() as usize;
        let xz = gbar.edge_id(x, z).unwrap();
        let blocked = [
            p.c.vertex_colors[x],
            p.c.edge_colors[xz],
            p.c.vertex_colors[z],
        ];
        let mut free = (1..=reserved).filter(|k| !blocked.contains(k));
        let cy = free.next().unwrap();
        let ce = free.next().unwrap();
        p.vertex(y, cy);
        p.edges_between(1 << y, y3, ce);
    }
    p.finish("complement, two or more far vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_trc;

    #[test]
    fn co_path_small_and_large() {
        for n in [5, 6, 7, 12, 20, 30] {
            let c = color_complement_of_path(n).unwrap();
            assert_eq!(c.palette(), 3, "n={n}");
        }
        assert!(color_complement_of_path(4).is_err());
    }

    #[test]
    fn co_spider() {
        for (k, l, m) in [(2, 2, 1), (3, 1, 1), (4, 3, 2), (2, 2, 2), (5, 1, 1)] {
            let c = color_complement_of_spider(k, l, m).unwrap();
            assert_eq!(c.palette(), 3, "({k},{l},{m})");
        }
        assert!(color_complement_of_spider(2, 1, 1).is_err());
        assert!(color_complement_of_spider(1, 1, 1).is_err());
    }

    #[test]
    fn layers_on_examples() {
        for spec in [
            FamilySpec::Path(8),
            FamilySpec::Spider(4, 4, 1),
            FamilySpec::Cycle(9),
        ] {
            let gbar = generate(&spec).unwrap();
            let c = color_via_distance_layers(&gbar).unwrap();
            assert!(c.palette() <= 7);
            assert!(verify_trc(&gbar.complement(), &c).unwrap().valid);
        }
        assert!(color_via_distance_layers(&generate(&FamilySpec::Cycle(7)).unwrap()).is_err());
    }

    #[test]
    fn diam3_rejects_wrong_diameter() {
        let g = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(color_complement_of_diam3_2connected(&g, None).is_err());
    }
}

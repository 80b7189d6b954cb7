//! Best available constructive upper bound for an arbitrary connected graph.

use crate::coloring::{is_trc_coloring, Color, TotalColoring};
use crate::constructions::{
    color_b_ell, color_complement_of_diam3_2connected, color_complement_of_path,
    color_complement_of_spider, color_complete_bipartite, color_cycle, color_via_distance_layers,
    extend_coloring, generate, two_connected_diam2_recipe, FamilySpec, GraphOp,
};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::solver::{UpperBound, UpperSource};
use crate::structure::{
    cut_elements, diameter, is_tree, longest_cycle, unicyclic_decompose, Circumference,
};

const CYCLE_BUDGET: u64 = 2_000_000;
/// Verifier calls spent on merging color classes of the best candidate.
const REDUCTION_CHECKS: usize = 400;

/// Spanning-tree coloring: tree edges and the tree's inner vertices all
/// distinct, every other element reuses color 0. The root is chosen to
/// maximize the number of tree leaves.
pub fn spanning_tree_coloring(g: &Graph) -> TotalColoring {
    (0..g.n())
        .map(|root| tree_coloring_from(g, root))
        .min_by_key(|c| c.palette())
        .expect("nonempty graph")
}

fn tree_coloring_from(g: &Graph, root: usize) -> TotalColoring {
    let (order, parent) = g.bfs_tree(root);
    let mut c = TotalColoring::uniform(g, 0);
    let mut next: Color = 0;
    for &v in &order[1..] {
        let e = g.edge_id(parent[v].unwrap(), v).unwrap();
        c.edge_colors[e] = next;
        next += 1;
    }
    let mut inner = vec![false; g.n()];
    for p in parent.iter().flatten() {
        inner[*p] = true;
    }
    if order.len() > 2 {
        for (v, &is_inner) in inner.iter().enumerate() {
            if is_inner && g.n() > 2 && (parent[v].is_some() || count_children(&parent, v) >= 2) {
                c.vertex_colors[v] = next;
                next += 1;
            }
        }
    }
    c
}

fn count_children(parent: &[Option<usize>], v: usize) -> usize {
    parent.iter().filter(|&&p| p == Some(v)).count()
}

/// Transfers a coloring of `canon` onto `g` through the vertex map `phi`
/// (`canon` vertex -> `g` vertex). `canon` must map onto a spanning
/// subgraph of `g`; edges of `g` outside the image get color 0.
pub(crate) fn pull_back(
    g: &Graph,
    canon: &Graph,
    c: &TotalColoring,
    phi: &[usize],
) -> Option<TotalColoring> {
    let mut out = TotalColoring::uniform(g, 0);
    for (i, &v) in phi.iter().enumerate() {
        out.vertex_colors[v] = c.vertex_colors[i];
    }
    for (e, &(a, b)) in canon.edges().iter().enumerate() {
        let id = g.edge_id(phi[a], phi[b])?;
        out.edge_colors[id] = c.edge_colors[e];
    }
    Some(out)
}

/// Vertices of a path graph from one end to the other.
fn path_order(g: &Graph) -> Option<Vec<usize>> {
    if !is_tree(g) || (0..g.n()).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..g.n()).find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut seen = 1u64 << start;
    while let Some(next) = Bits(g.row(*order.last().unwrap()) & !seen).next() {
        seen |= 1 << next;
        order.push(next);
    }
    Some(order)
}

/// `(center, legs)` of a spider with three legs, legs sorted longest first
/// and listed from the center outward.
fn spider_legs(g: &Graph) -> Option<(usize, Vec<Vec<usize>>)> {
    if !is_tree(g) {
        return None;
    }
    let big: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    if big.len() != 1 || g.degree(big[0]) != 3 {
        return None;
    }
    let center = big[0];
    let mut legs: Vec<Vec<usize>> = g
        .neighbors(center)
        .map(|first| {
            let mut leg = vec![first];
            let mut seen = 1u64 << center | 1 << first;
            while let Some(next) = Bits(g.row(*leg.last().unwrap()) & !seen).next() {
                seen |= 1 << next;
                leg.push(next);
            }
            leg
        })
        .collect();
    legs.sort_by_key(|l| std::cmp::Reverse(l.len()));
    Some((center, legs))
}

fn complete_bipartite_sides(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let a = g.row(0);
    let side0 = g.all_vertices() & !a;
    let ok = Bits(side0).all(|v| g.row(v) == a) && Bits(a).all(|v| g.row(v) == side0);
    if !ok || a == 0 || n < 4 {
        return None;
    }
    let mut s: Vec<usize> = Bits(side0).collect();
    let mut t: Vec<usize> = Bits(a).collect();
    if s.len() > t.len() {
        std::mem::swap(&mut s, &mut t);
    }
    (s.len() >= 2).then_some((s, t))
}

/// Coloring obtained from a longest cycle by optimal cycle coloring plus
/// one pendant extension per remaining vertex (BFS order from the cycle).
fn cycle_extension(g: &Graph) -> Option<(TotalColoring, UpperSource)> {
    let (circ, cycle) = longest_cycle(g, CYCLE_BUDGET);
    if circ.exact().unwrap_or(match circ {
        Circumference::AtLeast(l) => l,
        Circumference::Exact(l) => l,
    }) < 3
        || cycle.len() < 3
    {
        return None;
    }
    let l = cycle.len();
    let mut graph = generate(&FamilySpec::Cycle(l)).ok()?;
    let mut c = color_cycle(l).ok()?;
    // phi: local id -> vertex of g
    let mut phi = cycle.clone();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in cycle.iter().enumerate() {
        local[v] = i;
    }
    let mut queue: std::collections::VecDeque<usize> = cycle.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if local[y] == usize::MAX {
                let ext =
                    extend_coloring(&graph, &c, &GraphOp::AddPendant { at: local[x] }).ok()?;
                graph = ext.graph;
                c = ext.coloring;
                local[y] = phi.len();
                phi.push(y);
                queue.push_back(y);
            }
        }
    }
    let out = pull_back(g, &graph, &c, &phi)?;
    let source = if g.m() == g.n() {
        UpperSource::Unicyclic
    } else {
        UpperSource::Cycle
    };
    Some((out, source))
}

/// Coloring of a `B_l` graph in any numbering.
fn b_ell_coloring(g: &Graph) -> Option<TotalColoring> {
    let d = unicyclic_decompose(g)?;
    let nontrivial = d.nontrivial();
    if nontrivial.len() != 1 {
        return None;
    }
    let i = nontrivial[0];
    let tree = &d.components[i];
    if !crate::structure::is_path_from_root(g, tree) {
        return None;
    }
    let l = d.len();
    let mut phi: Vec<usize> = (0..l).map(|k| d.cycle[(i + k) % l]).collect();
    let mut prev = d.cycle[i];
    let mut seen = 1u64 << prev;
    while let Some(next) = Bits(g.row(prev) & tree.vertices & !seen).next() {
        seen |= 1 << next;
        phi.push(next);
        prev = next;
    }
    let canon = generate(&FamilySpec::BEll(l, g.n() - l)).ok()?;
    let c = color_b_ell(&canon).ok()?;
    pull_back(g, &canon, &c, &phi)
}

/// Colorings of `g` read off its complement's structure.
fn complement_candidates(g: &Graph, out: &mut Vec<(TotalColoring, UpperSource)>) {
    let gbar = g.complement();
    if !gbar.is_connected() || g.n() < 4 {
        return;
    }
    let dbar = diameter(&gbar);
    if dbar > 3 {
        if let Ok(c) = color_via_distance_layers(&gbar) {
            out.push((c, UpperSource::DistanceLayers));
        }
    }
    if g.n() >= 5 {
        if let Some(order) = path_order(&gbar) {
            let canon = generate(&FamilySpec::Path(g.n())).unwrap().complement();
            if let Ok(c) = color_complement_of_path(g.n()) {
                if let Some(pulled) = pull_back(g, &canon, &c, &order) {
                    out.push((pulled, UpperSource::ComplementOfPath));
                }
            }
        }
    }
    if let Some((center, legs)) = spider_legs(&gbar) {
        let (k, l, m) = (legs[0].len(), legs[1].len(), legs[2].len());
        if let Ok(c) = color_complement_of_spider(k, l, m) {
            let mut phi = vec![center];
            phi.extend(legs.iter().flatten());
            let canon = generate(&FamilySpec::Spider(k, l, m)).unwrap().complement();
            if let Some(pulled) = pull_back(g, &canon, &c, &phi) {
                out.push((pulled, UpperSource::ComplementOfSpider));
            }
        }
    }
    if dbar == 3 && diameter(g) == 2 {
        if let Ok(c) = color_complement_of_diam3_2connected(&gbar, None) {
            out.push((c, UpperSource::DistanceLayers));
        }
    }
}

/// Greedily merges color classes while the coloring stays valid.
pub fn reduce_palette(g: &Graph, c: &TotalColoring, max_checks: usize) -> TotalColoring {
    let mut best = c.normalized();
    let mut checks = 0;
    'outer: loop {
        let k = best.palette() as Color;
        for b in (1..k).rev() {
            for a in 0..b {
                if checks >= max_checks {
                    break 'outer;
                }
                checks += 1;
                let merged = TotalColoring {
                    vertex_colors: best
                        .vertex_colors
                        .iter()
                        .map(|&x| if x == b { a } else { x })
                        .collect(),
                    edge_colors: best
                        .edge_colors
                        .iter()
                        .map(|&x| if x == b { a } else { x })
                        .collect(),
                };
                if is_trc_coloring(g, &merged) {
                    best = merged.normalized();
                    continue 'outer;
                }
            }
        }
        break;
    }
    best
}

/// Minimum over every applicable construction, followed by greedy palette
/// reduction. The returned certificate always verifies.
pub fn upper_bound(g: &Graph) -> Result<UpperBound> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        return Ok(UpperBound {
            value: 1,
            certificate: TotalColoring::uniform(g, 0),
            source: UpperSource::Complete,
        });
    }
    let tree = spanning_tree_coloring(g);
    if is_tree(g) {
        return Ok(UpperBound {
            value: tree.palette(),
            certificate: tree.normalized(),
            source: UpperSource::SpanningTree,
        });
    }
    let mut candidates = vec![(tree, UpperSource::SpanningTree)];
    if g.m() == g.n() {
        if let Some(d) = unicyclic_decompose(g) {
            if d.nontrivial().is_empty() {
                if let Ok(c) = color_cycle(g.n()) {
                    if let Some(pulled) =
                        pull_back(g, &generate(&FamilySpec::Cycle(g.n()))?, &c, &d.cycle)
                    {
                        candidates.push((pulled, UpperSource::Cycle));
                    }
                }
            }
        }
        if let Some(c) = b_ell_coloring(g) {
            candidates.push((c, UpperSource::BEll));
        }
    }
    if let Some(found) = cycle_extension(g) {
        candidates.push(found);
    }
    if let Some((s, t)) = complete_bipartite_sides(g) {
        if let Ok(c) = color_complete_bipartite(s.len(), t.len()) {
            let canon = generate(&FamilySpec::CompleteBipartite(s.len(), t.len()))?;
            let phi: Vec<usize> = s.iter().chain(&t).copied().collect();
            if let Some(pulled) = pull_back(g, &canon, &c, &phi) {
                candidates.push((pulled, UpperSource::CompleteBipartite));
            }
        }
    }
    let two_connected = cut_elements(g).cut_vertices == 0;
    if two_connected && diameter(g) == 2 {
        if let Ok(Some(c)) = two_connected_diam2_recipe(g) {
            candidates.push((c, UpperSource::BridgelessDiam2));
        }
    }
    complement_candidates(g, &mut candidates);

    let mut valid: Vec<(TotalColoring, UpperSource)> = candidates
        .into_iter()
        .filter(|(c, _)| is_trc_coloring(g, c))
        .collect();
    valid.sort_by_key(|(c, _)| c.palette());
    let (best, source) = valid.swap_remove(0);
    let reduced = if g.n() <= 16 {
        reduce_palette(g, &best, REDUCTION_CHECKS)
    } else {
        best.normalized()
    };
    debug_assert!(is_trc_coloring(g, &reduced));
    Ok(UpperBound {
        value: reduced.palette(),
        certificate: reduced,
        source,
    })
}

//! Lower/upper bounds and the exact minimum-palette search.
//!
//! The search assigns colors to edges and vertices in a fixed order
//! (spanning-tree edges, chords, then vertices by BFS layer) in
//! restricted-growth form, so every color class is introduced in order and
//! color permutations are never revisited. Feasibility is tracked
//! incrementally: every vertex pair owns the set of simple paths short
//! enough to be rainbow under `k` colors, a path dies as soon as two of its
//! assigned elements share a color, and a pair with no live path prunes the
//! branch.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_trc, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::structure::{cut_elements, diameter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Search nodes (color assignments) across all `k` tried.
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
    /// Cap on enumerated candidate paths per `k`.
    pub max_paths: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 500_000_000,
            max_time: Some(Duration::from_secs(120)),
            max_paths: 4_000_000,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_time: None,
            ..Budget::default()
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_nodes: u64::MAX,
            max_time: None,
            max_paths: usize::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Prune on dead pairs only every `d` assignments; `None` picks a default.
    pub check_interval: Option<usize>,
    /// Restricted-growth color assignment. Disabling it gives plain k-ary
    /// enumeration (used to cross-check the symmetry breaking).
    pub symmetry_breaking: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            check_interval: None,
            symmetry_breaking: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrcValue {
    Exact { value: usize },
    Interval { lo: usize, hi: usize },
}

impl TrcValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            TrcValue::Exact { value } => Some(value),
            TrcValue::Interval { .. } => None,
        }
    }

    pub fn lo(self) -> usize {
        match self {
            TrcValue::Exact { value } => value,
            TrcValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(self) -> usize {
        match self {
            TrcValue::Exact { value } => value,
            TrcValue::Interval { hi, .. } => hi,
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    /// Intersection; `None` if the ranges are disjoint.
    pub fn intersect(self, other: TrcValue) -> Option<TrcValue> {
        let lo = self.lo().max(other.lo());
        let hi = self.hi().min(other.hi());
        (lo <= hi).then(|| TrcValue::from_range(lo, hi))
    }

    pub fn from_range(lo: usize, hi: usize) -> TrcValue {
        if lo == hi {
            TrcValue::Exact { value: lo }
        } else {
            TrcValue::Interval { lo, hi }
        }
    }
}

impl std::fmt::Display for TrcValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrcValue::Exact { value } => write!(f, "{value}"),
            TrcValue::Interval { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Theory,
    Construction,
    Search,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Theory => "theory",
            Method::Construction => "construction",
            Method::Search => "search",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrcResult {
    pub value: TrcValue,
    /// For exact values a coloring with exactly `value` colors; for
    /// intervals a coloring with `hi` colors.
    pub certificate: Option<TotalColoring>,
    pub method: Method,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerReason {
    Complete,
    Noncomplete,
    Diameter,
    CutCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    /// Every rule attaining `value`.
    pub reasons: Vec<LowerReason>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    Complete,
    SpanningTree,
    Cycle,
    BEll,
    Unicyclic,
    CompleteBipartite,
    BridgelessDiam2,
    ComplementOfPath,
    ComplementOfSpider,
    DistanceLayers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: usize,
    pub certificate: TotalColoring,
    pub source: UpperSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower: LowerBound,
    pub upper: UpperBound,
}

/// max(1, 3 if noncomplete, 2·diam − 1, cut vertices + cut edges).
pub fn lower_bound(g: &Graph) -> Result<LowerBound> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut rules = Vec::new();
    if g.is_complete() {
        rules.push((1, LowerReason::Complete));
    } else {
        rules.push((3, LowerReason::Noncomplete));
        rules.push((2 * diameter(g) - 1, LowerReason::Diameter));
    }
    let cuts = cut_elements(g);
    rules.push((
        cuts.cut_vertices.count_ones() as usize + cuts.bridges.len(),
        LowerReason::CutCount,
    ));
    let value = rules.iter().map(|r| r.0).max().unwrap();
    let reasons = rules
        .into_iter()
        .filter(|r| r.0 == value)
        .map(|r| r.1)
        .collect();
    Ok(LowerBound { value, reasons })
}

pub fn bounds(g: &Graph) -> Result<BoundReport> {
    Ok(BoundReport {
        lower: lower_bound(g)?,
        upper: crate::upper::upper_bound(g)?,
    })
}

/// Outcome of a fixed-palette search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Found(TotalColoring),
    Infeasible,
    Exhausted,
}

/// Searches for a total-rainbow coloring using exactly `k` colors.
pub fn find_coloring(
    g: &Graph,
    k: usize,
    budget: &Budget,
    config: &SolverConfig,
) -> Result<Feasibility> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut clock = Clock::new(budget);
    Ok(find_with_clock(g, k, &mut clock, config))
}

struct Clock {
    start: Instant,
    nodes: u64,
    max_nodes: u64,
    max_time: Option<Duration>,
    max_paths: usize,
    exhausted: bool,
}

impl Clock {
    fn new(b: &Budget) -> Self {
        Clock {
            start: Instant::now(),
            nodes: 0,
            max_nodes: b.max_nodes,
            max_time: b.max_time,
            max_paths: b.max_paths,
            exhausted: false,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some(t) = self.max_time {
                if self.start.elapsed() > t {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn find_with_clock(g: &Graph, k: usize, clock: &mut Clock, config: &SolverConfig) -> Feasibility {
    let n = g.n();
    if k == 0 || k > 64 {
        return if k == 0 {
            Feasibility::Infeasible
        } else {
            Feasibility::Exhausted
        };
    }
    if n + g.m() < k {
        // not enough elements to show k colors
        return Feasibility::Infeasible;
    }
    if n == 1 {
        return Feasibility::Found(TotalColoring::uniform(g, 0));
    }
    let Some(mut engine) = Engine::build(g, k, clock.max_paths, config) else {
        clock.exhausted = true;
        return Feasibility::Exhausted;
    };
    if engine.dead_pairs > 0 {
        return Feasibility::Infeasible;
    }
    if engine.search(0, clock) {
        let coloring = engine.to_coloring(g);
        debug_assert_eq!(coloring.palette(), k);
        let report = verify_trc(g, &coloring).expect("connected");
        assert!(
            report.valid,
            "solver produced an invalid certificate: {report:?}"
        );
        Feasibility::Found(coloring)
    } else if clock.exhausted {
        Feasibility::Exhausted
    } else {
        Feasibility::Infeasible
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Element {
    Edge(usize),
    Vertex(usize),
}

enum Undo {
    Mask(u32, u64),
    Kill(u32),
}

struct Engine {
    k: usize,
    symmetry: bool,
    interval: usize,
    order: Vec<Element>,
    free: Vec<Element>,
    pos_paths: Vec<Vec<u32>>,
    path_pair: Vec<u32>,
    path_mask: Vec<u64>,
    path_alive: Vec<bool>,
    pair_alive: Vec<u32>,
    dead_pairs: usize,
    undo: Vec<Undo>,
    colors: Vec<u8>,
    used: usize,
}

impl Engine {
    fn build(g: &Graph, k: usize, max_paths: usize, config: &SolverConfig) -> Option<Engine> {
        let n = g.n();
        let m = g.m();
        // canonical branching order
        let (bfs, parent) = g.bfs_tree(0);
        let mut order = Vec::with_capacity(n + m);
        let mut is_tree_edge = vec![false; m];
        for &v in &bfs[1..] {
            let e = g.edge_id(parent[v].unwrap(), v).unwrap();
            is_tree_edge[e] = true;
            order.push(Element::Edge(e));
        }
        order.extend((0..m).filter(|&e| !is_tree_edge[e]).map(Element::Edge));
        order.extend(bfs.iter().map(|&v| Element::Vertex(v)));

        let mut position = vec![u32::MAX; n + m];
        let slot = |el: Element| match el {
            Element::Edge(e) => e,
            Element::Vertex(v) => m + v,
        };
        for (i, &el) in order.iter().enumerate() {
            position[slot(el)] = i as u32;
        }

        // candidate paths: at most `max_len` edges so that 2L - 1 <= k
        let max_len = k.div_ceil(2);
        let mut paths: Vec<Vec<u32>> = Vec::new();
        let mut path_pair = Vec::new();
        let mut pair_alive = Vec::new();
        let mut pair_id = 0u32;
        let mut stack_elems: Vec<u32> = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let before = paths.len();
                let mut budget_ok = true;
                enumerate_paths(
                    g,
                    u,
                    v,
                    1 << u,
                    max_len,
                    &position,
                    m,
                    &mut stack_elems,
                    &mut |elems| {
                        paths.push(elems.to_vec());
                        path_pair.push(pair_id);
                        if paths.len() > max_paths {
                            budget_ok = false;
                        }
                        budget_ok
                    },
                );
                if !budget_ok {
                    return None;
                }
                pair_alive.push((paths.len() - before) as u32);
                pair_id += 1;
            }
        }
        let dead_pairs = pair_alive.iter().filter(|&&c| c == 0).count();

        let mut in_path = vec![false; order.len()];
        for p in &paths {
            for &e in p {
                in_path[e as usize] = true;
            }
        }
        // elements on no candidate path never constrain anything
        let mut remap = vec![u32::MAX; order.len()];
        let mut branch = Vec::new();
        let mut free = Vec::new();
        for (i, &el) in order.iter().enumerate() {
            if in_path[i] {
                remap[i] = branch.len() as u32;
                branch.push(el);
            } else {
                free.push(el);
            }
        }
        let mut pos_paths = vec![Vec::new(); branch.len()];
        for (pid, p) in paths.iter().enumerate() {
            for &e in p {
                pos_paths[remap[e as usize] as usize].push(pid as u32);
            }
        }
        let interval = config.check_interval.unwrap_or(1).max(1);
        Some(Engine {
            k,
            symmetry: config.symmetry_breaking,
            interval,
            colors: vec![0; branch.len()],
            order: branch,
            free,
            pos_paths,
            path_mask: vec![0; paths.len()],
            path_alive: vec![true; paths.len()],
            path_pair,
            pair_alive,
            dead_pairs,
            undo: Vec::new(),
            used: 0,
        })
    }

    #[inline]
    fn assign(&mut self, pos: usize, color: usize) {
        let bit = 1u64 << color;
        for &p in &self.pos_paths[pos] {
            let pi = p as usize;
            if !self.path_alive[pi] {
                continue;
            }
            let mask = self.path_mask[pi];
            if mask & bit != 0 {
                self.path_alive[pi] = false;
                let pair = self.path_pair[pi] as usize;
                self.pair_alive[pair] -= 1;
                if self.pair_alive[pair] == 0 {
                    self.dead_pairs += 1;
                }
                self.undo.push(Undo::Kill(p));
            } else {
                self.path_mask[pi] = mask | bit;
                self.undo.push(Undo::Mask(p, mask));
            }
        }
    }

    #[inline]
    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().unwrap() {
                Undo::Mask(p, old) => self.path_mask[p as usize] = old,
                Undo::Kill(p) => {
                    let pi = p as usize;
                    self.path_alive[pi] = true;
                    let pair = self.path_pair[pi] as usize;
                    if self.pair_alive[pair] == 0 {
                        self.dead_pairs -= 1;
                    }
                    self.pair_alive[pair] += 1;
                }
            }
        }
    }

    fn search(&mut self, pos: usize, clock: &mut Clock) -> bool {
        if pos == self.order.len() {
            return self.dead_pairs == 0
                && (!self.symmetry || self.used + self.free.len() >= self.k);
        }
        let remaining = self.order.len() - pos + self.free.len();
        if self.symmetry && self.used + remaining < self.k {
            return false;
        }
        let top = if self.symmetry {
            (self.used + 1).min(self.k)
        } else {
            self.k
        };
        for color in 0..top {
            if clock.tick() {
                return false;
            }
            let mark = self.undo.len();
            self.assign(pos, color);
            let fresh = self.symmetry && color == self.used;
            if fresh {
                self.used += 1;
            }
            let check = (pos + 1).is_multiple_of(self.interval) || pos + 1 == self.order.len();
            let ok = !(check && self.dead_pairs > 0);
            if ok {
                self.colors[pos] = color as u8;
                if self.search(pos + 1, clock) {
                    return true;
                }
            }
            if fresh {
                self.used -= 1;
            }
            self.rollback(mark);
            if clock.exhausted {
                return false;
            }
        }
        false
    }

    fn to_coloring(&self, g: &Graph) -> TotalColoring {
        let mut c = TotalColoring::uniform(g, 0);
        let mut set = |el: Element, color: u32| match el {
            Element::Edge(e) => c.edge_colors[e] = color,
            Element::Vertex(v) => c.vertex_colors[v] = color,
        };
        let mut used = 0u64;
        for (i, &el) in self.order.iter().enumerate() {
            set(el, self.colors[i] as u32);
            used |= 1 << self.colors[i];
        }
        let mut missing = (0..self.k as u32).filter(|&col| used >> col & 1 == 0);
        for &el in &self.free {
            set(el, missing.next().unwrap_or(0));
        }
        c
    }
}

/// Calls `emit` with the element positions of every simple `u`–`target`
/// path having at most `max_len` edges. Returns false if `emit` asked to stop.
#[allow(clippy::too_many_arguments)]
fn enumerate_paths(
    g: &Graph,
    cur: usize,
    target: usize,
    visited: u64,
    max_len: usize,
    position: &[u32],
    m: usize,
    elems: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if max_len == 0 {
        return true;
    }
    for w in Bits(g.row(cur) & !visited) {
        let e = g.edge_id(cur, w).unwrap();
        elems.push(position[e]);
        if w == target {
            if !emit(elems) {
                return false;
            }
        } else if max_len > 1 && g.row(w) & !(visited | 1 << w) != 0 {
            elems.push(position[m + w]);
            let go_on = enumerate_paths(
                g,
                w,
                target,
                visited | 1 << w,
                max_len - 1,
                position,
                m,
                elems,
                emit,
            );
            elems.pop();
            if !go_on {
                return false;
            }
        }
        elems.pop();
    }
    true
}

/// Exact trc by iterating `k` from the lower to the upper bound.
pub fn solve_trc(g: &Graph, budget: &Budget) -> Result<TrcResult> {
    solve_trc_with(g, budget, &SolverConfig::default(), None)
}

/// Like [`solve_trc`]; `hint` narrows the range (for instance a
/// theory-backed interval). The search never starts below the proven lower
/// bound or the hint's lower end.
pub fn solve_trc_with(
    g: &Graph,
    budget: &Budget,
    config: &SolverConfig,
    hint: Option<TrcValue>,
) -> Result<TrcResult> {
    let lower = lower_bound(g)?;
    let upper = crate::upper::upper_bound(g)?;
    let mut clock = Clock::new(budget);
    let mut lo = lower.value;
    if let Some(h) = hint {
        lo = lo.max(h.lo());
    }
    let hi = upper.value;
    if lo >= hi {
        return Ok(TrcResult {
            value: TrcValue::Exact { value: hi },
            certificate: Some(upper.certificate),
            method: Method::Construction,
            stats: clock.stats(),
        });
    }
    for k in lo..hi {
        match find_with_clock(g, k, &mut clock, config) {
            Feasibility::Found(c) => {
                return Ok(TrcResult {
                    value: TrcValue::Exact { value: k },
                    certificate: Some(c.normalized()),
                    method: Method::Search,
                    stats: clock.stats(),
                })
            }
            Feasibility::Infeasible => {}
            Feasibility::Exhausted => {
                return Ok(TrcResult {
                    value: TrcValue::Interval { lo: k, hi },
                    certificate: Some(upper.certificate),
                    method: Method::Search,
                    stats: clock.stats(),
                })
            }
        }
    }
    Ok(TrcResult {
        value: TrcValue::Exact { value: hi },
        certificate: Some(upper.certificate),
        method: Method::Search,
        stats: clock.stats(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn lower_bounds() {
        let k5 = Graph::empty(5).unwrap().complement();
        assert_eq!(lower_bound(&k5).unwrap().value, 1);
        let p4 = lower_bound(&path(4)).unwrap();
        assert_eq!(p4.value, 5);
        assert!(p4.reasons.contains(&LowerReason::Diameter));
        assert!(p4.reasons.contains(&LowerReason::CutCount));
        assert_eq!(lower_bound(&cycle(6)).unwrap().value, 5);
        assert!(lower_bound(&Graph::empty(2).unwrap()).is_err());
    }

    #[test]
    fn small_cycles() {
        let expect = [(3, 1), (4, 3), (5, 3), (6, 5), (7, 6)];
        for (n, v) in expect {
            let r = solve_trc(&cycle(n), &Budget::default()).unwrap();
            assert_eq!(r.value, TrcValue::Exact { value: v }, "C_{n}");
            let cert = r.certificate.unwrap();
            assert_eq!(cert.palette(), v);
            assert!(verify_trc(&cycle(n), &cert).unwrap().valid);
        }
    }

    #[test]
    fn complete_and_path() {
        let k4 = Graph::empty(4).unwrap().complement();
        assert_eq!(
            solve_trc(&k4, &Budget::default()).unwrap().value.exact(),
            Some(1)
        );
        assert_eq!(
            solve_trc(&path(5), &Budget::default())
                .unwrap()
                .value
                .exact(),
            Some(7)
        );
    }

    #[test]
    fn budget_exhaustion_gives_interval() {
        let r = solve_trc(&cycle(7), &Budget::nodes(10)).unwrap();
        match r.value {
            TrcValue::Interval { lo, hi } => assert!(lo <= 6 && 6 <= hi),
            v => panic!("expected interval, got {v:?}"),
        }
    }

    #[test]
    fn naive_enumeration_agrees() {
        let naive = SolverConfig {
            symmetry_breaking: false,
            ..SolverConfig::default()
        };
        for n in [3, 4, 5] {
            let g = cycle(n);
            let a = solve_trc(&g, &Budget::default()).unwrap().value;
            let b = solve_trc_with(&g, &Budget::default(), &naive, None)
                .unwrap()
                .value;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn check_interval_does_not_change_value() {
        for d in [1, 2, 4, 7] {
            let cfg = SolverConfig {
                check_interval: Some(d),
                ..SolverConfig::default()
            };
            let r = solve_trc_with(&cycle(6), &Budget::default(), &cfg, None).unwrap();
            assert_eq!(r.value.exact(), Some(5));
        }
    }

    #[test]
    fn trc_value_ops() {
        let a = TrcValue::Interval { lo: 3, hi: 7 };
        assert_eq!(
            a.intersect(TrcValue::Exact { value: 5 }),
            Some(TrcValue::Exact { value: 5 })
        );
        assert_eq!(a.intersect(TrcValue::Interval { lo: 8, hi: 9 }), None);
        assert_eq!(a.to_string(), "3..7");
    }
}

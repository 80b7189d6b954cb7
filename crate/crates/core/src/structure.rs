//! Structural analyses: distances, cut elements, circumference, unicyclic
//! decomposition and distance shells.

use serde::{Deserialize, Serialize};

use crate::graph::{Bits, Graph};

/// Diameter/eccentricity value used for disconnected graphs.
pub const INFINITE_DISTANCE: usize = usize::MAX;

/// Default node cap for the longest-cycle search.
pub const DEFAULT_CYCLE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Circumference {
    Exact(usize),
    /// Search budget ran out; a cycle of this length was found.
    AtLeast(usize),
}

impl Circumference {
    pub fn exact(self) -> Option<usize> {
        match self {
            Circumference::Exact(l) => Some(l),
            Circumference::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub diam: usize,
    pub rad: usize,
    pub ecc: Vec<usize>,
    pub cut_vertices: usize,
    pub cut_edges: usize,
    /// Cut vertices plus cut edges.
    pub t: usize,
    pub circumference: Circumference,
    pub leaves: usize,
    /// Vertices of degree at least two.
    pub inner: usize,
    pub bridgeless: bool,
    pub two_connected: bool,
}

pub fn structural_profile(g: &Graph) -> StructuralProfile {
    structural_profile_with_budget(g, DEFAULT_CYCLE_BUDGET)
}

pub fn structural_profile_with_budget(g: &Graph, cycle_budget: u64) -> StructuralProfile {
    let n = g.n();
    let connected = g.is_connected();
    let ecc = eccentricities(g);
    let (diam, rad) = if connected {
        (*ecc.iter().max().unwrap(), *ecc.iter().min().unwrap())
    } else {
        (INFINITE_DISTANCE, INFINITE_DISTANCE)
    };
    let cuts = cut_elements(g);
    let cut_vertices = cuts.cut_vertices.count_ones() as usize;
    let cut_edges = cuts.bridges.len();
    let leaves = (0..n).filter(|&v| g.degree(v) == 1).count();
    let inner = (0..n).filter(|&v| g.degree(v) >= 2).count();
    let circumference = longest_cycle(g, cycle_budget).0;
    StructuralProfile {
        n,
        m: g.m(),
        connected,
        diam,
        rad,
        ecc,
        cut_vertices,
        cut_edges,
        t: cut_vertices + cut_edges,
        circumference,
        leaves,
        inner,
        bridgeless: cut_edges == 0,
        two_connected: connected && n >= 3 && cut_vertices == 0,
    }
}

/// Per-vertex eccentricity; `INFINITE_DISTANCE` when some vertex is unreachable.
pub fn eccentricities(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|v| {
            g.distances_from(v)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
                .unwrap_or(INFINITE_DISTANCE)
        })
        .collect()
}

pub fn diameter(g: &Graph) -> usize {
    eccentricities(g)
        .into_iter()
        .max()
        .unwrap_or(INFINITE_DISTANCE)
}

/// All-pairs hop distances (`INFINITE_DISTANCE` when unreachable).
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            g.distances_from(v)
                .into_iter()
                .map(|d| d.unwrap_or(INFINITE_DISTANCE))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutElements {
    pub cut_vertices: u64,
    /// Bridge edge ids.
    pub bridges: Vec<usize>,
    /// Vertex sets of the biconnected blocks (bridges are two-vertex blocks).
    pub blocks: Vec<u64>,
}

/// Articulation points, bridges and biconnected blocks (Hopcroft–Tarjan).
pub fn cut_elements(g: &Graph) -> CutElements {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        edge_stack: Vec<(usize, usize)>,
        out: CutElements,
    }

    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        let mut children = 0;
        for w in s.g.neighbors(u) {
            if Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                children += 1;
                s.edge_stack.push((u, w));
                dfs(s, w, Some(u));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] > s.disc[u] {
                    s.out.bridges.push(s.g.edge_id(u, w).unwrap());
                }
                if s.low[w] >= s.disc[u] {
                    if parent.is_some() {
                        s.out.cut_vertices |= 1 << u;
                    }
                    let mut block = 0u64;
                    while let Some((a, b)) = s.edge_stack.pop() {
                        block |= 1 << a | 1 << b;
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    s.out.blocks.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.edge_stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
        if parent.is_none() && children > 1 {
            s.out.cut_vertices |= 1 << u;
        }
    }

    let n = g.n();
    let mut s = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        out: CutElements::default(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out.bridges.sort_unstable();
    s.out
}

/// Longest cycle by block-wise backtracking. Returns the circumference
/// (0 for forests) and one longest cycle found as a vertex sequence.
pub fn longest_cycle(g: &Graph, budget: u64) -> (Circumference, Vec<usize>) {
    let blocks: Vec<u64> = cut_elements(g)
        .blocks
        .into_iter()
        .filter(|b| b.count_ones() >= 3)
        .collect();
    let mut search = CycleSearch {
        g,
        best: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    let mut sorted = blocks;
    sorted.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
    for block in sorted {
        if block.count_ones() as usize <= search.best.len() {
            continue;
        }
        search.run_block(block);
    }
    let len = search.best.len();
    let c = if search.exhausted {
        Circumference::AtLeast(len)
    } else {
        Circumference::Exact(len)
    };
    (c, search.best)
}

struct CycleSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CycleSearch<'_> {
    fn run_block(&mut self, block: u64) {
        let size = block.count_ones() as usize;
        for s in Bits(block) {
            // cycles whose minimum vertex is `s`
            let allowed = block & !((1u64 << s) | ((1u64 << s) - 1));
            if (allowed.count_ones() as usize) < self.best.len() {
                break;
            }
            let mut path = vec![s];
            self.extend(&mut path, allowed, s);
            if self.best.len() == size || self.exhausted {
                return;
            }
        }
    }

    fn extend(&mut self, path: &mut Vec<usize>, unvisited: u64, start: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let cur = *path.last().unwrap();
        if path.len() >= 3 && self.g.has_edge(cur, start) && path.len() > self.best.len() {
            self.best = path.clone();
        }
        // optimistic bound: everything still reachable joins the cycle
        let reach = self.g.reachable_within(cur, unvisited | 1 << cur) & unvisited;
        if path.len() + reach.count_ones() as usize <= self.best.len() {
            return;
        }
        for w in Bits(self.g.row(cur) & unvisited) {
            path.push(w);
            self.extend(path, unvisited & !(1 << w), start);
            path.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// `{ v : d(v, U) = k }`.
pub fn k_step_neighborhood(g: &Graph, set: u64, k: usize) -> u64 {
    let mut seen = set;
    let mut shell = set;
    for _ in 0..k {
        let mut next = 0;
        for v in Bits(shell) {
            next |= g.row(v);
        }
        shell = next & !seen;
        seen |= shell;
        if shell == 0 {
            break;
        }
    }
    shell
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    pub root: usize,
    /// Vertex set as a bitmask.
    pub vertices: u64,
    pub nontrivial: bool,
    /// Pendant vertices of the graph inside this tree.
    pub leaf_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicyclicDecomposition {
    /// `u_1 .. u_l` in cyclic order.
    pub cycle: Vec<usize>,
    /// `T_i` rooted at `cycle[i]`.
    pub components: Vec<RootedTree>,
}

impl UnicyclicDecomposition {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Indices (into `cycle`) of the nontrivial trees.
    pub fn nontrivial(&self) -> Vec<usize> {
        (0..self.cycle.len())
            .filter(|&i| self.components[i].nontrivial)
            .collect()
    }

    /// Whether positions `i` and `j` are neighbors on the cycle.
    pub fn adjacent_on_cycle(&self, i: usize, j: usize) -> bool {
        let l = self.cycle.len();
        (i + 1) % l == j || (j + 1) % l == i
    }
}

/// Cycle plus hanging trees of a connected graph with `m = n`; `None`
/// otherwise. The cycle starts at its lowest vertex and proceeds toward the
/// lower-numbered of that vertex's two cycle neighbors.
pub fn unicyclic_decompose(g: &Graph) -> Option<UnicyclicDecomposition> {
    let n = g.n();
    if n < 3 || g.m() != n || !g.is_connected() {
        return None;
    }
    // peel leaves until only the cycle remains
    let mut alive = g.all_vertices();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        alive &= !(1 << v);
        for w in Bits(g.row(v) & alive) {
            deg[w] -= 1;
            if deg[w] == 1 {
                stack.push(w);
            }
        }
    }
    let start = alive.trailing_zeros() as usize;
    let mut cycle = vec![start];
    let first_nbrs: Vec<usize> = Bits(g.row(start) & alive).collect();
    debug_assert_eq!(first_nbrs.len(), 2);
    let mut prev = start;
    let mut cur = first_nbrs[0];
    while cur != start {
        cycle.push(cur);
        let next = Bits(g.row(cur) & alive & !(1 << prev)).next().unwrap();
        prev = cur;
        cur = next;
    }
    let cycle_mask = alive;
    let components = cycle
        .iter()
        .map(|&root| {
            let vertices = g.reachable_within(root, !cycle_mask | 1 << root);
            let leaf_count = Bits(vertices).filter(|&v| g.degree(v) == 1).count();
            RootedTree {
                root,
                vertices,
                nontrivial: vertices.count_ones() > 1,
                leaf_count,
            }
        })
        .collect();
    Some(UnicyclicDecomposition { cycle, components })
}

/// True if `tree` (a rooted tree inside `g`) is a path with its root at one end.
pub fn is_path_from_root(g: &Graph, tree: &RootedTree) -> bool {
    if !tree.nontrivial {
        return false;
    }
    let inside = |v: usize| (g.row(v) & tree.vertices).count_ones();
    inside(tree.root) == 1 && Bits(tree.vertices).all(|v| inside(v) <= 2)
}

/// Centers `(a, b)` of a spanning double star, if one exists.
pub fn spanning_double_star(g: &Graph) -> Option<(usize, usize)> {
    let all = g.all_vertices();
    g.edges()
        .iter()
        .copied()
        .find(|&(a, b)| (g.row(a) | g.row(b) | 1 << a | 1 << b) == all)
}

/// Tree with exactly two non-leaf vertices.
pub fn is_double_star(g: &Graph) -> bool {
    g.n() >= 4
        && g.m() + 1 == g.n()
        && g.is_connected()
        && (0..g.n()).filter(|&v| g.degree(v) >= 2).count() == 2
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && g.m() + 1 == g.n() && g.is_connected()
}

/// Backtracking isomorphism test with degree refinement; meant for small graphs.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let sig = |g: &Graph, v: usize| {
        let mut s: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
        s.sort_unstable();
        (g.degree(v), s)
    };
    let sa: Vec<_> = (0..n).map(|v| sig(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| sig(b, v)).collect();
    {
        let mut x = sa.clone();
        let mut y = sb.clone();
        x.sort();
        y.sort();
        if x != y {
            return false;
        }
    }
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // map a's vertices in order of decreasing degree
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;

    fn go(
        i: usize,
        order: &[usize],
        a: &Graph,
        b: &Graph,
        sa: &[(usize, Vec<usize>)],
        sb: &[(usize, Vec<usize>)],
        map: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for w in 0..b.n() {
            if *used >> w & 1 == 1 || sa[v] != sb[w] {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            if go(i + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            *used &= !(1 << w);
        }
        false
    }

    go(0, &order, a, b, &sa, &sb, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn path_profile() {
        let p = structural_profile(&path(5));
        assert_eq!(p.diam, 4);
        assert_eq!(p.rad, 2);
        assert_eq!((p.cut_vertices, p.cut_edges, p.t), (3, 4, 7));
        assert_eq!(p.circumference, Circumference::Exact(0));
        assert_eq!((p.leaves, p.inner), (2, 3));
        assert!(!p.bridgeless);
    }

    #[test]
    fn cycle_profile() {
        let p = structural_profile(&cycle(7));
        assert_eq!(p.diam, 3);
        assert_eq!(p.t, 0);
        assert_eq!(p.circumference, Circumference::Exact(7));
        assert!(p.two_connected && p.bridgeless);
    }

    #[test]
    fn star_profile() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = structural_profile(&g);
        assert_eq!((p.diam, p.leaves, p.inner, p.t), (2, 3, 1, 4));
    }

    #[test]
    fn disconnected_uses_sentinel() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p = structural_profile(&g);
        assert!(!p.connected);
        assert_eq!(p.diam, INFINITE_DISTANCE);
        assert!(!p.two_connected);
    }

    #[test]
    fn bowtie_has_one_cut_vertex_no_bridge() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = cut_elements(&g);
        assert_eq!(c.cut_vertices, 1 << 2);
        assert!(c.bridges.is_empty());
        assert_eq!(c.blocks.len(), 2);
        assert_eq!(longest_cycle(&g, 1000).0, Circumference::Exact(3));
    }

    #[test]
    fn circumference_budget_reports_lower_bound() {
        let k8 = Graph::empty(8).unwrap().complement();
        assert_eq!(longest_cycle(&k8, u64::MAX).0, Circumference::Exact(8));
        let petersen = crate::constructions::petersen();
        assert_eq!(
            longest_cycle(&petersen, u64::MAX).0,
            Circumference::Exact(9)
        );
        match longest_cycle(&petersen, 3).0 {
            Circumference::AtLeast(k) => assert!(k <= 9),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn shells() {
        let p = path(5);
        assert_eq!(k_step_neighborhood(&p, 1, 2), 1 << 2);
        assert_eq!(k_step_neighborhood(&p, 0b101, 0), 0b101);
        assert_eq!(k_step_neighborhood(&cycle(6), 1, 3), 1 << 3);
    }

    #[test]
    fn unicyclic_b3() {
        // triangle 0,1,2 with the path 0-3-4
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)]).unwrap();
        let d = unicyclic_decompose(&g).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2]);
        assert_eq!(d.nontrivial(), vec![0]);
        assert!(is_path_from_root(&g, &d.components[0]));
        assert_eq!(d.components[0].leaf_count, 1);
    }

    #[test]
    fn unicyclic_cycle_and_tree() {
        let d = unicyclic_decompose(&cycle(6)).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2, 3, 4, 5]);
        assert!(d.nontrivial().is_empty());
        assert!(unicyclic_decompose(&path(5)).is_none());
    }

    #[test]
    fn canonical_orientation_uses_lower_neighbor() {
        // cycle 2-5-1-4-2 with pendant 0 at 5; lowest cycle vertex is 1,
        // its cycle neighbors are 4 and 5
        let g = Graph::from_edges(6, [(2, 5), (5, 1), (1, 4), (4, 2), (0, 5), (3, 0)]).unwrap();
        let d = unicyclic_decompose(&g).unwrap();
        assert_eq!(d.cycle, vec![1, 4, 2, 5]);
    }

    #[test]
    fn isomorphism() {
        let p4 = path(4);
        assert!(are_isomorphic(&p4, &p4.complement()));
        assert!(!are_isomorphic(
            &cycle(6),
            &Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
        ));
        assert!(are_isomorphic(
            &cycle(6),
            &cycle(6).permuted(&[3, 1, 4, 0, 5, 2])
        ));
    }

    #[test]
    fn double_stars() {
        let ds = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert!(is_double_star(&ds));
        assert_eq!(spanning_double_star(&ds), Some((0, 1)));
        assert!(!is_double_star(&path(5)));
        assert!(is_double_star(&path(4)));
    }
}

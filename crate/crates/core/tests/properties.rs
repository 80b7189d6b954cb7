mod common;

use proptest::prelude::*;
use trc_core::structure::{
    cut_elements, diameter, longest_cycle, spanning_double_star, structural_profile, Circumference,
};
use trc_core::*;

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            },
        )
    })
}

fn connected_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(min_n, max_n).prop_filter("connected", Graph::is_connected)
}

fn relabel_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_strategy(min_n, max_n).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

/// Every simple cycle length, by brute force from each cycle's lowest vertex.
fn brute_circumference(g: &Graph) -> usize {
    fn go(g: &Graph, start: usize, cur: usize, seen: u64, len: usize, best: &mut usize) {
        for w in g.neighbors(cur) {
            if w == start && len >= 3 {
                *best = (*best).max(len);
            } else if w > start && seen >> w & 1 == 0 {
                go(g, start, w, seen | 1 << w, len + 1, best);
            }
        }
    }
    let mut best = 0;
    for s in 0..g.n() {
        go(g, s, s, 1 << s, 1, &mut best);
    }
    best
}

/// Cut vertices and bridges by deletion.
fn brute_t(g: &Graph) -> usize {
    let comps = |h: &Graph| {
        let mut left = h.all_vertices();
        let mut k = 0;
        while left != 0 {
            left &= !h.component_of(left.trailing_zeros() as usize);
            k += 1;
        }
        k
    };
    let base = comps(g);
    let vertices = (0..g.n())
        .filter(|&v| comps(&g.without_vertices(1 << v).0) > base)
        .count();
    let edges = (0..g.m())
        .filter(|&e| comps(&g.without_edges(&[e])) > base)
        .count();
    vertices + edges
}

/// Every simple u-v path.
fn all_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, v: usize, path: &mut Vec<usize>, seen: u64, out: &mut Vec<Vec<usize>>) {
        let cur = *path.last().unwrap();
        for w in g.neighbors(cur) {
            if seen >> w & 1 == 1 {
                continue;
            }
            path.push(w);
            if w == v {
                out.push(path.clone());
            } else {
                go(g, v, path, seen | 1 << w, out);
            }
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(g, v, &mut vec![u], 1 << u, &mut out);
    out
}

fn random_coloring(g: &Graph, seed: &[u8], k: u8) -> TotalColoring {
    let mut it = seed.iter().cycle();
    let mut c = TotalColoring::uniform(g, 0);
    for x in c.vertex_colors.iter_mut().chain(c.edge_colors.iter_mut()) {
        *x = (*it.next().unwrap_or(&0) % k.max(1)) as Color;
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn graph6_round_trip(g in graph_strategy(1, 64)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g.clone());
        prop_assert_eq!(emit_graph6(&parse_graph6(&text).unwrap()), text);
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(1, 40)) {
        let h = g.complement();
        prop_assert_eq!(h.complement(), g.clone());
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v) + h.degree(v), g.n() - 1);
        }
    }

    #[test]
    fn profile_invariants(g in connected_strategy(1, 10)) {
        let p = structural_profile(&g);
        prop_assert!(p.rad <= p.diam && p.diam <= 2 * p.rad);
        prop_assert!(p.inner + p.leaves <= g.n());
        prop_assert_eq!(p.t, brute_t(&g));
        let brute = brute_circumference(&g);
        prop_assert_eq!(p.circumference, Circumference::Exact(brute));
        prop_assert!(brute == 0 || (3..=g.n()).contains(&brute));
        if g.n() >= 3 {
            prop_assert_eq!(p.t == 0, p.two_connected);
        }
    }

    #[test]
    fn longest_cycle_is_a_cycle(g in connected_strategy(3, 10)) {
        let (len, cyc) = longest_cycle(&g, 1_000_000);
        if let Circumference::Exact(l) = len {
            if l > 0 {
                prop_assert_eq!(cyc.len(), l);
                for i in 0..l {
                    prop_assert!(g.has_edge(cyc[i], cyc[(i + 1) % l]));
                }
            }
        }
    }

    #[test]
    fn complements_of_long_graphs(g in connected_strategy(4, 10)) {
        let h = g.complement();
        prop_assume!(h.is_connected());
        let d = diameter(&g);
        if d > 3 {
            prop_assert_eq!(diameter(&h), 2);
        }
        if d == 3 {
            prop_assert!(spanning_double_star(&h).is_some());
        }
    }

    #[test]
    fn path_check_is_symmetric_and_ignores_endpoints(
        g in connected_strategy(2, 7),
        seed in proptest::collection::vec(any::<u8>(), 1..40),
        a in 0usize..7, b in 0usize..7, recolor in any::<u8>(),
    ) {
        let (u, v) = (a % g.n(), b % g.n());
        prop_assume!(u != v);
        let c = random_coloring(&g, &seed, 5);
        for p in all_paths(&g, u, v) {
            let fwd = is_total_rainbow_path(&g, &c, &p).unwrap();
            let mut r = p.clone();
            r.reverse();
            prop_assert_eq!(fwd, is_total_rainbow_path(&g, &c, &r).unwrap());
        }
        let before = find_total_rainbow_path(&g, &c, u, v).unwrap().is_some();
        let mut d = c.clone();
        d.vertex_colors[u] = (recolor % 7) as Color;
        d.vertex_colors[v] = (recolor / 7 % 7) as Color;
        prop_assert_eq!(before, find_total_rainbow_path(&g, &d, u, v).unwrap().is_some());
    }

    #[test]
    fn path_search_matches_enumeration(
        g in connected_strategy(2, 7),
        seed in proptest::collection::vec(any::<u8>(), 1..40),
        k in 2u8..8,
    ) {
        let c = random_coloring(&g, &seed, k);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let brute = all_paths(&g, u, v)
                    .iter()
                    .any(|p| is_total_rainbow_path(&g, &c, p).unwrap());
                let found = find_total_rainbow_path(&g, &c, u, v).unwrap();
                prop_assert_eq!(brute, found.is_some());
                if let Some(p) = found {
                    prop_assert!(is_total_rainbow_path(&g, &c, &p).unwrap());
                }
            }
        }
    }

    #[test]
    fn refining_a_color_class_keeps_validity(
        g in connected_strategy(2, 7),
        seed in proptest::collection::vec(any::<u8>(), 1..40),
        split in any::<u64>(),
    ) {
        let c = random_coloring(&g, &seed, 6);
        prop_assume!(is_trc_coloring(&g, &c));
        // move some members of class 0 to a fresh color
        let fresh = c.max_color().unwrap() + 1;
        let mut d = c.clone();
        for (i, x) in d.vertex_colors.iter_mut().chain(d.edge_colors.iter_mut()).enumerate() {
            if *x == 0 && split >> (i % 64) & 1 == 1 {
                *x = fresh;
            }
        }
        prop_assert!(is_trc_coloring(&g, &d));
    }

    #[test]
    fn classification_ignores_labels((g, perm) in relabel_strategy(1, 7)) {
        let h = g.permuted(&perm);
        let a = classify(&g).unwrap();
        let b = classify(&h).unwrap();
        prop_assert_eq!(a.trc_theory, b.trc_theory);
        prop_assert_eq!(a.family, b.family);
        prop_assert_eq!(a.primed_ambiguity, b.primed_ambiguity);
        prop_assert_eq!(a.theorem_tag, b.theorem_tag);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn solver_within_bounds_with_valid_certificate(g in connected_strategy(1, 8)) {
        let b = bounds(&g).unwrap();
        let r = solve_trc(&g, &Budget::default()).unwrap();
        let v = r.value.exact().unwrap();
        prop_assert!(b.lower.value <= v && v <= b.upper.value);
        let c = r.certificate.unwrap();
        prop_assert_eq!(c.palette(), v);
        prop_assert!(is_trc_coloring(&g, &c));
        prop_assert!(is_trc_coloring(&g, &b.upper.certificate));
    }

    #[test]
    fn relabeling_keeps_trc((g, perm) in relabel_strategy(1, 7)) {
        let a = solve_trc(&g, &Budget::default()).unwrap().value;
        let b = solve_trc(&g.permuted(&perm), &Budget::default()).unwrap().value;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn spanning_subgraphs_never_need_fewer_colors() {
    // deleting one non-bridge edge at a time reaches every connected
    // spanning subgraph
    for n in 2..=6 {
        for g in fixtures::connected_graphs(n).unwrap() {
            let v = solve_trc(&g, &Budget::default()).unwrap().value.lo();
            let bridges = cut_elements(&g).bridges;
            for e in 0..g.m() {
                if bridges.contains(&e) {
                    continue;
                }
                let h = g.without_edges(&[e]);
                let w = solve_trc(&h, &Budget::default()).unwrap().value.lo();
                assert!(v <= w, "{}: removing edge {e} lowers trc", emit_graph6(&g));
            }
        }
    }
}

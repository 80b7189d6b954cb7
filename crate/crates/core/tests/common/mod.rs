#![allow(dead_code)]

use rand::Rng;
use trc_core::constructions::Diam3Subcase;
use trc_core::structure::{cut_elements, diameter};
use trc_core::Graph;

pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap()
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.15..0.8);
        let g = gnp(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random graph whose diameter is at least 4.
pub fn random_long<R: Rng>(rng: &mut R) -> Graph {
    loop {
        let n = rng.gen_range(6..=16);
        let mut edges: Vec<(usize, usize)> = random_tree(rng, n).edges().to_vec();
        for _ in 0..rng.gen_range(0..n) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !edges.contains(&(a.min(b), a.max(b))) {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if diameter(&g) >= 4 {
            return g;
        }
    }
}

/// 2-connected, diameter 3, complement of diameter 2, and the requested
/// configuration present.
pub fn random_diam3<R: Rng>(rng: &mut R, want: Diam3Subcase) -> Graph {
    loop {
        let n = rng.gen_range(7..=14);
        let p = rng.gen_range(0.2..0.5);
        let g = gnp(rng, n, p);
        if !g.is_connected() || cut_elements(&g).cut_vertices != 0 || diameter(&g) != 3 {
            continue;
        }
        let gbar = g.complement();
        if !gbar.is_connected() || diameter(&gbar) != 2 {
            continue;
        }
        // only a missing configuration disqualifies; recipe failures are returned
        match trc_core::constructions::color_complement_of_diam3_2connected(&g, Some(want)) {
            Err(trc_core::Error::Precondition(_)) => continue,
            _ => return g,
        }
    }
}

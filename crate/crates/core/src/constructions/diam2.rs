use crate::coloring::{Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::solver::{find_coloring, lower_bound, Budget, Feasibility, SolverConfig};
use crate::structure::{cut_elements, diameter};

use super::complements::LayeredPartition;
use super::Painter;

fn check_pre(g: &Graph) -> Result<()> {
    if g.n() < 3 || !g.is_connected() || cut_elements(g).cut_vertices != 0 {
        return Err(Error::Precondition("the graph must be 2-connected".into()));
    }
    if diameter(g) != 2 {
        return Err(Error::Precondition("the graph must have diameter 2".into()));
    }
    Ok(())
}

/// Smallest subset of `xs` whose neighborhoods cover `target`, listed in
/// greedy order (largest new coverage first).
fn cover(g: &Graph, xs: &[usize], target: u64) -> Vec<usize> {
    if target == 0 {
        return Vec::new();
    }
    let order = |chosen: &[usize]| {
        let mut left: Vec<usize> = chosen.to_vec();
        let mut covered = 0u64;
        let mut out = Vec::new();
        while !left.is_empty() {
            let (i, _) = left
                .iter()
                .enumerate()
                .max_by_key(|&(i, &x)| {
                    (
                        (g.row(x) & target & !covered).count_ones(),
                        std::cmp::Reverse(i),
                    )
                })
                .unwrap();
            let x = left.remove(i);
            covered |= g.row(x) & target;
            out.push(x);
        }
        out
    };
    if xs.len() <= 16 {
        for t in 1..=xs.len() {
            let mut idx: Vec<usize> = (0..t).collect();
            loop {
                let cov = idx.iter().fold(0u64, |a, &i| a | g.row(xs[i]));
                if cov & target == target {
                    let chosen: Vec<usize> = idx.iter().map(|&i| xs[i]).collect();
                    return order(&chosen);
                }
                // next combination
                let mut k = t;
                while k > 0 && idx[k - 1] == xs.len() - t + k - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                idx[k - 1] += 1;
                for j in k..t {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    order(xs)
}

fn recipe_at(g: &Graph, v: usize) -> Option<TotalColoring> {
    let part = LayeredPartition::new(g, v, 2);
    let (nv, n2) = (part.shell(1), part.shell(2));
    // the construction needs N^2(v) independent
    if Bits(n2).any(|u| g.row(u) & n2 != 0) {
        return None;
    }
    // H on N(v): adjacent or joined through a common neighbor in N^2(v)
    let h_row = |x: usize| {
        let mut r = g.row(x) & nv;
        for w in Bits(g.row(x) & n2) {
            r |= g.row(w) & nv;
        }
        r & !(1 << x)
    };
    let root = nv.trailing_zeros() as usize;
    let mut side = vec![u8::MAX; g.n()];
    side[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for y in Bits(h_row(x)) {
            if side[y] == u8::MAX {
                side[y] = 1 - side[x];
                queue.push_back(y);
            }
        }
    }
    if Bits(nv).any(|x| side[x] == u8::MAX) {
        return None;
    }
    let mut xset: u64 = Bits(nv)
        .filter(|&x| side[x] == 0)
        .fold(0, |a, x| a | 1 << x);
    let mut yset = nv & !xset;
    let touches = |u: usize, s: u64| g.row(u) & s != 0;
    let mut a: u64 = 0;
    let mut d1: u64 = 0;
    let mut d2: u64 = 0;
    for u in Bits(n2) {
        match (touches(u, xset), touches(u, yset)) {
            (true, true) => a |= 1 << u,
            (true, false) => d1 |= 1 << u,
            (false, true) => d2 |= 1 << u,
            _ => {}
        }
    }
    if d1 != 0 && d2 != 0 {
        return None;
    }
    if d2 != 0 {
        std::mem::swap(&mut xset, &mut yset);
        std::mem::swap(&mut d1, &mut d2);
    }
    let xs: Vec<usize> = Bits(xset).collect();
    let chosen = cover(g, &xs, d1);
    let t = chosen.len();

    let mut p = Painter::new(g, 4);
    let bit = 1u64 << v;
    p.edges_between(bit, xset, 1);
    p.edges_between(bit, yset, 2);
    p.edges_between(xset, yset, 3);
    p.edges_between(yset, a, 3);
    p.edges_between(xset, a, 4);
    p.edges_between(xset, d1, 4);
    let mut covered = 0u64;
    let mut last_new = 0;
    for &x in &chosen {
        let new = g.row(x) & d1 & !covered;
        p.edges_between(1 << x, new, 5);
        covered |= new;
        last_new = new.count_ones();
    }
    p.vertex(v, 6);
    for y in Bits(yset) {
        p.vertex(y, 7);
    }
    for u in Bits(a | d1) {
        p.vertex(u, 8);
    }
    for (i, &x) in chosen.iter().enumerate() {
        p.vertex(x, 9 + i as Color);
    }
    let rest_color = if t > 0 && last_new == 1 { t + 8 } else { t + 9 } as Color;
    for x in Bits(xset) {
        if !chosen.contains(&x) {
            p.vertex(x, rest_color);
        }
    }
    p.finish("2-connected diameter 2").ok()
}

/// The explicit recipe alone: best result over base vertices whose second
/// neighborhood is independent. `None` if no base vertex qualifies or no
/// attempt verifies.
pub fn two_connected_diam2_recipe(g: &Graph) -> Result<Option<TotalColoring>> {
    check_pre(g)?;
    Ok((0..g.n())
        .filter_map(|v| recipe_at(g, v))
        .min_by_key(|c| c.palette()))
}

/// Coloring of a 2-connected diameter-2 graph with at most `n - 1` colors:
/// the explicit recipe when it applies and meets the cap, otherwise a
/// bounded search for the cheapest palette up to `n - 1`.
pub fn color_two_connected_diam2(g: &Graph, budget: &Budget) -> Result<TotalColoring> {
    check_pre(g)?;
    let cap = g.n() - 1;
    if let Some(c) = two_connected_diam2_recipe(g)? {
        if c.palette() <= cap {
            return Ok(c);
        }
    }
    let lo = lower_bound(g)?.value;
    for k in lo..=cap {
        match find_coloring(g, k, budget, &SolverConfig::default())? {
            Feasibility::Found(c) => return Ok(c),
            Feasibility::Infeasible => {}
            Feasibility::Exhausted => {
                return Err(Error::BudgetExhausted(format!(
                    "no coloring with at most {cap} colors found; stopped at {k}"
                )))
            }
        }
    }
    Err(Error::InvalidConstruction(format!(
        "no coloring with at most {cap} colors exists"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_trc;
    use crate::constructions::{generate, petersen, FamilySpec};

    #[test]
    fn petersen_falls_back_to_search() {
        let g = petersen();
        assert!(two_connected_diam2_recipe(&g).unwrap().is_none());
        let c = color_two_connected_diam2(&g, &Budget::default()).unwrap();
        assert!(c.palette() <= 9);
        assert!(verify_trc(&g, &c).unwrap().valid);
    }

    #[test]
    fn c5_and_k33() {
        let c5 = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(
            color_two_connected_diam2(&c5, &Budget::default())
                .unwrap()
                .palette()
                <= 4
        );
        let k33 = generate(&FamilySpec::CompleteBipartite(3, 3)).unwrap();
        assert!(
            color_two_connected_diam2(&k33, &Budget::default())
                .unwrap()
                .palette()
                <= 5
        );
    }

    #[test]
    fn recipe_applies_to_k33() {
        let k33 = generate(&FamilySpec::CompleteBipartite(3, 3)).unwrap();
        let c = two_connected_diam2_recipe(&k33)
            .unwrap()
            .expect("N^2 of a vertex is independent");
        assert!(verify_trc(&k33, &c).unwrap().valid);
    }

    #[test]
    fn rejects_diameter_three() {
        let c6 = generate(&FamilySpec::Cycle(6)).unwrap();
        assert!(color_two_connected_diam2(&c6, &Budget::default()).is_err());
    }
}

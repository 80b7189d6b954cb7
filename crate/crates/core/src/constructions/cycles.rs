use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::coloring::{Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{find_coloring, Budget, Feasibility, SolverConfig};
use crate::structure::unicyclic_decompose;

use super::extend::{extend_coloring, GraphOp};
use super::{checked, generate, FamilySpec, Painter};

const SMALL_CYCLES: [usize; 10] = [1, 3, 3, 5, 6, 7, 8, 9, 11, 11];

/// Known value of `trc(C_n)`.
pub fn cycle_trc(n: usize) -> Result<usize> {
    match n {
        0..=2 => Err(Error::InvalidParameters(format!("C_{n} is not a cycle"))),
        3..=12 => Ok(SMALL_CYCLES[n - 3]),
        _ => Ok(n),
    }
}

/// Known value of `trc(B_l)` for a graph of order `n`.
pub fn b_ell_trc(l: usize, n: usize) -> Result<usize> {
    if l < 3 || n <= l {
        return Err(Error::InvalidParameters(format!(
            "B_l needs l >= 3 and a tail (l={l}, n={n})"
        )));
    }
    let tail = n - l;
    let short = matches!(l, 3 | 5 | 7 | 9) || (l >= 11 && l % 2 == 1 && tail >= 2);
    Ok(if short { 2 * n - l - 2 } else { 2 * n - l - 1 })
}

fn cycle_cache() -> &'static Mutex<HashMap<usize, TotalColoring>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, TotalColoring>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Optimal coloring of `C_n` on vertices `0..n` in cyclic order.
///
/// Small cycles are solved once by exact search and cached; from `n = 13`
/// on, edge `u_i u_{i+1}` gets `i` and vertex `u_i` gets `i + n/2 (mod n)`.
pub fn color_cycle(n: usize) -> Result<TotalColoring> {
    let target = cycle_trc(n)?;
    if let Some(c) = cycle_cache().lock().unwrap().get(&n) {
        return Ok(c.clone());
    }
    let g = generate(&FamilySpec::Cycle(n))?;
    let c = if n == 3 {
        TotalColoring::uniform(&g, 0)
    } else if n <= 12 {
        match find_coloring(&g, target, &Budget::unlimited(), &SolverConfig::default())? {
            Feasibility::Found(c) => c,
            _ => {
                return Err(Error::BudgetExhausted(format!(
                    "no {target}-coloring of C_{n} found"
                )))
            }
        }
    } else {
        let mut p = Painter::new(&g, 0);
        for i in 0..n {
            p.edge(i, (i + 1) % n, i as Color);
            p.vertex(i, ((i + n / 2) % n) as Color);
        }
        match p.finish("cycle pattern") {
            Ok(c) => c,
            Err(_) => {
                match find_coloring(&g, target, &Budget::default(), &SolverConfig::default())? {
                    Feasibility::Found(c) => c,
                    _ => {
                        return Err(Error::BudgetExhausted(format!(
                            "no {target}-coloring of C_{n} found"
                        )))
                    }
                }
            }
        }
    };
    let c = checked(&g, c, "cycle")?;
    cycle_cache().lock().unwrap().insert(n, c.clone());
    Ok(c)
}

/// Checks the `B_l` shape with the canonical numbering produced by
/// [`generate`] and returns `(l, tail)`.
fn b_ell_shape(g: &Graph) -> Result<(usize, usize)> {
    let bad = || Error::Precondition("expected a B_l graph in canonical numbering".into());
    let d = unicyclic_decompose(g).ok_or_else(bad)?;
    let l = d.len();
    let tail = g.n() - l;
    if tail == 0 {
        return Err(bad());
    }
    let expected = generate(&FamilySpec::BEll(l, tail))?;
    if &expected != g {
        return Err(bad());
    }
    Ok((l, tail))
}

/// Optimal coloring of `B_l` (canonical numbering: cycle `0..l`, tail
/// `l, l+1, ..` hung at vertex 0).
pub fn color_b_ell(g: &Graph) -> Result<TotalColoring> {
    let (l, tail) = b_ell_shape(g)?;
    let n = g.n();
    let target = b_ell_trc(l, n)?;
    // u_i (1-based) is vertex i - 1; tail vertex v_j (1-based) is l + j - 1
    let u = |i: usize| (i - 1) % l;
    let v = |j: usize| l + j - 1;
    let c = match l {
        7 | 9 => {
            let mut p = Painter::new(g, 1);
            let third = l / 3;
            let twothirds = 2 * l / 3;
            let ones = [2, third + 2, twothirds + 2];
            let twos = [3, third + 3, twothirds + 3];
            for i in ones {
                p.vertex(u(i), 1);
            }
            for i in twos {
                p.vertex(u(i), 2);
            }
            let precolored: Vec<usize> = ones.iter().chain(&twos).copied().collect();
            // u_2u_3, u_3u_4, u_4, u_4u_5, ..., u_l, u_lu_1, u_1, u_1u_2
            enum El {
                E(usize, usize),
                V(usize),
            }
            let mut seq = vec![El::E(2, 3)];
            for i in 3..=l {
                if i > 3 {
                    seq.push(El::V(i));
                }
                seq.push(El::E(i, i % l + 1));
            }
            seq.push(El::V(1));
            seq.push(El::E(1, 2));
            let seq: Vec<El> = seq
                .into_iter()
                .filter(|el| !matches!(el, El::V(i) if precolored.contains(i)))
                .collect();
            let span = (l - 3) as Color;
            for (k, el) in seq.iter().enumerate() {
                let color = 3 + k as Color % span;
                match *el {
                    El::E(a, b) => p.edge(u(a), u(b), color),
                    El::V(i) => p.vertex(u(i), color),
                }
            }
            let fresh = fresh_tail(&mut p, l, tail, u(1), l as Color);
            p.vertex(v(tail), 1);
            debug_assert!(fresh >= l as Color);
            p.finish("B_l, l in {7, 9}")?
        }
        _ if l >= 11 && l % 2 == 1 && tail >= 2 => {
            let mut p = Painter::new(g, 1);
            let modulus = (l + 1) as Color;
            let mut k: Color = 0;
            let mut next = || {
                let c = k % modulus + 1;
                k += 1;
                c
            };
            p.vertex(v(1), next());
            p.edge(v(1), u(1), next());
            for i in 1..=l {
                p.vertex(u(i), next());
                p.edge(u(i), u(i + 1), next());
            }
            // v_1 is already colored, so the tail starts at v_1 v_2
            let mut fresh = modulus + 1;
            for j in 1..tail {
                p.edge(v(j), v(j + 1), fresh);
                fresh += 1;
                if j > 1 {
                    p.vertex(v(j), fresh);
                    fresh += 1;
                }
            }
            p.vertex(v(tail), 1);
            p.finish("B_l, odd l >= 11 with |T_1| >= 3")?
        }
        _ if l >= 14 || (l >= 11 && l % 2 == 1) => {
            let mut p = Painter::new(g, 1);
            for i in 1..=l {
                p.edge(u(i), u(i + 1), (i % l) as Color);
                p.vertex(u(i), ((i + l / 2) % l) as Color);
            }
            fresh_tail(&mut p, l, tail, u(1), l as Color);
            p.vertex(v(tail), 1);
            p.finish("B_l, alternating cycle pattern")?
        }
        _ => {
            // optimal cycle coloring extended one pendant at a time
            let mut graph = generate(&FamilySpec::Cycle(l))?;
            let mut c = color_cycle(l)?;
            for j in 1..=tail {
                let at = if j == 1 { 0 } else { v(j - 1) };
                let ext = extend_coloring(&graph, &c, &GraphOp::AddPendant { at })?;
                graph = ext.graph;
                c = ext.coloring;
            }
            debug_assert_eq!(&graph, g);
            c
        }
    };
    if c.palette() > target {
        return Err(Error::InvalidConstruction(format!(
            "B_{l} with n={n}: recipe used {} colors, expected {target}",
            c.palette()
        )));
    }
    Ok(c)
}

/// Gives every tail edge and every inner tail vertex (including `u_1`'s
/// attachment edge) its own color starting at `fresh`; returns the next
/// unused color.
fn fresh_tail(p: &mut Painter<'_>, l: usize, tail: usize, root: usize, mut fresh: Color) -> Color {
    let mut prev = root;
    for j in 1..=tail {
        let cur = l + j - 1;
        p.edge(prev, cur, fresh);
        fresh += 1;
        if j < tail {
            p.vertex(cur, fresh);
            fresh += 1;
        }
        prev = cur;
    }
    fresh
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_trc;

    #[test]
    fn small_cycles_hit_table() {
        for n in 3..=12 {
            let c = color_cycle(n).unwrap();
            assert_eq!(c.palette(), cycle_trc(n).unwrap(), "C_{n}");
        }
    }

    #[test]
    fn large_cycle_pattern() {
        for n in [13, 15, 20, 33] {
            let g = generate(&FamilySpec::Cycle(n)).unwrap();
            let c = color_cycle(n).unwrap();
            assert_eq!(c.palette(), n);
            assert!(verify_trc(&g, &c).unwrap().valid);
        }
    }

    #[test]
    fn b_ell_recipes() {
        for (l, t) in [
            (3, 1),
            (4, 2),
            (5, 1),
            (6, 3),
            (7, 2),
            (9, 3),
            (8, 1),
            (10, 2),
            (11, 1),
            (11, 3),
            (12, 1),
            (13, 2),
            (14, 2),
            (15, 1),
        ] {
            let g = generate(&FamilySpec::BEll(l, t)).unwrap();
            let c = color_b_ell(&g).unwrap();
            assert_eq!(c.palette(), b_ell_trc(l, l + t).unwrap(), "B_{l} tail {t}");
            assert!(verify_trc(&g, &c).unwrap().valid);
        }
    }

    #[test]
    fn b_ell_rejects_other_graphs() {
        let g = generate(&FamilySpec::Cycle(6)).unwrap();
        assert!(color_b_ell(&g).is_err());
    }
}

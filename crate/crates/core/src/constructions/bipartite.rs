use crate::coloring::{Color, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{checked, generate, FamilySpec};

/// Smallest `b` with `b^m >= n`.
fn digit_base(m: usize, n: usize) -> usize {
    let mut b = 1usize;
    while (b as u128)
        .checked_pow(m as u32)
        .is_some_and(|p| p < n as u128)
    {
        b += 1;
    }
    b
}

/// `trc(K_{m,n}) = min(ceil(n^(1/m)) + 1, 7)` for `2 <= m <= n`.
pub fn complete_bipartite_trc(m: usize, n: usize) -> Result<usize> {
    check_sides(m, n)?;
    Ok((digit_base(m, n) + 1).min(7))
}

fn check_sides(m: usize, n: usize) -> Result<()> {
    if m < 2 || m > n {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= m <= n, got ({m}, {n})"
        )));
    }
    Ok(())
}

/// Distinct digit vectors in `{0..b}^m` for the `n` big-side vertices. The
/// first `m - 1` are unit vectors so that every pair of coordinates differs
/// somewhere.
fn digit_vectors(m: usize, n: usize, b: usize) -> Vec<Vec<Color>> {
    let mut out: Vec<Vec<Color>> = (0..(m - 1).min(n))
        .map(|i| {
            let mut v = vec![0; m];
            v[i] = 1;
            v
        })
        .collect();
    let mut counter = vec![0 as Color; m];
    while out.len() < n {
        if !out.contains(&counter) {
            out.push(counter.clone());
        }
        for d in (0..m).rev() {
            counter[d] += 1;
            if (counter[d] as usize) < b {
                break;
            }
            counter[d] = 0;
        }
    }
    out
}

/// Colors `K[small, big]` inside `g` with the digit scheme; returns the
/// number of edge colors `b`. Vertex colors are left untouched.
pub(crate) fn paint_digits(
    g: &Graph,
    c: &mut TotalColoring,
    small: &[usize],
    big: &[usize],
    offset: Color,
) -> Result<usize> {
    let (m, n) = (small.len(), big.len());
    check_sides(m, n)?;
    let b = digit_base(m, n);
    if b > 6 {
        return Err(Error::InvalidParameters(format!(
            "digit scheme needs {b} edge colors for K_{{{m},{n}}}; only n <= 6^m is supported"
        )));
    }
    for (j, digits) in digit_vectors(m, n, b).into_iter().enumerate() {
        for (i, &s) in small.iter().enumerate() {
            let e = g
                .edge_id(s, big[j])
                .ok_or_else(|| Error::Precondition(format!("{s}{} is not an edge", big[j])))?;
            c.edge_colors[e] = offset + digits[i];
        }
    }
    Ok(b)
}

/// Coloring of `K_{m,n}` (small side `0..m`) with `min(ceil(n^(1/m)), 6) + 1`
/// colors: digit-coded edges plus one shared vertex color.
pub fn color_complete_bipartite(m: usize, n: usize) -> Result<TotalColoring> {
    let g = generate(&FamilySpec::CompleteBipartite(m, n))?;
    let small: Vec<usize> = (0..m).collect();
    let big: Vec<usize> = (m..m + n).collect();
    let mut c = TotalColoring::uniform(&g, 0);
    let b = paint_digits(&g, &mut c, &small, &big, 0)?;
    c.vertex_colors.fill(b as Color);
    checked(&g, c, "complete bipartite digits")
}

/// Strong coloring of `K_{m,n}`: as [`color_complete_bipartite`] but the
/// two sides get distinct vertex colors `p != q`.
pub fn color_complete_bipartite_strong(m: usize, n: usize) -> Result<TotalColoring> {
    let g = generate(&FamilySpec::CompleteBipartite(m, n))?;
    let small: Vec<usize> = (0..m).collect();
    let big: Vec<usize> = (m..m + n).collect();
    let mut c = TotalColoring::uniform(&g, 0);
    let b = paint_digits(&g, &mut c, &small, &big, 0)? as Color;
    c.vertex_colors[..m].fill(b);
    c.vertex_colors[m..].fill(b + 1);
    // normalization may renumber, but keeps the sides apart
    checked(&g, c, "strong complete bipartite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_trc;

    #[test]
    fn bases() {
        assert_eq!(digit_base(2, 4), 2);
        assert_eq!(digit_base(2, 5), 3);
        assert_eq!(digit_base(3, 30), 4);
        assert_eq!(digit_base(2, 2), 2);
        assert_eq!(complete_bipartite_trc(2, 40).unwrap(), 7);
    }

    #[test]
    fn strong_sides_differ() {
        for (m, n) in [(2, 2), (2, 4), (2, 9), (3, 30), (4, 4)] {
            let c = color_complete_bipartite_strong(m, n).unwrap();
            let g = generate(&FamilySpec::CompleteBipartite(m, n)).unwrap();
            assert!(verify_trc(&g, &c).unwrap().valid);
            assert_ne!(c.vertex_colors[0], c.vertex_colors[m]);
            assert!(c.vertex_colors[..m]
                .iter()
                .all(|&x| x == c.vertex_colors[0]));
            assert_eq!(c.palette(), digit_base(m, n) + 2);
        }
    }

    #[test]
    fn plain_matches_formula() {
        for (m, n) in [(2, 2), (2, 4), (2, 9), (3, 27), (3, 30)] {
            let c = color_complete_bipartite(m, n).unwrap();
            assert_eq!(c.palette(), complete_bipartite_trc(m, n).unwrap());
        }
    }

    #[test]
    fn rejects_bad_sides() {
        assert!(color_complete_bipartite_strong(1, 3).is_err());
        assert!(color_complete_bipartite_strong(4, 3).is_err());
        assert!(color_complete_bipartite_strong(2, 40).is_err());
    }
}

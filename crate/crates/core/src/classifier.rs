use serde::{Deserialize, Serialize};

use crate::constructions::{b_ell_trc, cycle_trc, generate, FamilySpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{
    lower_bound, solve_trc_with, Budget, Method, SolverConfig, TrcResult, TrcValue,
};
use crate::structure::{
    are_isomorphic, diameter, is_path_from_root, is_tree, longest_cycle, unicyclic_decompose,
    Circumference, UnicyclicDecomposition,
};
use crate::upper::upper_bound;

const CYCLE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Special {
    H1,
    H2,
    H3,
    H4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoarseClass {
    Complete,
    Path,
    Tree {
        leaves: usize,
    },
    Cycle {
        n: usize,
    },
    BEll {
        l: usize,
        tail: usize,
    },
    Unicyclic {
        l: usize,
        /// Cycle positions of the nontrivial trees.
        nontrivial: Vec<usize>,
        leaves: usize,
        /// Whether the nontrivial trees sit on pairwise adjacent cycle
        /// positions (two trees) or the trivial ones do (`l - 2` trees).
        adjacent: bool,
    },
    Special {
        which: Special,
    },
    Multicyclic {
        l: usize,
        /// `n - diam`.
        diam_gap: usize,
    },
    /// Multicyclic with unknown circumference.
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoryTag {
    Complete,
    TreeFormula,
    CycleTable,
    BEllFormula,
    UnicyclicTriangle,
    UnicyclicSquare,
    UnicyclicPentagon,
    UnicyclicLong,
    SpecialSmall,
    MulticyclicTriangle,
    MulticyclicSquare,
    MulticyclicPentagon,
    MulticyclicLong,
    /// Only the general bounds apply.
    Bounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub coarse_class: CoarseClass,
    /// Family label such as `G1^3` or `H6`, when one applies.
    pub family: Option<String>,
    pub primed_ambiguity: bool,
    pub trc_theory: TrcValue,
    pub theorem_tag: TheoryTag,
    /// General lower bound and constructive upper bound. The theory value
    /// does not use the latter, which depends on vertex labels.
    pub bounds: (usize, usize),
    /// False when the theory range is empty or lies above a verified
    /// coloring; the reported value then falls back to the bounds.
    pub consistent: bool,
}

impl ClassReport {
    pub fn class_label(&self) -> String {
        let base = match &self.coarse_class {
            CoarseClass::Complete => "complete".to_string(),
            CoarseClass::Path => "path".to_string(),
            CoarseClass::Tree { leaves } => format!("tree(j={leaves})"),
            CoarseClass::Cycle { n } => format!("cycle({n})"),
            CoarseClass::BEll { l, tail } => format!("bell({l},{tail})"),
            CoarseClass::Unicyclic { l, leaves, .. } => format!("unicyclic(l={l},j={leaves})"),
            CoarseClass::Special { which } => format!("{which:?}").to_lowercase(),
            CoarseClass::Multicyclic { l, diam_gap } => {
                format!("multicyclic(l={l},n-diam={diam_gap})")
            }
            CoarseClass::Other => "other".to_string(),
        };
        match &self.family {
            Some(f) => format!("{base}[{f}]"),
            None => base,
        }
    }
}

/// Theory verdict before intersecting with the general bounds.
struct Claim {
    class: CoarseClass,
    family: Option<String>,
    value: (usize, usize),
    primed: bool,
    tag: TheoryTag,
}

fn span(lo: usize, hi: usize) -> (usize, usize) {
    (lo, hi)
}

fn exact(v: usize) -> (usize, usize) {
    (v, v)
}

pub fn classify(g: &Graph) -> Result<ClassReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lb = lower_bound(g)?.value;
    let ub = upper_bound(g)?.value;
    let claim = claim(g, lb)?;
    // n + n' - 1 is attained by trees only
    let inner = (0..g.n()).filter(|&v| g.degree(v) >= 2).count();
    let cap = if g.is_complete() {
        1
    } else if is_tree(g) {
        g.n() + inner - 1
    } else {
        g.n() + inner - 2
    };
    let (lo, hi) = (claim.value.0.max(lb), claim.value.1.min(cap));
    let consistent = lo <= hi && lo <= ub;
    let (lo, hi) = if consistent { (lo, hi) } else { (lb, ub) };
    let value = TrcValue::from_range(lo, hi);
    Ok(ClassReport {
        coarse_class: claim.class,
        family: claim.family,
        primed_ambiguity: claim.primed && value.exact().is_none(),
        trc_theory: value,
        theorem_tag: claim.tag,
        bounds: (lb, ub),
        consistent,
    })
}

pub fn trc_by_theory(g: &Graph) -> Result<TrcValue> {
    Ok(classify(g)?.trc_theory)
}

/// Theory first; intervals go to the solver with the theory range as a hint.
pub fn trc(g: &Graph, budget: &Budget) -> Result<TrcResult> {
    trc_with_report(g, budget).map(|(_, r)| r)
}

pub fn trc_with_report(g: &Graph, budget: &Budget) -> Result<(ClassReport, TrcResult)> {
    let report = classify(g)?;
    if let Some(v) = report.trc_theory.exact() {
        let up = upper_bound(g)?;
        let certificate = (up.value == v).then_some(up.certificate);
        let result = TrcResult {
            value: report.trc_theory,
            certificate,
            method: Method::Theory,
            stats: Default::default(),
        };
        return Ok((report, result));
    }
    let mut result = solve_trc_with(g, budget, &SolverConfig::default(), Some(report.trc_theory))?;
    if let Some(v) = report.trc_theory.intersect(result.value) {
        if v != result.value {
            if v.hi() < result.value.hi() {
                result.certificate = None;
            }
            result.value = v;
        }
    }
    Ok((report, result))
}

/// One-line summary `class=…; trc=… (method); bounds=[lo,hi]`.
pub fn summary_line(report: &ClassReport, result: &TrcResult) -> String {
    format!(
        "class={}; trc={} ({}); bounds=[{},{}]",
        report.class_label(),
        result.value,
        result.method,
        report.bounds.0,
        report.bounds.1
    )
}

fn leaves(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 1).count()
}

fn claim(g: &Graph, lb: usize) -> Result<Claim> {
    let n = g.n();
    let j = leaves(g);
    let mk = |class, family: Option<&str>, value, primed, tag| Claim {
        class,
        family: family.map(str::to_string),
        value,
        primed,
        tag,
    };
    if g.is_complete() {
        return Ok(mk(
            CoarseClass::Complete,
            None,
            exact(1),
            false,
            TheoryTag::Complete,
        ));
    }
    if is_tree(g) {
        let class = if j == 2 {
            CoarseClass::Path
        } else {
            CoarseClass::Tree { leaves: j }
        };
        return Ok(mk(
            class,
            Some(&format!("T^{j}")),
            exact(2 * n - j - 1),
            false,
            TheoryTag::TreeFormula,
        ));
    }
    if g.m() == n {
        let d = unicyclic_decompose(g).expect("connected with m = n");
        return Ok(unicyclic_claim(g, &d, lb, j));
    }
    for (which, spec) in [
        (Special::H1, FamilySpec::H1),
        (Special::H2, FamilySpec::H2),
        (Special::H3, FamilySpec::H3),
        (Special::H4, FamilySpec::H4),
    ] {
        if are_isomorphic(g, &generate(&spec)?) {
            return Ok(mk(
                CoarseClass::Special { which },
                None,
                exact(2 * n - 8),
                false,
                TheoryTag::SpecialSmall,
            ));
        }
    }
    let l = match longest_cycle(g, CYCLE_BUDGET).0 {
        Circumference::Exact(l) => l,
        Circumference::AtLeast(_) => {
            return Ok(mk(
                CoarseClass::Other,
                None,
                span(lb, usize::MAX),
                false,
                TheoryTag::Bounds,
            ));
        }
    };
    let diam = diameter(g);
    let gap = n - diam;
    let class = CoarseClass::Multicyclic { l, diam_gap: gap };
    let below9 = (2 * n).saturating_sub(9);
    let below8 = (2 * n).saturating_sub(8);
    Ok(match l {
        3 if gap == 3 => mk(
            class,
            Some("G4"),
            exact(2 * n - 7),
            false,
            TheoryTag::MulticyclicTriangle,
        ),
        3 => mk(
            class,
            Some("G0?"),
            span(lb, below8),
            true,
            TheoryTag::MulticyclicTriangle,
        ),
        4 if gap == 2 => mk(
            class,
            Some("H6"),
            exact(2 * n - 5),
            false,
            TheoryTag::MulticyclicSquare,
        ),
        4 if gap == 3 => mk(
            class,
            Some("H7"),
            exact(2 * n - 7),
            false,
            TheoryTag::MulticyclicSquare,
        ),
        4 => mk(
            class,
            Some("H0?"),
            span(lb, below8),
            true,
            TheoryTag::MulticyclicSquare,
        ),
        5 if gap == 3 => mk(
            class,
            Some("I6"),
            exact(2 * n - 7),
            false,
            TheoryTag::MulticyclicPentagon,
        ),
        5 => mk(
            class,
            Some("I0?"),
            span(lb, below8),
            true,
            TheoryTag::MulticyclicPentagon,
        ),
        6 if gap == 3 => mk(
            class,
            Some("J2"),
            exact(2 * n - 7),
            false,
            TheoryTag::MulticyclicLong,
        ),
        _ => mk(
            class,
            None,
            span(lb, below9),
            false,
            TheoryTag::MulticyclicLong,
        ),
    })
}

fn unicyclic_claim(g: &Graph, d: &UnicyclicDecomposition, lb: usize, j: usize) -> Claim {
    let n = g.n();
    let l = d.len();
    let nt = d.nontrivial();
    let s = nt.len();
    if s == 0 {
        return Claim {
            class: CoarseClass::Cycle { n },
            family: None,
            value: exact(cycle_trc(n).expect("n >= 3")),
            primed: false,
            tag: TheoryTag::CycleTable,
        };
    }
    if s == 1 && is_path_from_root(g, &d.components[nt[0]]) {
        let tail = d.components[nt[0]].vertices.count_ones() as usize - 1;
        return Claim {
            class: CoarseClass::BEll { l, tail },
            family: Some(format!("B{l}")),
            value: exact(b_ell_trc(l, n).expect("tail present")),
            primed: false,
            tag: TheoryTag::BEllFormula,
        };
    }
    let trivial: Vec<usize> = (0..l).filter(|i| !nt.contains(i)).collect();
    let adjacent = match (s, l - s) {
        (2, _) => d.adjacent_on_cycle(nt[0], nt[1]),
        (_, 2) => d.adjacent_on_cycle(trivial[0], trivial[1]),
        _ => false,
    };
    let class = CoarseClass::Unicyclic {
        l,
        nontrivial: nt.clone(),
        leaves: j,
        adjacent,
    };
    let two = 2 * n;
    let below9 = two.saturating_sub(9);
    let mut primed = false;
    let (family, value, tag): (String, (usize, usize), TheoryTag) = match l {
        3 => {
            // the trees attached to a triangle cost at most n + n' - 3
            let cap = two - j - 3;
            let (value, p) = match (s, j) {
                (1, 2) => (exact(two - 6), false),
                (1, 3) => (span(two - 8, two - 7), true),
                (1, _) => (span(two - j - 5, below9.min(two - j - 4)), false),
                (2, 2) => (exact(two - 5), false),
                (2, 3) => (exact(two - 6), false),
                (2, 4) => (span(two - 8, two - 7), true),
                (2, 5) => (span(lb, two - 8), true),
                (2, _) => (span(lb, below9), false),
                _ => (exact(cap), false),
            };
            primed = p;
            let value = (value.0, value.1.min(cap));
            (format!("G{s}^{j}"), value, TheoryTag::UnicyclicTriangle)
        }
        4 => {
            let cap = two - j - 3;
            let (name, value, p) = match s {
                1 => (
                    "H1",
                    match j {
                        2 => span(two - 8, two - 7),
                        3 => span(lb, two - 8),
                        _ => span(lb, below9),
                    },
                    j == 2 || j == 3,
                ),
                2 if adjacent => (
                    "H2",
                    match j {
                        2 => exact(two - 7),
                        3 => exact(two - 8),
                        _ => span(lb, below9),
                    },
                    false,
                ),
                2 => (
                    "H3",
                    match j {
                        2 => exact(two - 5),
                        3 => span(two - 8, two - 7),
                        4 => span(lb, two - 8),
                        _ => span(lb, below9),
                    },
                    j == 3 || j == 4,
                ),
                3 => {
                    // the two trees next to the trivial one are interchangeable
                    let t = trivial[0];
                    let wide_next_to_trivial = nt
                        .iter()
                        .any(|&i| d.adjacent_on_cycle(i, t) && d.components[i].leaf_count == 2);
                    (
                        "H4",
                        match j {
                            3 => exact(two - 7),
                            4 if wide_next_to_trivial => exact(two - 8),
                            _ => span(lb, below9),
                        },
                        false,
                    )
                }
                _ => (
                    "H5",
                    match j {
                        4 => exact(two - 7),
                        _ => span(lb, below9),
                    },
                    false,
                ),
            };
            primed = p;
            let value = (value.0, value.1.min(cap));
            (format!("{name}^{j}"), value, TheoryTag::UnicyclicSquare)
        }
        5 => {
            let (name, value) = match s {
                1 => (
                    "I1",
                    if j == 2 {
                        exact(two - 8)
                    } else {
                        span(lb, below9)
                    },
                ),
                2 if !adjacent => (
                    "I2",
                    match j {
                        2 => exact(two - 7),
                        3 => exact(two - 8),
                        _ => span(lb, below9),
                    },
                ),
                2 => (
                    "I3",
                    if j == 2 {
                        exact(two - 8)
                    } else {
                        span(lb, below9)
                    },
                ),
                3 if adjacent => (
                    "I4",
                    if j == 3 {
                        exact(two - 8)
                    } else {
                        span(lb, below9)
                    },
                ),
                3 => ("I5", span(lb, below9)),
                _ => ("I", span(lb, below9)),
            };
            (format!("{name}^{j}"), value, TheoryTag::UnicyclicPentagon)
        }
        _ => {
            if l == 6 && s == 2 && diameter(g) == n - 3 {
                ("J1".to_string(), exact(two - 7), TheoryTag::UnicyclicLong)
            } else {
                (format!("U{l}"), span(lb, below9), TheoryTag::UnicyclicLong)
            }
        }
    };
    Claim {
        class,
        family: Some(family),
        value,
        primed,
        tag,
    }
}

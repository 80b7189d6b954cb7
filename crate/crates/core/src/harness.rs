use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::TrcCache;
use crate::classifier::trc;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::solver::{Budget, Method, TrcResult, TrcValue};
use crate::structure::{diameter, is_double_star, spanning_double_star};

/// Right-hand side of `trc(G) + trc(co-G) <= bound` for co-connected pairs.
pub fn ng_bound(n: usize) -> Result<usize> {
    match n {
        0..=3 => Err(Error::InvalidParameters(format!(
            "no nontrivial pair of connected complementary graphs on {n} vertices"
        ))),
        4 => Ok(10),
        5 => Ok(11),
        _ => Ok(2 * n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NGRecord {
    pub graph6: String,
    pub n: usize,
    pub trc_g: TrcValue,
    pub trc_gbar: TrcValue,
    pub sum: TrcValue,
    pub bound: usize,
    pub verdict: Verdict,
    pub method_g: Method,
    pub method_gbar: Method,
    /// Failed structural assertions about the pair; expected empty.
    pub check_failures: Vec<String>,
}

pub const CSV_HEADER: &str = "graph6,n,trc,cotrc,sum,bound,verdict,method";

impl NGRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}/{}",
            self.graph6,
            self.n,
            self.trc_g,
            self.trc_gbar,
            self.sum,
            self.bound,
            self.verdict,
            self.method_g,
            self.method_gbar
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    /// Common order of the scanned graphs; `None` for empty or mixed input.
    pub n: Option<usize>,
    pub scanned: usize,
    pub co_connected: usize,
    /// Largest sum among records with two exact sides.
    pub max_sum: Option<usize>,
    pub argmax: Vec<String>,
    pub violations: Vec<String>,
    pub unknowns: usize,
    pub check_failures: Vec<String>,
    pub malformed: Vec<LineError>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct ScanOptions {
    pub budget: Budget,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}


#[derive(Clone, Debug)]
pub struct ScanOutput {
    pub records: Vec<NGRecord>,
    pub summary: ScanSummary,
}

enum Parsed {
    Graph { key: String, g: Graph },
    Bad(LineError),
}

struct Sides {
    g: (String, Option<TrcResult>),
    gbar: (String, Option<TrcResult>),
}

/// Scans graph6 lines in input order. Pairs where either side is
/// disconnected, and graphs on fewer than four vertices, are counted but
/// produce no record. `cache` is read before and written after the parallel
/// phase, from this thread only.
pub fn ng_scan<I, S>(
    lines: I,
    opts: &ScanOptions,
    mut cache: Option<&mut TrcCache>,
) -> Result<ScanOutput>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let start = Instant::now();
    let parsed: Vec<Parsed> = lines
        .into_iter()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.as_ref().trim();
            if line.is_empty() {
                return None;
            }
            Some(match parse_graph6(line) {
                Ok(g) => Parsed::Graph {
                    key: line.to_string(),
                    g,
                },
                Err(e) => Parsed::Bad(LineError {
                    line: i + 1,
                    message: e.to_string(),
                }),
            })
        })
        .collect();

    let mut summary = ScanSummary::default();
    let mut work: Vec<(String, Graph, Graph, Sides)> = Vec::new();
    let mut orders = std::collections::BTreeSet::new();
    for p in parsed {
        match p {
            Parsed::Bad(e) => summary.malformed.push(e),
            Parsed::Graph { key, g } => {
                summary.scanned += 1;
                orders.insert(g.n());
                let gbar = g.complement();
                if g.n() < 4 || !g.is_connected() || !gbar.is_connected() {
                    continue;
                }
                let co_key = emit_graph6(&gbar);
                let lookup = |k: &str| cache.as_ref().and_then(|c| c.get_exact(k).cloned());
                let sides = Sides {
                    g: (key.clone(), lookup(&key)),
                    gbar: (co_key.clone(), lookup(&co_key)),
                };
                work.push((key, g, gbar, sides));
            }
        }
    }
    if orders.len() == 1 {
        summary.n = orders.into_iter().next();
    }

    let solve = |g: &Graph, cached: &Option<TrcResult>| -> Result<(TrcResult, bool)> {
        match cached {
            Some(r) => Ok((r.clone(), false)),
            None => trc(g, &opts.budget).map(|r| (r, true)),
        }
    };
    let run = || -> Vec<Result<((TrcResult, bool), (TrcResult, bool))>> {
        work.par_iter()
            .map(|(_, g, gbar, sides)| Ok((solve(g, &sides.g.1)?, solve(gbar, &sides.gbar.1)?)))
            .collect()
    };
    let results = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut records = Vec::with_capacity(work.len());
    for ((key, g, gbar, sides), res) in work.iter().zip(results) {
        let ((rg, fresh_g), (rb, fresh_b)) = res?;
        if let Some(c) = cache.as_deref_mut() {
            if fresh_g {
                c.put(&sides.g.0, rg.clone())?;
            }
            if fresh_b {
                c.put(&sides.gbar.0, rb.clone())?;
            }
        }
        let rec = record(key, g, gbar, &rg, &rb)?;
        summary.co_connected += 1;
        match rec.verdict {
            Verdict::Violated => summary.violations.push(key.clone()),
            Verdict::Unknown => summary.unknowns += 1,
            Verdict::Holds => {}
        }
        for f in &rec.check_failures {
            summary.check_failures.push(format!("{key}: {f}"));
        }
        if let Some(s) = rec.sum.exact() {
            match summary.max_sum {
                Some(m) if m > s => {}
                Some(m) if m == s => summary.argmax.push(key.clone()),
                _ => {
                    summary.max_sum = Some(s);
                    summary.argmax = vec![key.clone()];
                }
            }
        }
        records.push(rec);
    }
    summary.elapsed_ms = start.elapsed().as_millis();
    Ok(ScanOutput { records, summary })
}

fn record(key: &str, g: &Graph, gbar: &Graph, rg: &TrcResult, rb: &TrcResult) -> Result<NGRecord> {
    let n = g.n();
    let bound = ng_bound(n)?;
    let sum = TrcValue::from_range(rg.value.lo() + rb.value.lo(), rg.value.hi() + rb.value.hi());
    let verdict = match sum.exact() {
        Some(s) if s > bound => Verdict::Violated,
        _ if sum.hi() <= bound => Verdict::Holds,
        _ => Verdict::Unknown,
    };
    let mut check_failures = pair_checks(g, gbar, rb.value);
    check_failures.extend(pair_checks(gbar, g, rg.value));
    Ok(NGRecord {
        graph6: key.to_string(),
        n,
        trc_g: rg.value,
        trc_gbar: rb.value,
        sum,
        bound,
        verdict,
        method_g: rg.method,
        method_gbar: rb.method,
        check_failures,
    })
}

/// Diameter facts for a co-connected pair, seen from `g`; `co_trc` is the
/// value computed for the complement.
fn pair_checks(g: &Graph, gbar: &Graph, co_trc: TrcValue) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.n();
    let d = diameter(g);
    if d > 3 && diameter(gbar) != 2 {
        out.push(format!(
            "diam {d} but complement has diam {}",
            diameter(gbar)
        ));
    }
    if d == 3 {
        if spanning_double_star(gbar).is_none() {
            out.push("diam 3 but complement has no spanning double star".into());
        }
        if co_trc.lo() > n + 1 {
            out.push(format!("diam 3 but complement trc {co_trc} exceeds n + 1"));
        }
        if co_trc.exact() == Some(n + 1) && !is_double_star(gbar) {
            out.push("complement attains n + 1 without being a double star".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_by_order() {
        assert_eq!(ng_bound(4).unwrap(), 10);
        assert_eq!(ng_bound(5).unwrap(), 11);
        assert_eq!(ng_bound(6).unwrap(), 12);
        assert!(ng_bound(3).is_err());
    }

    #[test]
    fn p4_pair_and_malformed_lines() {
        // P4 twice, a bad header, a disconnected graph
        let lines = ["CR", "", "~~", "C?", "CR"];
        let out = ng_scan(lines, &ScanOptions::default(), None).unwrap();
        assert_eq!(out.summary.malformed.len(), 1);
        assert_eq!(out.summary.malformed[0].line, 3);
        assert_eq!(out.summary.scanned, 3);
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.summary.max_sum, Some(10));
        assert_eq!(
            out.records[0].csv_line(),
            "CR,4,5,5,10,10,holds,theory/theory"
        );
        assert!(out.summary.check_failures.is_empty());
    }

    #[test]
    fn order_is_independent_of_workers() {
        let text = crate::fixtures::graph_lines(5).unwrap();
        let one = ng_scan(
            text.lines(),
            &ScanOptions {
                jobs: Some(1),
                ..Default::default()
            },
            None,
        )
        .unwrap();
        let four = ng_scan(
            text.lines(),
            &ScanOptions {
                jobs: Some(4),
                ..Default::default()
            },
            None,
        )
        .unwrap();
        assert_eq!(one.records, four.records);
    }

    #[test]
    fn cache_round_trip_through_scan() {
        let mut cache = TrcCache::in_memory();
        let text = crate::fixtures::graph_lines(5).unwrap();
        let first = ng_scan(text.lines(), &ScanOptions::default(), Some(&mut cache)).unwrap();
        assert!(!cache.is_empty());
        let second = ng_scan(text.lines(), &ScanOptions::default(), Some(&mut cache)).unwrap();
        assert_eq!(first.records, second.records);
    }
}

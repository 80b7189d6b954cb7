//! Total-rainbow connection numbers of small graphs: structural bounds,
//! exact search, explicit colorings for the known extremal families, a
//! theory-backed classifier and a Nordhaus–Gaddum scan harness.

pub mod cache;
pub mod classifier;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod solver;
pub mod structure;
pub mod upper;

pub use cache::TrcCache;
pub use classifier::{
    classify, summary_line, trc, trc_by_theory, trc_with_report, ClassReport, CoarseClass,
    TheoryTag,
};
pub use coloring::{
    find_total_rainbow_path, is_total_rainbow_path, is_trc_coloring, verify_trc,
    verify_trc_with_paths, Color, PairPath, TotalColoring, VerifyReport,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use graph6::{emit_graph6, parse_graph6};
pub use harness::{ng_bound, ng_scan, NGRecord, ScanOptions, ScanOutput, ScanSummary, Verdict};
pub use solver::{
    bounds, find_coloring, lower_bound, solve_trc, solve_trc_with, BoundReport, Budget,
    Feasibility, LowerBound, Method, SolverConfig, TrcResult, TrcValue, UpperBound, UpperSource,
};
pub use structure::{structural_profile, StructuralProfile};
pub use upper::upper_bound;

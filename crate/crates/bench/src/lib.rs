//! Shared inputs for the criterion benches in `benches/`.

use trc_core::constructions::{generate, FamilySpec};
use trc_core::Graph;

pub fn cycle(n: usize) -> Graph {
    generate(&FamilySpec::Cycle(n)).expect("valid cycle")
}

pub fn co_path(n: usize) -> Graph {
    generate(&FamilySpec::Path(n))
        .expect("valid path")
        .complement()
}

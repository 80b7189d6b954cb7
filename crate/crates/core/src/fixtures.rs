//! Bundled graph6 lists: every graph on `n <= 7` vertices and every tree on
//! `n <= 8` vertices, one isomorphism class per line.

use crate::error::Result;
use crate::graph::Graph;
use crate::graph6::parse_graph6;

const GRAPHS: [&str; 7] = [
    include_str!("../fixtures/graphs_n1.g6"),
    include_str!("../fixtures/graphs_n2.g6"),
    include_str!("../fixtures/graphs_n3.g6"),
    include_str!("../fixtures/graphs_n4.g6"),
    include_str!("../fixtures/graphs_n5.g6"),
    include_str!("../fixtures/graphs_n6.g6"),
    include_str!("../fixtures/graphs_n7.g6"),
];

const TREES: [&str; 8] = [
    include_str!("../fixtures/trees_n1.g6"),
    include_str!("../fixtures/trees_n2.g6"),
    include_str!("../fixtures/trees_n3.g6"),
    include_str!("../fixtures/trees_n4.g6"),
    include_str!("../fixtures/trees_n5.g6"),
    include_str!("../fixtures/trees_n6.g6"),
    include_str!("../fixtures/trees_n7.g6"),
    include_str!("../fixtures/trees_n8.g6"),
];

pub const MAX_GRAPH_ORDER: usize = GRAPHS.len();
pub const MAX_TREE_ORDER: usize = TREES.len();

/// Raw graph6 text of all graphs on `n` vertices.
pub fn graph_lines(n: usize) -> Option<&'static str> {
    GRAPHS.get(n.checked_sub(1)?).copied()
}

pub fn tree_lines(n: usize) -> Option<&'static str> {
    TREES.get(n.checked_sub(1)?).copied()
}

pub fn graphs(n: usize) -> Result<Vec<Graph>> {
    parse_all(graph_lines(n).unwrap_or(""))
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

pub fn trees(n: usize) -> Result<Vec<Graph>> {
    parse_all(tree_lines(n).unwrap_or(""))
}

fn parse_all(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_enumerations() {
        let all: Vec<usize> = (1..=7).map(|n| graphs(n).unwrap().len()).collect();
        assert_eq!(all, [1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=7)
            .map(|n| connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(conn, [1, 1, 2, 6, 21, 112, 853]);
        let t: Vec<usize> = (1..=8).map(|n| trees(n).unwrap().len()).collect();
        assert_eq!(t, [1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(graph_lines(0).is_none() && graph_lines(8).is_none());
    }
}

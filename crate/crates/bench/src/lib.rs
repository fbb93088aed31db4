//! Fixture loading shared by the benchmarks in `benches/`.

use dessin_core::{parse_bipartite, parse_plain, BipartiteGraph, PlainGraph};

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn bipartite(name: &str) -> BipartiteGraph {
    parse_bipartite(&fixture_text(name)).expect("fixture parses")
}

pub fn plain(name: &str) -> PlainGraph {
    parse_plain(&fixture_text(name)).expect("fixture parses")
}

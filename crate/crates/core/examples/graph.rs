//! Propagation graph as DOT.
//!
//!     cargo run --example graph -- corpus/counter.smala | dot -Tsvg > counter.svg

use smalite::analysis::{analyze, AnalysisOptions};

fn main() {
    let file = std::env::args().nth(1).unwrap_or_else(|| "corpus/counter.smala".into());
    let prog = smalite::surface::elaborate_source(&std::fs::read_to_string(&file).expect("readable program"))
        .expect("valid program");
    print!("{}", analyze(&prog, AnalysisOptions::default()).graph.to_dot());
}

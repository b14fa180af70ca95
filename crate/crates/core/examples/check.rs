//! Static checks, with and without constant-condition pruning.
//!
//!     cargo run --example check -- corpus/counter.smala

use smalite::analysis::{analyze, AnalysisOptions};
use smalite::surface::elaborate_source;

fn main() {
    let file = std::env::args().nth(1).unwrap_or_else(|| "corpus/counter.smala".into());
    let prog = elaborate_source(&std::fs::read_to_string(&file).expect("readable program")).expect("valid program");
    for prune in [true, false] {
        let a = analyze(&prog, AnalysisOptions { prune });
        println!("prune={} pruned_edges={} diagnostics={}", prune, a.pruned.len(), a.diagnostics.len());
        for (from, to) in &a.pruned {
            println!("  pruned {} -> {}", from, to);
        }
        for d in &a.diagnostics {
            println!("  {}", d);
        }
    }
}

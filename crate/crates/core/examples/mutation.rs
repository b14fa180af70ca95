//! A scheduler that ignores data dependencies is caught by the
//! differential harness, and the failing pair is shrunk.

use smalite::difftest::{compile_mutant, find_counterexample, GenConfig};
use smalite::print::core_to_string;
use smalite::trace::render_trace;

fn main() {
    let Some((root, trace)) = find_counterexample(0, 500, &GenConfig::default(), compile_mutant) else {
        println!("no counterexample in 500 pairs");
        std::process::exit(1);
    };
    print!("{}--- trace\n{}", core_to_string(&root), render_trace(&trace));
}

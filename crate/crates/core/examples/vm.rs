//! Runs a trace on the compiled object and checks the dump against the
//! reference interpreter.
//!
//!     cargo run --example vm -- corpus/counter.smala corpus/counter.evt

use smalite::compiler::compile;
use smalite::surface::elaborate_source;
use smalite::trace::{interp_dump, parse_trace};
use smalite::vm::vm_dump;

fn main() {
    let mut args = std::env::args().skip(1);
    let program = args.next().unwrap_or_else(|| "corpus/counter.smala".into());
    let trace = args.next().unwrap_or_else(|| "corpus/counter.evt".into());
    let prog = elaborate_source(&std::fs::read_to_string(&program).expect("readable program")).expect("valid program");
    let events = parse_trace(&std::fs::read_to_string(&trace).expect("readable trace")).expect("valid trace");
    let ir = compile(&prog).expect("program passes the checks");
    let vm = vm_dump(&ir, &events);
    print!("{}", vm);
    if vm != interp_dump(&prog, &events) {
        eprintln!("interpreter disagrees");
        std::process::exit(1);
    }
}

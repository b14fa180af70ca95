//! Runs the reference interpreter over an event trace and prints the
//! state dump.
//!
//!     cargo run --example interp -- corpus/counter.smala corpus/counter.evt

use std::process::ExitCode;

use smalite::surface::elaborate_source;
use smalite::trace::{interp_dump, parse_trace};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [program, trace] = args.as_slice() else {
        eprintln!("usage: interp <program.smala> <trace.evt>");
        return ExitCode::from(2);
    };
    let prog = match elaborate_source(&std::fs::read_to_string(program).expect("readable program")) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}: {}", program, e);
            return ExitCode::FAILURE;
        }
    };
    let events = match parse_trace(&std::fs::read_to_string(trace).expect("readable trace")) {
        Ok(evs) => evs,
        Err(e) => {
            eprintln!("{}: {}", trace, e);
            return ExitCode::from(2);
        }
    };
    print!("{}", interp_dump(&prog, &events));
    ExitCode::SUCCESS
}

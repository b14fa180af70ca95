//! Compiles a program to C99 on stdout.
//!
//!     cargo run --example emit_c -- corpus/counter.smala > counter.c
//!     cc -std=c99 -o counter counter.c -lm && ./counter corpus/counter.evt

use std::process::ExitCode;

fn main() -> ExitCode {
    let Some(file) = std::env::args().nth(1) else {
        eprintln!("usage: emit_c <program.smala>");
        return ExitCode::from(2);
    };
    let src = std::fs::read_to_string(&file).expect("readable program");
    let prog = match smalite::surface::elaborate_source(&src) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}: {}", file, e);
            return ExitCode::FAILURE;
        }
    };
    match smalite::compiler::compile(&prog) {
        Ok(ir) => {
            print!("{}", smalite::compiler::emit_c(&ir));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::FAILURE
        }
    }
}

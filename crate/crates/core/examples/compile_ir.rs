//! Compiles a program and prints the object: fields, flags and one
//! scheduled method per external event.
//!
//!     cargo run --example compile_ir -- corpus/counter.smala

fn main() {
    let file = std::env::args().nth(1).unwrap_or_else(|| "corpus/counter.smala".into());
    let prog = smalite::surface::elaborate_source(&std::fs::read_to_string(&file).expect("readable program"))
        .expect("valid program");
    match smalite::compiler::compile(&prog) {
        Ok(ir) => print!("{}", smalite::compiler::ir_to_string(&ir)),
        Err(e) => {
            eprintln!("{}", e);
            std::process::exit(1);
        }
    }
}

//! Prints the core tree a surface program elaborates to.
//!
//!     cargo run --example elaborate -- corpus/counter.smala

fn main() {
    let file = std::env::args().nth(1).unwrap_or_else(|| "corpus/counter.smala".into());
    let src = std::fs::read_to_string(&file).expect("readable program");
    match smalite::surface::elaborate_to_core(&src) {
        Ok(core) => print!("{}", smalite::print::core_to_string(&core)),
        Err(e) => {
            eprintln!("{}: {}", file, e);
            std::process::exit(1);
        }
    }
}

use std::io::{self, BufWriter};
use std::panic;
use std::process::ExitCode;

use smalite::cli::{main_with, EXIT_INTERNAL};

fn main() -> ExitCode {
    let code = panic::catch_unwind(|| {
        let stdin = io::stdin();
        let mut out = BufWriter::new(io::stdout());
        main_with(std::env::args(), &mut stdin.lock(), &mut out, &mut io::stderr())
    })
    .unwrap_or(EXIT_INTERNAL);
    ExitCode::from(code as u8)
}

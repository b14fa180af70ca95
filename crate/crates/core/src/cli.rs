//! The `smalite` command line.
//!
//! Exit codes: 0 success, 1 diagnostics or failed checks, 2 usage,
//! 70 internal error.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path as FsPath, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::analysis::{analyze, AnalysisOptions};
use crate::compiler::{compile_analyzed, emit_c, ir_to_string, CompileError};
use crate::difftest::{run_campaign, GenConfig};
use crate::print::core_to_string;
use crate::program::Program;
use crate::semantics::Interpreter;
use crate::surface::{elaborate_source, FrontendError};
use crate::trace::{interp_dump, parse_trace, Dump};
use crate::vm::vm_dump;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "smalite", version, about = "Smalite checker, interpreter and compiler")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Source program.
    pub file: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the static checks and print diagnostics.
    Check {
        #[command(flatten)]
        input: Input,
        /// Keep edges guarded by constant-false conditions.
        #[arg(long)]
        no_prune: bool,
    },
    /// Run a trace through the reference interpreter.
    Interp {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Compile; prints the IR when no emit flag is given.
    Compile {
        #[command(flatten)]
        input: Input,
        /// Write the elaborated core tree (`-` for stdout).
        #[arg(long, value_name = "FILE")]
        emit_core: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        emit_ir: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        emit_c: Option<PathBuf>,
    },
    /// Run a trace through the compiled object.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Read `trigger`/`assign` lines and print the state after each reaction.
    Repl {
        #[command(flatten)]
        input: Input,
    },
    /// Print the propagation graph as DOT.
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        no_prune: bool,
    },
    /// Compare interpreter and compiled object on generated programs.
    Difftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Write a JUnit XML report.
        #[arg(long, value_name = "FILE")]
        junit: Option<PathBuf>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Diagnostics(String),
    Internal(String),
}

type Outcome = Result<(), Failure>;

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn load(input: &Input) -> Result<Program, Failure> {
    let src = read(&input.file)?;
    elaborate_source(&src).map_err(|e: FrontendError| Failure::Diagnostics(format!("{}: {}", input.file.display(), e)))
}

fn load_trace(path: &FsPath) -> Result<Vec<crate::ast::Event>, Failure> {
    parse_trace(&read(path)?).map_err(|e| Failure::Diagnostics(format!("{}: {}", path.display(), e)))
}

fn write_to(io: &mut Io, target: &FsPath, text: &str) -> Outcome {
    if target.as_os_str() == "-" {
        io.out.write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string()))
    } else {
        fs::write(target, text).map_err(|e| Failure::Usage(format!("cannot write {}: {}", target.display(), e)))
    }
}

fn put(io: &mut Io, text: &str) -> Outcome {
    io.out.write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string()))
}

fn compile_checked(prog: &Program, io: &mut Io) -> Result<crate::compiler::IrObject, Failure> {
    let analysis = analyze(prog, AnalysisOptions::default());
    for d in &analysis.diagnostics {
        let _ = writeln!(io.err, "{}", d);
    }
    match compile_analyzed(prog, &analysis) {
        Ok(ir) => Ok(ir),
        Err(CompileError::Rejected(_)) => Err(Failure::Diagnostics(String::new())),
        Err(e) => Err(Failure::Internal(e.to_string())),
    }
}

fn execute(cmd: Command, stdin: &mut dyn BufRead, io: &mut Io) -> Outcome {
    match cmd {
        Command::Check { input, no_prune } => {
            let prog = load(&input)?;
            let analysis = analyze(&prog, AnalysisOptions { prune: !no_prune });
            for d in &analysis.diagnostics {
                put(io, &format!("{}\n", d))?;
            }
            if analysis.has_errors() {
                return Err(Failure::Diagnostics(String::new()));
            }
            Ok(())
        }
        Command::Interp { input, trace } => {
            let prog = load(&input)?;
            let events = load_trace(&trace)?;
            put(io, &interp_dump(&prog, &events))
        }
        Command::Compile { input, emit_core, emit_ir, emit_c: emit_c_to } => {
            let prog = load(&input)?;
            if let Some(target) = &emit_core {
                write_to(io, target, &core_to_string(prog.root()))?;
            }
            let ir = compile_checked(&prog, io)?;
            if let Some(target) = &emit_ir {
                write_to(io, target, &ir_to_string(&ir))?;
            }
            if let Some(target) = &emit_c_to {
                write_to(io, target, &emit_c(&ir))?;
            }
            if emit_core.is_none() && emit_ir.is_none() && emit_c_to.is_none() {
                put(io, &ir_to_string(&ir))?;
            }
            Ok(())
        }
        Command::Run { input, trace } => {
            let prog = load(&input)?;
            let events = load_trace(&trace)?;
            let ir = compile_checked(&prog, io)?;
            put(io, &vm_dump(&ir, &events))
        }
        Command::Repl { input } => repl(&load(&input)?, stdin, io),
        Command::Graph { input, no_prune } => {
            let prog = load(&input)?;
            put(io, &analyze(&prog, AnalysisOptions { prune: !no_prune }).graph.to_dot())
        }
        Command::Difftest { seed, count, junit } => {
            let report = run_campaign(seed, count, &GenConfig { seed, ..GenConfig::default() });
            put(io, &report.summary())?;
            for o in report.failures() {
                put(io, &format!("pair {}\n{}", o.index, o.failure.as_deref().unwrap_or("")))?;
            }
            if let Some(path) = junit {
                write_to(io, &path, &report.junit())?;
            }
            if report.passes() != report.pairs() {
                return Err(Failure::Diagnostics(String::new()));
            }
            Ok(())
        }
    }
}

/// Rejected events are reported and leave the state unchanged.
fn repl(prog: &Program, stdin: &mut dyn BufRead, io: &mut Io) -> Outcome {
    let interp = Interpreter::new(prog);
    let Ok(mut state) = interp.init() else {
        let mut d = Dump::new();
        d.init_error();
        return put(io, &d.finish());
    };
    let mut d = Dump::new();
    d.init(&state);
    put(io, &d.finish())?;
    let mut index = 0;
    let mut line = String::new();
    loop {
        line.clear();
        if stdin.read_line(&mut line).map_err(|e| Failure::Internal(e.to_string()))? == 0 {
            return Ok(());
        }
        let events = match parse_trace(&line) {
            Ok(evs) => evs,
            Err(e) => {
                let _ = writeln!(io.err, "{}", e.message);
                continue;
            }
        };
        for ev in events {
            let mut d = Dump::new();
            match interp.react(&state, &ev) {
                Ok(out) => {
                    d.reaction(index, &ev, &out.state, &out.emitted);
                    state = out.state;
                    index += 1;
                }
                Err(e) => {
                    d.failure(index, &ev, e.kind());
                    let _ = writeln!(io.err, "{}", e);
                }
            }
            put(io, &d.finish())?;
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with(
    args: impl IntoIterator<Item = String>,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { out, err };
    match execute(cli.command, stdin, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Diagnostics(m) => (EXIT_DIAGNOSTICS, m),
                Failure::Internal(m) => (EXIT_INTERNAL, format!("internal error: {}", m)),
            };
            if !msg.is_empty() {
                let _ = writeln!(io.err, "{}", msg);
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("smalite").chain(args.iter().copied()).map(String::from);
        let code = main_with(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&[], "").0, EXIT_USAGE);
        assert_eq!(run(&["interp", "x.smala"], "").0, EXIT_USAGE);
        assert_eq!(run(&["check", "/nonexistent/file.smala"], "").0, EXIT_USAGE);
        assert_eq!(run(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn repl_keeps_state_after_a_rejected_event() {
        let dir = std::env::temp_dir().join(format!("smalite-repl-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let file = dir.join("p.smala");
        fs::write(&file, "Component root { Int n 1; Spike s; a: last n + 1 =: n; s -> a }").unwrap();
        let (code, out, _) =
            run(&["repl", file.to_str().unwrap()], "trigger root.s\nassign true root.n\ntrigger root.s\n");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("react 0 trigger root.s\nenv root.n = 2\n"), "{}", out);
        assert!(out.contains("react 1 assign true root.n\nerror inadmissible\n"), "{}", out);
        assert!(out.contains("react 1 trigger root.s\nenv root.n = 3\n"), "{}", out);
    }
}

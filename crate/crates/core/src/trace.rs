//! Event-trace files and the per-reaction state dump.
//!
//! Trace lines are `trigger <path>` or `assign <literal> <path>`; `#`
//! starts a comment. The dump lists, after `init` and after each
//! `react <i> <event>` header, the sorted `env` lines, then the sorted
//! `active` lines, then the sorted `emit` lines. A failing step prints
//! `error <kind>` and ends the dump.

use std::fmt::Write;

use thiserror::Error;

use crate::ast::{Event, Path, Value};
use crate::program::Program;
use crate::semantics::{Activation, Environment, EventSet, Interpreter, ReactState, TraceRun};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TraceError {
    pub line: usize,
    pub message: String,
}

pub fn parse_trace(src: &str) -> Result<Vec<Event>, TraceError> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| TraceError { line: i + 1, message };
        let (verb, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let ev = match verb {
            "trigger" => Event::Trigger(parse_path(rest).ok_or_else(|| err(format!("bad path `{}`", rest)))?),
            "assign" => {
                let (lit, path) = rest
                    .rsplit_once(char::is_whitespace)
                    .ok_or_else(|| err("expected `assign <value> <path>`".into()))?;
                let v = parse_literal(lit.trim()).ok_or_else(|| err(format!("bad value `{}`", lit.trim())))?;
                Event::Assign(v, parse_path(path).ok_or_else(|| err(format!("bad path `{}`", path)))?)
            }
            other => return Err(err(format!("unknown event kind `{}`", other))),
        };
        out.push(ev);
    }
    Ok(out)
}

pub fn render_trace(events: &[Event]) -> String {
    events.iter().map(|e| format!("{}\n", e)).collect()
}

fn parse_path(s: &str) -> Option<Path> {
    Path::parse(s).filter(|p| !p.is_empty())
}

// `#` inside a string literal does not start a comment.
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parses a value written as in source literals.
pub fn parse_literal(s: &str) -> Option<Value> {
    match s {
        "true" => return Some(Value::Bool(true)),
        "false" => return Some(Value::Bool(false)),
        "NaN" => return Some(Value::Double(f64::NAN)),
        "inf" => return Some(Value::Double(f64::INFINITY)),
        "-inf" => return Some(Value::Double(f64::NEG_INFINITY)),
        _ => {}
    }
    if let Some(body) = s.strip_prefix('"').and_then(|b| b.strip_suffix('"')) {
        return unescape(body).map(Value::Str);
    }
    if let Ok(i) = s.parse::<i64>() {
        return Some(Value::Int(i));
    }
    let numeric = s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'));
    if numeric && s.chars().any(|c| c.is_ascii_digit()) {
        return s.parse::<f64>().ok().map(Value::Double);
    }
    None
}

fn unescape(body: &str) -> Option<String> {
    let mut out = String::new();
    let mut chars = body.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => out.push(match chars.next()? {
                'n' => '\n',
                't' => '\t',
                'r' => '\r',
                '"' => '"',
                '\\' => '\\',
                _ => return None,
            }),
            '"' => return None,
            c => out.push(c),
        }
    }
    Some(out)
}

/// Line-oriented state dump shared by the interpreter and the VM.
#[derive(Default)]
pub struct Dump {
    text: String,
}

impl Dump {
    pub fn new() -> Self {
        Dump::default()
    }

    pub fn init(&mut self, state: &ReactState) {
        self.text.push_str("init\n");
        self.state(&state.env, &state.activ, &EventSet::new());
    }

    pub fn init_error(&mut self) {
        self.text.push_str("init\nerror init\n");
    }

    pub fn reaction(&mut self, index: usize, event: &Event, state: &ReactState, emitted: &EventSet) {
        let _ = writeln!(self.text, "react {} {}", index, event);
        self.state(&state.env, &state.activ, emitted);
    }

    pub fn failure(&mut self, index: usize, event: &Event, kind: &str) {
        let _ = writeln!(self.text, "react {} {}\nerror {}", index, event, kind);
    }

    fn state(&mut self, env: &Environment, activ: &Activation, emitted: &EventSet) {
        for (p, v) in env {
            let _ = writeln!(self.text, "env {} = {}", p, v);
        }
        for p in activ {
            let _ = writeln!(self.text, "active {}", p);
        }
        for ev in emitted {
            if let Event::Trigger(p) = ev {
                let _ = writeln!(self.text, "emit trigger {}", p);
            }
        }
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Dump of an interpreter run over `events`.
pub fn dump_run(run: &TraceRun, events: &[Event]) -> String {
    let mut d = Dump::new();
    d.init(&run.init);
    for (i, step) in run.steps.iter().enumerate() {
        d.reaction(i, &events[i], &step.state, &step.emitted);
    }
    if let Some((i, e)) = &run.failure {
        d.failure(*i, &events[*i], e.kind());
    }
    d.finish()
}

/// Interpreter dump of `prog` over `events`, including an init failure.
pub fn interp_dump(prog: &Program, events: &[Event]) -> String {
    match Interpreter::new(prog).run_trace(events) {
        Ok(run) => dump_run(&run, events),
        Err(_) => {
            let mut d = Dump::new();
            d.init_error();
            d.finish()
        }
    }
}

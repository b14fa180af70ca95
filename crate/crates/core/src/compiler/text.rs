//! Canonical IR text, as printed by `compile --emit-ir`.

use std::fmt::Write;

use crate::analysis::Source;
use crate::print::expr_to_string;

use super::{GuardedInstr, Instr, IrObject, Test};

fn test_to_string(t: &Test) -> String {
    match t {
        Test::Flag(p) => format!("flag({})", p),
        Test::WasActive(p) => format!("was_active({})", p),
        Test::WasInactive(p) => format!("was_inactive({})", p),
        Test::Cond(e) => format!("({})", expr_to_string(e)),
    }
}

fn conj(ts: &[Test]) -> String {
    ts.iter().map(test_to_string).collect::<Vec<_>>().join(" && ")
}

pub(crate) fn instr_to_string(gi: &GuardedInstr) -> String {
    let op = match &gi.instr {
        Instr::SetField { target, expr, commit } if commit.is_empty() => {
            format!("set {} := {}", target, expr_to_string(expr))
        }
        Instr::SetField { target, expr, commit } => {
            format!("set {} := {} commit {}", target, expr_to_string(expr), conj(commit))
        }
        Instr::SetParam { target } => format!("set {} := arg", target),
        Instr::SetFlag { target, on } => format!("flag {} := {}", target, if *on { "on" } else { "off" }),
        Instr::EmitTrigger(p) => format!("emit {}", p),
        Instr::EvalGuardOnly(e) => format!("check {}", expr_to_string(e)),
    };
    if gi.guard.is_empty() {
        op
    } else {
        format!("if {}: {}", conj(&gi.guard), op)
    }
}

fn source_header(s: &Source) -> String {
    match s {
        Source::Trigger(p) => format!("method trigger {}", p),
        Source::Assign(p) => format!("method assign {}(arg)", p),
    }
}

pub fn ir_to_string(ir: &IrObject) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "object {}", ir.name);
    for f in &ir.fields {
        let _ = writeln!(out, "field {} {}", f.ty, f.path);
    }
    for (p, on) in &ir.flags {
        let _ = writeln!(out, "flag {} {}", p, if *on { "on" } else { "off" });
    }
    out.push_str("reset\n");
    for f in &ir.fields {
        let _ = writeln!(out, "  set {} := {}", f.path, expr_to_string(&f.init));
    }
    for m in &ir.methods {
        let _ = writeln!(out, "{}", source_header(&m.event));
        for p in &m.snapshot_fields {
            let _ = writeln!(out, "  snapshot {}", p);
        }
        for p in &m.snapshot_flags {
            let _ = writeln!(out, "  snapshot flag {}", p);
        }
        for gi in &m.body {
            let _ = writeln!(out, "  {}", instr_to_string(gi));
        }
    }
    out
}

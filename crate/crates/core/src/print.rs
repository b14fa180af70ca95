//! Canonical textual dump of a core tree.
//!
//! The output is re-readable with [`crate::surface::parse_core`]. Binary
//! operators are fully parenthesized and unary operators always wrap their
//! operand, so the printed form maps back to exactly one tree.

use std::fmt::Write;

use crate::ast::{Expr, Lhs, Process, Rhs, UnOp, Value};

pub fn core_to_string(p: &Process) -> String {
    let mut out = String::new();
    write_process(&mut out, p, 0);
    out
}

pub fn expr_to_string(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

pub fn lhs_to_string(lhs: &Lhs) -> String {
    match lhs {
        Lhs::TriggerOf(p) => format!("T?({})", p),
        Lhs::ActivateOf(p) => format!("A?({})", p),
        Lhs::DeactivateOf(p) => format!("D?({})", p),
        Lhs::ChangeOf(p) => format!("C?({})", p),
        Lhs::Cond(e @ Expr::Binary(..)) => format!("{}?", expr_to_string(e)),
        Lhs::Cond(e) => format!("({})?", expr_to_string(e)),
    }
}

pub fn rhs_to_string(rhs: &Rhs) -> String {
    match rhs {
        Rhs::DoTrigger(p) => format!("T!({})", p),
        Rhs::DoActivate(p) => format!("A!({})", p),
        Rhs::DoDeactivate(p) => format!("D!({})", p),
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_process(out: &mut String, p: &Process, depth: usize) {
    indent(out, depth);
    match p {
        Process::Property { name, ty, init } => {
            let _ = writeln!(out, "{} {} {};", ty, name, expr_to_string(init));
        }
        Process::Spike { name } => {
            let _ = writeln!(out, "Spike {};", name);
        }
        Process::Assignment { name, expr, target } => {
            let _ = writeln!(out, "{}: {} =: {};", name, expr_to_string(expr), target);
        }
        Process::Binding { name, lhs, ia, rhs } => {
            let _ = writeln!(out, "{}: {} -> <{}> {};", name, lhs_to_string(lhs), ia.letter(), rhs_to_string(rhs));
        }
        Process::Component { ia, name, children } => {
            let _ = writeln!(out, "Component<{}> {} {{", ia.letter(), name);
            for c in children {
                write_process(out, c, depth + 1);
            }
            indent(out, depth);
            out.push_str("}\n");
        }
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Const(v) => write_const(out, v),
        Expr::Var(p) => {
            let _ = write!(out, "{}", p);
        }
        Expr::Last(p) => {
            let _ = write!(out, "last {}", p);
        }
        Expr::Unary(op, a) => {
            out.push_str(match op {
                UnOp::Neg => "-(",
                UnOp::Not => "!(",
                UnOp::Str => "str(",
            });
            write_expr(out, a);
            out.push(')');
        }
        Expr::Binary(op, l, r) => {
            out.push('(');
            write_expr(out, l);
            let _ = write!(out, " {} ", op.symbol());
            write_expr(out, r);
            out.push(')');
        }
    }
}

fn write_const(out: &mut String, v: &Value) {
    match v {
        Value::Double(d) if d.is_nan() => out.push_str("(0.0 / 0.0)"),
        Value::Double(d) if d.is_infinite() && *d > 0.0 => out.push_str("(1.0 / 0.0)"),
        Value::Double(d) if d.is_infinite() => out.push_str("(-1.0 / 0.0)"),
        v => {
            let _ = write!(out, "{}", v);
        }
    }
}

//! Constant folding of conditions under a literal assignment.
//!
//! An edge from an assignment `c =: q` to a condition binding is dropped
//! when the condition, with `q` replaced by `c`, is false whatever the other
//! properties hold and cannot fail to evaluate. The read of `q` is kept as a
//! data edge so that scheduling still orders the write first.

use crate::ast::{BinOp, Expr, Lhs, Path, Ty, UnOp, Value};
use crate::ops;
use crate::program::{NodeKind, Program};

use super::graph::{EdgeKind, PropGraph, Vertex};

#[derive(Clone, Debug, PartialEq)]
pub enum Abs {
    Known(Value),
    Unknown { may_error: bool },
}

impl Abs {
    fn may_error(&self) -> bool {
        matches!(self, Abs::Unknown { may_error: true })
    }
}

/// Folds `e` with `q` bound to `c` and every other read left unknown.
pub fn fold(prog: &Program, e: &Expr, q: &Path, c: &Value) -> Abs {
    match e {
        Expr::Const(v) => Abs::Known(v.clone()),
        Expr::Var(p) if p == q => Abs::Known(c.clone()),
        Expr::Var(_) | Expr::Last(_) => Abs::Unknown { may_error: false },
        Expr::Unary(op, a) => match fold(prog, a, q, c) {
            Abs::Known(v) => match ops::apply_unary(*op, &v) {
                Ok(r) => Abs::Known(r),
                Err(_) => Abs::Unknown { may_error: true },
            },
            Abs::Unknown { may_error } => {
                let overflow = *op == UnOp::Neg && prog.typecheck(a).ok() == Some(Ty::Int);
                Abs::Unknown { may_error: may_error || overflow }
            }
        },
        Expr::Binary(op, a, b) => {
            let l = fold(prog, a, q, c);
            let r = fold(prog, b, q, c);
            if let (Abs::Known(x), Abs::Known(y)) = (&l, &r) {
                return match ops::apply_binary(*op, x, y) {
                    Ok(v) => Abs::Known(v),
                    Err(_) => Abs::Unknown { may_error: true },
                };
            }
            // Both operands are always evaluated, so a decided side only
            // decides the whole when the other side cannot fail.
            let absorbing = match op {
                BinOp::And => Some(false),
                BinOp::Or => Some(true),
                _ => None,
            };
            if let Some(z) = absorbing {
                let decided = |s: &Abs| *s == Abs::Known(Value::Bool(z));
                if (decided(&l) && !r.may_error()) || (decided(&r) && !l.may_error()) {
                    return Abs::Known(Value::Bool(z));
                }
            }
            let arith = matches!(op, BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod);
            let int_op = arith && prog.typecheck(a).ok() == Some(Ty::Int);
            Abs::Unknown { may_error: l.may_error() || r.may_error() || int_op }
        }
    }
}

/// Removes provably dead assignment-to-condition edges; returns them.
pub fn prune_constant_conditions(g: &mut PropGraph, prog: &Program) -> Vec<(Vertex, Vertex)> {
    let mut dead = Vec::new();
    for e in g.graph().edge_indices() {
        if g.graph()[e] != EdgeKind::Assign {
            continue;
        }
        let (a, b) = g.graph().edge_endpoints(e).expect("edge exists");
        let (Vertex::Assignment(ap), Vertex::Binding(bp)) = (g.vertex_at(a), g.vertex_at(b)) else {
            continue;
        };
        let Some(NodeKind::Assignment { expr: Expr::Const(c), target }) = prog.get(ap).map(|n| &n.kind) else {
            continue;
        };
        let Some(NodeKind::Binding { lhs: Lhs::Cond(cond), .. }) = prog.get(bp).map(|n| &n.kind) else {
            continue;
        };
        if fold(prog, cond, target, c) == Abs::Known(Value::Bool(false)) {
            dead.push((e, a, b));
        }
    }
    // Remove from the highest index down; petgraph swaps the last edge in.
    dead.sort_by_key(|(e, _, _)| std::cmp::Reverse(e.index()));
    let mut out = Vec::new();
    for (e, a, b) in dead {
        g.remove_edge(e);
        g.add_edge(a, b, EdgeKind::Data);
        out.push((g.vertex_at(a).clone(), g.vertex_at(b).clone()));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::graph::build_prop_graph;
    use crate::surface::elaborate_source;

    fn p(s: &str) -> Path {
        Path::parse(s).unwrap()
    }

    fn cond_of(prog: &Program, path: &str) -> Expr {
        match &prog.get(&p(path)).unwrap().kind {
            NodeKind::Binding { lhs: Lhs::Cond(e), .. } => e.clone(),
            _ => panic!("not a condition binding"),
        }
    }

    #[test]
    fn folding_table() {
        let prog = elaborate_source(
            "Component root { Int n 0; Int m 0; Bool b false; \
             (n < 3) -> x; (n < 3 && m > 0) -> x; (n > 3 || m / 0 > 1) -> x; \
             (m / n > 0 && n < 3) -> x; (n + 1 > 10) -> x; (-m < n) -> x; Spike x }",
        )
        .unwrap();
        let n = p("root.n");
        let three = Value::Int(3);
        let cases = [
            ("root._b0", Abs::Known(Value::Bool(false))),
            ("root._b1", Abs::Known(Value::Bool(false))),
            ("root._b2", Abs::Unknown { may_error: true }),
            ("root._b3", Abs::Unknown { may_error: true }),
            ("root._b4", Abs::Known(Value::Bool(false))),
            ("root._b5", Abs::Unknown { may_error: true }),
        ];
        for (b, want) in cases {
            assert_eq!(fold(&prog, &cond_of(&prog, b), &n, &three), want, "{}", b);
        }
    }

    #[test]
    fn literal_reset_edge_is_pruned() {
        let src = "Component root { Int n 0; Spike go; Spike hit; \
                   rst: 3 =: n; go -> rst; (n < 3) -> hit }";
        let prog = elaborate_source(src).unwrap();
        let mut g = build_prop_graph(&prog);
        let rst = Vertex::Assignment(p("root.rst"));
        let b = Vertex::Binding(p("root._b1"));
        assert!(g.has_edge(&rst, &b, EdgeKind::Assign));
        let removed = prune_constant_conditions(&mut g, &prog);
        assert_eq!(removed, vec![(rst.clone(), b.clone())]);
        assert!(!g.has_edge(&rst, &b, EdgeKind::Assign));
        assert!(g.has_edge(&rst, &b, EdgeKind::Data));
    }
}

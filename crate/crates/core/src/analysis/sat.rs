//! Satisfying sets of single-variable conditions.
//!
//! Only comparisons of one `Int` or `Bool` property against literals,
//! combined with `&&`, `||` and `!`, are understood. Anything else yields
//! `None` and is treated as possibly overlapping.

use crate::ast::{BinOp, Expr, Path, UnOp, Value};

const LO: i128 = i64::MIN as i128;
const HI: i128 = i64::MAX as i128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sat {
    /// Sorted, disjoint, non-adjacent closed intervals.
    Int(Vec<(i128, i128)>),
    /// Bit 0 for `false`, bit 1 for `true`.
    Bool(u8),
}

impl Sat {
    fn int(ivs: Vec<(i128, i128)>) -> Sat {
        Sat::Int(normalize(ivs))
    }

    fn complement(&self) -> Sat {
        match self {
            Sat::Bool(m) => Sat::Bool(!m & 0b11),
            Sat::Int(ivs) => {
                let mut out = Vec::new();
                let mut next = LO;
                for &(a, b) in ivs {
                    if a > next {
                        out.push((next, a - 1));
                    }
                    next = b + 1;
                }
                if next <= HI {
                    out.push((next, HI));
                }
                Sat::Int(out)
            }
        }
    }

    fn intersect(&self, other: &Sat) -> Option<Sat> {
        match (self, other) {
            (Sat::Bool(a), Sat::Bool(b)) => Some(Sat::Bool(a & b)),
            (Sat::Int(a), Sat::Int(b)) => {
                let mut out = Vec::new();
                for &(a0, a1) in a {
                    for &(b0, b1) in b {
                        let (lo, hi) = (a0.max(b0), a1.min(b1));
                        if lo <= hi {
                            out.push((lo, hi));
                        }
                    }
                }
                Some(Sat::int(out))
            }
            _ => None,
        }
    }

    fn union(&self, other: &Sat) -> Option<Sat> {
        match (self, other) {
            (Sat::Bool(a), Sat::Bool(b)) => Some(Sat::Bool(a | b)),
            (Sat::Int(a), Sat::Int(b)) => Some(Sat::int(a.iter().chain(b).copied().collect())),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Sat::Bool(m) => *m == 0,
            Sat::Int(ivs) => ivs.is_empty(),
        }
    }

    pub fn disjoint(&self, other: &Sat) -> bool {
        self.intersect(other).is_some_and(|s| s.is_empty())
    }
}

fn normalize(mut ivs: Vec<(i128, i128)>) -> Vec<(i128, i128)> {
    ivs.retain(|(a, b)| a <= b);
    ivs.sort();
    let mut out: Vec<(i128, i128)> = Vec::new();
    for (a, b) in ivs {
        match out.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// The single property read by `e`, if `e` reads exactly one and uses no
/// `last`.
pub fn single_var(e: &Expr) -> Option<Path> {
    if !e.last_vars().is_empty() {
        return None;
    }
    let vars = e.free_vars();
    if vars.len() == 1 {
        vars.into_iter().next()
    } else {
        None
    }
}

/// Values of `q` making `e` true.
pub fn sat_set(e: &Expr, q: &Path) -> Option<Sat> {
    match e {
        Expr::Var(p) if p == q => Some(Sat::Bool(0b10)),
        Expr::Const(Value::Bool(b)) => Some(if *b { Sat::Bool(0b11) } else { Sat::Bool(0) }),
        Expr::Unary(UnOp::Not, a) => sat_set(a, q).map(|s| s.complement()),
        Expr::Binary(BinOp::And, a, b) => sat_set(a, q)?.intersect(&sat_set(b, q)?),
        Expr::Binary(BinOp::Or, a, b) => sat_set(a, q)?.union(&sat_set(b, q)?),
        Expr::Binary(op, a, b) if op.is_comparison() => match (a.as_ref(), b.as_ref()) {
            (Expr::Var(p), Expr::Const(v)) if p == q => compare(*op, v),
            (Expr::Const(v), Expr::Var(p)) if p == q => compare(flip(*op), v),
            _ => None,
        },
        _ => None,
    }
}

fn flip(op: BinOp) -> BinOp {
    match op {
        BinOp::Lt => BinOp::Gt,
        BinOp::Gt => BinOp::Lt,
        BinOp::Le => BinOp::Ge,
        BinOp::Ge => BinOp::Le,
        other => other,
    }
}

// Set of `x` with `x op v`.
fn compare(op: BinOp, v: &Value) -> Option<Sat> {
    match v {
        Value::Int(k) => {
            let k = *k as i128;
            let ivs = match op {
                BinOp::Eq => vec![(k, k)],
                BinOp::Ne => vec![(LO, k - 1), (k + 1, HI)],
                BinOp::Lt => vec![(LO, k - 1)],
                BinOp::Le => vec![(LO, k)],
                BinOp::Gt => vec![(k + 1, HI)],
                BinOp::Ge => vec![(k, HI)],
                _ => return None,
            };
            Some(Sat::int(ivs))
        }
        Value::Bool(b) => {
            let bit = if *b { 0b10 } else { 0b01 };
            match op {
                BinOp::Eq => Some(Sat::Bool(bit)),
                BinOp::Ne => Some(Sat::Bool(!bit & 0b11)),
                _ => None,
            }
        }
        _ => None,
    }
}

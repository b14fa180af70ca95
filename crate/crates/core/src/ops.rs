//! Host denotations of the unary and binary operators.
//!
//! Integers are 64-bit and never wrap: overflow, division by zero and
//! modulo by zero are evaluation errors. Doubles follow IEEE-754.

use crate::ast::{BinOp, Ty, UnOp, Value};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("integer division by zero")]
    DivisionByZero,
    #[error("integer overflow in `{0}`")]
    Overflow(&'static str),
    #[error("operator `{op}` not defined on {operands}")]
    TypeMismatch { op: &'static str, operands: String },
    #[error("no value bound to `{0}`")]
    Unbound(String),
}

pub fn apply_unary(op: UnOp, v: &Value) -> Result<Value, EvalError> {
    match (op, v) {
        (UnOp::Neg, Value::Int(i)) => i.checked_neg().map(Value::Int).ok_or(EvalError::Overflow("-")),
        (UnOp::Neg, Value::Double(d)) => Ok(Value::Double(-d)),
        (UnOp::Not, Value::Bool(b)) => Ok(Value::Bool(!b)),
        (UnOp::Str, Value::Str(s)) => Ok(Value::Str(s.clone())),
        (UnOp::Str, v) => Ok(Value::Str(v.to_string())),
        (op, v) => Err(EvalError::TypeMismatch { op: unary_symbol(op), operands: v.ty().to_string() }),
    }
}

pub fn unary_symbol(op: UnOp) -> &'static str {
    match op {
        UnOp::Neg => "-",
        UnOp::Not => "!",
        UnOp::Str => "str",
    }
}

pub fn apply_binary(op: BinOp, l: &Value, r: &Value) -> Result<Value, EvalError> {
    use Value::*;
    let res = match (op, l, r) {
        (BinOp::Add, Int(a), Int(b)) => Int(a.checked_add(*b).ok_or(EvalError::Overflow("+"))?),
        (BinOp::Sub, Int(a), Int(b)) => Int(a.checked_sub(*b).ok_or(EvalError::Overflow("-"))?),
        (BinOp::Mul, Int(a), Int(b)) => Int(a.checked_mul(*b).ok_or(EvalError::Overflow("*"))?),
        (BinOp::Div, Int(a), Int(b)) => {
            if *b == 0 {
                return Err(EvalError::DivisionByZero);
            }
            Int(a.checked_div(*b).ok_or(EvalError::Overflow("/"))?)
        }
        (BinOp::Mod, Int(a), Int(b)) => {
            if *b == 0 {
                return Err(EvalError::DivisionByZero);
            }
            Int(a.checked_rem(*b).ok_or(EvalError::Overflow("%"))?)
        }
        (BinOp::Add, Double(a), Double(b)) => Double(a + b),
        (BinOp::Sub, Double(a), Double(b)) => Double(a - b),
        (BinOp::Mul, Double(a), Double(b)) => Double(a * b),
        (BinOp::Div, Double(a), Double(b)) => Double(a / b),
        (BinOp::Mod, Double(a), Double(b)) => Double(a % b),
        (BinOp::Add, Str(a), Str(b)) => Str(format!("{}{}", a, b)),
        (BinOp::And, Bool(a), Bool(b)) => Bool(*a && *b),
        (BinOp::Or, Bool(a), Bool(b)) => Bool(*a || *b),
        (BinOp::Eq, a, b) if a.ty() == b.ty() => Bool(host_eq(a, b)),
        (BinOp::Ne, a, b) if a.ty() == b.ty() => Bool(!host_eq(a, b)),
        (op, a, b) if op.is_comparison() && a.ty() == b.ty() && a.ty() != Ty::Bool => {
            let ord = match (a, b) {
                (Int(x), Int(y)) => x.partial_cmp(y),
                (Double(x), Double(y)) => x.partial_cmp(y),
                (Str(x), Str(y)) => x.partial_cmp(y),
                _ => unreachable!("guarded by type test"),
            };
            Bool(match (op, ord) {
                (_, None) => false,
                (BinOp::Lt, Some(o)) => o.is_lt(),
                (BinOp::Le, Some(o)) => o.is_le(),
                (BinOp::Gt, Some(o)) => o.is_gt(),
                (BinOp::Ge, Some(o)) => o.is_ge(),
                _ => unreachable!(),
            })
        }
        (op, a, b) => {
            return Err(EvalError::TypeMismatch { op: op.symbol(), operands: format!("{} and {}", a.ty(), b.ty()) })
        }
    };
    Ok(res)
}

// `==` on doubles is IEEE equality (NaN != NaN), unlike `Value`'s own Eq.
fn host_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Double(x), Value::Double(y)) => x == y,
        _ => a == b,
    }
}

/// Result type of a unary operator, or `None` if undefined on `arg`.
pub fn unary_type(op: UnOp, arg: Ty) -> Option<Ty> {
    match (op, arg) {
        (UnOp::Neg, Ty::Int | Ty::Double) => Some(arg),
        (UnOp::Not, Ty::Bool) => Some(Ty::Bool),
        (UnOp::Str, _) => Some(Ty::Str),
        _ => None,
    }
}

/// Result type of a binary operator, or `None` if undefined on the operands.
pub fn binary_type(op: BinOp, l: Ty, r: Ty) -> Option<Ty> {
    if l != r {
        return None;
    }
    match op {
        BinOp::Add => matches!(l, Ty::Int | Ty::Double | Ty::Str).then_some(l),
        BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod => matches!(l, Ty::Int | Ty::Double).then_some(l),
        BinOp::Eq | BinOp::Ne => Some(Ty::Bool),
        BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => (l != Ty::Bool).then_some(Ty::Bool),
        BinOp::And | BinOp::Or => (l == Ty::Bool).then_some(Ty::Bool),
    }
}

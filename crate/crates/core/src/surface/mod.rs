//! Concrete syntax: parsing and the three elaboration passes down to the
//! core tree.
//!
//! ```text
//! source --parse--> SProcess --elaborate_names--> --expand_graphical-->
//!        --resolve_and_classify--> Process --Program::new--> Program
//! ```

mod elab;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::ast::{BinOp, InitActivation, Process, Ty, UnOp, Value};
use crate::program::{Program, ProgramError};

pub use elab::{elaborate_names, expand_graphical, resolve_and_classify, GraphicalKind, GRAPHICAL_KINDS};
pub use parser::{parse, parse_core};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{pos}: syntax error: {message}{}", expected_suffix(.expected))]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

impl SyntaxError {
    pub(crate) fn new(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError { pos, message: message.into(), expected: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ElabError {
    pub pos: Pos,
    pub message: String,
}

impl ElabError {
    pub(crate) fn new(pos: Pos, message: impl Into<String>) -> Self {
        ElabError { pos, message: message.into() }
    }
}

/// Any failure between source text and a validated program.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum FrontendError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Elab(#[from] ElabError),
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Relative (or already absolute) dotted path as written.
#[derive(Clone, Debug, PartialEq)]
pub struct SPath {
    pub segments: Vec<String>,
    pub pos: Pos,
}

impl fmt::Display for SPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.segments.join("."))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SExpr {
    Const(Value, Pos),
    Path(SPath),
    Last(SPath),
    Unary(UnOp, Box<SExpr>, Pos),
    Binary(BinOp, Box<SExpr>, Box<SExpr>, Pos),
    Paren(Box<SExpr>),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Const(_, p) | SExpr::Unary(_, _, p) | SExpr::Binary(_, _, _, p) => *p,
            SExpr::Path(sp) | SExpr::Last(sp) => sp.pos,
            SExpr::Paren(e) => e.pos(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SLhs {
    /// `path ->`, classified by the target's kind.
    Path(SPath),
    /// `(e) ->`
    Cond(SExpr),
}

/// Concrete arrow forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    /// `->`
    Plain,
    /// `->!`: the right-hand side is deactivated.
    DeactivateRhs,
    /// `!->`: the left-hand side is a deactivation.
    DeactivateLhs,
    /// `!->!`
    DeactivateBoth,
}

impl Arrow {
    pub fn lhs_deactivation(self) -> bool {
        matches!(self, Arrow::DeactivateLhs | Arrow::DeactivateBoth)
    }

    pub fn rhs_deactivation(self) -> bool {
        matches!(self, Arrow::DeactivateRhs | Arrow::DeactivateBoth)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompKind {
    Component,
    Graphical(GraphicalKind),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SKind {
    Property {
        ty: Ty,
        init: SExpr,
        /// Set on parameters introduced by graphical expansion; their
        /// arguments are resolved in the scope enclosing the component.
        param: bool,
    },
    Spike,
    Assignment {
        expr: SExpr,
        target: SPath,
    },
    Binding {
        lhs: SLhs,
        arrow: Arrow,
        ia: InitActivation,
        rhs: SPath,
    },
    Component {
        kind: CompKind,
        ia: InitActivation,
        args: Vec<SExpr>,
        children: Vec<SProcess>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SProcess {
    /// `None` stands for `_`.
    pub name: Option<String>,
    pub pos: Pos,
    pub kind: SKind,
}

impl SProcess {
    pub fn children(&self) -> &[SProcess] {
        match &self.kind {
            SKind::Component { children, .. } => children,
            _ => &[],
        }
    }
}

/// Runs the whole front end on concrete source text.
pub fn elaborate_source(src: &str) -> Result<Program, FrontendError> {
    let core = elaborate_to_core(src)?;
    Ok(Program::new(core)?)
}

/// Parses and elaborates source text to a core tree without indexing it.
pub fn elaborate_to_core(src: &str) -> Result<Process, FrontendError> {
    let sp = parse(src)?;
    let sp = elaborate_names(sp)?;
    let sp = expand_graphical(sp)?;
    Ok(resolve_and_classify(&sp)?)
}

/// Elaborates `text` as a condition over `root.n` (`Bool` when the text
/// reads `n` as a boolean, `Int` otherwise) and returns the core expression.
#[cfg(test)]
pub(crate) fn parse_expr_for_tests(text: &str) -> crate::ast::Expr {
    use crate::ast::Lhs;
    use crate::program::NodeKind;
    for ty in ["Int", "Bool"] {
        let src = format!(
            "Component root {{ {} n {}; Spike s; ({}) -> s }}",
            ty,
            if ty == "Int" { "0" } else { "false" },
            text
        );
        if let Ok(prog) = elaborate_source(&src) {
            if let Some(NodeKind::Binding { lhs: Lhs::Cond(e), .. }) =
                prog.get(&crate::ast::Path::parse("root._b0").unwrap()).map(|n| &n.kind)
            {
                return e.clone();
            }
        }
    }
    panic!("not a condition over n: {}", text)
}

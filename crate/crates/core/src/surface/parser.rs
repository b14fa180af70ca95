use crate::ast::{BinOp, Expr, InitActivation, Lhs, Path, Process, Rhs, Ty, UnOp, Value};

use super::elab::GraphicalKind;
use super::lexer::{tokenize, Tok, Token};
use super::{Arrow, CompKind, Pos, SExpr, SKind, SLhs, SPath, SProcess, SyntaxError};

/// Parses a surface program: one top-level process, optionally followed by `;`.
pub fn parse(src: &str) -> Result<SProcess, SyntaxError> {
    let mut p = Parser::new(src)?;
    let proc = p.item()?;
    p.eat(&Tok::Semi);
    p.expect_eof()?;
    Ok(proc)
}

/// Reads the canonical core dump produced by [`crate::print::core_to_string`].
pub fn parse_core(src: &str) -> Result<Process, SyntaxError> {
    let mut p = Parser::new(src)?;
    let proc = p.core_process()?;
    p.expect_eof()?;
    Ok(proc)
}

const RESERVED: &[&str] = &["true", "false", "last", "str"];

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: tokenize(src)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            pos: self.pos(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(&[&t.to_string()]))
        }
    }

    fn expect_eof(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) => Some(s),
            _ => None,
        }
    }

    /// `_` or an identifier.
    fn name(&mut self) -> Result<Option<String>, SyntaxError> {
        let s = self.ident()?;
        Ok((s != "_").then_some(s))
    }

    fn path(&mut self) -> Result<SPath, SyntaxError> {
        let pos = self.pos();
        let mut segments = vec![self.ident()?];
        while *self.peek() == Tok::Dot {
            self.bump();
            segments.push(self.ident()?);
        }
        Ok(SPath { segments, pos })
    }

    /// Optional `<a>` / `<d>` marker; absent means active.
    fn init_activation(&mut self) -> Result<InitActivation, SyntaxError> {
        if *self.peek() != Tok::Lt {
            return Ok(InitActivation::Active);
        }
        self.bump();
        let ia = match self.peek_ident() {
            Some("a") => InitActivation::Active,
            Some("d") => InitActivation::Inactive,
            _ => return Err(self.error(&["`a`", "`d`"])),
        };
        self.bump();
        self.expect(&Tok::Gt)?;
        Ok(ia)
    }

    // ---- surface items ----

    fn item(&mut self) -> Result<SProcess, SyntaxError> {
        let pos = self.pos();
        if *self.peek() == Tok::LParen {
            let e = self.expr()?;
            return self.binding_tail(None, pos, e);
        }
        let Some(head) = self.peek_ident().map(str::to_owned) else {
            return Err(self.error(&["item"]));
        };
        let next_is_ident = matches!(self.peek_at(1), Tok::Ident(_));
        if let (Some(ty), true) = (Ty::from_keyword(&head), next_is_ident) {
            self.bump();
            let name = self.name()?;
            let init = self.expr()?;
            return Ok(SProcess { name, pos, kind: SKind::Property { ty, init, param: false } });
        }
        if head == "Spike" && next_is_ident {
            self.bump();
            let name = self.name()?;
            return Ok(SProcess { name, pos, kind: SKind::Spike });
        }
        if let Some(kind) = comp_kind(&head) {
            return self.component(kind);
        }
        if *self.peek_at(1) == Tok::Colon {
            let name = self.name()?;
            self.bump();
            let e = self.expr()?;
            if self.eat(&Tok::AssignTo) {
                let target = self.path()?;
                return Ok(SProcess { name, pos, kind: SKind::Assignment { expr: e, target } });
            }
            return self.binding_tail(name, pos, e);
        }
        let e = self.expr()?;
        self.binding_tail(None, pos, e)
    }

    fn binding_tail(&mut self, name: Option<String>, pos: Pos, e: SExpr) -> Result<SProcess, SyntaxError> {
        let arrow = match self.peek() {
            Tok::Arrow => Arrow::Plain,
            Tok::ArrowBang => Arrow::DeactivateRhs,
            Tok::BangArrow => Arrow::DeactivateLhs,
            Tok::BangArrowBang => Arrow::DeactivateBoth,
            _ => return Err(self.error(&["`->`", "`->!`", "`!->`", "`!->!`", "`=:`"])),
        };
        self.bump();
        let lhs = match e {
            SExpr::Path(p) => SLhs::Path(p),
            SExpr::Paren(inner) => SLhs::Cond(*inner),
            other => {
                return Err(SyntaxError::new(other.pos(), "binding source must be a path or a parenthesized condition"))
            }
        };
        let ia = self.init_activation()?;
        let rhs = self.path()?;
        Ok(SProcess { name, pos, kind: SKind::Binding { lhs, arrow, ia, rhs } })
    }

    fn component(&mut self, kind: CompKind) -> Result<SProcess, SyntaxError> {
        let pos = self.pos();
        self.bump();
        let ia = self.init_activation()?;
        let name = self.name()?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            if *self.peek() != Tok::RParen {
                args.push(self.expr()?);
                while self.eat(&Tok::Comma) {
                    args.push(self.expr()?);
                }
            }
            self.expect(&Tok::RParen)?;
        }
        let mut children = Vec::new();
        if kind == CompKind::Component || *self.peek() == Tok::LBrace {
            self.expect(&Tok::LBrace)?;
            while !self.eat(&Tok::RBrace) {
                if self.eat(&Tok::Semi) {
                    continue;
                }
                children.push(self.item()?);
            }
        }
        Ok(SProcess { name, pos, kind: SKind::Component { kind, ia, args, children } })
    }

    // ---- expressions ----

    fn expr(&mut self) -> Result<SExpr, SyntaxError> {
        self.binary_level(0)
    }

    fn binary_level(&mut self, level: usize) -> Result<SExpr, SyntaxError> {
        const LEVELS: &[&[(Tok, BinOp)]] = &[
            &[(Tok::OrOr, BinOp::Or)],
            &[(Tok::AndAnd, BinOp::And)],
            &[(Tok::EqEq, BinOp::Eq), (Tok::Ne, BinOp::Ne)],
            &[(Tok::Lt, BinOp::Lt), (Tok::Le, BinOp::Le), (Tok::Gt, BinOp::Gt), (Tok::Ge, BinOp::Ge)],
            &[(Tok::Plus, BinOp::Add), (Tok::Minus, BinOp::Sub)],
            &[(Tok::Star, BinOp::Mul), (Tok::Slash, BinOp::Div), (Tok::Percent, BinOp::Mod)],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary_level(level + 1)?;
        loop {
            let Some(op) = LEVELS[level].iter().find(|(t, _)| t == self.peek()).map(|(_, op)| *op) else {
                return Ok(lhs);
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.binary_level(level + 1)?;
            lhs = SExpr::Binary(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    fn unary(&mut self) -> Result<SExpr, SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                match self.peek().clone() {
                    Tok::Int(n) => {
                        self.bump();
                        let v = i64::try_from(-(n as i128))
                            .map_err(|_| SyntaxError::new(pos, "integer literal out of range"))?;
                        Ok(SExpr::Const(Value::Int(v), pos))
                    }
                    Tok::Double(d) => {
                        self.bump();
                        Ok(SExpr::Const(Value::Double(-d), pos))
                    }
                    _ => Ok(SExpr::Unary(UnOp::Neg, Box::new(self.unary()?), pos)),
                }
            }
            Tok::Bang => {
                self.bump();
                Ok(SExpr::Unary(UnOp::Not, Box::new(self.unary()?), pos))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<SExpr, SyntaxError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let v = i64::try_from(n).map_err(|_| SyntaxError::new(pos, "integer literal out of range"))?;
                Ok(SExpr::Const(Value::Int(v), pos))
            }
            Tok::Double(d) => {
                self.bump();
                Ok(SExpr::Const(Value::Double(d), pos))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(SExpr::Const(Value::Str(s), pos))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(SExpr::Paren(Box::new(e)))
            }
            Tok::Ident(s) => match s.as_str() {
                "true" | "false" => {
                    self.bump();
                    Ok(SExpr::Const(Value::Bool(s == "true"), pos))
                }
                "last" => {
                    self.bump();
                    Ok(SExpr::Last(self.path()?))
                }
                "str" => {
                    self.bump();
                    self.expect(&Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    Ok(SExpr::Unary(UnOp::Str, Box::new(e), pos))
                }
                _ => Ok(SExpr::Path(self.path()?)),
            },
            _ => Err(self.error(&["expression"])),
        }
    }

    // ---- core syntax ----

    fn core_process(&mut self) -> Result<Process, SyntaxError> {
        let Some(head) = self.peek_ident().map(str::to_owned) else {
            return Err(self.error(&["process"]));
        };
        if let (Some(ty), Tok::Ident(_)) = (Ty::from_keyword(&head), self.peek_at(1)) {
            self.bump();
            let name = self.ident()?;
            let init = self.core_expr()?;
            self.expect(&Tok::Semi)?;
            return Ok(Process::Property { name, ty, init });
        }
        if head == "Spike" && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.bump();
            let name = self.ident()?;
            self.expect(&Tok::Semi)?;
            return Ok(Process::Spike { name });
        }
        if head == "Component" && *self.peek_at(1) == Tok::Lt {
            self.bump();
            let ia = self.init_activation()?;
            let name = self.ident()?;
            self.expect(&Tok::LBrace)?;
            let mut children = Vec::new();
            while !self.eat(&Tok::RBrace) {
                children.push(self.core_process()?);
            }
            return Ok(Process::Component { ia, name, children });
        }
        let name = self.ident()?;
        self.expect(&Tok::Colon)?;
        let is_event_lhs =
            matches!(self.peek_ident(), Some("T" | "A" | "D" | "C")) && *self.peek_at(1) == Tok::Question;
        let lhs = if is_event_lhs {
            let kind = self.ident()?;
            self.bump();
            let p = self.core_paren_path()?;
            match kind.as_str() {
                "T" => Lhs::TriggerOf(p),
                "A" => Lhs::ActivateOf(p),
                "D" => Lhs::DeactivateOf(p),
                _ => Lhs::ChangeOf(p),
            }
        } else {
            let e = self.expr()?;
            if self.eat(&Tok::AssignTo) {
                let target = self.core_path()?;
                self.expect(&Tok::Semi)?;
                return Ok(Process::Assignment { name, expr: to_core_expr(e), target });
            }
            let SExpr::Paren(inner) = e else {
                return Err(self.error(&["`=:`"]));
            };
            self.expect(&Tok::Question)?;
            Lhs::Cond(to_core_expr(*inner))
        };
        self.expect(&Tok::Arrow)?;
        let ia = if *self.peek() == Tok::Lt {
            self.init_activation()?
        } else {
            return Err(self.error(&["`<`"]));
        };
        let rhs = match self.peek_ident() {
            Some("T") => Rhs::DoTrigger as fn(Path) -> Rhs,
            Some("A") => Rhs::DoActivate,
            Some("D") => Rhs::DoDeactivate,
            _ => return Err(self.error(&["`T!`", "`A!`", "`D!`"])),
        };
        self.bump();
        self.expect(&Tok::Bang)?;
        let target = self.core_paren_path()?;
        self.expect(&Tok::Semi)?;
        Ok(Process::Binding { name, lhs, ia, rhs: rhs(target) })
    }

    fn core_path(&mut self) -> Result<Path, SyntaxError> {
        let sp = self.path()?;
        Ok(Path::from_segments(sp.segments))
    }

    fn core_paren_path(&mut self) -> Result<Path, SyntaxError> {
        self.expect(&Tok::LParen)?;
        let p = self.core_path()?;
        self.expect(&Tok::RParen)?;
        Ok(p)
    }

    fn core_expr(&mut self) -> Result<Expr, SyntaxError> {
        Ok(to_core_expr(self.expr()?))
    }
}

fn comp_kind(head: &str) -> Option<CompKind> {
    if head == "Component" {
        return Some(CompKind::Component);
    }
    GraphicalKind::from_keyword(head).map(CompKind::Graphical)
}

/// Surface expression with paths taken as already absolute.
fn to_core_expr(e: SExpr) -> Expr {
    match e {
        SExpr::Const(v, _) => Expr::Const(v),
        SExpr::Path(p) => Expr::Var(Path::from_segments(p.segments)),
        SExpr::Last(p) => Expr::Last(Path::from_segments(p.segments)),
        SExpr::Unary(op, a, _) => Expr::Unary(op, Box::new(to_core_expr(*a))),
        SExpr::Binary(op, l, r, _) => Expr::Binary(op, Box::new(to_core_expr(*l)), Box::new(to_core_expr(*r))),
        SExpr::Paren(inner) => to_core_expr(*inner),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::{core_to_string, expr_to_string};

    fn core_expr_of(src: &str) -> String {
        let mut p = Parser::new(src).unwrap();
        let e = p.core_expr().unwrap();
        expr_to_string(&e)
    }

    #[test]
    fn precedence_is_c_like() {
        assert_eq!(core_expr_of("a + b * c"), "(a + (b * c))");
        assert_eq!(core_expr_of("a - b - c"), "((a - b) - c)");
        assert_eq!(core_expr_of("a < b == c > d"), "((a < b) == (c > d))");
        assert_eq!(core_expr_of("a || b && !c"), "(a || (b && !(c)))");
        assert_eq!(core_expr_of("last count-1"), "(last count - 1)");
        assert_eq!(core_expr_of("-3 - -x"), "(-3 - -(x))");
        assert_eq!(core_expr_of("\"rem: \" + str(count)"), "(\"rem: \" + str(count))");
    }

    #[test]
    fn extreme_integer_literals() {
        assert_eq!(core_expr_of("-9223372036854775808"), "-9223372036854775808");
        assert!(Parser::new("9223372036854775808").unwrap().core_expr().is_err());
    }

    #[test]
    fn parses_property_and_component() {
        let sp = parse("Component root { Int count 3; }").unwrap();
        assert_eq!(sp.name.as_deref(), Some("root"));
        let SKind::Component { children, .. } = &sp.kind else { panic!() };
        assert_eq!(children.len(), 1);
        assert_eq!(children[0].name.as_deref(), Some("count"));
        assert!(matches!(&children[0].kind, SKind::Property { ty: Ty::Int, init: SExpr::Const(Value::Int(3), _), .. }));
        assert!(parse("Component root {}").unwrap().children().is_empty());
    }

    #[test]
    fn parses_bindings_and_assignments() {
        let sp = parse(
            "Component root { Spike zero; (count == 0) -> zero; dec: last count-1 =: count \
             zero ->! <d> btn1.r; hg: green !-> x }",
        )
        .unwrap();
        let c = sp.children();
        assert!(matches!(&c[1].kind, SKind::Binding { lhs: SLhs::Cond(_), arrow: Arrow::Plain, .. }));
        assert!(matches!(&c[2].kind, SKind::Assignment { .. }));
        assert!(matches!(&c[3].kind, SKind::Binding { arrow: Arrow::DeactivateRhs, ia: InitActivation::Inactive, .. }));
        assert!(matches!(&c[4].kind, SKind::Binding { arrow: Arrow::DeactivateLhs, .. }));
        assert_eq!(c[4].name.as_deref(), Some("hg"));
    }

    #[test]
    fn graphical_component_headers() {
        let sp = parse("Component root { Rectangle<d> r (0, 0, 1, 1) Font _ (\"a\", 2) }").unwrap();
        let c = sp.children();
        assert!(matches!(
            &c[0].kind,
            SKind::Component { kind: CompKind::Graphical(GraphicalKind::Rectangle), ia: InitActivation::Inactive, args, .. } if args.len() == 4
        ));
        assert_eq!(c[1].name, None);
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        let e = parse("Component root {\n  x -> }").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 8 });
        assert_eq!(e.expected, vec!["identifier".to_string()]);
        assert!(parse("Component root { 3 -> x }").is_err());
        assert!(parse("Component root { }  extra").is_err());
    }

    #[test]
    fn core_round_trip() {
        let src =
            "Component<a> root {\n  Int count 3;\n  Spike zero;\n  b: (root.count == 0)? -> <a> T!(root.zero);\n  \
                   s: (root.count - 1) =: root.count;\n  c: C?(root.count) -> <d> D!(root.b);\n}\n";
        let p = parse_core(src).unwrap();
        assert_eq!(core_to_string(&p), src);
    }
}

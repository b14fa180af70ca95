use std::fmt;

use super::{Pos, SyntaxError};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Unsigned integer literal; a preceding `-` is folded by the parser.
    Int(u64),
    Double(f64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Colon,
    Dot,
    Lt,
    Gt,
    Le,
    Ge,
    EqEq,
    Ne,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    AndAnd,
    OrOr,
    Bang,
    Question,
    /// `->`
    Arrow,
    /// `->!`
    ArrowBang,
    /// `!->`
    BangArrow,
    /// `!->!`
    BangArrowBang,
    /// `=:`
    AssignTo,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{}`", s),
            Tok::Int(i) => return write!(f, "integer {}", i),
            Tok::Double(d) => return write!(f, "number {:?}", d),
            Tok::Str(_) => "string literal",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Semi => "`;`",
            Tok::Comma => "`,`",
            Tok::Colon => "`:`",
            Tok::Dot => "`.`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::Le => "`<=`",
            Tok::Ge => "`>=`",
            Tok::EqEq => "`==`",
            Tok::Ne => "`!=`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Percent => "`%`",
            Tok::AndAnd => "`&&`",
            Tok::OrOr => "`||`",
            Tok::Bang => "`!`",
            Tok::Question => "`?`",
            Tok::Arrow => "`->`",
            Tok::ArrowBang => "`->!`",
            Tok::BangArrow => "`!->`",
            Tok::BangArrowBang => "`!->!`",
            Tok::AssignTo => "`=:`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lx = Lexer { chars: src.chars().collect(), i: 0, line: 1, col: 1 };
    let mut out = Vec::new();
    loop {
        lx.skip_trivia();
        let pos = lx.pos();
        let Some(c) = lx.peek(0) else {
            out.push(Token { tok: Tok::Eof, pos });
            return Ok(out);
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(c) = lx.peek(0).filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(c);
                lx.bump();
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            lx.number(pos)?
        } else if c == '"' {
            lx.string(pos)?
        } else {
            lx.punct(pos)?
        };
        out.push(Token { tok, pos });
    }
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: u32,
    col: u32,
}

impl Lexer {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match (self.peek(0), self.peek(1)) {
                (Some(c), _) if c.is_whitespace() => {
                    self.bump();
                }
                (Some('/'), Some('/')) => {
                    while self.peek(0).is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, SyntaxError> {
        let mut text = String::new();
        while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        let mut is_double = false;
        if self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            is_double = true;
            text.push('.');
            self.bump();
            while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
            }
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let sign = matches!(self.peek(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                is_double = true;
                text.push('e');
                self.bump();
                if sign {
                    text.push(self.bump().unwrap());
                }
                while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
                    text.push(c);
                    self.bump();
                }
            }
        }
        if is_double {
            text.parse::<f64>()
                .map(Tok::Double)
                .map_err(|_| SyntaxError::new(pos, format!("malformed number `{}`", text)))
        } else {
            text.parse::<u64>()
                .map(Tok::Int)
                .map_err(|_| SyntaxError::new(pos, format!("integer literal `{}` out of range", text)))
        }
    }

    fn string(&mut self, pos: Pos) -> Result<Tok, SyntaxError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(SyntaxError::new(pos, "unterminated string literal")),
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some('r') => s.push('\r'),
                    Some('"') => s.push('"'),
                    Some('\\') => s.push('\\'),
                    _ => return Err(SyntaxError::new(self.pos(), "unknown escape sequence")),
                },
                Some(c) => s.push(c),
            }
        }
    }

    fn punct(&mut self, pos: Pos) -> Result<Tok, SyntaxError> {
        let c = self.bump().unwrap();
        let next = self.peek(0);
        let tok = match (c, next) {
            ('{', _) => Tok::LBrace,
            ('}', _) => Tok::RBrace,
            ('(', _) => Tok::LParen,
            (')', _) => Tok::RParen,
            (';', _) => Tok::Semi,
            (',', _) => Tok::Comma,
            (':', _) => Tok::Colon,
            ('.', _) => Tok::Dot,
            ('?', _) => Tok::Question,
            ('+', _) => Tok::Plus,
            ('*', _) => Tok::Star,
            ('/', _) => Tok::Slash,
            ('%', _) => Tok::Percent,
            ('<', Some('=')) => {
                self.bump();
                Tok::Le
            }
            ('<', _) => Tok::Lt,
            ('>', Some('=')) => {
                self.bump();
                Tok::Ge
            }
            ('>', _) => Tok::Gt,
            ('=', Some('=')) => {
                self.bump();
                Tok::EqEq
            }
            ('=', Some(':')) => {
                self.bump();
                Tok::AssignTo
            }
            ('&', Some('&')) => {
                self.bump();
                Tok::AndAnd
            }
            ('|', Some('|')) => {
                self.bump();
                Tok::OrOr
            }
            ('-', Some('>')) => {
                self.bump();
                if self.peek(0) == Some('!') {
                    self.bump();
                    Tok::ArrowBang
                } else {
                    Tok::Arrow
                }
            }
            ('-', _) => Tok::Minus,
            ('!', Some('=')) => {
                self.bump();
                Tok::Ne
            }
            ('!', Some('-')) if self.peek(1) == Some('>') => {
                self.bump();
                self.bump();
                if self.peek(0) == Some('!') {
                    self.bump();
                    Tok::BangArrowBang
                } else {
                    Tok::BangArrow
                }
            }
            ('!', _) => Tok::Bang,
            (c, _) => return Err(SyntaxError::new(pos, format!("unexpected character `{}`", c))),
        };
        Ok(tok)
    }
}

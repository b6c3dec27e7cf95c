//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence, loosest first: `<->` (left), `->` (right), `|` (left),
//! `&` (left), then unary operators. `! n . φ` extends as far to the right as
//! possible.

use std::collections::HashSet;

use thiserror::Error;

use super::{is_identifier, is_nominal_name, DynKind, HybridFormula, RcFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: unexpected {found}; expected one of: {}", .expected.join(", "))]
    Unexpected {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("{line}:{column}: {message}")]
    Invalid {
        line: usize,
        column: usize,
        message: String,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Unexpected { line, column, .. } | ParseError::Invalid { line, column, .. } => (*line, *column),
        }
    }
}

/// Parses a relation-changing formula. Identifiers of the form `n<digits>`
/// are nominals and are rejected here.
pub fn parse_rc(text: &str) -> Result<RcFormula, ParseError> {
    let tokens = lex(text, Mode::Rc)?;
    let expr = Parser::new(tokens, Mode::Rc).parse_all()?;
    to_rc(expr)
}

/// Parses a hybrid formula. An identifier denotes a nominal when it has the
/// form `n<digits>`, is bound by some `!`, or labels some `:` in the input;
/// every other identifier is a proposition.
pub fn parse_hybrid(text: &str) -> Result<HybridFormula, ParseError> {
    let tokens = lex(text, Mode::Hybrid)?;
    let mut nominals = HashSet::new();
    for (i, tok) in tokens.iter().enumerate() {
        if let Tok::Ident(name) = &tok.tok {
            let after_bang = i > 0 && tokens[i - 1].tok == Tok::Bang;
            let before_colon = tokens.get(i + 1).is_some_and(|t| t.tok == Tok::Colon);
            if after_bang || before_colon || is_nominal_name(name) {
                if RESERVED.contains(&name.as_str()) {
                    return Err(ParseError::Invalid {
                        line: tok.line,
                        column: tok.column,
                        message: format!("`{name}` cannot be used as a nominal"),
                    });
                }
                nominals.insert(name.clone());
            }
        }
    }
    let expr = Parser::new(tokens, Mode::Hybrid).parse_all()?;
    Ok(to_hybrid(expr, &nominals))
}

const RESERVED: [&str; 4] = ["true", "false", "E", "A"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Rc,
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    Diamond,
    Box,
    DynDiamond(DynKind),
    DynBox(DynKind),
    LParen,
    RParen,
    Bang,
    Dot,
    Colon,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Diamond => "`<>`".into(),
            Tok::Box => "`[]`".into(),
            Tok::DynDiamond(k) => format!("`<{}>`", k.keyword()),
            Tok::DynBox(k) => format!("`[{}]`", k.keyword()),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn starts_formula(&self, mode: Mode) -> bool {
        match self {
            Tok::Ident(_) | Tok::Tilde | Tok::Diamond | Tok::Box | Tok::LParen => true,
            Tok::DynDiamond(_) | Tok::DynBox(_) => mode == Mode::Rc,
            Tok::Bang => mode == Mode::Hybrid,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, mode: Mode) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);
    let invalid = |line, column, message: String| ParseError::Invalid { line, column, message };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let (start_line, start_col) = (line, column);
        let start = i;
        let tok = match c {
            '~' => {
                i += 1;
                Tok::Tilde
            }
            '&' => {
                i += 1;
                Tok::Amp
            }
            '|' => {
                i += 1;
                Tok::Bar
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 2;
                    Tok::Arrow
                } else {
                    return Err(invalid(line, column, "expected `->`".into()));
                }
            }
            '<' | '[' => {
                let close = if c == '<' { '>' } else { ']' };
                if c == '<' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    i += 3;
                    Tok::Iff
                } else if chars.get(i + 1) == Some(&close) {
                    i += 2;
                    if c == '<' {
                        Tok::Diamond
                    } else {
                        Tok::Box
                    }
                } else {
                    let mut j = i + 1;
                    while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                        j += 1;
                    }
                    let word: String = chars[i + 1..j].iter().collect();
                    let kind = DynKind::from_keyword(&word).filter(|_| chars.get(j) == Some(&close));
                    match kind {
                        Some(k) if mode == Mode::Rc => {
                            i = j + 1;
                            if c == '<' {
                                Tok::DynDiamond(k)
                            } else {
                                Tok::DynBox(k)
                            }
                        }
                        Some(_) => {
                            return Err(invalid(
                                line,
                                column,
                                "relation-changing modalities are not part of the hybrid language".into(),
                            ))
                        }
                        None => return Err(invalid(line, column, format!("unknown modality starting with `{c}`"))),
                    }
                }
            }
            '!' | '.' | ':' if mode == Mode::Hybrid => {
                i += 1;
                match c {
                    '!' => Tok::Bang,
                    '.' => Tok::Dot,
                    _ => Tok::Colon,
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                debug_assert!(is_identifier(&word));
                i = j;
                Tok::Ident(word)
            }
            other => return Err(invalid(line, column, format!("unexpected character `{other}`"))),
        };
        column += i - start;
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

/// Mode-independent parse tree.
#[derive(Debug)]
enum Expr {
    True,
    False,
    Ident(String, usize, usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
    Diamond(Box<Expr>),
    Box(Box<Expr>),
    DynDiamond(DynKind, Box<Expr>),
    DynBox(DynKind, Box<Expr>),
    At(String, Box<Expr>),
    Down(String, Box<Expr>),
    Exists(Box<Expr>),
    Forall(Box<Expr>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    mode: Mode,
}

impl Parser {
    fn new(tokens: Vec<Token>, mode: Mode) -> Self {
        Parser { tokens, pos: 0, mode }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError::Unexpected {
            line: t.line,
            column: t.column,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn formula_starts(&self) -> Vec<&'static str> {
        let mut v = vec!["identifier", "true", "false", "`~`", "`(`", "`<>`", "`[]`"];
        match self.mode {
            Mode::Rc => v.push("a dynamic modality such as `<sb>`"),
            Mode::Hybrid => v.extend(["`!`", "`E`", "`A`"]),
        }
        v
    }

    fn parse_all(mut self) -> Result<Expr, ParseError> {
        let e = self.parse_iff()?;
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
        }
        Ok(e)
    }

    fn parse_iff(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.parse_implies()?;
            lhs = Expr::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_implies(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.parse_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.parse_implies()?;
            return Ok(Expr::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.parse_and()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        let wrap = |f: fn(Box<Expr>) -> Expr, p: &mut Parser| -> Result<Expr, ParseError> {
            p.bump();
            Ok(f(Box::new(p.parse_unary()?)))
        };
        match self.peek().clone() {
            Tok::Tilde => wrap(Expr::Not, self),
            Tok::Diamond => wrap(Expr::Diamond, self),
            Tok::Box => wrap(Expr::Box, self),
            Tok::DynDiamond(k) => {
                self.bump();
                Ok(Expr::DynDiamond(k, Box::new(self.parse_unary()?)))
            }
            Tok::DynBox(k) => {
                self.bump();
                Ok(Expr::DynBox(k, Box::new(self.parse_unary()?)))
            }
            Tok::Bang => {
                self.bump();
                let name = match self.bump().tok {
                    Tok::Ident(name) => name,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected(&["nominal"]));
                    }
                };
                if *self.peek() != Tok::Dot {
                    return Err(self.unexpected(&["`.`"]));
                }
                self.bump();
                Ok(Expr::Down(name, Box::new(self.parse_iff()?)))
            }
            Tok::Ident(name) if self.mode == Mode::Hybrid && *self.peek_at(1) == Tok::Colon => {
                self.bump();
                self.bump();
                Ok(Expr::At(name, Box::new(self.parse_unary()?)))
            }
            Tok::Ident(name)
                if self.mode == Mode::Hybrid
                    && (name == "E" || name == "A")
                    && self.peek_at(1).starts_formula(self.mode) =>
            {
                self.bump();
                let body = Box::new(self.parse_unary()?);
                Ok(if name == "E" {
                    Expr::Exists(body)
                } else {
                    Expr::Forall(body)
                })
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let t = self.bump();
                Ok(match name.as_str() {
                    "true" => Expr::True,
                    "false" => Expr::False,
                    _ => Expr::Ident(name, t.line, t.column),
                })
            }
            Tok::LParen => {
                self.bump();
                let e = self.parse_iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["`&`", "`|`", "`->`", "`<->`", "`)`"]));
                }
                self.bump();
                Ok(e)
            }
            _ => {
                let starts = self.formula_starts();
                Err(self.unexpected(&starts))
            }
        }
    }
}

fn to_rc(e: Expr) -> Result<RcFormula, ParseError> {
    let b = |e: Box<Expr>| to_rc(*e).map(Box::new);
    Ok(match e {
        Expr::True => RcFormula::top(),
        Expr::False => RcFormula::Bottom,
        Expr::Ident(name, line, column) => {
            if is_nominal_name(&name) {
                return Err(ParseError::Invalid {
                    line,
                    column,
                    message: format!("`{name}` is a nominal; relation-changing formulas contain only propositions"),
                });
            }
            RcFormula::Prop(name)
        }
        Expr::Not(a) => RcFormula::Not(b(a)?),
        Expr::And(x, y) => RcFormula::And(b(x)?, b(y)?),
        Expr::Or(x, y) => RcFormula::Or(b(x)?, b(y)?),
        Expr::Implies(x, y) => RcFormula::Implies(b(x)?, b(y)?),
        Expr::Iff(x, y) => {
            let (x, y) = (to_rc(*x)?, to_rc(*y)?);
            x.clone().implies(y.clone()).and(y.implies(x))
        }
        Expr::Diamond(a) => RcFormula::Diamond(b(a)?),
        Expr::Box(a) => RcFormula::Box(b(a)?),
        Expr::DynDiamond(k, a) => RcFormula::DynDiamond(k, b(a)?),
        Expr::DynBox(k, a) => RcFormula::DynBox(k, b(a)?),
        Expr::At(..) | Expr::Down(..) | Expr::Exists(_) | Expr::Forall(_) => {
            unreachable!("hybrid constructs are not produced in RC mode")
        }
    })
}

fn to_hybrid(e: Expr, nominals: &HashSet<String>) -> HybridFormula {
    let b = |e: Box<Expr>| Box::new(to_hybrid(*e, nominals));
    match e {
        Expr::True => HybridFormula::top(),
        Expr::False => HybridFormula::Bottom,
        Expr::Ident(name, ..) => {
            if nominals.contains(&name) {
                HybridFormula::Nominal(name)
            } else {
                HybridFormula::Prop(name)
            }
        }
        Expr::Not(a) => HybridFormula::Not(b(a)),
        Expr::And(x, y) => HybridFormula::And(b(x), b(y)),
        Expr::Or(x, y) => HybridFormula::Or(b(x), b(y)),
        Expr::Implies(x, y) => HybridFormula::Or(Box::new(HybridFormula::Not(b(x))), b(y)),
        Expr::Iff(x, y) => {
            let (x, y) = (to_hybrid(*x, nominals), to_hybrid(*y, nominals));
            x.clone().not().or(y.clone()).and(y.not().or(x))
        }
        Expr::Diamond(a) => HybridFormula::Diamond(b(a)),
        Expr::Box(a) => HybridFormula::Box(b(a)),
        Expr::At(n, a) => HybridFormula::At(n, b(a)),
        Expr::Down(n, a) => HybridFormula::Down(n, b(a)),
        Expr::Exists(a) => HybridFormula::Exists(b(a)),
        Expr::Forall(a) => HybridFormula::Forall(b(a)),
        Expr::DynDiamond(..) | Expr::DynBox(..) => {
            unreachable!("dynamic modalities are rejected by the hybrid lexer")
        }
    }
}

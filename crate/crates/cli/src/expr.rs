//! Expression DSL: tokenizer and recursive-descent parser.
//!
//! One untyped grammar serves distributions, test functions, catalog
//! functions, and scalars; the elaborator decides what each node may mean
//! in context. Precedence, tightest first: `^` (exponent on an identifier,
//! as in `D^2(…)`), unary `-`, then `*` `/`, then `+` `-`. Whitespace is
//! insignificant. Errors carry the byte offset of the offending token.
//!
//! Calls take argument groups separated by `;`, each group a
//! comma-separated list: `gausspoly(1,2i;0;1;0)`. An imaginary literal is
//! a number directly followed by `i`, e.g. `2i`, `0.5i`.

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// b·i for the literal `bi`; the bare unit `i` is `Imag(1.0)`.
    Imag(f64),
    Pi,
    /// `name(args)` or a bare identifier (empty `groups`). `power` is the
    /// `^n` exponent: `D^3(e)` carries `power = Some(3)`.
    Call {
        name: String,
        offset: usize,
        power: Option<usize>,
        groups: Vec<Vec<Expr>>,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            b';' => {
                toks.push((Tok::Semi, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    // only an exponent if digits follow; otherwise the `e`
                    // belongs to a trailing identifier
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let x: f64 = lit.parse().map_err(|_| CliError::Syntax {
                    offset: start,
                    expected: "a numeric literal".into(),
                })?;
                if !x.is_finite() {
                    return Err(CliError::Syntax {
                        offset: start,
                        expected: "a finite numeric literal".into(),
                    });
                }
                toks.push((Tok::Num(x), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(CliError::Syntax {
                    offset: i,
                    expected: "a number, name, operator, or bracket".into(),
                })
            }
        }
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(CliError::Syntax {
            offset: self.offset(),
            expected: format!("{expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(x) => {
                self.bump();
                // a number directly followed by `i` is an imaginary literal
                if matches!(self.peek(), Tok::Ident(s) if s == "i") {
                    self.bump();
                    return Ok(Expr::Imag(x));
                }
                Ok(Expr::Num(x))
            }
            Tok::Ident(name) => {
                let offset = self.offset();
                self.bump();
                if name == "i" {
                    return Ok(Expr::Imag(1.0));
                }
                if name == "pi" {
                    return Ok(Expr::Pi);
                }
                let power = if *self.peek() == Tok::Caret {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Num(x) if x >= 0.0 && x.fract() == 0.0 && x <= 1e6 => {
                            self.bump();
                            Some(x as usize)
                        }
                        _ => return self.fail("a nonnegative integer exponent"),
                    }
                } else {
                    None
                };
                let groups = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.groups()?
                } else {
                    Vec::new()
                };
                Ok(Expr::Call {
                    name,
                    offset,
                    power,
                    groups,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.fail("an expression"),
        }
    }

    /// Argument groups after an opening paren, consuming the closing one.
    fn groups(&mut self) -> Result<Vec<Vec<Expr>>> {
        let mut groups = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            groups.push(Vec::new());
            return Ok(groups);
        }
        loop {
            let mut group = Vec::new();
            loop {
                group.push(self.expr()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            groups.push(group);
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(groups);
                }
                _ => return self.fail("`,`, `;`, or `)`"),
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of input");
    }
    Ok(e)
}

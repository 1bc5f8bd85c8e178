//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! term    := 0 | ident | $v<n> | $w<n> | S( term ) | ( term + term ) | ( term * term )
//! formula := ( term = term ) | T( term ) | ~ formula
//!          | ( formula | formula ) | ( formula & formula ) | ( formula -> formula )
//!          | E ident . formula | A ident . formula
//!          | @dpt( term , term ) | @sent( term ) | @pr( term ) | @sub( term , term ){ formula }
//! ```
//!
//! A leading `(` is ambiguous between an equation and a binary connective, so
//! the parser tries the equation first and backtracks.

use super::{is_identifier, Formula, Marker, Term, Variable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Zero,
    Ident(String),
    Reserved(Variable),
    Succ,
    Truth,
    Exists,
    Forall,
    Dot,
    Plus,
    Star,
    Equals,
    Tilde,
    Bar,
    Amp,
    Arrow,
    Marker(String),
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".into(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(Tok::Reserved(v)) => format!("`{v}`"),
        Some(Tok::Marker(m)) => format!("`@{m}`"),
        Some(t) => format!("`{}`", symbol(t)),
    }
}

fn symbol(tok: &Tok) -> &'static str {
    match tok {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::Comma => ",",
        Tok::Zero => "0",
        Tok::Succ => "S",
        Tok::Truth => "T",
        Tok::Exists => "E",
        Tok::Forall => "A",
        Tok::Dot => ".",
        Tok::Plus => "+",
        Tok::Star => "*",
        Tok::Equals => "=",
        Tok::Tilde => "~",
        Tok::Bar => "|",
        Tok::Amp => "&",
        Tok::Arrow => "->",
        Tok::Ident(_) | Tok::Reserved(_) | Tok::Marker(_) => "?",
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let word = |start: usize| {
        let mut j = start;
        while j < bytes.len() && matches!(bytes[j], b'a'..=b'z' | b'0'..=b'9' | b'_') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b'0' => Tok::Zero,
            b'S' => Tok::Succ,
            b'T' => Tok::Truth,
            b'E' => Tok::Exists,
            b'A' => Tok::Forall,
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'=' => Tok::Equals,
            b'~' => Tok::Tilde,
            b'|' => Tok::Bar,
            b'&' => Tok::Amp,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                out.push((start, Tok::Arrow));
                continue;
            }
            b'a'..=b'z' => {
                let end = word(i);
                let name = &text[i..end];
                i = end;
                out.push((start, Tok::Ident(name.to_owned())));
                continue;
            }
            b'$' => {
                let kind = bytes.get(i + 1).copied();
                let mut j = i + 2;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let index = text[i + 2..j].parse::<u32>().ok();
                let var = match (kind, index) {
                    (Some(b'v'), Some(n)) => Variable::Placeholder(n),
                    (Some(b'w'), Some(n)) => Variable::Bound(n),
                    _ => {
                        return Err(Error::Parse {
                            pos: start,
                            message: "expected `$v<n>` or `$w<n>`".into(),
                        })
                    }
                };
                i = j;
                out.push((start, Tok::Reserved(var)));
                continue;
            }
            b'@' => {
                let end = word(i + 1);
                if end == i + 1 {
                    return Err(Error::Parse {
                        pos: start,
                        message: "expected a marker name after `@`".into(),
                    });
                }
                let name = text[i + 1..end].to_owned();
                i = end;
                out.push((start, Tok::Marker(name)));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(&format!("`{}`", symbol(&tok)))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn variable(&mut self) -> Result<Variable> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Variable::Named(name))
            }
            Some(Tok::Reserved(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("a variable"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Ident(_)) | Some(Tok::Reserved(_)) => Ok(Term::Var(self.variable()?)),
            Some(Tok::Succ) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(t))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let s = self.term()?;
                let op = match self.peek() {
                    Some(Tok::Plus) => Tok::Plus,
                    Some(Tok::Star) => Tok::Star,
                    _ => return self.error("`+` or `*`"),
                };
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(if op == Tok::Plus {
                    Term::add(s, t)
                } else {
                    Term::mul(s, t)
                })
            }
            _ => self.error("a term"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                let save = self.pos;
                match self.equation() {
                    Ok(f) => Ok(f),
                    Err(eq_err) => {
                        let eq_reach = self.pos;
                        self.pos = save + 1;
                        match self.binary() {
                            Ok(f) => Ok(f),
                            // report whichever reading got further
                            Err(bin_err) if self.pos >= eq_reach => Err(bin_err),
                            Err(_) => Err(eq_err),
                        }
                    }
                }
            }
            Some(Tok::Truth) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Truth(t))
            }
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::Exists) | Some(Tok::Forall) => {
                let existential = self.peek() == Some(&Tok::Exists);
                self.pos += 1;
                let v = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if existential {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                })
            }
            Some(Tok::Marker(name)) => {
                self.pos += 1;
                self.marker(&name)
            }
            _ => self.error("a formula"),
        }
    }

    fn equation(&mut self) -> Result<Formula> {
        self.expect(Tok::LParen)?;
        let s = self.term()?;
        self.expect(Tok::Equals)?;
        let t = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(Formula::Eq(s, t))
    }

    // called just past the opening parenthesis
    fn binary(&mut self) -> Result<Formula> {
        let a = self.formula()?;
        let op = match self.peek() {
            Some(t @ (Tok::Bar | Tok::Amp | Tok::Arrow)) => t.clone(),
            _ => return self.error("`|`, `&` or `->`"),
        };
        self.pos += 1;
        let b = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(match op {
            Tok::Bar => Formula::or(a, b),
            Tok::Amp => Formula::and(a, b),
            _ => Formula::imp(a, b),
        })
    }

    fn marker(&mut self, name: &str) -> Result<Formula> {
        self.expect(Tok::LParen)?;
        let first = self.term()?;
        let marker = match name {
            "dpt" | "sub" => {
                self.expect(Tok::Comma)?;
                let second = self.term()?;
                self.expect(Tok::RParen)?;
                if name == "dpt" {
                    Marker::Depth(first, second)
                } else {
                    self.expect(Tok::LBrace)?;
                    let formula = self.formula()?;
                    self.expect(Tok::RBrace)?;
                    Marker::Subst {
                        code: first,
                        arg: second,
                        formula: Box::new(formula),
                    }
                }
            }
            "sent" | "pr" => {
                self.expect(Tok::RParen)?;
                if name == "sent" {
                    Marker::Sent(first)
                } else {
                    Marker::Provable(first)
                }
            }
            _ => {
                return Err(Error::Parse {
                    pos: self.offset(),
                    message: format!("unknown marker `@{name}`"),
                })
            }
        };
        Ok(Formula::Marked(marker))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_variable(text: &str) -> Result<Variable> {
    if is_identifier(text) {
        return Ok(Variable::Named(text.to_owned()));
    }
    let mut p = Parser::new(text)?;
    let v = p.variable()?;
    p.finish()?;
    Ok(v)
}

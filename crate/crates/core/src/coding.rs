//! Gödel coding of terms, formulae and sequences as natural numbers.
//!
//! A node is written as one tag byte followed by its children, each child
//! prefixed by its byte length as a big-endian `u32`. The resulting byte
//! string is read as a base-256 natural. Tags are nonzero, so no code has a
//! leading zero byte and the byte string is recoverable from the number.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::syntax::{is_identifier, Formula, Marker, Term, Variable};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Code(BigUint);

impl Code {
    pub fn new(value: BigUint) -> Self {
        Code(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Code {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim().parse::<BigUint>().map(Code).map_err(|_| Error::NotACode)
    }
}

/// What a code decodes to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decoded {
    Term(Term),
    Formula(Formula),
}

impl fmt::Display for Decoded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoded::Term(t) => write!(f, "{t}"),
            Decoded::Formula(g) => write!(f, "{g}"),
        }
    }
}

mod tag {
    pub const ZERO: u8 = 1;
    pub const VAR: u8 = 2;
    pub const SUCC: u8 = 3;
    pub const ADD: u8 = 4;
    pub const MUL: u8 = 5;

    pub const VARIABLE: u8 = 8;

    pub const EQ: u8 = 16;
    pub const TRUTH: u8 = 17;
    pub const NOT: u8 = 18;
    pub const OR: u8 = 19;
    pub const AND: u8 = 20;
    pub const IMP: u8 = 21;
    pub const EXISTS: u8 = 22;
    pub const FORALL: u8 = 23;
    pub const DPT: u8 = 24;
    pub const SENT: u8 = 25;
    pub const PR: u8 = 26;
    pub const SUB: u8 = 27;

    pub const SEQ: u8 = 32;
}

fn node(tag: u8, children: &[Vec<u8>]) -> Vec<u8> {
    let mut out = vec![tag];
    for child in children {
        let len = u32::try_from(child.len()).expect("child code fits in u32 length");
        out.extend_from_slice(&len.to_be_bytes());
        out.extend_from_slice(child);
    }
    out
}

fn variable_bytes(v: &Variable) -> Vec<u8> {
    let mut out = vec![tag::VARIABLE];
    match v {
        Variable::Named(name) => {
            out.push(0);
            out.extend_from_slice(name.as_bytes());
        }
        Variable::Placeholder(i) => {
            out.push(1);
            out.extend_from_slice(&i.to_be_bytes());
        }
        Variable::Bound(i) => {
            out.push(2);
            out.extend_from_slice(&i.to_be_bytes());
        }
    }
    out
}

fn term_bytes(t: &Term) -> Vec<u8> {
    match t {
        Term::Zero => vec![tag::ZERO],
        Term::Var(v) => node(tag::VAR, &[variable_bytes(v)]),
        Term::Succ(s) => node(tag::SUCC, &[term_bytes(s)]),
        Term::Add(s, t) => node(tag::ADD, &[term_bytes(s), term_bytes(t)]),
        Term::Mul(s, t) => node(tag::MUL, &[term_bytes(s), term_bytes(t)]),
    }
}

fn formula_bytes(f: &Formula) -> Vec<u8> {
    match f {
        Formula::Eq(s, t) => node(tag::EQ, &[term_bytes(s), term_bytes(t)]),
        Formula::Truth(t) => node(tag::TRUTH, &[term_bytes(t)]),
        Formula::Marked(Marker::Depth(s, t)) => node(tag::DPT, &[term_bytes(s), term_bytes(t)]),
        Formula::Marked(Marker::Sent(t)) => node(tag::SENT, &[term_bytes(t)]),
        Formula::Marked(Marker::Provable(t)) => node(tag::PR, &[term_bytes(t)]),
        Formula::Marked(Marker::Subst { code, arg, formula }) => node(
            tag::SUB,
            &[term_bytes(code), term_bytes(arg), formula_bytes(formula)],
        ),
        Formula::Not(a) => node(tag::NOT, &[formula_bytes(a)]),
        Formula::Or(a, b) => node(tag::OR, &[formula_bytes(a), formula_bytes(b)]),
        Formula::And(a, b) => node(tag::AND, &[formula_bytes(a), formula_bytes(b)]),
        Formula::Imp(a, b) => node(tag::IMP, &[formula_bytes(a), formula_bytes(b)]),
        Formula::Exists(v, a) => node(tag::EXISTS, &[variable_bytes(v), formula_bytes(a)]),
        Formula::Forall(v, a) => node(tag::FORALL, &[variable_bytes(v), formula_bytes(a)]),
    }
}

fn from_bytes(bytes: &[u8]) -> Code {
    Code(BigUint::from_bytes_be(bytes))
}

pub fn encode_term(t: &Term) -> Code {
    from_bytes(&term_bytes(t))
}

pub fn encode_formula(f: &Formula) -> Code {
    from_bytes(&formula_bytes(f))
}

/// Codes a sequence of codes; the empty sequence is the bare sequence tag.
pub fn encode_seq(items: &[Code]) -> Code {
    let children: Vec<Vec<u8>> = items.iter().map(|c| c.0.to_bytes_be()).collect();
    from_bytes(&node(tag::SEQ, &children))
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    /// Splits a node into its tag and child slices.
    fn node(bytes: &'a [u8]) -> Result<(u8, Vec<&'a [u8]>)> {
        let (&tag, mut rest) = bytes.split_first().ok_or(Error::NotACode)?;
        let mut children = Vec::new();
        while !rest.is_empty() {
            if rest.len() < 4 {
                return Err(Error::NotACode);
            }
            let len = u32::from_be_bytes([rest[0], rest[1], rest[2], rest[3]]) as usize;
            rest = &rest[4..];
            if rest.len() < len {
                return Err(Error::NotACode);
            }
            children.push(&rest[..len]);
            rest = &rest[len..];
        }
        Ok((tag, children))
    }

    fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes }
    }

    fn variable(&self) -> Result<Variable> {
        match self.bytes {
            [tag::VARIABLE, 0, name @ ..] => {
                let name = std::str::from_utf8(name).map_err(|_| Error::NotACode)?;
                if is_identifier(name) {
                    Ok(Variable::Named(name.to_owned()))
                } else {
                    Err(Error::NotACode)
                }
            }
            [tag::VARIABLE, kind @ (1 | 2), a, b, c, d] => {
                let i = u32::from_be_bytes([*a, *b, *c, *d]);
                Ok(if *kind == 1 {
                    Variable::Placeholder(i)
                } else {
                    Variable::Bound(i)
                })
            }
            _ => Err(Error::NotACode),
        }
    }

    fn term(&self) -> Result<Term> {
        let (tag, kids) = Self::node(self.bytes)?;
        let sub = |i: usize| Reader::new(kids[i]).term();
        match (tag, kids.len()) {
            (tag::ZERO, 0) => Ok(Term::Zero),
            (tag::VAR, 1) => Ok(Term::Var(Reader::new(kids[0]).variable()?)),
            (tag::SUCC, 1) => Ok(Term::succ(sub(0)?)),
            (tag::ADD, 2) => Ok(Term::add(sub(0)?, sub(1)?)),
            (tag::MUL, 2) => Ok(Term::mul(sub(0)?, sub(1)?)),
            _ => Err(Error::NotACode),
        }
    }

    fn formula(&self) -> Result<Formula> {
        let (tag, kids) = Self::node(self.bytes)?;
        let term = |i: usize| Reader::new(kids[i]).term();
        let sub = |i: usize| Reader::new(kids[i]).formula();
        let var = |i: usize| Reader::new(kids[i]).variable();
        match (tag, kids.len()) {
            (tag::EQ, 2) => Ok(Formula::Eq(term(0)?, term(1)?)),
            (tag::TRUTH, 1) => Ok(Formula::Truth(term(0)?)),
            (tag::DPT, 2) => Ok(Formula::Marked(Marker::Depth(term(0)?, term(1)?))),
            (tag::SENT, 1) => Ok(Formula::Marked(Marker::Sent(term(0)?))),
            (tag::PR, 1) => Ok(Formula::Marked(Marker::Provable(term(0)?))),
            (tag::SUB, 3) => Ok(Formula::Marked(Marker::Subst {
                code: term(0)?,
                arg: term(1)?,
                formula: Box::new(sub(2)?),
            })),
            (tag::NOT, 1) => Ok(Formula::not(sub(0)?)),
            (tag::OR, 2) => Ok(Formula::or(sub(0)?, sub(1)?)),
            (tag::AND, 2) => Ok(Formula::and(sub(0)?, sub(1)?)),
            (tag::IMP, 2) => Ok(Formula::imp(sub(0)?, sub(1)?)),
            (tag::EXISTS, 2) => Ok(Formula::exists(var(0)?, sub(1)?)),
            (tag::FORALL, 2) => Ok(Formula::forall(var(0)?, sub(1)?)),
            _ => Err(Error::NotACode),
        }
    }
}

/// Decodes a term or formula code. Every number outside the image of the
/// encoders is rejected with [`Error::NotACode`].
pub fn decode(code: &Code) -> Result<Decoded> {
    let bytes = code.0.to_bytes_be();
    let reader = Reader::new(&bytes);
    match bytes.first() {
        Some(&t) if (tag::ZERO..=tag::MUL).contains(&t) => reader.term().map(Decoded::Term),
        Some(&t) if (tag::EQ..=tag::SUB).contains(&t) => reader.formula().map(Decoded::Formula),
        _ => Err(Error::NotACode),
    }
}

pub fn decode_formula(code: &Code) -> Result<Formula> {
    match decode(code)? {
        Decoded::Formula(f) => Ok(f),
        Decoded::Term(_) => Err(Error::NotACode),
    }
}

pub fn decode_term(code: &Code) -> Result<Term> {
    match decode(code)? {
        Decoded::Term(t) => Ok(t),
        Decoded::Formula(_) => Err(Error::NotACode),
    }
}

pub fn decode_seq(code: &Code) -> Result<Vec<Code>> {
    let bytes = code.0.to_bytes_be();
    let (tag, kids) = Reader::node(&bytes)?;
    if tag != tag::SEQ {
        return Err(Error::NotACode);
    }
    kids.into_iter()
        .map(|kid| match kid.first() {
            // a leading zero byte would not survive the trip through a natural
            Some(0) | None => Err(Error::NotACode),
            Some(_) => Ok(from_bytes(kid)),
        })
        .collect()
}

/// Total order on formulae: numeric order of their codes.
pub fn formula_order(a: &Formula, b: &Formula) -> Ordering {
    encode_formula(a).cmp(&encode_formula(b))
}

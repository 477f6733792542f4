//! Two-variable (and more) words built from `▷` and `▷⁻¹`.
//!
//! Concrete syntax: `|>` is `▷`, `|>-` is `▷⁻¹`. Both operators are
//! right-associative with equal precedence, so `x |> x |> y` is
//! `x ▷ (x ▷ y)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest `max_size` accepted by [`enumerate_words`].
pub const MAX_ENUMERATION_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid generator name {0:?}: expected [a-z][a-z0-9_]*")]
    InvalidGenerator(String),
    #[error("word enumeration limited to size {max}, requested {requested}")]
    SizeLimitExceeded { requested: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

/// A named generator, `[a-z][a-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(String);

impl Generator {
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(Generator(name))
        } else {
            Err(TermError::InvalidGenerator(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Shorthand for generator literals known to be valid.
///
/// Panics on an invalid name; meant for constants and tests.
pub fn gen(name: &str) -> Generator {
    Generator::new(name).expect("valid generator literal")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Op {
    Triangle,
    TriangleInv,
}

impl Op {
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Triangle => "|>",
            Op::TriangleInv => "|>-",
        }
    }

    pub fn inverse(self) -> Op {
        match self {
            Op::Triangle => Op::TriangleInv,
            Op::TriangleInv => Op::Triangle,
        }
    }

    /// `+1` for `▷`, `-1` for `▷⁻¹`.
    pub fn exponent(self) -> i64 {
        match self {
            Op::Triangle => 1,
            Op::TriangleInv => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Leaf(Generator),
    Node(Op, Box<Word>, Box<Word>),
}

impl Word {
    pub fn leaf(g: Generator) -> Word {
        Word::Leaf(g)
    }

    pub fn node(op: Op, left: Word, right: Word) -> Word {
        Word::Node(op, Box::new(left), Box::new(right))
    }

    pub fn tri(left: Word, right: Word) -> Word {
        Word::node(Op::Triangle, left, right)
    }

    pub fn tri_inv(left: Word, right: Word) -> Word {
        Word::node(Op::TriangleInv, left, right)
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match self {
            Word::Leaf(_) => 0,
            Word::Node(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Height of the tree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Word::Leaf(_) => 0,
            Word::Node(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<Generator>) {
        match self {
            Word::Leaf(g) => {
                out.insert(g.clone());
            }
            Word::Node(_, l, r) => {
                l.collect_generators(out);
                r.collect_generators(out);
            }
        }
    }

    /// Replaces every leaf `g` with `f(g)`.
    pub fn substitute(&self, f: &impl Fn(&Generator) -> Word) -> Word {
        match self {
            Word::Leaf(g) => f(g),
            Word::Node(op, l, r) => Word::node(*op, l.substitute(f), r.substitute(f)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Leaf(g) => write!(f, "{g}"),
            Word::Node(op, l, r) => {
                if matches!(**l, Word::Node(..)) {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {} {r}", op.symbol())
            }
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical rendering with minimal parentheses.
pub fn print(w: &Word) -> String {
    w.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Op(Op),
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token with its starting offset, or `None` at end of input.
    fn peek(&mut self) -> Result<Option<(usize, Token, usize)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let (tok, len) = match c {
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '|' => {
                if rest.starts_with("|>-") {
                    (Token::Op(Op::TriangleInv), 3)
                } else if rest.starts_with("|>") {
                    (Token::Op(Op::Triangle), 2)
                } else {
                    return Err(ParseError {
                        offset: start,
                        expected: "operator `|>` or `|>-`".into(),
                    });
                }
            }
            'a'..='z' => {
                let len = rest
                    .find(|c: char| !matches!(c, 'a'..='z' | '0'..='9' | '_'))
                    .unwrap_or(rest.len());
                (Token::Ident(rest[..len].to_string()), len)
            }
            _ => {
                return Err(ParseError {
                    offset: start,
                    expected: "generator, `(`, `)` or operator".into(),
                })
            }
        };
        Ok(Some((start, tok, len)))
    }

    fn bump(&mut self, len: usize) {
        self.pos += len;
    }
}

/// Parses `word := atom (('|>' | '|>-') word)? ; atom := generator | '(' word ')'`.
pub fn parse(input: &str) -> Result<Word, ParseError> {
    let mut lexer = Lexer { src: input, pos: 0 };
    let word = parse_word(&mut lexer)?;
    match lexer.peek()? {
        None => Ok(word),
        Some((offset, _, _)) => Err(ParseError {
            offset,
            expected: "operator or end of input".into(),
        }),
    }
}

fn parse_word(lx: &mut Lexer<'_>) -> Result<Word, ParseError> {
    let left = parse_atom(lx)?;
    match lx.peek()? {
        Some((_, Token::Op(op), len)) => {
            lx.bump(len);
            let right = parse_word(lx)?;
            Ok(Word::node(op, left, right))
        }
        _ => Ok(left),
    }
}

fn parse_atom(lx: &mut Lexer<'_>) -> Result<Word, ParseError> {
    match lx.peek()? {
        Some((_, Token::Ident(name), len)) => {
            lx.bump(len);
            Ok(Word::Leaf(Generator(name)))
        }
        Some((_, Token::LParen, len)) => {
            lx.bump(len);
            let inner = parse_word(lx)?;
            match lx.peek()? {
                Some((_, Token::RParen, len)) => {
                    lx.bump(len);
                    Ok(inner)
                }
                other => Err(ParseError {
                    offset: other.map_or(lx.src.len(), |(o, _, _)| o),
                    expected: "`)`".into(),
                }),
            }
        }
        other => Err(ParseError {
            offset: other.map_or(lx.src.len(), |(o, _, _)| o),
            expected: "generator or `(`".into(),
        }),
    }
}

/// `base ▷^k inner`: `|k|` nested left multiplications by `base`.
pub fn power_word(base: &Generator, k: i64, inner: Word) -> Word {
    let op = if k >= 0 { Op::Triangle } else { Op::TriangleInv };
    (0..k.unsigned_abs()).fold(inner, |acc, _| {
        Word::node(op, Word::Leaf(base.clone()), acc)
    })
}

/// `F^j(g)` as a word, where `F(t) = t ▷ t` and `F⁻¹(t) = t ▷⁻¹ t`.
pub fn canonical_automorphism_word(g: &Generator, j: i64) -> Word {
    let op = if j >= 0 { Op::Triangle } else { Op::TriangleInv };
    (0..j.unsigned_abs()).fold(Word::Leaf(g.clone()), |acc, _| {
        Word::node(op, acc.clone(), acc)
    })
}

/// All words with at most `max_size` internal nodes, ordered by size and then
/// by printed form.
pub fn enumerate_words(generators: &[Generator], max_size: usize) -> Result<Vec<Word>, TermError> {
    if max_size > MAX_ENUMERATION_SIZE {
        return Err(TermError::SizeLimitExceeded {
            requested: max_size,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let mut by_size: Vec<Vec<Word>> = Vec::with_capacity(max_size + 1);
    by_size.push(generators.iter().cloned().map(Word::Leaf).collect());
    for m in 1..=max_size {
        let mut level = Vec::new();
        for left_size in 0..m {
            let right_size = m - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    for op in [Op::Triangle, Op::TriangleInv] {
                        level.push(Word::node(op, l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    let mut out = Vec::new();
    for mut level in by_size {
        let mut keyed: Vec<(String, Word)> = level.drain(..).map(|w| (w.to_string(), w)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        out.extend(keyed.into_iter().map(|(_, w)| w));
    }
    Ok(out)
}

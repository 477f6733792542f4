//! Words in a free group.
//!
//! A [`GroupWord`] is always freely reduced. Letters are stored one by one;
//! exponent blocks are derived on demand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::term::Generator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn of(exp: i64) -> Sign {
        if exp >= 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        Letter { gen, sign }
    }

    pub fn pos(gen: Generator) -> Self {
        Letter::new(gen, Sign::Pos)
    }

    pub fn neg(gen: Generator) -> Self {
        Letter::new(gen, Sign::Neg)
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.gen.clone(), self.sign.flip())
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.gen),
            Sign::Neg => write!(f, "{}^-1", self.gen),
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(g: Generator) -> Self {
        GroupWord {
            letters: vec![Letter::pos(g)],
        }
    }

    /// `g^exp`.
    pub fn power(g: &Generator, exp: i64) -> Self {
        let letter = Letter::new(g.clone(), Sign::of(exp));
        GroupWord {
            letters: vec![letter; exp.unsigned_abs() as usize],
        }
    }

    /// Freely reduces an arbitrary letter sequence with a single left-to-right
    /// stack pass.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last().is_some_and(|top| top.cancels(&l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        GroupWord { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(&other.letters)
            .take_while(|(a, b)| a.cancels(b))
            .count();
        let mut letters = self.letters[..self.letters.len() - overlap].to_vec();
        letters.extend_from_slice(&other.letters[overlap..]);
        GroupWord { letters }
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &GroupWord) -> GroupWord {
        self.concat(other).concat(&self.invert())
    }

    /// Strips mutually inverse first/last letter pairs until none remain.
    pub fn cyclic_reduce(&self) -> GroupWord {
        let l = &self.letters;
        let mut start = 0;
        let mut end = l.len();
        while end - start >= 2 && l[start].cancels(&l[end - 1]) {
            start += 1;
            end -= 1;
        }
        GroupWord {
            letters: l[start..end].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() >= 2 => !a.cancels(b),
            _ => true,
        }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.letters.iter().map(|l| l.gen.clone()).collect()
    }

    /// Generators that cannot be eliminated by cyclic reduction.
    pub fn surviving_generators(&self) -> BTreeSet<Generator> {
        self.cyclic_reduce().generators()
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.gen == g)
            .map(|l| l.sign.value())
            .sum()
    }

    pub fn exponent_sums(&self) -> BTreeMap<Generator, i64> {
        let mut sums = BTreeMap::new();
        for l in &self.letters {
            *sums.entry(l.gen.clone()).or_insert(0) += l.sign.value();
        }
        sums
    }

    /// Run-length view: maximal blocks of one generator with their net exponent.
    /// On a reduced word each block has a single sign.
    pub fn syllables(&self) -> Vec<(Generator, i64)> {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen => *e += l.sign.value(),
                _ => out.push((l.gen.clone(), l.sign.value())),
            }
        }
        out
    }

    /// `Some(k)` when the word is exactly `axis^k · target · axis^-k`.
    pub fn as_conjugate_power(&self, axis: &Generator, target: &Generator) -> Option<i64> {
        debug_assert_ne!(axis, target);
        match self.syllables().as_slice() {
            [(t, 1)] if t == target => Some(0),
            [(a, k), (t, 1), (b, minus_k)] if a == axis && t == target && b == axis && *minus_k == -k => {
                Some(*k)
            }
            _ => None,
        }
    }

    /// `Some((k, j))` when the word is exactly `first^k · second^j`.
    pub fn as_two_block_power(&self, first: &Generator, second: &Generator) -> Option<(i64, i64)> {
        debug_assert_ne!(first, second);
        match self.syllables().as_slice() {
            [] => Some((0, 0)),
            [(a, k)] if a == first => Some((*k, 0)),
            [(b, j)] if b == second => Some((0, *j)),
            [(a, k), (b, j)] if a == first && b == second => Some((*k, *j)),
            _ => None,
        }
    }

    /// Applies a generator relabeling letter by letter and reduces.
    pub fn rename(&self, f: impl Fn(&Generator) -> Generator) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().map(|l| Letter::new(f(&l.gen), l.sign)))
    }

    /// Display tokens, `x`, `y1^-1`, ...
    pub fn tokens(&self) -> Vec<String> {
        self.letters.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for GroupWord {
    /// Space-separated letters; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.tokens())
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        GroupWord::from_letters(iter)
    }
}

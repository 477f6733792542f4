//! Normal forms in free quandles and free racks.
//!
//! Every element of the free rack on a set `S` is a composition of left
//! multiplications applied to a generator, `z₁ ▷^e₁ (… (z_m ▷^e_m s)…)`. The
//! sequence of steps is recorded as the free-group word `z₁^e₁ ⋯ z_m^e_m`,
//! which makes equality in the free rack equality of `(prefix, base)` pairs.
//! In the free quandle the prefix is only defined up to trailing powers of
//! the base, since `s ▷ s = s`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::group::{GroupWord, Letter, Sign};
use crate::term::{Generator, Op, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("no image given for generator {0}")]
    MissingRename(Generator),
}

/// One left multiplication `z ▷^e -`.
pub type SignedGen = Letter;

/// `z₁ ▷^e₁ (z₂ ▷^e₂ (… (z_m ▷^e_m base)…))`, with the steps kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LeftMultSequence {
    pub steps: GroupWord,
    pub base: Generator,
}

impl LeftMultSequence {
    /// Rebuilds a word from the sequence.
    pub fn to_word(&self) -> Word {
        self.steps
            .letters()
            .iter()
            .rev()
            .fold(Word::Leaf(self.base.clone()), |acc, step| {
                let op = match step.sign {
                    Sign::Pos => Op::Triangle,
                    Sign::Neg => Op::TriangleInv,
                };
                Word::node(op, Word::Leaf(step.gen.clone()), acc)
            })
    }
}

/// Free-quandle element `prefix · base · prefix⁻¹`; `prefix` never ends in a
/// power of `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConjugateForm {
    pub prefix: GroupWord,
    pub base: Generator,
}

impl ConjugateForm {
    /// The conjugate `prefix · base · prefix⁻¹` as a group word.
    pub fn group_element(&self) -> GroupWord {
        self.prefix.conjugate(&GroupWord::generator(self.base.clone()))
    }
}

/// Free-rack element: `prefix` acting on `base`, no absorption.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RackNormalForm {
    pub prefix: GroupWord,
    pub base: Generator,
}

/// Rewrites `w` as a composition of left multiplications.
///
/// For `u ▷^e v` with `u = P(g)`, left multiplication by `u` is
/// `P ∘ L_g^e ∘ P⁻¹`, so the steps are `P · g^e · P⁻¹` followed by the steps
/// of `v`.
pub fn to_left_mults(w: &Word) -> LeftMultSequence {
    match w {
        Word::Leaf(g) => LeftMultSequence {
            steps: GroupWord::identity(),
            base: g.clone(),
        },
        Word::Node(op, u, v) => {
            let u = to_left_mults(u);
            let v = to_left_mults(v);
            let step = GroupWord::power(&u.base, op.exponent());
            LeftMultSequence {
                steps: u.steps.conjugate(&step).concat(&v.steps),
                base: v.base,
            }
        }
    }
}

/// Image of `w` in the conjugation quandle of the free group, where leaves
/// are sent through `rename`.
pub fn quandle_image(w: &Word, rename: &BTreeMap<Generator, Generator>) -> Result<GroupWord, FreeAlgError> {
    match w {
        Word::Leaf(g) => rename
            .get(g)
            .map(|h| GroupWord::generator(h.clone()))
            .ok_or_else(|| FreeAlgError::MissingRename(g.clone())),
        Word::Node(op, u, v) => {
            let u = quandle_image(u, rename)?;
            let v = quandle_image(v, rename)?;
            Ok(match op {
                Op::Triangle => u.conjugate(&v),
                Op::TriangleInv => u.invert().conjugate(&v),
            })
        }
    }
}

/// [`quandle_image`] with every generator mapped to itself.
pub fn quandle_image_identity(w: &Word) -> GroupWord {
    let rename = w.generators().into_iter().map(|g| (g.clone(), g)).collect();
    quandle_image(w, &rename).expect("identity rename covers all generators")
}

pub fn quandle_nf(w: &Word) -> ConjugateForm {
    let seq = to_left_mults(w);
    let letters = seq.steps.letters();
    let keep = letters.len() - letters.iter().rev().take_while(|l| l.gen == seq.base).count();
    ConjugateForm {
        prefix: GroupWord::from_letters(letters[..keep].iter().cloned()),
        base: seq.base,
    }
}

pub fn rack_nf(w: &Word) -> RackNormalForm {
    let seq = to_left_mults(w);
    RackNormalForm {
        prefix: seq.steps,
        base: seq.base,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{enumerate_words, gen, parse};

    fn p(s: &str) -> Letter {
        Letter::pos(gen(s))
    }
    fn n(s: &str) -> Letter {
        Letter::neg(gen(s))
    }

    fn steps(src: &str) -> (Vec<Letter>, Generator) {
        let seq = to_left_mults(&parse(src).unwrap());
        (seq.steps.letters().to_vec(), seq.base)
    }

    #[test]
    fn left_mult_examples() {
        assert_eq!(steps("x |> y"), (vec![p("x")], gen("y")));
        assert_eq!(steps("(x |> y) |> z"), (vec![p("x"), p("y"), n("x")], gen("z")));
        assert_eq!(steps("(x |> y) |>- z"), (vec![p("x"), n("y"), n("x")], gen("z")));
        assert_eq!(steps("y"), (vec![], gen("y")));
    }

    #[test]
    fn left_mult_sequence_rebuilds_word() {
        let seq = to_left_mults(&parse("(x |> y) |> z").unwrap());
        assert_eq!(seq.to_word().to_string(), "x |> y |> x |>- z");
        assert_eq!(to_left_mults(&seq.to_word()), seq);
    }

    fn identity_rename() -> BTreeMap<Generator, Generator> {
        [("x", "x"), ("y", "y")].iter().map(|(a, b)| (gen(a), gen(b))).collect()
    }

    #[test]
    fn quandle_image_examples() {
        let id = identity_rename();
        let img = |s: &str, r: &BTreeMap<_, _>| quandle_image(&parse(s).unwrap(), r).unwrap();
        assert_eq!(img("x |> y", &id).letters(), &[p("x"), p("y"), n("x")]);
        let to_y2: BTreeMap<_, _> = [(gen("x"), gen("x")), (gen("y"), gen("y2"))].into();
        assert_eq!(img("x |> y", &to_y2).letters(), &[p("x"), p("y2"), n("x")]);
        assert_eq!(img("x |>- y", &id).letters(), &[n("x"), p("y"), p("x")]);
        assert_eq!(img("x |> (y |> y)", &id).letters(), &[p("x"), p("y"), n("x")]);
    }

    #[test]
    fn quandle_image_missing_rename() {
        let only_x: BTreeMap<_, _> = [(gen("x"), gen("x"))].into();
        assert_eq!(
            quandle_image(&parse("x |> y").unwrap(), &only_x),
            Err(FreeAlgError::MissingRename(gen("y")))
        );
    }

    fn nf(src: &str) -> (Vec<Letter>, Generator) {
        let f = quandle_nf(&parse(src).unwrap());
        (f.prefix.letters().to_vec(), f.base)
    }

    fn rnf(src: &str) -> (Vec<Letter>, Generator) {
        let f = rack_nf(&parse(src).unwrap());
        (f.prefix.letters().to_vec(), f.base)
    }

    #[test]
    fn quandle_nf_examples() {
        assert_eq!(nf("x |> x |> y"), (vec![p("x"), p("x")], gen("y")));
        assert_eq!(nf("y |> y"), (vec![], gen("y")));
        assert_eq!(nf("(x |> y) |> x"), (vec![p("x"), p("y")], gen("x")));
        // x y x⁻¹ · x · x y⁻¹ x⁻¹ = x y x y⁻¹ x⁻¹ = (x y) x (x y)⁻¹
        let img = quandle_image_identity(&parse("(x |> y) |> x").unwrap());
        assert_eq!(img.letters(), &[p("x"), p("y"), p("x"), n("y"), n("x")]);
    }

    #[test]
    fn rack_nf_examples() {
        assert_eq!(rnf("y |> y"), (vec![p("y")], gen("y")));
        assert_eq!(rnf("y |>- y"), (vec![n("y")], gen("y")));
        assert_eq!(rnf("x |> (y |> y)"), (vec![p("x"), p("y")], gen("y")));
        // F(F⁻¹(y)) = y
        assert_eq!(rnf("(y |>- y) |> y |>- y"), (vec![], gen("y")));
    }

    #[test]
    fn image_agrees_with_normal_form() {
        for w in enumerate_words(&[gen("x"), gen("y")], 3).unwrap() {
            let img = quandle_image_identity(&w);
            assert_eq!(img, quandle_nf(&w).group_element(), "{w}");
            assert_eq!(img, to_left_mults(&w).steps.conjugate(&GroupWord::generator(to_left_mults(&w).base)));
        }
    }

    #[test]
    fn homomorphism_law() {
        let words = enumerate_words(&[gen("x"), gen("y")], 2).unwrap();
        for u in &words {
            for v in words.iter().step_by(7) {
                let (iu, iv) = (quandle_image_identity(u), quandle_image_identity(v));
                let tri = quandle_image_identity(&Word::tri(u.clone(), v.clone()));
                assert_eq!(tri, iu.concat(&iv).concat(&iu.invert()));
                let inv = quandle_image_identity(&Word::tri_inv(u.clone(), v.clone()));
                assert_eq!(inv, iu.invert().concat(&iv).concat(&iu));
            }
        }
    }

    #[test]
    fn conjugate_form_prefix_never_ends_in_base() {
        for w in enumerate_words(&[gen("x"), gen("y")], 3).unwrap() {
            let f = quandle_nf(&w);
            assert!(f.prefix.letters().last().is_none_or(|l| l.gen != f.base));
        }
    }
}

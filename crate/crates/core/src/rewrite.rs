//! Single-step axiom rewrites on words.
//!
//! Each rewrite replaces one subterm by a term equal to it in every rack
//! (or, for [`Axiom::Idempotence`], every quandle). They are used to perturb
//! words without changing the element they denote.

use serde::Serialize;

use crate::term::{Generator, Op, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    /// `a ▷^e a ↔ a`. Holds in quandles only.
    Idempotence,
    /// `a ▷^e (b ▷^e c) ↔ (a ▷^e b) ▷^e (a ▷^e c)`.
    SelfDistributivity,
    /// `a ▷^e (b ▷^-e c) ↔ (a ▷^e b) ▷^-e (a ▷^e c)`.
    MutualDistributivity,
    /// `a ▷^e (a ▷^-e b) ↔ b`.
    InverseLaw,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Idempotence,
        Axiom::SelfDistributivity,
        Axiom::MutualDistributivity,
        Axiom::InverseLaw,
    ];

    pub fn holds_in_racks(self) -> bool {
        self != Axiom::Idempotence
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub axiom: Axiom,
    pub result: Word,
}

const OPS: [Op; 2] = [Op::Triangle, Op::TriangleInv];

/// Rewrites applicable at the root of `t`, in both directions. Expanding
/// rewrites that introduce a fresh left factor draw it from `pool`.
pub fn root_rewrites(t: &Word, pool: &[Generator]) -> Vec<Rewrite> {
    let mut out = Vec::new();
    let mut push = |axiom, result| out.push(Rewrite { axiom, result });

    // contracting / left-to-right directions
    if let Word::Node(e, a, rhs) = t {
        if a == rhs {
            push(Axiom::Idempotence, (**a).clone());
        }
        if let Word::Node(f, b, c) = &**rhs {
            let distributed = Word::node(
                *f,
                Word::node(*e, (**a).clone(), (**b).clone()),
                Word::node(*e, (**a).clone(), (**c).clone()),
            );
            let axiom = if e == f {
                Axiom::SelfDistributivity
            } else {
                Axiom::MutualDistributivity
            };
            push(axiom, distributed);
            if a == b && *f == e.inverse() {
                push(Axiom::InverseLaw, (**c).clone());
            }
        }
        // (a ▷^e b) ▷^f (a ▷^e c) → a ▷^e (b ▷^f c)
        if let (Word::Node(e1, a1, b), Word::Node(e2, a2, c)) = (&**a, &**rhs) {
            if e1 == e2 && a1 == a2 {
                let f = *e;
                let axiom = if *e1 == f {
                    Axiom::SelfDistributivity
                } else {
                    Axiom::MutualDistributivity
                };
                push(
                    axiom,
                    Word::node(*e1, (**a1).clone(), Word::node(f, (**b).clone(), (**c).clone())),
                );
            }
        }
    }

    // expanding directions
    for op in OPS {
        push(Axiom::Idempotence, Word::node(op, t.clone(), t.clone()));
        for g in pool {
            let a = Word::Leaf(g.clone());
            push(
                Axiom::InverseLaw,
                Word::node(op, a.clone(), Word::node(op.inverse(), a, t.clone())),
            );
        }
    }
    out
}

/// All single rewrites of `w` at any subterm position.
pub fn all_rewrites(w: &Word, pool: &[Generator]) -> Vec<Rewrite> {
    let mut out = root_rewrites(w, pool);
    if let Word::Node(op, l, r) = w {
        for rw in all_rewrites(l, pool) {
            out.push(Rewrite {
                axiom: rw.axiom,
                result: Word::node(*op, rw.result, (**r).clone()),
            });
        }
        for rw in all_rewrites(r, pool) {
            out.push(Rewrite {
                axiom: rw.axiom,
                result: Word::node(*op, (**l).clone(), rw.result),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{gen, parse};

    fn results(src: &str, axiom: Axiom) -> Vec<String> {
        root_rewrites(&parse(src).unwrap(), &[gen("x")])
            .into_iter()
            .filter(|r| r.axiom == axiom)
            .map(|r| r.result.to_string())
            .collect()
    }

    #[test]
    fn contracting_rewrites() {
        assert!(results("y |> y", Axiom::Idempotence).contains(&"y".to_string()));
        assert!(results("x |> (x |>- y)", Axiom::InverseLaw).contains(&"y".to_string()));
        assert!(results("x |> y |> z", Axiom::SelfDistributivity)
            .contains(&"(x |> y) |> x |> z".to_string()));
        assert!(results("x |> y |>- z", Axiom::MutualDistributivity)
            .contains(&"(x |> y) |>- x |> z".to_string()));
        assert!(results("(x |> y) |> x |> z", Axiom::SelfDistributivity)
            .contains(&"x |> y |> z".to_string()));
    }

    #[test]
    fn expanding_rewrites() {
        let r = results("y", Axiom::InverseLaw);
        assert_eq!(r, vec!["x |> x |>- y", "x |>- x |> y"]);
        assert_eq!(results("y", Axiom::Idempotence), vec!["y |> y", "y |>- y"]);
    }

    #[test]
    fn rewrites_reach_every_position() {
        let w = parse("(x |> x) |> y").unwrap();
        let all: Vec<_> = all_rewrites(&w, &[])
            .into_iter()
            .filter(|r| r.axiom == Axiom::Idempotence)
            .map(|r| r.result.to_string())
            .collect();
        assert!(all.contains(&"x |> y".to_string()));
    }
}

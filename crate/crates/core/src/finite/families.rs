use std::fmt;

use serde::Serialize;

use super::{FiniteError, FiniteQuandle, FiniteRack, OpTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum GroupAxiomFailure {
    NoIdentity,
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupAxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAxiomFailure::NoIdentity => write!(f, "no identity element"),
            GroupAxiomFailure::NoInverse { element } => write!(f, "{element} has no inverse"),
            GroupAxiomFailure::NotAssociative { a, b, c } => {
                write!(f, "({a}·{b})·{c} ≠ {a}·({b}·{c})")
            }
        }
    }
}

/// `i ▷ j = 2i − j (mod n)`.
pub fn dihedral(n: usize) -> FiniteQuandle {
    assert!(n >= 1);
    let t = OpTable::from_fn(n, |i, j| (2 * i + n - j) % n);
    FiniteQuandle::new(t, Some(format!("dihedral({n})"))).expect("dihedral tables are quandles")
}

/// `i ▷ j = j`.
pub fn trivial_quandle(n: usize) -> FiniteQuandle {
    assert!(n >= 1);
    FiniteQuandle::new(OpTable::from_fn(n, |_, j| j), Some(format!("trivial({n})")))
        .expect("trivial tables are quandles")
}

/// `i ▷ j = j + 1 (mod n)`.
pub fn constant_rack(n: usize) -> FiniteRack {
    assert!(n >= 1);
    FiniteRack::new(OpTable::from_fn(n, |_, j| (j + 1) % n), Some(format!("constant({n})")))
        .expect("constant racks are racks")
}

/// `i ▷ j = i · j · i⁻¹` for a group given by its multiplication table.
pub fn conjugation_quandle(mult: &OpTable) -> Result<FiniteQuandle, FiniteError> {
    let n = mult.size();
    let e = (0..n)
        .find(|&e| (0..n).all(|a| mult.get(e, a) == a && mult.get(a, e) == a))
        .ok_or(FiniteError::NotAGroup(GroupAxiomFailure::NoIdentity))?;
    let mut inv = vec![0; n];
    for (a, slot) in inv.iter_mut().enumerate() {
        *slot = (0..n)
            .find(|&b| mult.get(a, b) == e && mult.get(b, a) == e)
            .ok_or(FiniteError::NotAGroup(GroupAxiomFailure::NoInverse { element: a }))?;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mult.get(mult.get(a, b), c) != mult.get(a, mult.get(b, c)) {
                    return Err(FiniteError::NotAGroup(GroupAxiomFailure::NotAssociative { a, b, c }));
                }
            }
        }
    }
    let t = OpTable::from_fn(n, |i, j| mult.get(mult.get(i, j), inv[i]));
    FiniteQuandle::new(t, None)
}

/// `Z/n` under addition.
pub fn cyclic_group(n: usize) -> OpTable {
    OpTable::from_fn(n, |a, b| (a + b) % n)
}

/// Multiplication table of a permutation group, elements in the given order.
/// `a · b` is `a ∘ b` (apply `b` first).
fn permutation_group_table(elements: &[Vec<usize>]) -> OpTable {
    OpTable::from_fn(elements.len(), |a, b| {
        let composed: Vec<usize> = elements[b].iter().map(|&i| elements[a][i]).collect();
        elements
            .iter()
            .position(|p| *p == composed)
            .expect("group is closed")
    })
}

/// `S₃` as the six permutations of `{0, 1, 2}` in lexicographic order;
/// element 0 is the identity.
pub fn symmetric_group_3() -> OpTable {
    permutation_group_table(&super::permutations(3))
}

/// The symmetry group of a square, as permutations of its corners, in
/// lexicographic order; element 0 is the identity.
pub fn dihedral_group_4() -> OpTable {
    let rotation = vec![1, 2, 3, 0];
    let reflection = vec![0, 3, 2, 1];
    let mut elements: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3]];
    let mut frontier = elements.clone();
    while let Some(p) = frontier.pop() {
        for g in [&rotation, &reflection] {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if !elements.contains(&q) {
                elements.push(q.clone());
                frontier.push(q);
            }
        }
    }
    elements.sort();
    permutation_group_table(&elements)
}

/// The bundled structures scanned before any enumeration: dihedral(2..7),
/// conjugation quandles of `S₃` and `D₄`, constant racks (2..4) and trivial
/// quandles (1..4).
pub fn default_library() -> Vec<FiniteRack> {
    let mut lib: Vec<FiniteRack> = (2..=7).map(|n| dihedral(n).into()).collect();
    lib.push(
        conjugation_quandle(&symmetric_group_3())
            .expect("S3 is a group")
            .into_rack()
            .with_name("conjugation(S3)"),
    );
    lib.push(
        conjugation_quandle(&dihedral_group_4())
            .expect("D4 is a group")
            .into_rack()
            .with_name("conjugation(D4)"),
    );
    lib.extend((2..=4).map(constant_rack));
    lib.extend((1..=4).map(|n| trivial_quandle(n).into()));
    lib
}

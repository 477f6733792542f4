use std::collections::BTreeSet;

use super::{check_axioms, FiniteError, FiniteRack, OpTable};
use crate::classify::Theory;

/// Largest size accepted by [`isomorphic`].
pub const MAX_ISO_SIZE: usize = 8;

const MAX_ENUM_ISO: usize = 5;
const MAX_ENUM_LABELED: usize = 4;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn relabel(t: &OpTable, phi: &[usize]) -> Vec<usize> {
    let n = t.size();
    let mut cells = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            cells[phi[a] * n + phi[b]] = phi[t.get(a, b)];
        }
    }
    cells
}

/// The lexicographically smallest table among all relabelings of `t`.
pub fn canonical_form(t: &OpTable) -> OpTable {
    let n = t.size();
    let best = permutations(n)
        .iter()
        .map(|phi| relabel(t, phi))
        .min()
        .expect("at least one permutation");
    OpTable { n, cells: best }
}

/// A bijection `φ` with `φ(a ▷ b) = φ(a) ▷' φ(b)`, if one exists.
pub fn isomorphic(a: &FiniteRack, b: &FiniteRack) -> Result<Option<Vec<usize>>, FiniteError> {
    let n = a.size();
    for size in [a.size(), b.size()] {
        if size > MAX_ISO_SIZE {
            return Err(FiniteError::SizeLimitExceeded {
                requested: size,
                max: MAX_ISO_SIZE,
            });
        }
    }
    if n != b.size() {
        return Ok(None);
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_iso(a.table(), b.table(), 0, &mut phi, &mut used).then_some(phi))
}

fn extend_iso(s: &OpTable, t: &OpTable, next: usize, phi: &mut [usize], used: &mut [bool]) -> bool {
    let n = s.size();
    if next == n {
        return true;
    }
    for image in 0..n {
        if used[image] {
            continue;
        }
        phi[next] = image;
        used[image] = true;
        let consistent = (0..=next).all(|p| {
            (0..=next).all(|q| {
                let r = s.get(p, q);
                r > next || phi[r] == t.get(phi[p], phi[q])
            })
        });
        if consistent && extend_iso(s, t, next + 1, phi, used) {
            return true;
        }
        used[image] = false;
    }
    phi[next] = usize::MAX;
    false
}

/// Partial table used by the backtracker; `UNSET` marks empty cells.
struct Search {
    n: usize,
    cells: Vec<usize>,
    row_used: Vec<u32>,
    out: Vec<OpTable>,
}

const UNSET: usize = usize::MAX;

impl Search {
    fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    /// Every instance of `a ▷ (b ▷ c) = (a ▷ b) ▷ (a ▷ c)` whose cells are
    /// all filled holds.
    fn consistent(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let (bc, ac) = (self.get(b, c), self.get(a, c));
                    if bc == UNSET || ac == UNSET {
                        continue;
                    }
                    let (lhs, rhs) = (self.get(a, bc), self.get(ab, ac));
                    if lhs != UNSET && rhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, idx: usize, theory: Theory) {
        let n = self.n;
        if idx == n * n {
            let t = OpTable {
                n,
                cells: self.cells.clone(),
            };
            debug_assert!(check_axioms(&t).satisfies(theory));
            self.out.push(t);
            return;
        }
        let (a, b) = (idx / n, idx % n);
        let candidates: Vec<usize> = if theory == Theory::Quandle && a == b {
            vec![a]
        } else {
            (0..n).collect()
        };
        for v in candidates {
            if self.row_used[a] & (1 << v) != 0 {
                continue;
            }
            // keep the diagonal free for the row's own fixed value in quandles
            if theory == Theory::Quandle && a != b && v == a {
                continue;
            }
            self.cells[idx] = v;
            self.row_used[a] |= 1 << v;
            if self.consistent() {
                self.run(idx + 1, theory);
            }
            self.row_used[a] &= !(1 << v);
            self.cells[idx] = UNSET;
        }
    }
}

/// All racks or quandles of size `n`, either every labeled table or one
/// canonical representative per isomorphism class, in ascending table order.
pub fn enumerate_structures(theory: Theory, n: usize, up_to_iso: bool) -> Result<Vec<FiniteRack>, FiniteError> {
    let max = if up_to_iso { MAX_ENUM_ISO } else { MAX_ENUM_LABELED };
    if n > max || n == 0 {
        return Err(FiniteError::SizeLimitExceeded { requested: n, max });
    }
    let mut search = Search {
        n,
        cells: vec![UNSET; n * n],
        row_used: vec![0; n],
        out: Vec::new(),
    };
    search.run(0, theory);
    let tables: Vec<OpTable> = if up_to_iso {
        search
            .out
            .iter()
            .map(canonical_form)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    } else {
        let mut t = search.out;
        t.sort();
        t
    };
    Ok(tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let quandle = check_axioms(&t).is_quandle;
            FiniteRack::new_unchecked(t, quandle, Some(format!("{}{n}#{i}", theory.keyword())))
        })
        .collect())
}

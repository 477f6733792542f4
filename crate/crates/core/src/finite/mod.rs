//! Finite racks and quandles given by operation tables.
//!
//! Row `a` of a table is the map `b ↦ a ▷ b`. These structures are the
//! brute-force check on the symbolic classification: a derived operation
//! that breaks the axioms on some finite quandle or rack is a concrete
//! refutation.

mod enumerate;
mod families;
mod io;
mod oracle;

pub use enumerate::{canonical_form, enumerate_structures, isomorphic, permutations, MAX_ISO_SIZE};
pub use families::{
    conjugation_quandle, constant_rack, cyclic_group, default_library, dihedral, dihedral_group_4,
    symmetric_group_3, trivial_quandle, GroupAxiomFailure,
};
pub use io::{load_structure, parse_table_file, write_table, TableFile};
pub use oracle::{search_counterexample, Counterexample};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classify::Theory;
use crate::freealg::LeftMultSequence;
use crate::group::Sign;
use crate::term::{gen, Generator, Op, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table is not a {theory}: {report}")]
    AxiomsFail { theory: Theory, report: AxiomReport },
    #[error("not a group: {0}")]
    NotAGroup(GroupAxiomFailure),
    #[error("generator {0} has no value")]
    UnboundGenerator(Generator),
    #[error("word uses generators outside {{x, y}}: {0}")]
    WrongVariables(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("size {requested} exceeds the limit {max}")]
    SizeLimitExceeded { requested: usize, max: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A square table of indices, not necessarily satisfying any axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTable {
    n: usize,
    cells: Vec<usize>,
}

impl OpTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, FiniteError> {
        let n = rows.len();
        if n == 0 {
            return Err(FiniteError::MalformedTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(FiniteError::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(FiniteError::MalformedTable(format!(
                    "row {i} has entry {v} outside [0, {n})"
                )));
            }
            cells.extend_from_slice(row);
        }
        Ok(OpTable { n, cells })
    }

    /// Builds `table[a][b] = f(a, b)`. Entries must lie in `[0, n)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let cells: Vec<usize> = (0..n * n).map(|i| f(i / n, i % n)).collect();
        assert!(cells.iter().all(|&v| v < n), "table entry out of range");
        OpTable { n, cells }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }
}

impl Serialize for OpTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    RowNotBijective { row: usize },
    DistributivityFails { a: usize, b: usize, c: usize },
    IdempotenceFails { a: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RowNotBijective { row } => write!(f, "RowNotBijective({row})"),
            Witness::DistributivityFails { a, b, c } => write!(f, "DistributivityFails({a},{b},{c})"),
            Witness::IdempotenceFails { a } => write!(f, "IdempotenceFails({a})"),
        }
    }
}

impl Witness {
    /// Re-checks the witness directly against `t`.
    pub fn holds_on(&self, t: &OpTable) -> bool {
        let n = t.size();
        match *self {
            Witness::RowNotBijective { row } => {
                let mut seen = vec![false; n];
                t.row(row).iter().for_each(|&v| seen[v] = true);
                seen.contains(&false)
            }
            Witness::DistributivityFails { a, b, c } => {
                t.get(a, t.get(b, c)) != t.get(t.get(a, b), t.get(a, c))
            }
            Witness::IdempotenceFails { a } => t.get(a, a) != a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AxiomReport {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn satisfies(&self, theory: Theory) -> bool {
        match theory {
            Theory::Quandle => self.is_quandle,
            Theory::Rack => self.is_rack,
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(f, "rack: {}, quandle: {}", yn(self.is_rack), yn(self.is_quandle))?;
        if let Some(w) = &self.witness {
            write!(f, ", witness: {w}")?;
        }
        Ok(())
    }
}

/// Checks bijectivity of rows, left self-distributivity and idempotence, in
/// that order. The witness is the lexicographically first failure of the
/// first failing axiom.
pub fn check_axioms(t: &OpTable) -> AxiomReport {
    let n = t.size();
    let not_rack = |witness| AxiomReport {
        is_rack: false,
        is_quandle: false,
        witness: Some(witness),
    };
    for row in 0..n {
        let w = Witness::RowNotBijective { row };
        if w.holds_on(t) {
            return not_rack(w);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = Witness::DistributivityFails { a, b, c };
                if w.holds_on(t) {
                    return not_rack(w);
                }
            }
        }
    }
    match (0..n).find(|&a| t.get(a, a) != a) {
        Some(a) => AxiomReport {
            is_rack: true,
            is_quandle: false,
            witness: Some(Witness::IdempotenceFails { a }),
        },
        None => AxiomReport {
            is_rack: true,
            is_quandle: true,
            witness: None,
        },
    }
}

/// A table known to satisfy the rack axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRack {
    table: OpTable,
    inverse: OpTable,
    quandle: bool,
    pub name: Option<String>,
}

impl FiniteRack {
    pub fn new(table: OpTable, name: Option<String>) -> Result<Self, FiniteError> {
        let report = check_axioms(&table);
        if !report.is_rack {
            return Err(FiniteError::AxiomsFail {
                theory: Theory::Rack,
                report,
            });
        }
        Ok(Self::new_unchecked(table, report.is_quandle, name))
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, FiniteError> {
        FiniteRack::new(OpTable::from_rows(rows)?, None)
    }

    fn new_unchecked(table: OpTable, quandle: bool, name: Option<String>) -> Self {
        let n = table.size();
        let mut inv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inv[a * n + table.get(a, b)] = b;
            }
        }
        FiniteRack {
            table,
            inverse: OpTable { n, cells: inv },
            quandle,
            name,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn table(&self) -> &OpTable {
        &self.table
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    pub fn theory(&self) -> Theory {
        if self.quandle {
            Theory::Quandle
        } else {
            Theory::Rack
        }
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("{}({})", self.theory().keyword(), self.size()))
    }

    /// `a ▷ b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    /// `a ▷⁻¹ b`, the unique `c` with `a ▷ c = b`.
    #[inline]
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.inverse.get(a, b)
    }

    pub fn apply(&self, op: Op, a: usize, b: usize) -> usize {
        match op {
            Op::Triangle => self.op(a, b),
            Op::TriangleInv => self.op_inv(a, b),
        }
    }
}

/// A rack whose table is also idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle(FiniteRack);

impl FiniteQuandle {
    pub fn new(table: OpTable, name: Option<String>) -> Result<Self, FiniteError> {
        let rack = FiniteRack::new(table, name)?;
        FiniteQuandle::try_from(rack)
    }

    pub fn into_rack(self) -> FiniteRack {
        self.0
    }
}

impl TryFrom<FiniteRack> for FiniteQuandle {
    type Error = FiniteError;
    fn try_from(rack: FiniteRack) -> Result<Self, FiniteError> {
        if rack.is_quandle() {
            Ok(FiniteQuandle(rack))
        } else {
            Err(FiniteError::AxiomsFail {
                theory: Theory::Quandle,
                report: check_axioms(rack.table()),
            })
        }
    }
}

impl Deref for FiniteQuandle {
    type Target = FiniteRack;
    fn deref(&self) -> &FiniteRack {
        &self.0
    }
}

impl From<FiniteQuandle> for FiniteRack {
    fn from(q: FiniteQuandle) -> FiniteRack {
        q.0
    }
}

pub type Env = BTreeMap<Generator, usize>;

/// Evaluates `w` in `rack` with leaves looked up in `env`.
pub fn eval_word(rack: &FiniteRack, w: &Word, env: &Env) -> Result<usize, FiniteError> {
    match w {
        Word::Leaf(g) => env
            .get(g)
            .copied()
            .ok_or_else(|| FiniteError::UnboundGenerator(g.clone())),
        Word::Node(op, l, r) => {
            let a = eval_word(rack, l, env)?;
            let b = eval_word(rack, r, env)?;
            Ok(rack.apply(*op, a, b))
        }
    }
}

/// Evaluates a left-multiplication sequence, innermost step first.
pub fn eval_left_mults(rack: &FiniteRack, seq: &LeftMultSequence, env: &Env) -> Result<usize, FiniteError> {
    let lookup = |g: &Generator| {
        env.get(g)
            .copied()
            .ok_or_else(|| FiniteError::UnboundGenerator(g.clone()))
    };
    let mut value = lookup(&seq.base)?;
    for step in seq.steps.letters().iter().rev() {
        let z = lookup(&step.gen)?;
        value = match step.sign {
            Sign::Pos => rack.op(z, value),
            Sign::Neg => rack.op_inv(z, value),
        };
    }
    Ok(value)
}

/// `table[a][b] = w(x := a, y := b)`.
pub fn derived_operation(rack: &FiniteRack, w: &Word) -> Result<OpTable, FiniteError> {
    let (x, y) = (gen("x"), gen("y"));
    let extra: Vec<String> = w
        .generators()
        .into_iter()
        .filter(|g| *g != x && *g != y)
        .map(|g| g.to_string())
        .collect();
    if !extra.is_empty() {
        return Err(FiniteError::WrongVariables(extra.join(", ")));
    }
    let n = rack.size();
    let mut env = Env::from([(x.clone(), 0), (y.clone(), 0)]);
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            env.insert(x.clone(), a);
            env.insert(y.clone(), b);
            cells.push(eval_word(rack, w, &env)?);
        }
    }
    Ok(OpTable { n, cells })
}

fn permutation_power(perm: &[usize], k: i64) -> Vec<usize> {
    let n = perm.len();
    let base: Vec<usize> = if k >= 0 {
        perm.to_vec()
    } else {
        let mut inv = vec![0; n];
        perm.iter().enumerate().for_each(|(i, &p)| inv[p] = i);
        inv
    };
    let mut out: Vec<usize> = (0..n).collect();
    for _ in 0..k.unsigned_abs() {
        out = out.iter().map(|&i| base[i]).collect();
    }
    out
}

/// Replaces every row by its `k`-th power as a permutation; the result is the
/// table of `x ▷^k y`.
pub fn power_table(rack: &FiniteRack, k: i64) -> FiniteRack {
    let n = rack.size();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| permutation_power(rack.table().row(a), k))
        .collect();
    let table = OpTable::from_rows(&rows).expect("powers of rows are square");
    let quandle = check_axioms(&table).is_quandle;
    debug_assert!(check_axioms(&table).is_rack);
    let name = rack.name.as_ref().map(|s| format!("{s}^{k}"));
    FiniteRack::new_unchecked(table, quandle, name)
}

/// `F(a) = a ▷ a`, validated to be a bijective endomorphism.
pub fn canonical_automorphism(rack: &FiniteRack) -> Result<Vec<usize>, FiniteError> {
    let n = rack.size();
    let f: Vec<usize> = (0..n).map(|a| rack.op(a, a)).collect();
    let mut seen = vec![false; n];
    f.iter().for_each(|&v| seen[v] = true);
    if seen.contains(&false) {
        return Err(FiniteError::InternalInvariantViolation(
            "a ↦ a ▷ a is not a bijection".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            if f[rack.op(a, b)] != rack.op(f[a], f[b]) {
                return Err(FiniteError::InternalInvariantViolation(format!(
                    "F({a} ▷ {b}) ≠ F({a}) ▷ F({b})"
                )));
            }
        }
    }
    Ok(f)
}

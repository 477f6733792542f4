//! Plain-text table files.
//!
//! ```text
//! # comment lines allowed
//! quandle 3        # or: rack 3
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! ```
//!
//! Row `i` lists `i ▷ 0 … i ▷ (n−1)`. Anything after `#` is ignored.

use std::fmt::Write as _;

use super::{check_axioms, FiniteError, FiniteRack, OpTable};
use crate::classify::Theory;

/// A parsed file before its header claim is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub theory: Theory,
    pub table: OpTable,
}

fn format_err(line: usize, message: impl Into<String>) -> FiniteError {
    FiniteError::Format {
        line,
        message: message.into(),
    }
}

pub fn parse_table_file(text: &str) -> Result<TableFile, FiniteError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| format_err(1, "missing header"))?;
    let mut parts = header.split_whitespace();
    let theory: Theory = parts
        .next()
        .unwrap_or("")
        .parse()
        .map_err(|e: String| format_err(header_line, e))?;
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| format_err(header_line, "expected a positive size after the keyword"))?;
    if parts.next().is_some() {
        return Err(format_err(header_line, "trailing tokens in header"));
    }

    let mut rows = Vec::with_capacity(n);
    for (line, content) in lines {
        if rows.len() == n {
            return Err(format_err(line, format!("more than {n} rows")));
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| format_err(line, format!("invalid entry {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(format_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v >= n) {
            return Err(format_err(line, format!("entry {v} outside [0, {n})")));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(format_err(
            text.lines().count().max(1),
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    Ok(TableFile {
        theory,
        table: OpTable::from_rows(&rows)?,
    })
}

/// Parses a file and checks the table against the theory its header claims.
pub fn load_structure(text: &str) -> Result<FiniteRack, FiniteError> {
    let file = parse_table_file(text)?;
    let report = check_axioms(&file.table);
    if !report.satisfies(file.theory) {
        return Err(FiniteError::AxiomsFail {
            theory: file.theory,
            report,
        });
    }
    FiniteRack::new(file.table, None)
}

/// Renders `table` with a `theory n` header, single spaces and a trailing newline.
pub fn write_table(theory: Theory, table: &OpTable) -> String {
    let mut out = format!("{} {}\n", theory.keyword(), table.size());
    for a in 0..table.size() {
        let row: Vec<String> = table.row(a).iter().map(ToString::to_string).collect();
        writeln!(out, "{}", row.join(" ")).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{constant_rack, dihedral};
    use super::*;
    use proptest::prelude::*;

    const DIHEDRAL3: &str = "# comment lines allowed\nquandle 3        # or: rack 3\n0 2 1\n2 1 0\n1 0 2\n";

    #[test]
    fn reads_documented_example() {
        let rack = load_structure(DIHEDRAL3).unwrap();
        assert_eq!(rack.table(), dihedral(3).table());
        assert!(rack.is_quandle());
    }

    #[test]
    fn writes_bit_exact() {
        assert_eq!(write_table(Theory::Quandle, dihedral(3).table()), "quandle 3\n0 2 1\n2 1 0\n1 0 2\n");
        assert_eq!(write_table(Theory::Rack, constant_rack(2).table()), "rack 2\n1 0\n1 0\n");
    }

    #[test]
    fn header_claim_is_checked() {
        let err = load_structure("quandle 2\n1 0\n1 0\n").unwrap_err();
        assert!(matches!(err, FiniteError::AxiomsFail { theory: Theory::Quandle, .. }));
        assert!(load_structure("rack 2\n1 0\n1 0\n").is_ok());
        assert!(matches!(
            load_structure("rack 2\n0 0\n1 1\n"),
            Err(FiniteError::AxiomsFail { theory: Theory::Rack, .. })
        ));
        // a quandle is also a rack
        assert!(load_structure("rack 3\n0 2 1\n2 1 0\n1 0 2\n").is_ok());
    }

    #[test]
    fn format_errors() {
        let line_of = |text: &str| match parse_table_file(text) {
            Err(FiniteError::Format { line, .. }) => line,
            other => panic!("expected format error, got {other:?}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("group 2\n0 1\n1 0\n"), 1);
        assert_eq!(line_of("rack\n"), 1);
        assert_eq!(line_of("rack 0\n"), 1);
        assert_eq!(line_of("rack 2\n0 1\n1\n"), 3);
        assert_eq!(line_of("rack 2\n0 1\n1 2\n"), 3);
        assert_eq!(line_of("rack 2\n0 1\n1 a\n"), 3);
        assert_eq!(line_of("rack 2\n0 1\n"), 2);
        assert_eq!(line_of("rack 2\n0 1\n1 0\n0 1\n"), 4);
    }

    proptest! {
        #[test]
        fn write_then_parse(n in 1usize..6, seed in any::<u64>(), rack in any::<bool>()) {
            let cells: Vec<Vec<usize>> = (0..n)
                .map(|i| (0..n).map(|j| (seed.rotate_left((i * n + j) as u32) as usize) % n).collect())
                .collect();
            let table = OpTable::from_rows(&cells).unwrap();
            let theory = if rack { Theory::Rack } else { Theory::Quandle };
            let text = write_table(theory, &table);
            prop_assert_eq!(parse_table_file(&text).unwrap(), TableFile { theory, table });
        }
    }
}

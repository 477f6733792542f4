//! The `qk` command line.
//!
//! [`run`] takes the full argument vector and returns the exit status and
//! both output streams, so the binary is a thin wrapper and tests can call
//! it directly. Exit status: 0 on success, 1 on domain errors, 2 on usage
//! errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::classify::{classify, one_relator_test, Classification, ClassifyError, RelatorReport, Theory};
use crate::finite::{
    check_axioms, default_library, derived_operation, enumerate_structures, load_structure, parse_table_file,
    power_table, search_counterexample, write_table, FiniteError,
};
use crate::freealg::{quandle_nf, rack_nf};
use crate::term::{parse, ParseError, Word};

#[derive(Debug, Parser)]
#[command(name = "qk", version, about = "Endofunctors of quandles and racks")]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a word with its size and depth.
    Parse { expr: String },
    /// Left-multiplication normal form: prefix group word and base generator.
    Nf {
        #[arg(long)]
        theory: Theory,
        expr: String,
    },
    /// Classify a word over {x, y} as a power operation or a non-endofunctor.
    Classify {
        #[arg(long)]
        theory: Theory,
        expr: String,
        /// Print w1, w2, the relator and its cyclic reduction for power operations too.
        #[arg(long)]
        trace: bool,
    },
    /// Check a table file against the rack and quandle axioms.
    Check { file: PathBuf },
    /// Interpret a word over {x, y} on a table and check the result.
    Derive {
        expr: String,
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every row of a table by its k-th power.
    Power {
        file: PathBuf,
        #[arg(short = 'k', allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search bundled and enumerated structures for a finite counterexample.
    Oracle {
        expr: String,
        #[arg(long)]
        theory: Theory,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Enumerate racks or quandles of a given size.
    Enum {
        #[arg(long)]
        theory: Theory,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Finite(#[from] FiniteError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Classify(ClassifyError::WrongVariables(_)) => "WrongVariables",
            CliError::Classify(ClassifyError::CrossCheckFailed { .. }) => "CrossCheckFailed",
            CliError::Finite(e) => match e {
                FiniteError::MalformedTable(_) => "MalformedTable",
                FiniteError::AxiomsFail { .. } => "AxiomsFail",
                FiniteError::NotAGroup(_) => "NotAGroup",
                FiniteError::UnboundGenerator(_) => "UnboundGenerator",
                FiniteError::WrongVariables(_) => "WrongVariables",
                FiniteError::InternalInvariantViolation(_) => "InternalInvariantViolation",
                FiniteError::SizeLimitExceeded { .. } => "SizeLimitExceeded",
                FiniteError::Format { .. } => "FormatError",
            },
            CliError::Io { .. } => "IoError",
        }
    }
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(()) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => {
            let mut stderr = format!("error: {}: {e}\n", e.name());
            if let CliError::Parse(p) = &e {
                if let Some(expr) = expression_of(&cli.command) {
                    let _ = writeln!(stderr, "  {expr}\n  {}^", " ".repeat(p.offset));
                }
            }
            Outcome { code: 1, stdout: out, stderr }
        }
    }
}

fn expression_of(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Parse { expr }
        | Command::Nf { expr, .. }
        | Command::Classify { expr, .. }
        | Command::Derive { expr, .. }
        | Command::Oracle { expr, .. } => Some(expr),
        _ => None,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn rows_text(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn push_json(out: &mut String, value: serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(&value).expect("JSON values serialize"));
    out.push('\n');
}

fn push_report(out: &mut String, report: &RelatorReport) {
    let survivors: Vec<&str> = report.survivors.iter().map(|g| g.as_str()).collect();
    let _ = writeln!(out, "w1: {}", report.w1);
    let _ = writeln!(out, "w2: {}", report.w2);
    let _ = writeln!(out, "relator: {}", report.relator);
    let _ = writeln!(out, "cyclic reduction: {}", report.cyclically_reduced);
    let _ = writeln!(
        out,
        "survivors: {}",
        if survivors.is_empty() { "(none)".to_string() } else { survivors.join(" ") }
    );
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    match &cli.command {
        Command::Parse { expr } => {
            let w = parse(expr)?;
            if cli.json {
                push_json(out, json!({ "word": w, "size": w.size(), "depth": w.depth() }));
            } else {
                let _ = writeln!(out, "{w}\nsize: {}\ndepth: {}", w.size(), w.depth());
            }
        }
        Command::Nf { theory, expr } => {
            let w = parse(expr)?;
            let (prefix, base) = match theory {
                Theory::Quandle => {
                    let nf = quandle_nf(&w);
                    (nf.prefix, nf.base)
                }
                Theory::Rack => {
                    let nf = rack_nf(&w);
                    (nf.prefix, nf.base)
                }
            };
            if cli.json {
                push_json(out, json!({ "theory": theory, "word": w, "prefix": prefix, "base": base }));
            } else {
                let _ = writeln!(out, "prefix: {prefix}\nbase: {base}");
            }
        }
        Command::Classify { theory, expr, trace } => {
            let w = parse(expr)?;
            let class = classify(&w, *theory)?;
            classify_output(out, cli.json, *theory, &w, &class, *trace)?;
        }
        Command::Check { file } => {
            let parsed = parse_table_file(&read(file)?)?;
            let report = check_axioms(&parsed.table);
            if cli.json {
                push_json(out, json!({ "claimed": parsed.theory, "size": parsed.table.size(), "report": report }));
            } else {
                let _ = writeln!(out, "{report}");
            }
            if !report.satisfies(parsed.theory) {
                return Err(FiniteError::AxiomsFail { theory: parsed.theory, report }.into());
            }
        }
        Command::Derive { expr, file, out: dest } => {
            let w = parse(expr)?;
            let rack = load_structure(&read(file)?)?;
            let derived = derived_operation(&rack, &w)?;
            let report = check_axioms(&derived);
            if cli.json {
                push_json(out, json!({ "word": w, "table": derived, "report": report }));
            } else {
                let _ = writeln!(out, "{report}");
                out.push_str(&rows_text(&derived.rows()));
            }
            if let Some(dest) = dest {
                if !report.is_rack {
                    return Err(FiniteError::AxiomsFail { theory: Theory::Rack, report }.into());
                }
                let theory = if report.is_quandle { Theory::Quandle } else { Theory::Rack };
                write(dest, &write_table(theory, &derived))?;
            }
        }
        Command::Power { file, k, out: dest } => {
            let rack = load_structure(&read(file)?)?;
            let powered = power_table(&rack, *k);
            let text = write_table(powered.theory(), powered.table());
            if cli.json {
                push_json(out, json!({ "k": k, "theory": powered.theory(), "table": powered.table() }));
            } else {
                out.push_str(&text);
            }
            if let Some(dest) = dest {
                write(dest, &text)?;
            }
        }
        Command::Oracle { expr, theory, max_size } => {
            let w = parse(expr)?;
            let library = default_library();
            let found = search_counterexample(&w, *theory, &library, *max_size)?;
            if cli.json {
                push_json(out, json!({ "word": w, "theory": theory, "max_size": max_size, "counterexample": found }));
            } else {
                match found {
                    Some(c) => {
                        let _ = writeln!(out, "counterexample: {}", c.structure.label());
                        out.push_str(&write_table(c.structure.theory(), c.structure.table()));
                        let _ = writeln!(out, "derived: {}", c.report);
                        out.push_str(&rows_text(&c.derived.rows()));
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "no counterexample in the bundled library or enumerated {}s up to size {max_size}",
                            theory.keyword()
                        );
                    }
                }
            }
        }
        Command::Enum { theory, size, up_to_iso, emit } => {
            let structures = enumerate_structures(*theory, *size, *up_to_iso)?;
            let mut written = Vec::new();
            if let Some(dir) = emit {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                for (i, s) in structures.iter().enumerate() {
                    let path = dir.join(format!("{}{size}_{i:03}.{}", theory.keyword(), theory.keyword()));
                    write(&path, &write_table(*theory, s.table()))?;
                    written.push(path.display().to_string());
                }
            }
            if cli.json {
                let tables: Vec<_> = structures.iter().map(|s| s.table()).collect();
                push_json(
                    out,
                    json!({
                        "theory": theory,
                        "size": size,
                        "up_to_iso": up_to_iso,
                        "count": structures.len(),
                        "tables": tables,
                        "written": written,
                    }),
                );
            } else {
                let _ = writeln!(
                    out,
                    "{} {size}{}: {}",
                    theory.keyword(),
                    if *up_to_iso { " up to isomorphism" } else { " labeled" },
                    structures.len()
                );
                for path in written {
                    let _ = writeln!(out, "wrote {path}");
                }
            }
        }
    }
    Ok(())
}

fn classify_output(
    out: &mut String,
    json: bool,
    theory: Theory,
    w: &Word,
    class: &Classification,
    trace: bool,
) -> Result<(), CliError> {
    let report = match class {
        Classification::NotEndofunctor { trace } => Some(trace.report.clone()),
        _ if trace => Some(one_relator_test(w)?),
        _ => None,
    };
    if json {
        push_json(
            out,
            json!({ "theory": theory, "word": w, "classification": class, "report": report }),
        );
        return Ok(());
    }
    match class {
        Classification::QuandlePower { k } => {
            let _ = writeln!(out, "QuandlePower k={k}");
        }
        Classification::RackPower { k, j } => {
            let _ = writeln!(out, "RackPower k={k} j={j}");
        }
        Classification::NotEndofunctor { trace } => {
            let _ = writeln!(out, "NotEndofunctor reason={:?}", trace.reason);
        }
    }
    if let Some(report) = report {
        push_report(out, &report);
    }
    Ok(())
}

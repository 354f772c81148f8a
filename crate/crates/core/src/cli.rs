//! Command-line front end.
//!
//! A problem file declares the variable order on a `vars:` header and lists
//! one polynomial per line; `#` starts a comment. Every command prints one
//! report, either as a JSON document (with `"format": 1`) or as plain text.

use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebraic::Tower;
use crate::cad::{check_decomposition, project_levels, vcadl, Decomposition};
use crate::error::{Error, Result};
use crate::polyring::{format_polynomial, parse_polynomial, squarefree_basis, Polynomial, Rational};
use crate::projection::{compare_projections, ProjectionSet};
use crate::valuation::{lazard_evaluate, order_at, valuation_at};

/// Variable order plus polynomials, as read from a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub polynomials: Vec<Polynomial>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut variables: Option<Vec<String>> = None;
        let mut polynomials = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let Some(vars) = &variables else {
                let body = content.trim_start();
                let Some(list) = body.strip_prefix("vars:") else {
                    return Err(parse_error(line_no, indent + 1, "expected a `vars:` header"));
                };
                let mut names: Vec<String> = Vec::new();
                let mut col = indent + "vars:".len() + 1;
                for piece in list.split(',') {
                    let name = piece.trim();
                    let at = col + piece.len() - piece.trim_start().len();
                    if !is_identifier(name) {
                        return Err(parse_error(line_no, at, format!("invalid variable name {name:?}")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(parse_error(line_no, at, format!("duplicate variable {name:?}")));
                    }
                    names.push(name.to_string());
                    col += piece.len() + 1;
                }
                variables = Some(names);
                continue;
            };
            let p = parse_polynomial(content, vars).map_err(|e| match e {
                Error::Parse { column, message, .. } => parse_error(line_no, column, message),
                other => other,
            })?;
            if p.is_zero() {
                return Err(parse_error(line_no, indent + 1, "zero polynomial"));
            }
            polynomials.push(p);
        }
        let Some(variables) = variables else {
            return Err(parse_error(1, 1, "missing `vars:` header"));
        };
        if polynomials.is_empty() {
            return Err(Error::Empty("problem file (no polynomials)"));
        }
        Ok(ProblemFile {
            variables,
            polynomials,
        })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.variables[..p.nvars()])
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.variables.join(", "))?;
        for p in &self.polynomials {
            writeln!(f, "{}", self.format(p))?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of rationals such as `0,1/2,-3`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut col = 1;
    let mut out = Vec::new();
    for piece in text.split(',') {
        let t = piece.trim();
        let value = t
            .parse::<Rational>()
            .map_err(|_| parse_error(1, col, format!("not a rational number: {t:?}")))?;
        out.push(value);
        col += piece.len() + 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lazard", version, about = "Valuation-invariant CAD with the Lazard projection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decompose R^n and report cells, samples and signatures.
    Cad {
        file: PathBuf,
        /// Delineability probes per full-dimensional base cell (0 skips the check).
        #[arg(long, default_value_t = 0)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Project down level by level and report bases and projection sets.
    Project {
        file: PathBuf,
        /// Stop once the projection reaches this many variables.
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Lazard valuation of each polynomial at a point of R^n.
    Valuation {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Lazard evaluation of each polynomial at a point of R^{n-1}.
    Eval {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Compare the Brown-McCallum, Lazard and McCallum projections of the basis.
    CompareProjections { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cad { .. } => "cad",
            Command::Project { .. } => "project",
            Command::Valuation { .. } => "valuation",
            Command::Eval { .. } => "eval",
            Command::CompareProjections { .. } => "compare-projections",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Cad { file, .. }
            | Command::Project { file, .. }
            | Command::Valuation { file, .. }
            | Command::Eval { file, .. }
            | Command::CompareProjections { file } => file,
        }
    }
}

/// The outcome of one command: a structured payload plus a text rendering.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub counts: Value,
    pub payload: Value,
    pub text: String,
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn to_json(&self, problem: &ProblemFile) -> Value {
        let mut doc = json!({
            "format": 1,
            "command": self.command,
            "variables": problem.variables,
            "inputs": problem.polynomials.iter().map(|p| problem.format(p)).collect::<Vec<_>>(),
            "counts": self.counts,
            "payload": self.payload,
        });
        if let Some(ms) = self.elapsed_ms {
            doc["timing_ms"] = json!(ms);
        }
        doc
    }
}

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

fn projection_json(problem: &ProblemFile, set: &ProjectionSet) -> Value {
    Value::Array(
        set.entries()
            .iter()
            .map(|e| {
                json!({
                    "polynomial": problem.format(&e.polynomial),
                    "provenance": e.provenance,
                })
            })
            .collect(),
    )
}

fn projection_text(problem: &ProblemFile, set: &ProjectionSet, out: &mut String) {
    for e in set.entries() {
        let prov: Vec<String> = e
            .provenance
            .iter()
            .map(|p| {
                let src: Vec<String> = p.sources.iter().map(usize::to_string).collect();
                format!("{}[{}]", p.kind, src.join(","))
            })
            .collect();
        out.push_str(&format!("    {}  <- {}\n", problem.format(&e.polynomial), prov.join(" ")));
    }
}

fn cad_report(problem: &ProblemFile, d: &Decomposition, probes: usize, seed: u64) -> Result<RunReport> {
    let mut levels = Vec::new();
    let mut text = String::new();
    for level in &d.levels {
        levels.push(json!({
            "level": level.level,
            "cells": level.cell_count(),
            "basis": level.basis.iter().map(|p| problem.format(p)).collect::<Vec<_>>(),
            "projection": level.projection.as_ref().map(|s| projection_json(problem, s)),
        }));
    }
    let cells: Vec<Value> = d
        .cells()
        .map(|c| {
            let sigs: Vec<Value> = problem
                .polynomials
                .iter()
                .zip(&c.signatures)
                .map(|(p, s)| json!({"polynomial": problem.format(p), "sign": s.sign, "valuation": s.valuation}))
                .collect();
            json!({
                "index": c.index,
                "kind": if c.is_section() { "section" } else { "sector" },
                "sample": c.sample,
                "signatures": sigs,
            })
        })
        .collect();
    text.push_str(&format!("{} cells in R^{}\n", d.cell_count(), d.dimension));
    for level in d.levels.iter().rev() {
        text.push_str(&format!("level {}: {} cells, basis {{", level.level, level.cell_count()));
        let b: Vec<String> = level.basis.iter().map(|p| problem.format(p)).collect();
        text.push_str(&b.join(", "));
        text.push_str("}\n");
        if let Some(set) = &level.projection {
            text.push_str(&format!("  projection ({} polynomials):\n", set.len()));
            projection_text(problem, set, &mut text);
        }
    }
    text.push_str("cells:\n");
    for c in d.cells() {
        let sigs: Vec<String> = c.signatures.iter().map(|s| format!("{} {}", s.sign, s.valuation)).collect();
        text.push_str(&format!(
            "  {:<14} {:<8} {:<32} {}\n",
            c.index.to_string(),
            if c.is_section() { "section" } else { "sector" },
            c.sample.to_string(),
            sigs.join("  ")
        ));
    }
    let mut payload = json!({
        "stack_profile": d.stack_profile(),
        "levels": levels,
        "cells": cells,
    });
    let mut counts = json!({
        "cells": d.cell_count(),
        "cells_per_level": d.levels.iter().map(|l| l.cell_count()).collect::<Vec<_>>(),
    });
    if probes > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let verdicts = check_decomposition(d, probes, &mut rng)?;
        let failures = verdicts.iter().filter(|(_, v)| !v.delineable()).count();
        let rows: Vec<Value> = verdicts
            .iter()
            .map(|(f, v)| {
                json!({
                    "polynomial": problem.format(f),
                    "cell": v.cell,
                    "valuation": v.valuation,
                    "multiplicities": v.multiplicities,
                    "delineable": v.delineable(),
                    "counterexample": v.counterexample.as_ref().map(|c| json!({
                        "point": c.point.iter().map(rational_str).collect::<Vec<_>>(),
                        "valuation": c.valuation,
                        "multiplicities": c.multiplicities,
                    })),
                })
            })
            .collect();
        payload["delineability"] = json!({"probes": probes, "seed": seed, "checks": rows});
        counts["delineability_checks"] = json!(verdicts.len());
        counts["delineability_failures"] = json!(failures);
        text.push_str(&format!(
            "delineability: {} checks with {} probes each, {} failures\n",
            verdicts.len(),
            probes,
            failures
        ));
        for (f, v) in verdicts.iter().filter(|(_, v)| !v.delineable()) {
            text.push_str(&format!("  {} over {}: counterexample\n", problem.format(f), v.cell));
        }
    }
    Ok(RunReport {
        command: "cad".into(),
        counts,
        payload,
        text,
        elapsed_ms: None,
    })
}

fn check_point_len(point: &[Rational], expected: usize) -> Result<()> {
    if point.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: point.len(),
        });
    }
    Ok(())
}

/// Runs `command` on an already parsed problem.
pub fn run_command(problem: &ProblemFile, command: &Command) -> Result<RunReport> {
    let n = problem.nvars();
    match command {
        Command::Cad { probes, seed, .. } => {
            let d = vcadl(&problem.polynomials, n)?;
            cad_report(problem, &d, *probes, *seed)
        }
        Command::Project { max_level, .. } => {
            let stop = max_level.unwrap_or(1);
            if stop == 0 || stop > n {
                return Err(Error::InvalidArgument(format!("--max-level must be between 1 and {n}")));
            }
            let levels = project_levels(&problem.polynomials, n, stop)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for l in &levels {
                let basis: Vec<String> = l.basis.iter().map(|p| problem.format(p)).collect();
                text.push_str(&format!("level {}: basis {{{}}}\n", l.level, basis.join(", ")));
                if let Some(set) = &l.projection {
                    text.push_str(&format!("  projection to level {} ({} polynomials):\n", l.level - 1, set.len()));
                    projection_text(problem, set, &mut text);
                }
                rows.push(json!({
                    "level": l.level,
                    "basis": basis,
                    "projection": l.projection.as_ref().map(|s| projection_json(problem, s)),
                }));
            }
            let sizes: Vec<usize> = levels.iter().filter_map(|l| l.projection.as_ref().map(ProjectionSet::len)).collect();
            Ok(RunReport {
                command: "project".into(),
                counts: json!({"levels": levels.len(), "projection_sizes": sizes}),
                payload: json!({"levels": rows}),
                text,
                elapsed_ms: None,
            })
        }
        Command::Valuation { point, .. } => {
            let alpha = parse_point(point)?;
            check_point_len(&alpha, n)?;
            let tower = Tower::from_rationals(&alpha);
            let mut rows = Vec::new();
            let mut text = String::new();
            for p in &problem.polynomials {
                let v = valuation_at(p, &tower)?;
                let ord = order_at(p, &alpha)?;
                text.push_str(&format!("{}: valuation {} order {}\n", problem.format(p), v, ord));
                rows.push(json!({"polynomial": problem.format(p), "valuation": v, "order": ord}));
            }
            Ok(RunReport {
                command: "valuation".into(),
                counts: json!({"polynomials": rows.len()}),
                payload: json!({
                    "point": alpha.iter().map(rational_str).collect::<Vec<_>>(),
                    "results": rows,
                }),
                text,
                elapsed_ms: None,
            })
        }
        Command::Eval { point, .. } => {
            let alpha = parse_point(point)?;
            check_point_len(&alpha, n.saturating_sub(1))?;
            let tower = Tower::from_rationals(&alpha);
            let mut rows = Vec::new();
            let mut text = String::new();
            for p in &problem.polynomials {
                let r = lazard_evaluate(p, &tower)?;
                let residual = problem.format(&r.reduced_residual());
                text.push_str(&format!("{}: residual {} valuation {}\n", problem.format(p), residual, r.valuation));
                rows.push(json!({"polynomial": problem.format(p), "residual": residual, "valuation": r.valuation}));
            }
            Ok(RunReport {
                command: "eval".into(),
                counts: json!({"polynomials": rows.len()}),
                payload: json!({
                    "point": alpha.iter().map(rational_str).collect::<Vec<_>>(),
                    "results": rows,
                }),
                text,
                elapsed_ms: None,
            })
        }
        Command::CompareProjections { .. } => {
            let basis = squarefree_basis(&problem.polynomials, n - 1)?;
            let c = compare_projections(&basis)?;
            let lazard_only: Vec<String> = c.lazard_only.iter().map(|p| problem.format(p)).collect();
            let mccallum_only: Vec<String> = c.mccallum_only.iter().map(|p| problem.format(p)).collect();
            let mut text = String::new();
            for s in &c.stats {
                text.push_str(&format!(
                    "{:<16} size {:>3}  max degree {:>3}  degree sum {:>4}\n",
                    s.operator.to_string(),
                    s.size,
                    s.max_total_degree,
                    s.sum_total_degree
                ));
            }
            text.push_str(&format!(
                "brown-mccallum in lazard: {} (strict: {})\nlazard in mccallum: {} (strict: {})\n",
                c.brown_mccallum_in_lazard, c.brown_mccallum_strictly_smaller, c.lazard_in_mccallum, c.lazard_strictly_smaller
            ));
            let mut payload = serde_json::to_value(&c).map_err(|e| Error::Invariant(e.to_string()))?;
            payload["lazard_only"] = json!(lazard_only);
            payload["mccallum_only"] = json!(mccallum_only);
            Ok(RunReport {
                command: "compare-projections".into(),
                counts: json!({"basis": basis.len()}),
                payload,
                text,
                elapsed_ms: None,
            })
        }
    }
}

fn read_problem(path: &PathBuf) -> std::result::Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// code: 0 on success, 1 for bad input, 2 for an internal failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let text = match read_problem(cli.command.file()) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    let problem = match ProblemFile::parse(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let start = Instant::now();
    let mut report = match run_command(&problem, &cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {} failed: {e}", cli.command.name());
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let written = match cli.output {
        OutputFormat::Json => serde_json::to_string_pretty(&report.to_json(&problem))
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}")),
        OutputFormat::Text => {
            let mut s = report.text.clone();
            if let Some(ms) = report.elapsed_ms {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
            write!(out, "{s}")
        }
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: writing output: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_problem_files() {
        let p = ProblemFile::parse("vars: x, y\nx^2 + y^2 - 1\n").unwrap();
        assert_eq!(p.variables, vec!["x", "y"]);
        assert_eq!(p.polynomials.len(), 1);
        let p = ProblemFile::parse("# example\nvars: x, y, z, w\n\ny*w^2 + x*w - y*z^2  # f\n").unwrap();
        assert_eq!(p.to_string(), "vars: x, y, z, w\ny*w^2 - y*z^2 + x*w\n");
        assert_eq!(ProblemFile::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        let err = |s: &str| ProblemFile::parse(s).unwrap_err();
        assert!(matches!(err("vars: x\n0"), Error::Parse { line: 2, .. }));
        assert!(matches!(err("vars: x\n"), Error::Empty(_)));
        assert!(matches!(err("vars: x, x\nx"), Error::Parse { line: 1, column: 10, .. }));
        assert!(matches!(err("x^2\n"), Error::Parse { line: 1, .. }));
        match err("vars: x, y\nx + z") {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0, 1/2,-3").unwrap().len(), 3);
        assert!(parse_point("0,a").is_err());
    }
}

//! The `al` command-line driver.
//!
//! Exit codes: 0 = everything checked, 1 = a theorem or axiom failed,
//! 2 = usage, I/O or parse error.

use std::path::Path;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{
    boolean_model, check_model, degenerate_model, eval, AbstractionAlgebra, OperationTable, Valuation,
};
use crate::syntax::{parse_term, print_term, Span, Style};
use crate::term::{Term, VarOcc};
use crate::theory::{check_source, BlockKind, BlockReport, CheckedTheory, Diagnostic, Severity, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "al", about = "Check Abstraction Logic theories and evaluate terms in finite models")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Print terms with glyphs instead of ASCII names.
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kernel-check every theorem in a theory file.
    Check { file: String },
    /// Check the axioms (and proved theorems) of a theory in a finite model.
    ModelCheck {
        file: String,
        /// `boolean`, `degenerate`, a model block of FILE, or a path to a
        /// `.al` file whose first model block is used.
        #[arg(long, default_value = "boolean")]
        model: String,
        /// Free variables of arity above this are rejected.
        #[arg(long, default_value_t = 2)]
        arity_cap: usize,
    },
    /// Evaluate a term in a finite model.
    Eval {
        file: String,
        #[arg(long)]
        term: String,
        #[arg(long, default_value = "boolean")]
        model: String,
        /// Comma-separated `x=V` or `f/1=[V V]` assignments; unassigned
        /// variables denote the constant first value.
        #[arg(long, default_value = "")]
        assign: String,
    },
}

#[derive(Serialize)]
struct Report<'a> {
    file: &'a str,
    blocks: &'a [BlockReport],
}

#[derive(Serialize)]
struct EvalReport<'a> {
    file: &'a str,
    term: String,
    value: &'a str,
}

struct Usage(String);

/// Runs one `al` invocation; `argv[0]` is the program name.
pub fn execute_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let style = if cli.unicode { Style::Unicode } else { Style::Ascii };
    let result = match &cli.command {
        Command::Check { file } => run_check(file, cli.json),
        Command::ModelCheck { file, model, arity_cap } => run_model_check(file, model, *arity_cap, cli.json, style),
        Command::Eval { file, term, model, assign } => run_eval(file, term, model, assign, cli.json, style),
    };
    match result {
        Ok(out) => out,
        Err(Usage(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
    }
}

fn load(file: &str) -> Result<(String, CheckedTheory), (i32, String)> {
    let src = std::fs::read_to_string(file).map_err(|e| (EXIT_USAGE, format!("error: cannot read {file}: {e}\n")))?;
    match check_source(&src) {
        Ok(c) => Ok((src, c)),
        Err(d) => Err((EXIT_USAGE, format!("{}\n", d.render(file)))),
    }
}

fn render(file: &str, blocks: &[BlockReport], json: bool) -> (i32, String) {
    let ok = blocks.iter().all(|b| b.verdict == Verdict::Pass);
    let code = if ok { EXIT_OK } else { EXIT_FAIL };
    if json {
        let s = serde_json::to_string_pretty(&Report { file, blocks }).expect("serializable");
        return (code, s + "\n");
    }
    let mut out = String::new();
    for b in blocks {
        let verdict = match b.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let kind = serde_json::to_value(b.kind).expect("serializable");
        out.push_str(&format!("{verdict} {} {}\n", kind.as_str().unwrap_or_default(), b.name));
        for d in &b.diagnostics {
            out.push_str(&format!("  {}\n", d.render(file)));
        }
    }
    let passed = blocks.iter().filter(|b| b.verdict == Verdict::Pass).count();
    out.push_str(&format!("{}: {}, {passed}/{} blocks\n", file, if ok { "PASS" } else { "FAIL" }, blocks.len()));
    (code, out)
}

fn run_check(file: &str, json: bool) -> Result<(i32, String), Usage> {
    let (_, checked) = match load(file) {
        Ok(x) => x,
        Err(out) => return Ok(out),
    };
    Ok(render(file, &checked.blocks, json))
}

fn resolve_model(checked: &CheckedTheory, model: &str) -> Result<AbstractionAlgebra, Usage> {
    let sig = checked.logic().signature();
    let alg = match model {
        "boolean" => boolean_model(),
        "degenerate" => return Ok(degenerate_model(sig)),
        name => match checked.model(name) {
            Some(m) => m.clone(),
            None if Path::new(name).exists() => {
                let src = std::fs::read_to_string(name).map_err(|e| Usage(format!("cannot read {name}: {e}")))?;
                let other = check_source(&src).map_err(|d| Usage(d.render(name)))?;
                match other.models.first() {
                    Some((_, m)) => m.clone(),
                    None => return Err(Usage(format!("{name} contains no model block"))),
                }
            }
            None => return Err(Usage(format!("no model named `{name}` and no such file"))),
        },
    };
    alg.restrict(sig).map_err(|_| {
        Usage(format!("model `{model}` does not interpret every abstraction of {}", checked.logic().name()))
    })
}

fn run_model_check(
    file: &str,
    model: &str,
    arity_cap: usize,
    json: bool,
    style: Style,
) -> Result<(i32, String), Usage> {
    let (_, checked) = match load(file) {
        Ok(x) => x,
        Err(out) => return Ok(out),
    };
    let alg = resolve_model(&checked, model)?;
    let logic = checked.logic();
    let mut named: Vec<(String, BlockKind, Term)> =
        logic.axioms().iter().map(|a| (a.label.clone(), BlockKind::Axiom, a.term.clone())).collect();
    named.extend(checked.theorems.iter().map(|t| (t.name.clone(), BlockKind::Theorem, t.theorem.statement().clone())));
    let terms: Vec<Term> = named.iter().map(|(_, _, t)| t.clone()).collect();
    let report = check_model(&alg, &terms, arity_cap).map_err(|e| Usage(format!("model `{model}`: {e}")))?;
    let universe = alg.universe();
    let blocks: Vec<BlockReport> = named
        .iter()
        .zip(&report.verdicts)
        .map(|((name, kind, _), v)| {
            let diagnostics = match &v.counterexample {
                None => Vec::new(),
                Some(cx) => {
                    let nu: Vec<String> =
                        cx.valuation.iter().map(|(var, t)| format!("{var} := {}", t.display(universe))).collect();
                    let nu = if nu.is_empty() { "any valuation".to_string() } else { nu.join(", ") };
                    vec![Diagnostic {
                        severity: Severity::Error,
                        span: Span::default(),
                        message: format!(
                            "{} evaluates to {} under {nu}",
                            print_term(&v.axiom, style),
                            universe.name(cx.value)
                        ),
                        code: "counterexample",
                    }]
                }
            };
            BlockReport {
                name: name.clone(),
                kind: *kind,
                verdict: if v.passed() { Verdict::Pass } else { Verdict::Fail },
                diagnostics,
            }
        })
        .collect();
    let (code, mut out) = render(file, &blocks, json);
    if !json {
        let axioms = logic.axioms().len();
        let passed = report.verdicts[..axioms].iter().filter(|v| v.passed()).count();
        out.push_str(&format!(
            "model {model}: {}, {passed}/{axioms} axioms\n",
            if code == EXIT_OK { "PASS" } else { "FAIL" }
        ));
    }
    Ok((code, out))
}

fn parse_assignments(spec: &str, alg: &AbstractionAlgebra) -> Result<Valuation, Usage> {
    let universe = alg.universe();
    let value = |name: &str| universe.value(name).ok_or_else(|| Usage(format!("`{name}` is not a value of the model")));
    let mut nu = Valuation::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lhs, rhs) =
            part.split_once('=').ok_or_else(|| Usage(format!("assignment `{part}` is not of the form x=V")))?;
        let (name, arity) = match lhs.trim().split_once('/') {
            Some((n, a)) => (n, a.parse().map_err(|_| Usage(format!("bad arity in `{part}`")))?),
            None => (lhs.trim(), 0),
        };
        let rhs = rhs.trim();
        let entries = match rhs.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            Some(inner) => inner.split_whitespace().map(value).collect::<Result<Vec<_>, _>>()?,
            None => vec![value(rhs)?],
        };
        let table =
            OperationTable::from_entries(arity, alg.carrier(), entries).map_err(|e| Usage(format!("`{part}`: {e}")))?;
        nu.set(VarOcc::new(name, arity), table).map_err(|e| Usage(format!("`{part}`: {e}")))?;
    }
    Ok(nu)
}

fn run_eval(
    file: &str,
    term: &str,
    model: &str,
    assign: &str,
    json: bool,
    style: Style,
) -> Result<(i32, String), Usage> {
    let (_, checked) = match load(file) {
        Ok(x) => x,
        Err(out) => return Ok(out),
    };
    let alg = resolve_model(&checked, model)?;
    let t = parse_term(term, checked.logic().signature()).map_err(|e| Usage(format!("--term: {e}")))?;
    let nu = parse_assignments(assign, &alg)?;
    let v = eval(&alg, &nu, &t).map_err(|e| Usage(e.to_string()))?;
    let name = alg.universe().name(v);
    if json {
        let r = EvalReport { file, term: print_term(&t, style), value: name };
        return Ok((EXIT_OK, serde_json::to_string_pretty(&r).expect("serializable") + "\n"));
    }
    Ok((EXIT_OK, format!("{name}\n")))
}

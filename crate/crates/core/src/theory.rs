//! Theory files (`.al`): a base logic, extensions, theorems with proof
//! scripts and finite model descriptions.
//!
//! ```text
//! logic K                       # or: logic P on I
//!
//! extend Inc {
//!   abstraction fail : (0;)
//!   axiom X : all x. x
//! }
//!
//! theorem id : A -> A
//! proof
//!   s1: by ax D2                         # target omitted: computed
//!   s2: A -> ((A -> A) -> A) by subst s1 { B := A -> A }
//!   s3: by mp h g                        # h, g name earlier steps
//!   s4: (all x. A) by all x s3
//!   s5: by lemma other_theorem
//! qed
//!
//! model two {
//!   values T F
//!   true := T                            # constant
//!   imp := [T F T T]                     # entries in argument-index order
//!   all := default F { ([T T]) -> T }    # default plus exceptions
//! }
//! ```
//!
//! Items are elaborated in order; an `extend` block replaces the current logic
//! by an extension of it, and theorems proved so far carry over.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AbstractionAlgebra, OperationTable, OperatorImpl, Universe, Value};
use crate::kernel::{self, AxRef, KernelError, KernelErrorKind, Proof, Theorem};
use crate::logics::{builtin_by_name, is_extension, peano, Logic, LogicError, PeanoBase};
use crate::signature::{AbstractionDecl, Shape, Signature, ALL, IMP};
use crate::subst::{apply_subst, Substitution};
use crate::syntax::parser::Parser;
use crate::syntax::{print_term, tokenize, ParseError, ParseErrorKind, Span, Style, Tok, Token};
use crate::term::{alpha_eq, Term};

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryFile {
    pub header: Header,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub base: String,
    pub on: Option<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Extend(ExtendBlock),
    Theorem(TheoremBlock),
    Model(ModelBlock),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendBlock {
    pub name: Option<String>,
    pub entries: Vec<ExtendEntry>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExtendEntry {
    Abstraction { name: String, shape: Shape, span: Span },
    Axiom { label: String, term: Term, span: Span },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremBlock {
    pub name: String,
    pub statement: Term,
    pub steps: Vec<Step>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub name: String,
    pub target: Option<Term>,
    pub rule: Rule,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Ax(Option<String>),
    Subst { premise: String, sigma: Substitution },
    Mp { h: String, g: String },
    All { binder: String, premise: String },
    Lemma(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelBlock {
    pub name: String,
    pub values: Vec<String>,
    pub entries: Vec<ModelEntry>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelEntry {
    pub name: String,
    pub table: ModelTable,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelTable {
    Constant(String),
    Flat(Vec<String>),
    Cases { default: String, cases: Vec<(Vec<ModelArg>, String)> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelArg {
    Value(String),
    Table(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub message: String,
    pub code: &'static str,
}

impl Diagnostic {
    pub fn error(code: &'static str, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Error, span, message: message.into(), code }
    }

    pub fn render(&self, file: &str) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        if self.span.line == 0 {
            format!("{file}: {sev}[{}]: {}", self.code, self.message)
        } else {
            format!("{file}:{}: {sev}[{}]: {}", self.span, self.code, self.message)
        }
    }
}

impl From<ParseError> for Diagnostic {
    fn from(e: ParseError) -> Self {
        let code = match &e.kind {
            ParseErrorKind::Syntax(_) => "syntax",
            ParseErrorKind::UnknownName(_) => "unknown-name",
            ParseErrorKind::Term(_) => "ill-formed",
            ParseErrorKind::Shape(_) => "bad-shape",
            ParseErrorKind::Signature(_) => "signature",
            ParseErrorKind::Subst(_) => "bad-substitution",
        };
        Diagnostic::error(code, e.span, e.kind.to_string())
    }
}

fn kernel_diagnostic(e: &KernelError, span: Span) -> Diagnostic {
    Diagnostic::error(e.kind.code(), span, e.kind.to_string())
}

fn base_logic(base: &str, on: Option<&str>) -> Result<&'static Logic, LogicError> {
    match (base, on) {
        (_, None) => builtin_by_name(base),
        ("P", Some("I")) => Ok(peano(PeanoBase::I)),
        ("P", Some("K")) => Ok(peano(PeanoBase::K)),
        (_, Some(other)) => Err(LogicError::UnknownLogic(format!("{base} on {other}"))),
    }
}

struct TheoryParser {
    toks: Vec<Token>,
    pos: usize,
    sig: Signature,
}

impl TheoryParser {
    fn with<T>(&mut self, f: impl FnOnce(&mut Parser<'_>) -> Result<T, ParseError>) -> Result<T, ParseError> {
        let mut p = Parser::from_tokens(std::mem::take(&mut self.toks), self.pos, &self.sig);
        let out = f(&mut p);
        (self.toks, self.pos) = p.into_tokens();
        out
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn word(&mut self, w: &str) -> Result<(), ParseError> {
        self.with(|p| p.expect_keyword(w))
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.with(|p| p.expect_ident())
    }

    fn sym(&mut self, s: &str) -> Result<(), ParseError> {
        self.with(|p| p.expect_sym(s))
    }

    fn eat(&mut self, s: &str) -> bool {
        self.with(|p| Ok(p.eat_sym(s))).unwrap_or(false)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.with(|p| p.term())
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { kind: ParseErrorKind::Syntax(msg.into()), span: self.span() })
    }

    fn file(&mut self) -> Result<TheoryFile, ParseError> {
        let span = self.span();
        self.word("logic")?;
        let base = self.ident()?;
        let on = if self.at_word("on") {
            self.word("on")?;
            Some(self.ident()?)
        } else {
            None
        };
        let logic = base_logic(&base, on.as_deref())
            .map_err(|e| ParseError { kind: ParseErrorKind::UnknownName(e.to_string()), span })?;
        self.sig = logic.signature().clone();
        let header = Header { base, on, span };
        let mut items = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(w) if w == "extend" => items.push(Item::Extend(self.extend()?)),
                Tok::Ident(w) if w == "theorem" => items.push(Item::Theorem(self.theorem()?)),
                Tok::Ident(w) if w == "model" => items.push(Item::Model(self.model()?)),
                other => return self.syntax(format!("expected `extend`, `theorem` or `model`, found {other}")),
            }
        }
        Ok(TheoryFile { header, items })
    }

    fn extend(&mut self) -> Result<ExtendBlock, ParseError> {
        let span = self.span();
        self.word("extend")?;
        let name = if matches!(self.peek(), Tok::Ident(_)) { Some(self.ident()?) } else { None };
        self.sym("{")?;
        let mut entries = Vec::new();
        while !self.eat("}") {
            let span = self.span();
            if self.at_word("abstraction") {
                self.word("abstraction")?;
                let name = self.ident()?;
                self.sym(":")?;
                let shape = self.with(|p| p.shape())?;
                let decl = AbstractionDecl::new(name.clone(), shape.clone());
                self.sig = self.sig.extend([decl]).map_err(|e| ParseError { kind: e.into(), span })?;
                entries.push(ExtendEntry::Abstraction { name, shape, span });
            } else if self.at_word("axiom") {
                self.word("axiom")?;
                let label = self.ident()?;
                self.sym(":")?;
                let term = self.term()?;
                entries.push(ExtendEntry::Axiom { label, term, span });
            } else {
                return self.syntax(format!("expected `abstraction`, `axiom` or `}}`, found {}", self.peek()));
            }
        }
        Ok(ExtendBlock { name, entries, span })
    }

    fn theorem(&mut self) -> Result<TheoremBlock, ParseError> {
        let span = self.span();
        self.word("theorem")?;
        let name = self.ident()?;
        self.sym(":")?;
        let statement = self.term()?;
        self.word("proof")?;
        let mut steps = Vec::new();
        while !self.at_word("qed") {
            if matches!(self.peek(), Tok::Eof) {
                return self.syntax("expected `qed`");
            }
            steps.push(self.step()?);
        }
        self.word("qed")?;
        Ok(TheoremBlock { name, statement, steps, span })
    }

    fn step(&mut self) -> Result<Step, ParseError> {
        let span = self.span();
        let name = self.ident()?;
        self.sym(":")?;
        let target = if self.at_word("by") { None } else { Some(self.term()?) };
        self.word("by")?;
        let rule_span = self.span();
        let rule = match self.ident()?.as_str() {
            "ax" => {
                let label_follows =
                    matches!(self.peek(), Tok::Ident(w) if w != "qed") && !matches!(self.peek_at(1), Tok::Sym(":"));
                Rule::Ax(if label_follows { Some(self.ident()?) } else { None })
            }
            "subst" => {
                let premise = self.ident()?;
                let sigma = self.with(|p| p.substitution())?;
                Rule::Subst { premise, sigma }
            }
            "mp" => {
                let h = self.ident()?;
                let g = self.ident()?;
                Rule::Mp { h, g }
            }
            "all" => {
                let binder = self.with(|p| p.variable_name())?;
                let premise = self.ident()?;
                Rule::All { binder, premise }
            }
            "lemma" => Rule::Lemma(self.ident()?),
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!(
                        "unknown rule `{other}` (expected ax, subst, mp, all or lemma)"
                    )),
                    span: rule_span,
                })
            }
        };
        Ok(Step { name, target, rule, span })
    }

    fn value_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.sym("[")?;
        let mut vs = Vec::new();
        while !self.eat("]") {
            vs.push(self.ident()?);
        }
        Ok(vs)
    }

    fn model(&mut self) -> Result<ModelBlock, ParseError> {
        let span = self.span();
        self.word("model")?;
        let name = self.ident()?;
        self.sym("{")?;
        self.word("values")?;
        let mut values = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) && !matches!(self.peek_at(1), Tok::Sym(":=")) {
            values.push(self.ident()?);
        }
        let mut entries = Vec::new();
        while !self.eat("}") {
            let span = self.span();
            let name = self.ident()?;
            self.sym(":=")?;
            let table = if matches!(self.peek(), Tok::Sym("[")) {
                ModelTable::Flat(self.value_list()?)
            } else if self.at_word("default") && matches!(self.peek_at(2), Tok::Sym("{")) {
                self.word("default")?;
                let default = self.ident()?;
                self.sym("{")?;
                let mut cases = Vec::new();
                while !self.eat("}") {
                    self.sym("(")?;
                    let mut args = Vec::new();
                    if !self.eat(")") {
                        loop {
                            if matches!(self.peek(), Tok::Sym("[")) {
                                args.push(ModelArg::Table(self.value_list()?));
                            } else {
                                args.push(ModelArg::Value(self.ident()?));
                            }
                            if self.eat(")") {
                                break;
                            }
                            self.sym(",")?;
                        }
                    }
                    self.sym("->")?;
                    cases.push((args, self.ident()?));
                }
                ModelTable::Cases { default, cases }
            } else {
                ModelTable::Constant(self.ident()?)
            };
            entries.push(ModelEntry { name, table, span });
        }
        Ok(ModelBlock { name, values, entries, span })
    }
}

/// Parses a theory file; stops at the first error.
pub fn parse_theory(src: &str) -> Result<TheoryFile, Diagnostic> {
    let toks = tokenize(src).map_err(ParseError::from)?;
    let mut p = TheoryParser { toks, pos: 0, sig: Signature::empty() };
    Ok(p.file()?)
}

fn print_sigma(sigma: &Substitution, style: Style) -> String {
    let parts: Vec<String> = sigma
        .iter()
        .map(|(v, t)| {
            let body = print_term(t.body(), style);
            if t.params().is_empty() && v.arity == 0 {
                format!("{v} := {body}")
            } else {
                format!("{v} := [{}. {body}]", t.params().join(" "))
            }
        })
        .collect();
    if parts.is_empty() {
        "{}".into()
    } else {
        format!("{{ {} }}", parts.join(", "))
    }
}

/// Prints a theory file in a form [`parse_theory`] reads back unchanged.
pub fn print_theory(file: &TheoryFile, style: Style) -> String {
    let mut out = String::new();
    let h = &file.header;
    match &h.on {
        Some(on) => writeln!(out, "logic {} on {on}", h.base),
        None => writeln!(out, "logic {}", h.base),
    }
    .unwrap();
    for item in &file.items {
        out.push('\n');
        match item {
            Item::Extend(b) => {
                match &b.name {
                    Some(n) => writeln!(out, "extend {n} {{").unwrap(),
                    None => out.push_str("extend {\n"),
                }
                for e in &b.entries {
                    match e {
                        ExtendEntry::Abstraction { name, shape, .. } => {
                            writeln!(out, "  abstraction {name} : {shape}").unwrap()
                        }
                        ExtendEntry::Axiom { label, term, .. } => {
                            writeln!(out, "  axiom {label} : {}", print_term(term, style)).unwrap()
                        }
                    }
                }
                out.push_str("}\n");
            }
            Item::Theorem(t) => {
                writeln!(out, "theorem {} : {}", t.name, print_term(&t.statement, style)).unwrap();
                out.push_str("proof\n");
                for s in &t.steps {
                    let target = s.target.as_ref().map(|t| format!("{} ", print_term(t, style)));
                    let rule = match &s.rule {
                        Rule::Ax(None) => "ax".to_string(),
                        Rule::Ax(Some(l)) => format!("ax {l}"),
                        Rule::Subst { premise, sigma } => {
                            format!("subst {premise} {}", print_sigma(sigma, style))
                        }
                        Rule::Mp { h, g } => format!("mp {h} {g}"),
                        Rule::All { binder, premise } => format!("all {binder} {premise}"),
                        Rule::Lemma(n) => format!("lemma {n}"),
                    };
                    writeln!(out, "  {}: {}by {rule}", s.name, target.unwrap_or_default()).unwrap();
                }
                out.push_str("qed\n");
            }
            Item::Model(m) => {
                writeln!(out, "model {} {{", m.name).unwrap();
                writeln!(out, "  values {}", m.values.join(" ")).unwrap();
                for e in &m.entries {
                    let table = match &e.table {
                        ModelTable::Constant(v) => v.clone(),
                        ModelTable::Flat(vs) => format!("[{}]", vs.join(" ")),
                        ModelTable::Cases { default, cases } => {
                            let cases: Vec<String> = cases
                                .iter()
                                .map(|(args, v)| {
                                    let args: Vec<String> = args
                                        .iter()
                                        .map(|a| match a {
                                            ModelArg::Value(v) => v.clone(),
                                            ModelArg::Table(vs) => format!("[{}]", vs.join(" ")),
                                        })
                                        .collect();
                                    format!("({}) -> {v}", args.join(", "))
                                })
                                .collect();
                            format!("default {default} {{ {} }}", cases.join(" "))
                        }
                    };
                    writeln!(out, "  {} := {table}", e.name).unwrap();
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Logic,
    Extend,
    Axiom,
    Theorem,
    Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub name: String,
    pub kind: BlockKind,
    pub verdict: Verdict,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone)]
pub struct CheckedTheorem {
    pub name: String,
    pub theorem: Theorem,
    /// The proof as a tree of the four rules; lemma references appear as
    /// `Proof::Lemma`.
    pub proof: Proof,
    /// Index into [`CheckedTheory::logics`] of the logic it was proved in.
    pub logic: usize,
}

/// Result of elaborating a theory file.
#[derive(Debug, Clone)]
pub struct CheckedTheory {
    /// The base logic followed by each successful extension.
    pub logics: Vec<Logic>,
    pub theorems: Vec<CheckedTheorem>,
    pub models: Vec<(String, AbstractionAlgebra)>,
    pub blocks: Vec<BlockReport>,
}

impl CheckedTheory {
    /// The logic in force at the end of the file.
    pub fn logic(&self) -> &Logic {
        self.logics.last().expect("base logic")
    }

    pub fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.verdict == Verdict::Pass)
    }

    pub fn model(&self, name: &str) -> Option<&AbstractionAlgebra> {
        self.models.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn theorem(&self, name: &str) -> Option<&CheckedTheorem> {
        self.theorems.iter().find(|t| t.name == name)
    }
}

struct Elaborator {
    logics: Vec<Logic>,
    /// Theorems carried over to the current logic, by name.
    current: HashMap<String, Theorem>,
    out: Vec<CheckedTheorem>,
    models: Vec<(String, AbstractionAlgebra)>,
}

type StepResult = Result<(Theorem, Proof), Diagnostic>;

impl Elaborator {
    fn logic(&self) -> &Logic {
        self.logics.last().expect("base logic")
    }

    fn extend(&mut self, b: &ExtendBlock) -> Vec<Diagnostic> {
        let base = self.logic().clone();
        let mut decls = Vec::new();
        let mut axioms = Vec::new();
        for e in &b.entries {
            match e {
                ExtendEntry::Abstraction { name, shape, .. } => {
                    decls.push(AbstractionDecl::new(name.clone(), shape.clone()))
                }
                ExtendEntry::Axiom { label, term, .. } => axioms.push((label.clone(), term.clone())),
            }
        }
        let name = b.name.clone().unwrap_or_else(|| format!("{}+", base.name()));
        match base.extend(name, decls, axioms) {
            Ok(child) => {
                debug_assert!(is_extension(&child, &base));
                for th in self.current.values_mut() {
                    *th = th.transfer(&base, &child).expect("extension of the current logic");
                }
                self.logics.push(child);
                Vec::new()
            }
            Err(e) => {
                let span = match &e {
                    LogicError::DuplicateLabel(l) | LogicError::IllFormedAxiom { label: l, .. } => b
                        .entries
                        .iter()
                        .find_map(|x| match x {
                            ExtendEntry::Axiom { label, span, .. } if label == l => Some(*span),
                            _ => None,
                        })
                        .unwrap_or(b.span),
                    _ => b.span,
                };
                let code = match e {
                    LogicError::DuplicateLabel(_) => "duplicate-name",
                    LogicError::IllFormedAxiom { .. } => "ill-formed",
                    _ => "signature",
                };
                vec![Diagnostic::error(code, span, e.to_string())]
            }
        }
    }

    fn premise<'a>(
        &'a self,
        steps: &'a HashMap<&str, (Theorem, Proof)>,
        name: &str,
        span: Span,
    ) -> Result<(Theorem, Proof), Diagnostic> {
        if let Some(found) = steps.get(name) {
            return Ok(found.clone());
        }
        if let Some(th) = self.current.get(name) {
            return Ok((th.clone(), Proof::Lemma(th.clone())));
        }
        Err(Diagnostic::error("unknown-step", span, format!("no earlier step or theorem named `{name}`")))
    }

    fn step(&self, s: &Step, steps: &HashMap<&str, (Theorem, Proof)>) -> StepResult {
        let logic = self.logic();
        let k = |e: KernelError| kernel_diagnostic(&e, s.span);
        match &s.rule {
            Rule::Ax(label) => {
                let r = match (label, &s.target) {
                    (Some(l), Some(t)) => {
                        let ax = logic.axiom(l).ok_or_else(|| k(KernelErrorKind::NotAnAxiom(l.clone()).into()))?;
                        if !alpha_eq(&ax.term, t) {
                            return Err(k(
                                KernelErrorKind::NotAnAxiom(format!("{} (axiom {l} is {})", t, ax.term)).into()
                            ));
                        }
                        AxRef::Term(t.clone())
                    }
                    (Some(l), None) => AxRef::Label(l.clone()),
                    (None, Some(t)) => AxRef::Term(t.clone()),
                    (None, None) => {
                        return Err(Diagnostic::error("syntax", s.span, "`ax` needs an axiom label or a stated target"))
                    }
                };
                let th = kernel::axiom(logic, &r).map_err(k)?;
                Ok((th, Proof::Ax(r)))
            }
            Rule::Subst { premise, sigma } => {
                let (p, pp) = self.premise(steps, premise, s.span)?;
                let target = s.target.clone().unwrap_or_else(|| apply_subst(sigma, p.statement()));
                let th = kernel::subst(logic, &target, sigma, &p).map_err(k)?;
                Ok((th, Proof::subst(target, sigma.clone(), pp)))
            }
            Rule::Mp { h, g } => {
                let (hth, hp) = self.premise(steps, h, s.span)?;
                let (gth, gp) = self.premise(steps, g, s.span)?;
                let target = match &s.target {
                    Some(t) => t.clone(),
                    None => match gth.statement().as_binary(IMP) {
                        Some((_, cons)) => cons.clone(),
                        None => return Err(k(KernelErrorKind::NotAnImplication(gth.statement().clone()).into())),
                    },
                };
                let th = kernel::modus_ponens(logic, &target, &hth, &gth).map_err(k)?;
                Ok((th, Proof::mp(target, hp, gp)))
            }
            Rule::All { binder, premise } => {
                let (p, pp) = self.premise(steps, premise, s.span)?;
                let target = match &s.target {
                    Some(t) => t.clone(),
                    None => Term::apply(logic.signature(), ALL, vec![binder.clone()], vec![p.statement().clone()])
                        .map_err(|e| k(KernelErrorKind::IllFormed(e).into()))?,
                };
                let th = kernel::generalize(logic, &target, binder, &p).map_err(k)?;
                Ok((th, Proof::all(target, binder.clone(), pp)))
            }
            Rule::Lemma(name) => {
                let th = self.current.get(name).ok_or_else(|| {
                    Diagnostic::error("unknown-step", s.span, format!("no earlier theorem named `{name}`"))
                })?;
                if let Some(t) = &s.target {
                    if !alpha_eq(t, th.statement()) {
                        return Err(Diagnostic::error(
                            "statement-mismatch",
                            s.span,
                            format!("lemma `{name}` proves {}, not {t}", th.statement()),
                        ));
                    }
                }
                Ok((th.clone(), Proof::Lemma(th.clone())))
            }
        }
    }

    fn theorem(&mut self, t: &TheoremBlock) -> Vec<Diagnostic> {
        if self.current.contains_key(&t.name) {
            return vec![Diagnostic::error(
                "duplicate-name",
                t.span,
                format!("theorem `{}` is already defined", t.name),
            )];
        }
        let mut steps: HashMap<&str, (Theorem, Proof)> = HashMap::new();
        let mut last = None;
        for s in &t.steps {
            if steps.contains_key(s.name.as_str()) {
                return vec![Diagnostic::error(
                    "duplicate-name",
                    s.span,
                    format!("step `{}` is already defined", s.name),
                )];
            }
            match self.step(s, &steps) {
                Ok(done) => {
                    last = Some(done.clone());
                    steps.insert(&s.name, done);
                }
                Err(d) => return vec![d],
            }
        }
        let Some((th, proof)) = last else {
            return vec![Diagnostic::error("empty-proof", t.span, "proof has no steps")];
        };
        if !alpha_eq(th.statement(), &t.statement) {
            return vec![Diagnostic::error(
                "statement-mismatch",
                t.span,
                format!("proof concludes {}, not the stated {}", th.statement(), t.statement),
            )];
        }
        self.current.insert(t.name.clone(), th.clone());
        self.out.push(CheckedTheorem { name: t.name.clone(), theorem: th, proof, logic: self.logics.len() - 1 });
        Vec::new()
    }

    fn model(&mut self, m: &ModelBlock) -> Vec<Diagnostic> {
        match build_model(m, self.logic().signature()) {
            Ok(alg) => {
                self.models.push((m.name.clone(), alg));
                Vec::new()
            }
            Err(d) => vec![d],
        }
    }
}

fn build_model(m: &ModelBlock, sig: &Signature) -> Result<AbstractionAlgebra, Diagnostic> {
    let err = |span: Span, msg: String| Diagnostic::error("model", span, msg);
    let universe = Universe::new(m.values.clone()).map_err(|e| err(m.span, e.to_string()))?;
    let c = universe.size();
    let value = |name: &str, span: Span| {
        universe.value(name).ok_or_else(|| err(span, format!("`{name}` is not a value of this model")))
    };
    let mut interp = BTreeMap::new();
    for e in &m.entries {
        let shape: Arc<Shape> = sig
            .shape_of(&e.name)
            .cloned()
            .ok_or_else(|| err(e.span, format!("`{}` is not an abstraction of the logic", e.name)))?;
        if interp.contains_key(&e.name) {
            return Err(err(e.span, format!("`{}` is interpreted twice", e.name)));
        }
        let op = match &e.table {
            ModelTable::Constant(v) => OperatorImpl::constant(shape.clone(), c, value(v, e.span)?),
            ModelTable::Flat(vs) => {
                let table = vs.iter().map(|v| value(v, e.span)).collect::<Result<Vec<_>, _>>()?;
                OperatorImpl::from_table(shape.clone(), c, table)
            }
            ModelTable::Cases { default, cases } => {
                let default = value(default, e.span)?;
                let mut resolved: Vec<(Vec<OperationTable>, Value)> = Vec::new();
                for (args, v) in cases {
                    if args.len() != shape.arity() {
                        return Err(err(
                            e.span,
                            format!("`{}` takes {} argument(s), a case gives {}", e.name, shape.arity(), args.len()),
                        ));
                    }
                    let mut tables = Vec::new();
                    for (i, a) in args.iter().enumerate() {
                        let k = shape.scope(i).len();
                        let entries = match a {
                            ModelArg::Value(v) => vec![value(v, e.span)?],
                            ModelArg::Table(vs) => {
                                vs.iter().map(|v| value(v, e.span)).collect::<Result<Vec<_>, _>>()?
                            }
                        };
                        let t = OperationTable::from_entries(k, c, entries)
                            .map_err(|x| err(e.span, format!("argument {} of `{}`: {x}", i + 1, e.name)))?;
                        tables.push(t);
                    }
                    resolved.push((tables, value(v, e.span)?));
                }
                OperatorImpl::from_fn(shape.clone(), c, |args| {
                    resolved.iter().find(|(a, _)| a == args).map_or(default, |(_, v)| *v)
                })
            }
        }
        .map_err(|x| err(e.span, format!("`{}`: {x}", e.name)))?;
        interp.insert(e.name.clone(), op);
    }
    AbstractionAlgebra::new(universe, sig.clone(), interp).map_err(|x| err(m.span, x.to_string()))
}

/// Elaborates a parsed theory file item by item.
pub fn check_theory(file: &TheoryFile) -> CheckedTheory {
    let base =
        base_logic(&file.header.base, file.header.on.as_deref()).expect("the parser resolved the header").clone();
    let mut el = Elaborator { logics: vec![base], current: HashMap::new(), out: Vec::new(), models: Vec::new() };
    let mut blocks = vec![BlockReport {
        name: el.logic().name().to_string(),
        kind: BlockKind::Logic,
        verdict: Verdict::Pass,
        diagnostics: Vec::new(),
    }];
    for item in &file.items {
        let (name, kind, diagnostics) = match item {
            Item::Extend(b) => {
                let d = el.extend(b);
                (el.logic().name().to_string(), BlockKind::Extend, d)
            }
            Item::Theorem(t) => (t.name.clone(), BlockKind::Theorem, el.theorem(t)),
            Item::Model(m) => (m.name.clone(), BlockKind::Model, el.model(m)),
        };
        let verdict = if diagnostics.is_empty() { Verdict::Pass } else { Verdict::Fail };
        blocks.push(BlockReport { name, kind, verdict, diagnostics });
    }
    CheckedTheory { logics: el.logics, theorems: el.out, models: el.models, blocks }
}

/// Parses and elaborates.
pub fn check_source(src: &str) -> Result<CheckedTheory, Diagnostic> {
    Ok(check_theory(&parse_theory(src)?))
}

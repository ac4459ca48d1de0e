//! The trusted proof checker.
//!
//! A [`Theorem`] can only be produced by the four inference rules in this
//! module (axiom, substitution, modus ponens, generalization), so holding one
//! is evidence that its statement was derived in the logic it records. Proof
//! trees are checked by [`check_proof`], which is just those rules applied
//! bottom-up.
//!
//! Fields of a theorem cannot be set from outside the kernel:
//!
//! ```compile_fail
//! use abslogic::kernel::Theorem;
//! use abslogic::term::Term;
//! let forged = Theorem { statement: Term::var("x") };
//! ```

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::logics::{builtin_logic, is_extension, Logic, LogicId, LogicName};
use crate::signature::ALL;
use crate::subst::{apply_subst, canonicalize, Substitution, Template};
use crate::term::{check_wellformed, to_debruijn, DeBruijnTerm, Term, TermError, VarOcc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem {
    statement: Term,
    db: DeBruijnTerm,
    logic: LogicId,
}

impl Theorem {
    fn certify(logic: &Logic, t: &Term) -> Theorem {
        Theorem { statement: canonicalize(t), db: to_debruijn(t), logic: logic.id() }
    }

    pub fn statement(&self) -> &Term {
        &self.statement
    }

    pub fn logic(&self) -> LogicId {
        self.logic
    }

    /// Carries a theorem of `from` over to an extension `to`: axioms and
    /// rules of `from` are all available in `to`.
    pub fn transfer(&self, from: &Logic, to: &Logic) -> Result<Theorem, KernelError> {
        if from.id() != self.logic {
            return Err(KernelErrorKind::ForeignTheorem.into());
        }
        if !is_extension(to, from) {
            return Err(
                KernelErrorKind::NotAnExtension { from: from.name().to_string(), to: to.name().to_string() }.into()
            );
        }
        Ok(Theorem { logic: to.id(), ..self.clone() })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|- {}", self.statement)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelErrorKind {
    #[error("{0} is not an axiom of this logic")]
    NotAnAxiom(String),
    #[error("substitution yields {found}, not the stated {expected}")]
    SubstMismatch { expected: Term, found: Term },
    #[error("{0} is not an implication")]
    NotAnImplication(Term),
    #[error("modus ponens needs {expected}, found {found}")]
    MpMismatch { expected: Term, found: Term },
    #[error("generalization yields {found}, not the stated {expected}")]
    AllMismatch { expected: Term, found: Term },
    #[error("ill-formed term: {0}")]
    IllFormed(#[from] TermError),
    #[error("theorem was certified in a different logic")]
    ForeignTheorem,
    #[error("logic {to} does not extend {from}")]
    NotAnExtension { from: String, to: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

impl KernelErrorKind {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            KernelErrorKind::NotAnAxiom(_) => "not-an-axiom",
            KernelErrorKind::SubstMismatch { .. } => "subst-mismatch",
            KernelErrorKind::NotAnImplication(_) => "not-an-implication",
            KernelErrorKind::MpMismatch { .. } => "mp-mismatch",
            KernelErrorKind::AllMismatch { .. } => "all-mismatch",
            KernelErrorKind::IllFormed(_) => "ill-formed",
            KernelErrorKind::ForeignTheorem => "foreign-theorem",
            KernelErrorKind::NotAnExtension { .. } => "not-an-extension",
            KernelErrorKind::PreconditionFailed(_) => "precondition-failed",
        }
    }
}

/// A rule failure, located by the child indices leading from the root of the
/// proof tree to the offending node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} (at proof path {})", display_path(.path))]
pub struct KernelError {
    pub kind: Box<KernelErrorKind>,
    pub path: Vec<usize>,
}

fn display_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "root".into();
    }
    path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

impl From<KernelErrorKind> for KernelError {
    fn from(kind: KernelErrorKind) -> Self {
        KernelError { kind: Box::new(kind), path: Vec::new() }
    }
}

fn at(child: usize, mut e: KernelError) -> KernelError {
    e.path.insert(0, child);
    e
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxRef {
    Label(String),
    Term(Term),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Proof {
    Ax(AxRef),
    Subst {
        target: Term,
        sigma: Substitution,
        sub: Box<Proof>,
    },
    Mp {
        target: Term,
        h: Box<Proof>,
        g: Box<Proof>,
    },
    All {
        target: Term,
        binder: String,
        sub: Box<Proof>,
    },
    /// An already certified theorem of the same logic.
    Lemma(Theorem),
}

impl Proof {
    pub fn ax_label(label: impl Into<String>) -> Proof {
        Proof::Ax(AxRef::Label(label.into()))
    }

    pub fn subst(target: Term, sigma: Substitution, sub: Proof) -> Proof {
        Proof::Subst { target, sigma, sub: Box::new(sub) }
    }

    pub fn mp(target: Term, h: Proof, g: Proof) -> Proof {
        Proof::Mp { target, h: Box::new(h), g: Box::new(g) }
    }

    pub fn all(target: Term, binder: impl Into<String>, sub: Proof) -> Proof {
        Proof::All { target, binder: binder.into(), sub: Box::new(sub) }
    }

    /// Number of rule applications.
    pub fn size(&self) -> usize {
        match self {
            Proof::Ax(_) | Proof::Lemma(_) => 1,
            Proof::Subst { sub, .. } | Proof::All { sub, .. } => 1 + sub.size(),
            Proof::Mp { h, g, .. } => 1 + h.size() + g.size(),
        }
    }
}

fn wellformed(logic: &Logic, t: &Term) -> Result<(), KernelError> {
    check_wellformed(t, logic.signature()).map_err(|e| KernelErrorKind::IllFormed(e).into())
}

fn own(logic: &Logic, th: &Theorem) -> Result<(), KernelError> {
    if logic.inherits(th.logic) {
        Ok(())
    } else {
        Err(KernelErrorKind::ForeignTheorem.into())
    }
}

/// AX: the statement is an axiom, given by label or α-equivalent term.
pub fn axiom(logic: &Logic, r: &AxRef) -> Result<Theorem, KernelError> {
    match r {
        AxRef::Label(label) => logic
            .axiom(label)
            .map(|a| Theorem::certify(logic, &a.term))
            .ok_or_else(|| KernelErrorKind::NotAnAxiom(label.clone()).into()),
        AxRef::Term(t) => {
            wellformed(logic, t)?;
            match logic.find_axiom(t) {
                Some(_) => Ok(Theorem::certify(logic, t)),
                None => Err(KernelErrorKind::NotAnAxiom(t.to_string()).into()),
            }
        }
    }
}

/// SUBST: `target` is α-equivalent to `σ/s` for a theorem `s`.
pub fn subst(logic: &Logic, target: &Term, sigma: &Substitution, premise: &Theorem) -> Result<Theorem, KernelError> {
    own(logic, premise)?;
    wellformed(logic, target)?;
    for (_, template) in sigma.iter() {
        wellformed(logic, template.body())?;
    }
    let found = apply_subst(sigma, &premise.statement);
    if to_debruijn(&found) != to_debruijn(target) {
        return Err(KernelErrorKind::SubstMismatch { expected: target.clone(), found }.into());
    }
    Ok(Theorem::certify(logic, target))
}

/// MP: from `h` and `g = h -> target`, conclude `target`.
pub fn modus_ponens(logic: &Logic, target: &Term, h: &Theorem, g: &Theorem) -> Result<Theorem, KernelError> {
    own(logic, h)?;
    own(logic, g)?;
    wellformed(logic, target)?;
    let Some((ante, cons)) = g.statement.as_binary(crate::signature::IMP) else {
        return Err(KernelErrorKind::NotAnImplication(g.statement.clone()).into());
    };
    if to_debruijn(ante) != h.db {
        return Err(KernelErrorKind::MpMismatch { expected: ante.clone(), found: h.statement.clone() }.into());
    }
    if to_debruijn(cons) != to_debruijn(target) {
        return Err(KernelErrorKind::MpMismatch { expected: target.clone(), found: cons.clone() }.into());
    }
    Ok(Theorem::certify(logic, target))
}

/// ALL: from `s`, conclude `(all x. s)`. There is no side condition on `x`.
pub fn generalize(logic: &Logic, target: &Term, binder: &str, premise: &Theorem) -> Result<Theorem, KernelError> {
    own(logic, premise)?;
    wellformed(logic, target)?;
    let found = Term::apply(logic.signature(), ALL, vec![binder.to_string()], vec![premise.statement.clone()])?;
    if to_debruijn(&found) != to_debruijn(target) {
        return Err(KernelErrorKind::AllMismatch { expected: target.clone(), found }.into());
    }
    Ok(Theorem::certify(logic, target))
}

impl From<TermError> for KernelError {
    fn from(e: TermError) -> Self {
        KernelErrorKind::IllFormed(e).into()
    }
}

/// Checks a proof tree bottom-up with the four rules.
pub fn check_proof(logic: &Logic, p: &Proof) -> Result<Theorem, KernelError> {
    match p {
        Proof::Ax(r) => axiom(logic, r),
        Proof::Lemma(th) => own(logic, th).map(|()| th.clone()),
        Proof::Subst { target, sigma, sub } => {
            let s = check_proof(logic, sub).map_err(|e| at(0, e))?;
            subst(logic, target, sigma, &s)
        }
        Proof::Mp { target, h, g } => {
            let h = check_proof(logic, h).map_err(|e| at(0, e))?;
            let g = check_proof(logic, g).map_err(|e| at(1, e))?;
            modus_ponens(logic, target, &h, &g)
        }
        Proof::All { target, binder, sub } => {
            let s = check_proof(logic, sub).map_err(|e| at(0, e))?;
            generalize(logic, target, binder, &s)
        }
    }
}

/// From a proof of `(all x. x)`, a proof of any well-formed `target`:
/// instantiate D4 with `A := [x. x]`, apply modus ponens to get `x`, then
/// substitute `target` for `x`.
pub fn inconsistency_expand(logic: &Logic, p_forall: &Proof, target: &Term) -> Result<Proof, KernelError> {
    let fail = |msg: String| KernelError::from(KernelErrorKind::PreconditionFailed(msg));
    let d = builtin_logic(LogicName::D);
    if !is_extension(logic, d) {
        return Err(fail(format!("{} does not extend D", logic.name())));
    }
    let all_x_x = logic.parse("all x. x").expect("D syntax");
    let th = check_proof(logic, p_forall).map_err(|e| fail(format!("proof does not check: {e}")))?;
    if th.db != to_debruijn(&all_x_x) {
        return Err(fail(format!("proof concludes {}, not (all x. x)", th.statement)));
    }
    wellformed(logic, target).map_err(|e| fail(e.kind.to_string()))?;

    let d4 = d.axiom("D4").expect("D4").term.clone();
    let a_id = Substitution::new()
        .with(VarOcc::new("A", 1), Template::new(vec!["x".into()], Term::var("x")).expect("one param"))
        .expect("arity 1");
    let instance = logic.parse("(all x. x) -> x").expect("D syntax");
    let step1 = Proof::subst(instance, a_id, Proof::Ax(AxRef::Term(d4)));
    let step2 = Proof::mp(Term::var("x"), p_forall.clone(), step1);
    Ok(Proof::subst(target.clone(), Substitution::single("x", target.clone()), step2))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DbError {
    #[error("theorem `{0}` is already stored")]
    DuplicateName(String),
}

/// Append-only store of named theorems with lookup modulo α.
#[derive(Debug, Clone, Default)]
pub struct TheoremDb {
    entries: Vec<(String, Theorem)>,
    by_name: HashMap<String, usize>,
    by_statement: HashMap<DeBruijnTerm, usize>,
}

impl TheoremDb {
    pub fn new() -> TheoremDb {
        TheoremDb::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, th: Theorem) -> Result<(), DbError> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(DbError::DuplicateName(name));
        }
        let i = self.entries.len();
        self.by_name.insert(name.clone(), i);
        self.by_statement.entry(th.db.clone()).or_insert(i);
        self.entries.push((name, th));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Theorem> {
        self.by_name.get(name).map(|&i| &self.entries[i].1)
    }

    /// The first stored theorem α-equivalent to `t`.
    pub fn find(&self, t: &Term) -> Option<(&str, &Theorem)> {
        self.by_statement.get(&to_debruijn(t)).map(|&i| (self.entries[i].0.as_str(), &self.entries[i].1))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Theorem)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

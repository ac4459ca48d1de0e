//! Terms, free variables, nameless (de Bruijn) form and α-equivalence.
//!
//! There are exactly two syntactic forms: a variable application
//! `x[t_0, ..., t_{n-1}]` and an abstraction application
//! `(a x_0 ... x_{m-1}. t_0 ... t_{n-1})`. Abstraction applications carry the
//! shape of their abstraction so that binding structure is known without a
//! signature at hand.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::signature::{Shape, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown abstraction `{0}`")]
    UnknownAbstraction(String),
    #[error("`{name}` expects {expected} binder(s), found {found}")]
    ValenceMismatch { name: String, expected: usize, found: usize },
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("binder `{binder}` occurs twice in an application of `{name}`")]
    DuplicateBinder { name: String, binder: String },
    #[error("`{name}` is used with shape {found} but declared with shape {declared}")]
    ShapeMismatch { name: String, declared: Shape, found: Shape },
}

/// A variable together with the arity it occurs with. `x` at arity 0 and `x`
/// at arity 1 are different variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarOcc {
    pub name: String,
    pub arity: usize,
}

impl VarOcc {
    pub fn new(name: impl Into<String>, arity: usize) -> VarOcc {
        VarOcc { name: name.into(), arity }
    }
}

impl fmt::Display for VarOcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}/{}", self.name, self.arity)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var { name: String, args: Vec<Term> },
    Abs { name: String, shape: Arc<Shape>, binders: Vec<String>, args: Vec<Term> },
}

impl Term {
    /// A variable occurring with arity 0.
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var { name: name.into(), args: Vec::new() }
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::Var { name: name.into(), args }
    }

    /// Builds an abstraction application. Panics if the number of binders or
    /// arguments disagrees with `shape`; use [`Term::apply`] for checked
    /// construction against a signature.
    pub fn abs(name: impl Into<String>, shape: Arc<Shape>, binders: Vec<String>, args: Vec<Term>) -> Term {
        assert_eq!(binders.len(), shape.valence(), "binder count must match valence");
        assert_eq!(args.len(), shape.arity(), "argument count must match arity");
        Term::Abs { name: name.into(), shape, binders, args }
    }

    /// Builds an abstraction application of a declared abstraction.
    pub fn apply(sig: &Signature, name: &str, binders: Vec<String>, args: Vec<Term>) -> Result<Term, TermError> {
        let shape = sig.shape_of(name).ok_or_else(|| TermError::UnknownAbstraction(name.to_string()))?;
        if binders.len() != shape.valence() {
            return Err(TermError::ValenceMismatch {
                name: name.to_string(),
                expected: shape.valence(),
                found: binders.len(),
            });
        }
        if args.len() != shape.arity() {
            return Err(TermError::ArityMismatch {
                name: name.to_string(),
                expected: shape.arity(),
                found: args.len(),
            });
        }
        check_distinct(name, &binders)?;
        Ok(Term::Abs { name: name.to_string(), shape: shape.clone(), binders, args })
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var { name, .. } | Term::Abs { name, .. } => name,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var { args, .. } | Term::Abs { args, .. } => args,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }

    /// If this is `(name. lhs rhs)`, returns the two arguments.
    pub fn as_binary(&self, name: &str) -> Option<(&Term, &Term)> {
        match self {
            Term::Abs { name: n, binders, args, .. } if n == name && binders.is_empty() && args.len() == 2 => {
                Some((&args[0], &args[1]))
            }
            _ => None,
        }
    }
}

fn check_distinct(name: &str, binders: &[String]) -> Result<(), TermError> {
    for (i, b) in binders.iter().enumerate() {
        if binders[..i].contains(b) {
            return Err(TermError::DuplicateBinder { name: name.to_string(), binder: b.clone() });
        }
    }
    Ok(())
}

/// Checks every abstraction application against the signature.
pub fn check_wellformed(t: &Term, sig: &Signature) -> Result<(), TermError> {
    match t {
        Term::Var { args, .. } => args.iter().try_for_each(|a| check_wellformed(a, sig)),
        Term::Abs { name, shape, binders, args } => {
            let declared = sig.shape_of(name).ok_or_else(|| TermError::UnknownAbstraction(name.clone()))?;
            if binders.len() != declared.valence() {
                return Err(TermError::ValenceMismatch {
                    name: name.clone(),
                    expected: declared.valence(),
                    found: binders.len(),
                });
            }
            if args.len() != declared.arity() {
                return Err(TermError::ArityMismatch {
                    name: name.clone(),
                    expected: declared.arity(),
                    found: args.len(),
                });
            }
            if **shape != **declared {
                return Err(TermError::ShapeMismatch {
                    name: name.clone(),
                    declared: (**declared).clone(),
                    found: (**shape).clone(),
                });
            }
            check_distinct(name, binders)?;
            args.iter().try_for_each(|a| check_wellformed(a, sig))
        }
    }
}

/// Free variables of `t` as `(name, arity)` pairs. Only arity-0 occurrences
/// can be bound, and only in argument positions where the binder is active.
pub fn free_vars(t: &Term) -> BTreeSet<VarOcc> {
    let mut out = BTreeSet::new();
    let mut bound: Vec<&str> = Vec::new();
    collect_free(t, &mut bound, &mut out);
    out
}

fn collect_free<'a>(t: &'a Term, bound: &mut Vec<&'a str>, out: &mut BTreeSet<VarOcc>) {
    match t {
        Term::Var { name, args } => {
            if !(args.is_empty() && bound.contains(&name.as_str())) {
                out.insert(VarOcc::new(name.clone(), args.len()));
            }
            for a in args {
                collect_free(a, bound, out);
            }
        }
        Term::Abs { shape, binders, args, .. } => {
            for (i, a) in args.iter().enumerate() {
                let mark = bound.len();
                bound.extend(shape.scope(i).iter().map(|&j| binders[j].as_str()));
                collect_free(a, bound, out);
                bound.truncate(mark);
            }
        }
    }
}

/// A binder name kept for readback only; it never takes part in equality or
/// hashing.
#[derive(Debug, Clone)]
pub struct Hint(pub String);

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// Nameless form of a term. A bound occurrence is `Bound { depth, slot }`:
/// `depth` counts enclosing binder frames (one frame per argument position
/// with a non-empty binder set), `slot` is the binder's index within its
/// abstraction application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeBruijnTerm {
    Bound { depth: usize, slot: usize },
    Free { name: String, args: Vec<DeBruijnTerm> },
    Abs { name: String, shape: Arc<Shape>, hints: Vec<Hint>, args: Vec<DeBruijnTerm> },
}

/// One binder frame: the names active in an argument position and their slots.
pub(crate) type Frame<'a> = Vec<(&'a str, usize)>;

pub fn to_debruijn(t: &Term) -> DeBruijnTerm {
    to_debruijn_in(t, &mut Vec::new())
}

pub(crate) fn to_debruijn_in<'a>(t: &'a Term, env: &mut Vec<Frame<'a>>) -> DeBruijnTerm {
    match t {
        Term::Var { name, args } => {
            if args.is_empty() {
                for (k, frame) in env.iter().rev().enumerate() {
                    if let Some(&(_, slot)) = frame.iter().find(|(n, _)| *n == name) {
                        return DeBruijnTerm::Bound { depth: k, slot };
                    }
                }
            }
            DeBruijnTerm::Free { name: name.clone(), args: args.iter().map(|a| to_debruijn_in(a, env)).collect() }
        }
        Term::Abs { name, shape, binders, args } => {
            let args = args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let scope = shape.scope(i);
                    if scope.is_empty() {
                        to_debruijn_in(a, env)
                    } else {
                        env.push(scope.iter().map(|&j| (binders[j].as_str(), j)).collect());
                        let d = to_debruijn_in(a, env);
                        env.pop();
                        d
                    }
                })
                .collect();
            DeBruijnTerm::Abs {
                name: name.clone(),
                shape: shape.clone(),
                hints: binders.iter().map(|b| Hint(b.clone())).collect(),
                args,
            }
        }
    }
}

pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    to_debruijn(s) == to_debruijn(t)
}

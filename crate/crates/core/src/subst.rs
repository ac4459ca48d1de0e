//! Templates and capture-avoiding substitution.
//!
//! Substitution works on the nameless form: template bodies are converted
//! with their parameters as the outermost binder frame, instantiated by
//! index, and the result is read back to named syntax by choosing binder
//! names with [`fresh_var`]. Equal inputs therefore give identical outputs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::term::{to_debruijn, to_debruijn_in, DeBruijnTerm, Frame, Term, VarOcc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("template parameter `{0}` occurs twice")]
    DuplicateParameter(String),
    #[error("variable {var} needs a {expected}-ary template, got {found} parameter(s)")]
    ArityMismatch { var: VarOcc, expected: usize, found: usize },
    #[error("template expects {expected} argument(s), got {found}")]
    WrongArgumentCount { expected: usize, found: usize },
}

/// `[x_0 ... x_{n-1}. body]`; binds the arity-0 occurrences of its
/// parameters in `body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    params: Vec<String>,
    body: Term,
}

impl Template {
    pub fn new(params: Vec<String>, body: Term) -> Result<Template, SubstError> {
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(SubstError::DuplicateParameter(p.clone()));
            }
        }
        Ok(Template { params, body })
    }

    /// A 0-ary template, which is just a term.
    pub fn term(body: Term) -> Template {
        Template { params: Vec::new(), body }
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn body(&self) -> &Term {
        &self.body
    }

    fn to_debruijn(&self) -> DeBruijnTerm {
        let frame: Frame = self.params.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        to_debruijn_in(&self.body, &mut vec![frame])
    }
}

/// A finite map from variables (name and arity) to templates of that arity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<VarOcc, Template>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn insert(&mut self, var: VarOcc, template: Template) -> Result<(), SubstError> {
        if var.arity != template.arity() {
            return Err(SubstError::ArityMismatch { expected: var.arity, found: template.arity(), var });
        }
        self.map.insert(var, template);
        Ok(())
    }

    pub fn with(mut self, var: VarOcc, template: Template) -> Result<Substitution, SubstError> {
        self.insert(var, template)?;
        Ok(self)
    }

    /// Convenience for `{ name := term }` at arity 0.
    pub fn single(name: impl Into<String>, term: Term) -> Substitution {
        let mut s = Substitution::new();
        s.map.insert(VarOcc::new(name, 0), Template::term(term));
        s
    }

    pub fn get(&self, var: &VarOcc) -> Option<&Template> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarOcc, &Template)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }
}

impl Substitution {
    /// Builds a substitution, rejecting arity mismatches.
    pub fn from_pairs(iter: impl IntoIterator<Item = (VarOcc, Template)>) -> Result<Substitution, SubstError> {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.insert(v, t)?;
        }
        Ok(s)
    }
}

/// Returns `base` if it is not in `avoid`, otherwise the first of `base′`,
/// `base″`, `base‴`, `base_4`, `base_5`, ... that is not.
pub fn fresh_var(avoid: &BTreeSet<String>, base: &str) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for prime in ["′", "″", "‴"] {
        let candidate = format!("{base}{prime}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
    (4..).map(|k| format!("{base}_{k}")).find(|c| !avoid.contains(c)).expect("unbounded candidate supply")
}

pub fn apply_subst(sigma: &Substitution, t: &Term) -> Term {
    if sigma.is_empty() {
        return canonicalize(t);
    }
    let table: HashMap<(&str, usize), DeBruijnTerm> =
        sigma.map.iter().map(|(v, tmpl)| ((v.name.as_str(), v.arity), tmpl.to_debruijn())).collect();
    readback(&subst_nameless(&to_debruijn(t), &table))
}

/// Resolves `[x_0 ... x_{n-1}. body][args]` to a term.
pub fn resolve_template(template: &Template, args: &[Term]) -> Result<Term, SubstError> {
    if args.len() != template.arity() {
        return Err(SubstError::WrongArgumentCount { expected: template.arity(), found: args.len() });
    }
    let args: Vec<DeBruijnTerm> = args.iter().map(to_debruijn).collect();
    Ok(readback(&instantiate(&template.to_debruijn(), &args, 0)))
}

/// The deterministic named representative of `t`'s α-class.
pub fn canonicalize(t: &Term) -> Term {
    readback(&to_debruijn(t))
}

fn subst_nameless(t: &DeBruijnTerm, table: &HashMap<(&str, usize), DeBruijnTerm>) -> DeBruijnTerm {
    match t {
        DeBruijnTerm::Bound { .. } => t.clone(),
        DeBruijnTerm::Free { name, args } => {
            let args: Vec<DeBruijnTerm> = args.iter().map(|a| subst_nameless(a, table)).collect();
            match table.get(&(name.as_str(), args.len())) {
                Some(body) => instantiate(body, &args, 0),
                None => DeBruijnTerm::Free { name: name.clone(), args },
            }
        }
        DeBruijnTerm::Abs { name, shape, hints, args } => DeBruijnTerm::Abs {
            name: name.clone(),
            shape: shape.clone(),
            hints: hints.clone(),
            args: args.iter().map(|a| subst_nameless(a, table)).collect(),
        },
    }
}

/// Replaces references to the template frame (which sits `inner` frames up)
/// with the given arguments.
fn instantiate(body: &DeBruijnTerm, args: &[DeBruijnTerm], inner: usize) -> DeBruijnTerm {
    match body {
        DeBruijnTerm::Bound { depth, slot } => {
            if *depth == inner {
                shift(&args[*slot], inner, 0)
            } else if *depth > inner {
                DeBruijnTerm::Bound { depth: depth - 1, slot: *slot }
            } else {
                body.clone()
            }
        }
        DeBruijnTerm::Free { name, args: fargs } => {
            DeBruijnTerm::Free { name: name.clone(), args: fargs.iter().map(|a| instantiate(a, args, inner)).collect() }
        }
        DeBruijnTerm::Abs { name, shape, hints, args: aargs } => DeBruijnTerm::Abs {
            name: name.clone(),
            shape: shape.clone(),
            hints: hints.clone(),
            args: aargs
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let inner = if shape.scope(i).is_empty() { inner } else { inner + 1 };
                    instantiate(a, args, inner)
                })
                .collect(),
        },
    }
}

fn shift(t: &DeBruijnTerm, by: usize, cutoff: usize) -> DeBruijnTerm {
    if by == 0 {
        return t.clone();
    }
    match t {
        DeBruijnTerm::Bound { depth, slot } if *depth >= cutoff => {
            DeBruijnTerm::Bound { depth: depth + by, slot: *slot }
        }
        DeBruijnTerm::Bound { .. } => t.clone(),
        DeBruijnTerm::Free { name, args } => {
            DeBruijnTerm::Free { name: name.clone(), args: args.iter().map(|a| shift(a, by, cutoff)).collect() }
        }
        DeBruijnTerm::Abs { name, shape, hints, args } => DeBruijnTerm::Abs {
            name: name.clone(),
            shape: shape.clone(),
            hints: hints.clone(),
            args: args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let cutoff = if shape.scope(i).is_empty() { cutoff } else { cutoff + 1 };
                    shift(a, by, cutoff)
                })
                .collect(),
        },
    }
}

/// Converts a nameless term back to named syntax. Each binder keeps its hint
/// unless that would capture a name visible in its scope.
pub fn readback(t: &DeBruijnTerm) -> Term {
    readback_in(t, &mut Vec::new())
}

type NamedFrame = Vec<(usize, String)>;

fn lookup(env: &[NamedFrame], depth: usize, slot: usize) -> &str {
    let frame = &env[env.len() - 1 - depth];
    frame.iter().find(|(s, _)| *s == slot).map(|(_, n)| n.as_str()).expect("bound index refers to an active binder")
}

fn readback_in(t: &DeBruijnTerm, env: &mut Vec<NamedFrame>) -> Term {
    match t {
        DeBruijnTerm::Bound { depth, slot } => Term::var(lookup(env, *depth, *slot)),
        DeBruijnTerm::Free { name, args } => {
            Term::Var { name: name.clone(), args: args.iter().map(|a| readback_in(a, env)).collect() }
        }
        DeBruijnTerm::Abs { name, shape, hints, args } => {
            let mut chosen: Vec<String> = Vec::with_capacity(hints.len());
            for (j, hint) in hints.iter().enumerate() {
                let mut avoid: BTreeSet<String> = chosen.iter().cloned().collect();
                for (i, a) in args.iter().enumerate() {
                    if shape.scope(i).contains(&j) {
                        escaping_names(a, 0, env, &mut avoid);
                    }
                }
                chosen.push(fresh_var(&avoid, &hint.0));
            }
            let args = args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let scope = shape.scope(i);
                    if scope.is_empty() {
                        readback_in(a, env)
                    } else {
                        env.push(scope.iter().map(|&j| (j, chosen[j].clone())).collect());
                        let r = readback_in(a, env);
                        env.pop();
                        r
                    }
                })
                .collect();
            Term::Abs { name: name.clone(), shape: shape.clone(), binders: chosen, args }
        }
    }
}

/// Names an arity-0 occurrence inside `t` would resolve to if `t` sat under
/// one fresh binder frame: free arity-0 names and already chosen names of
/// outer binders.
fn escaping_names(t: &DeBruijnTerm, local: usize, env: &[NamedFrame], out: &mut BTreeSet<String>) {
    match t {
        DeBruijnTerm::Bound { depth, slot } => {
            if *depth > local {
                out.insert(lookup(env, depth - local - 1, *slot).to_string());
            }
        }
        DeBruijnTerm::Free { name, args } => {
            if args.is_empty() {
                out.insert(name.clone());
            }
            for a in args {
                escaping_names(a, local, env, out);
            }
        }
        DeBruijnTerm::Abs { shape, args, .. } => {
            for (i, a) in args.iter().enumerate() {
                let local = if shape.scope(i).is_empty() { local } else { local + 1 };
                escaping_names(a, local, env, out);
            }
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            return write!(f, "{}", self.body);
        }
        write!(f, "[{}. {}]", self.params.join(" "), self.body)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {v} := {t}")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{AbstractionDecl, Shape, Signature};
    use crate::term::{alpha_eq, free_vars};

    fn sig() -> Signature {
        Signature::new([
            AbstractionDecl::new("true", Shape::value()),
            AbstractionDecl::new("imp", Shape::operation(2)),
            AbstractionDecl::new("eq", Shape::operation(2)),
            AbstractionDecl::new("all", Shape::binder()),
            AbstractionDecl::new("a", Shape::binder()),
            AbstractionDecl::new("b", Shape::operation(2)),
        ])
        .unwrap()
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn ap(name: &str, binders: &[&str], args: Vec<Term>) -> Term {
        Term::apply(&sig(), name, binders.iter().map(|b| b.to_string()).collect(), args).unwrap()
    }

    fn tmpl(params: &[&str], body: Term) -> Template {
        Template::new(params.iter().map(|p| p.to_string()).collect(), body).unwrap()
    }

    #[test]
    fn fresh_var_examples() {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(fresh_var(&set(&["x"]), "x"), "x′");
        assert_eq!(fresh_var(&set(&[]), "y"), "y");
        assert_eq!(fresh_var(&set(&["z", "z′"]), "z"), "z″");
        assert_eq!(fresh_var(&set(&["z", "z′", "z″", "z‴"]), "z"), "z_4");
    }

    #[test]
    fn substitution_avoids_capture() {
        // {x := y} on (a y. (b. x y))
        let t = ap("a", &["y"], vec![ap("b", &[], vec![v("x"), v("y")])]);
        let r = apply_subst(&Substitution::single("x", v("y")), &t);
        let expected = ap("a", &["z"], vec![ap("b", &[], vec![v("y"), v("z")])]);
        let captured = ap("a", &["y"], vec![ap("b", &[], vec![v("y"), v("y")])]);
        assert!(alpha_eq(&r, &expected));
        assert!(!alpha_eq(&r, &captured));
        assert_eq!(r, ap("a", &["y′"], vec![ap("b", &[], vec![v("y"), v("y′")])]));
    }

    #[test]
    fn empty_substitution_is_identity() {
        let t = ap("all", &["x"], vec![ap("imp", &[], vec![Term::app("A", vec![v("x")]), v("B")])]);
        let r = apply_subst(&Substitution::new(), &t);
        assert!(alpha_eq(&r, &t));
        assert_eq!(r, t);
    }

    #[test]
    fn higher_arity_substitution() {
        let sigma =
            Substitution::new().with(VarOcc::new("A", 1), tmpl(&["u"], ap("imp", &[], vec![v("u"), v("u")]))).unwrap();
        let r = apply_subst(&sigma, &Term::app("A", vec![v("x")]));
        assert_eq!(r, ap("imp", &[], vec![v("x"), v("x")]));
        // only A at arity 1 is touched
        let r = apply_subst(&sigma, &v("A"));
        assert_eq!(r, v("A"));
    }

    #[test]
    fn resolve_template_examples() {
        let t = ap("true", &[], vec![]);
        assert_eq!(resolve_template(&tmpl(&["x"], v("x")), std::slice::from_ref(&t)).unwrap(), t);
        assert_eq!(resolve_template(&tmpl(&["x", "y"], v("x")), &[v("s"), v("t")]).unwrap(), v("s"));
        // [x. (all y. x = y)][y] must not capture y
        let body = ap("all", &["y"], vec![ap("eq", &[], vec![v("x"), v("y")])]);
        let r = resolve_template(&tmpl(&["x"], body), &[v("y")]).unwrap();
        let expected = ap("all", &["z"], vec![ap("eq", &[], vec![v("y"), v("z")])]);
        assert!(alpha_eq(&r, &expected));
        assert_eq!(
            resolve_template(&tmpl(&["x"], v("x")), &[]),
            Err(SubstError::WrongArgumentCount { expected: 1, found: 0 })
        );
    }

    #[test]
    fn resolve_agrees_with_parameter_substitution() {
        let body = ap("all", &["y"], vec![ap("b", &[], vec![v("x"), ap("a", &["x"], vec![v("y")])])]);
        let template = tmpl(&["x"], body.clone());
        let arg = ap("b", &[], vec![v("y"), v("x")]);
        let via_resolve = resolve_template(&template, std::slice::from_ref(&arg)).unwrap();
        let via_subst = apply_subst(&Substitution::single("x", arg), &body);
        assert!(alpha_eq(&via_resolve, &via_subst));
    }

    #[test]
    fn arity_is_checked_on_insert() {
        let err = Substitution::new().with(VarOcc::new("A", 1), Template::term(v("x")));
        assert!(matches!(err, Err(SubstError::ArityMismatch { expected: 1, found: 0, .. })));
        assert_eq!(
            Template::new(vec!["x".into(), "x".into()], v("x")),
            Err(SubstError::DuplicateParameter("x".into()))
        );
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        let t = ap("b", &[], vec![v("x"), v("y")]);
        let sigma = Substitution::from_pairs([
            (VarOcc::new("x", 0), Template::term(v("y"))),
            (VarOcc::new("y", 0), Template::term(v("x"))),
        ]);
        let r = apply_subst(&sigma.unwrap(), &t);
        assert_eq!(r, ap("b", &[], vec![v("y"), v("x")]));
    }

    #[test]
    fn inserted_free_variables_stay_free() {
        // (all x. (all y. A[x])) with A := [u. u = y]: y must not be captured
        let t = ap("all", &["x"], vec![ap("all", &["y"], vec![Term::app("A", vec![v("x")])])]);
        let sigma =
            Substitution::new().with(VarOcc::new("A", 1), tmpl(&["u"], ap("eq", &[], vec![v("u"), v("y")]))).unwrap();
        let r = apply_subst(&sigma, &t);
        assert!(free_vars(&r).contains(&VarOcc::new("y", 0)));
        // binding structure of x is preserved
        let expected = ap("all", &["x"], vec![ap("all", &["w"], vec![ap("eq", &[], vec![v("x"), v("y")])])]);
        assert!(alpha_eq(&r, &expected));
    }

    #[test]
    fn outer_binder_is_renamed_when_referenced_under_shadowing_free_name() {
        // (all x. (all z. x)) with z free inserted below: {A := z} on (all x. (all y. A -> x))
        let t = ap("all", &["x"], vec![ap("all", &["y"], vec![ap("imp", &[], vec![v("A"), v("x")])])]);
        let r = apply_subst(&Substitution::single("A", v("x")), &t);
        assert!(free_vars(&r).contains(&VarOcc::new("x", 0)));
        let expected = ap("all", &["p"], vec![ap("all", &["q"], vec![ap("imp", &[], vec![v("x"), v("p")])])]);
        assert!(alpha_eq(&r, &expected));
    }
}

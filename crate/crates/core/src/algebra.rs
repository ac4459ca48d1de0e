//! Finite abstraction algebras: universes, operation tables, operator
//! interpretations, valuations, evaluation and exhaustive model checking.
//!
//! Encoding conventions used throughout:
//! - an argument tuple `(u_0, ..., u_{k-1})` of a k-ary operation is indexed in
//!   mixed radix, first argument most significant;
//! - an operation table is coded as the base-c number whose digits are its
//!   entries, first entry most significant (so a 0-ary table's code is its
//!   value);
//! - an operator's table is indexed by the codes of its arguments, again in
//!   mixed radix with the first argument most significant.

use std::collections::{BTreeMap, BTreeSet};
use std::convert::Infallible;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::signature::{is_logic_signature, Shape, Signature, ALL, IMP, TRUE};
use crate::subst::{apply_subst, Substitution};
use crate::term::{check_wellformed, free_vars, Term, TermError, VarOcc};

/// Largest operator table or enumeration this module will build.
pub const MAX_TABLE: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("a universe needs at least one value")]
    EmptyUniverse,
    #[error("value name `{0}` is used twice")]
    DuplicateValue(String),
    #[error("value #{value} is outside a carrier of size {carrier}")]
    ValueOutOfRange { value: usize, carrier: usize },
    #[error("a table of arity {arity} over {carrier} values needs {expected} entries, found {found}")]
    TableSize { arity: usize, carrier: usize, expected: usize, found: usize },
    #[error("the interpretation of `{name}` needs {expected} entries, found {found}")]
    OperatorSize { name: String, expected: usize, found: usize },
    #[error("an operator of shape {shape} over {carrier} values is too large to tabulate")]
    TooLarge { shape: Shape, carrier: usize },
    #[error("no interpretation for `{0}`")]
    MissingInterpretation(String),
    #[error("`{0}` is interpreted but not declared")]
    UndeclaredInterpretation(String),
    #[error("interpretation of `{name}` has shape {found}, declared {declared}")]
    InterpretationShape { name: String, declared: Shape, found: Shape },
    #[error("term is ill-formed: {0}")]
    IllFormedTerm(TermError),
    #[error("template for {var} is ill-formed: {source}")]
    IllFormedTemplate { var: VarOcc, source: TermError },
    #[error("`{0}` is bound twice in one update")]
    DuplicateName(String),
    #[error("{var} is assigned a table of arity {found}")]
    ValuationArity { var: VarOcc, found: usize },
    #[error("the signature lacks true, imp or all with their logic shapes")]
    NotLogicSignature,
    #[error("the algebra is not a logic algebra: {0}")]
    NotLogicAlgebra(String),
    #[error("axiom {axiom} has free variable {var} of arity {}, above the cap {cap}", var.arity)]
    ArityCapExceeded { axiom: usize, var: VarOcc, cap: usize },
    #[error("axiom {axiom} needs more than {} valuations", MAX_TABLE)]
    EnumerationTooLarge { axiom: usize },
    #[error("`{0}` is not a sub-signature of the algebra's signature")]
    NotASubsignature(String),
}

/// A value of a finite universe, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Value(pub usize);

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
}

impl Universe {
    pub fn new(names: Vec<String>) -> Result<Universe, AlgebraError> {
        if names.is_empty() {
            return Err(AlgebraError::EmptyUniverse);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(AlgebraError::DuplicateValue(n.clone()));
            }
        }
        Ok(Universe { names })
    }

    /// Values named `u0`, `u1`, ...
    pub fn sized(size: usize) -> Universe {
        assert!(size > 0, "a universe needs at least one value");
        Universe { names: (0..size).map(|i| format!("u{i}")).collect() }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: Value) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn value(&self, name: &str) -> Option<Value> {
        self.names.iter().position(|n| n == name).map(Value)
    }

    pub fn values(&self) -> impl Iterator<Item = Value> {
        (0..self.names.len()).map(Value)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// A total n-ary operation on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    arity: usize,
    carrier: usize,
    entries: Vec<Value>,
}

impl OperationTable {
    pub fn from_entries(arity: usize, carrier: usize, entries: Vec<Value>) -> Result<OperationTable, AlgebraError> {
        let expected = checked_pow(carrier, arity).unwrap_or(usize::MAX);
        if entries.len() != expected {
            return Err(AlgebraError::TableSize { arity, carrier, expected, found: entries.len() });
        }
        if let Some(v) = entries.iter().find(|v| v.0 >= carrier) {
            return Err(AlgebraError::ValueOutOfRange { value: v.0, carrier });
        }
        Ok(OperationTable { arity, carrier, entries })
    }

    pub fn constant(arity: usize, carrier: usize, v: Value) -> OperationTable {
        OperationTable { arity, carrier, entries: vec![v; carrier.pow(arity as u32)] }
    }

    /// The table with the given code; see the module docs for the encoding.
    pub fn from_code(arity: usize, carrier: usize, mut code: usize) -> OperationTable {
        let len = carrier.pow(arity as u32);
        let mut entries = vec![Value(0); len];
        for e in entries.iter_mut().rev() {
            *e = Value(code % carrier);
            code /= carrier;
        }
        OperationTable { arity, carrier, entries }
    }

    /// Number of distinct tables of this arity, if it fits in a `usize`.
    pub fn count(arity: usize, carrier: usize) -> Option<usize> {
        checked_pow(carrier, checked_pow(carrier, arity)?)
    }

    pub fn code(&self) -> usize {
        self.entries.iter().fold(0, |acc, v| acc * self.carrier + v.0)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn apply(&self, args: &[Value]) -> Value {
        debug_assert_eq!(args.len(), self.arity);
        let i = args.iter().fold(0, |acc, v| acc * self.carrier + v.0);
        self.entries[i]
    }

    /// The value of a 0-ary table.
    pub fn as_value(&self) -> Value {
        self.entries[0]
    }

    pub fn display(&self, universe: &Universe) -> String {
        if self.arity == 0 {
            return universe.name(self.entries[0]).to_string();
        }
        let names: Vec<&str> = self.entries.iter().map(|v| universe.name(*v)).collect();
        format!("[{}]", names.join(" "))
    }
}

/// Size of each argument domain of an operator of `shape`: a value position
/// ranges over the carrier, a binding position over all tables of its arity.
pub fn domain_sizes(shape: &Shape, carrier: usize) -> Option<Vec<usize>> {
    (0..shape.arity()).map(|i| OperationTable::count(shape.scope(i).len(), carrier)).collect()
}

/// Number of entries in the extensional table of an operator of `shape`.
pub fn operator_table_len(shape: &Shape, carrier: usize) -> Option<usize> {
    domain_sizes(shape, carrier)?.into_iter().try_fold(1usize, |acc, d| acc.checked_mul(d)).filter(|&n| n <= MAX_TABLE)
}

/// Interpretation of one abstraction, as a table over all argument tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorImpl {
    shape: Arc<Shape>,
    carrier: usize,
    domains: Vec<usize>,
    table: Vec<Value>,
}

impl OperatorImpl {
    pub fn from_table(shape: Arc<Shape>, carrier: usize, table: Vec<Value>) -> Result<OperatorImpl, AlgebraError> {
        let len = operator_table_len(&shape, carrier)
            .ok_or_else(|| AlgebraError::TooLarge { shape: (*shape).clone(), carrier })?;
        if table.len() != len {
            return Err(AlgebraError::OperatorSize { name: shape.to_string(), expected: len, found: table.len() });
        }
        if let Some(v) = table.iter().find(|v| v.0 >= carrier) {
            return Err(AlgebraError::ValueOutOfRange { value: v.0, carrier });
        }
        let domains = domain_sizes(&shape, carrier).expect("checked above");
        Ok(OperatorImpl { shape, carrier, domains, table })
    }

    /// Tabulates `f` over every argument tuple. Value positions are passed as
    /// 0-ary tables.
    pub fn from_fn(
        shape: Arc<Shape>,
        carrier: usize,
        mut f: impl FnMut(&[OperationTable]) -> Value,
    ) -> Result<OperatorImpl, AlgebraError> {
        let len = operator_table_len(&shape, carrier)
            .ok_or_else(|| AlgebraError::TooLarge { shape: (*shape).clone(), carrier })?;
        let domains = domain_sizes(&shape, carrier).expect("checked above");
        let mut table = Vec::with_capacity(len);
        let mut codes = vec![0; domains.len()];
        for idx in 0..len {
            let mut rest = idx;
            for (c, d) in codes.iter_mut().zip(&domains).rev() {
                *c = rest % d;
                rest /= d;
            }
            let args: Vec<OperationTable> = codes
                .iter()
                .enumerate()
                .map(|(i, &code)| OperationTable::from_code(shape.scope(i).len(), carrier, code))
                .collect();
            let v = f(&args);
            if v.0 >= carrier {
                return Err(AlgebraError::ValueOutOfRange { value: v.0, carrier });
            }
            table.push(v);
        }
        Ok(OperatorImpl { shape, carrier, domains, table })
    }

    pub fn constant(shape: Arc<Shape>, carrier: usize, v: Value) -> Result<OperatorImpl, AlgebraError> {
        OperatorImpl::from_fn(shape, carrier, |_| v)
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    /// Table index of an argument tuple given by argument codes.
    pub fn index(&self, codes: &[usize]) -> usize {
        codes.iter().zip(&self.domains).fold(0, |acc, (c, d)| acc * d + c)
    }

    pub fn apply_codes(&self, codes: &[usize]) -> Value {
        self.table[self.index(codes)]
    }

    pub fn apply(&self, args: &[OperationTable]) -> Value {
        let codes: Vec<usize> = args.iter().map(OperationTable::code).collect();
        self.apply_codes(&codes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractionAlgebra {
    universe: Universe,
    signature: Signature,
    interp: BTreeMap<String, OperatorImpl>,
}

impl AbstractionAlgebra {
    pub fn new(
        universe: Universe,
        signature: Signature,
        interp: BTreeMap<String, OperatorImpl>,
    ) -> Result<AbstractionAlgebra, AlgebraError> {
        for decl in signature.decls() {
            let op = interp.get(&decl.name).ok_or_else(|| AlgebraError::MissingInterpretation(decl.name.clone()))?;
            if *op.shape != *decl.shape {
                return Err(AlgebraError::InterpretationShape {
                    name: decl.name.clone(),
                    declared: (*decl.shape).clone(),
                    found: (*op.shape).clone(),
                });
            }
            if op.carrier != universe.size() {
                return Err(AlgebraError::OperatorSize {
                    name: decl.name.clone(),
                    expected: operator_table_len(&decl.shape, universe.size()).unwrap_or(0),
                    found: op.table.len(),
                });
            }
        }
        if let Some(extra) = interp.keys().find(|n| !signature.contains(n)) {
            return Err(AlgebraError::UndeclaredInterpretation(extra.clone()));
        }
        Ok(AbstractionAlgebra { universe, signature, interp })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn carrier(&self) -> usize {
        self.universe.size()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn interp(&self, name: &str) -> Option<&OperatorImpl> {
        self.interp.get(name)
    }

    /// `I(true)`, if the signature declares `true`.
    pub fn top(&self) -> Option<Value> {
        self.interp.get(TRUE).map(|op| op.table[0])
    }

    /// The reduct to a sub-signature.
    pub fn restrict(&self, sig: &Signature) -> Result<AbstractionAlgebra, AlgebraError> {
        if !crate::signature::extends_signature(&self.signature, sig) {
            return Err(AlgebraError::NotASubsignature(
                sig.decls().iter().map(|d| d.name.as_str()).collect::<Vec<_>>().join(", "),
            ));
        }
        let interp = sig.decls().iter().map(|d| (d.name.clone(), self.interp[&d.name].clone())).collect();
        Ok(AbstractionAlgebra { universe: self.universe.clone(), signature: sig.clone(), interp })
    }
}

/// Finitely many overrides; every other variable is the constant #0 operation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    overrides: BTreeMap<VarOcc, OperationTable>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn set(&mut self, var: VarOcc, table: OperationTable) -> Result<(), AlgebraError> {
        if table.arity != var.arity {
            return Err(AlgebraError::ValuationArity { found: table.arity, var });
        }
        self.overrides.insert(var, table);
        Ok(())
    }

    pub fn with(mut self, var: VarOcc, table: OperationTable) -> Result<Valuation, AlgebraError> {
        self.set(var, table)?;
        Ok(self)
    }

    pub fn set_value(&mut self, name: impl Into<String>, v: Value, carrier: usize) {
        self.overrides.insert(VarOcc::new(name, 0), OperationTable::constant(0, carrier, v));
    }

    /// The table assigned to `var`, or `None` for the default.
    pub fn get(&self, var: &VarOcc) -> Option<&OperationTable> {
        self.overrides.get(var)
    }

    /// The table assigned to `var`, materialising the default.
    pub fn table(&self, var: &VarOcc, carrier: usize) -> OperationTable {
        self.get(var).cloned().unwrap_or_else(|| OperationTable::constant(var.arity, carrier, Value(0)))
    }

    fn lookup(&self, name: &str, arity: usize) -> Option<&OperationTable> {
        self.overrides.iter().find(|(v, _)| v.arity == arity && v.name == name).map(|(_, t)| t)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&VarOcc, &OperationTable)> {
        self.overrides.iter()
    }
}

/// `ν[x_0 := u_0, ...]`: updates arity-0 entries only.
pub fn update_valuation(
    nu: &Valuation,
    bindings: &[(String, Value)],
    carrier: usize,
) -> Result<Valuation, AlgebraError> {
    let mut seen = BTreeSet::new();
    let mut out = nu.clone();
    for (name, v) in bindings {
        if !seen.insert(name) {
            return Err(AlgebraError::DuplicateName(name.clone()));
        }
        if v.0 >= carrier {
            return Err(AlgebraError::ValueOutOfRange { value: v.0, carrier });
        }
        out.set_value(name.clone(), *v, carrier);
    }
    Ok(out)
}

/// Source of operator results for the evaluator. A complete algebra never
/// stops; a partial one used by model search stops on a missing entry.
pub(crate) trait Interpretation {
    type Stop;
    fn carrier(&self) -> usize;
    fn lookup(&self, name: &str, codes: &[usize]) -> Result<Value, Self::Stop>;
}

impl Interpretation for AbstractionAlgebra {
    type Stop = Infallible;

    fn carrier(&self) -> usize {
        self.universe.size()
    }

    fn lookup(&self, name: &str, codes: &[usize]) -> Result<Value, Infallible> {
        Ok(self.interp[name].apply_codes(codes))
    }
}

pub(crate) struct Evaluator<'a, I> {
    pub interp: &'a I,
    pub nu: &'a Valuation,
    locals: Vec<(&'a str, Value)>,
}

impl<'a, I: Interpretation> Evaluator<'a, I> {
    pub fn new(interp: &'a I, nu: &'a Valuation) -> Self {
        Evaluator { interp, nu, locals: Vec::new() }
    }

    pub fn eval(&mut self, t: &'a Term) -> Result<Value, I::Stop> {
        match t {
            Term::Var { name, args } => {
                if args.is_empty() {
                    if let Some(&(_, v)) = self.locals.iter().rev().find(|(n, _)| *n == name) {
                        return Ok(v);
                    }
                }
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a)?);
                }
                Ok(self.nu.lookup(name, args.len()).map_or(Value(0), |tab| tab.apply(&vals)))
            }
            Term::Abs { name, shape, binders, args } => {
                let c = self.interp.carrier();
                let mut codes = Vec::with_capacity(args.len());
                for (i, a) in args.iter().enumerate() {
                    let scope = shape.scope(i);
                    if scope.is_empty() {
                        codes.push(self.eval(a)?.0);
                        continue;
                    }
                    let k = scope.len();
                    let mark = self.locals.len();
                    self.locals.extend(scope.iter().map(|&j| (binders[j].as_str(), Value(0))));
                    let mut code = 0usize;
                    for tuple in 0..c.pow(k as u32) {
                        let mut rest = tuple;
                        for slot in self.locals[mark..].iter_mut().rev() {
                            slot.1 = Value(rest % c);
                            rest /= c;
                        }
                        let v = self.eval(a);
                        let v = match v {
                            Ok(v) => v,
                            Err(e) => {
                                self.locals.truncate(mark);
                                return Err(e);
                            }
                        };
                        code = code * c + v.0;
                    }
                    self.locals.truncate(mark);
                    codes.push(code);
                }
                self.interp.lookup(name, &codes)
            }
        }
    }
}

/// The value of `t` in `alg` under `nu`.
pub fn eval(alg: &AbstractionAlgebra, nu: &Valuation, t: &Term) -> Result<Value, AlgebraError> {
    check_wellformed(t, &alg.signature).map_err(AlgebraError::IllFormedTerm)?;
    let Ok(v) = Evaluator::new(alg, nu).eval(t);
    Ok(v)
}

/// The valuation `ν_σ` induced by a substitution.
pub fn valuation_from_subst(
    nu: &Valuation,
    sigma: &Substitution,
    alg: &AbstractionAlgebra,
) -> Result<Valuation, AlgebraError> {
    let c = alg.carrier();
    let mut out = nu.clone();
    for (var, template) in sigma.iter() {
        check_wellformed(template.body(), &alg.signature)
            .map_err(|source| AlgebraError::IllFormedTemplate { var: var.clone(), source })?;
        let n = var.arity;
        let mut entries = Vec::with_capacity(c.pow(n as u32));
        for tuple in 0..c.pow(n as u32) {
            let mut rest = tuple;
            let mut us = vec![Value(0); n];
            for u in us.iter_mut().rev() {
                *u = Value(rest % c);
                rest /= c;
            }
            let bindings: Vec<(String, Value)> = template.params().iter().cloned().zip(us).collect();
            let local = update_valuation(nu, &bindings, c)?;
            let Ok(v) = Evaluator::new(alg, &local).eval(template.body());
            entries.push(v);
        }
        out.set(var.clone(), OperationTable::from_entries(n, c, entries)?)?;
    }
    Ok(out)
}

/// Evaluates `apply_subst(σ, t)` under `nu`; the other side of the
/// substitution lemma.
pub fn eval_substituted(
    alg: &AbstractionAlgebra,
    nu: &Valuation,
    sigma: &Substitution,
    t: &Term,
) -> Result<Value, AlgebraError> {
    eval(alg, nu, &apply_subst(sigma, t))
}

/// Why an algebra fails to be a logic algebra, if it does.
pub fn logic_algebra_violation(alg: &AbstractionAlgebra) -> Result<Option<String>, AlgebraError> {
    if !is_logic_signature(&alg.signature) {
        return Err(AlgebraError::NotLogicSignature);
    }
    let c = alg.carrier();
    let top = alg.top().expect("logic signature declares true");
    let imp = &alg.interp[IMP];
    for u in alg.universe.values() {
        if u != top && imp.apply_codes(&[top.0, u.0]) == top {
            return Ok(Some(format!(
                "imp({}, {}) = {} although {} is not true",
                alg.universe.name(top),
                alg.universe.name(u),
                alg.universe.name(top),
                alg.universe.name(u)
            )));
        }
    }
    let all = &alg.interp[ALL];
    let const_top = OperationTable::constant(1, c, top);
    let v = all.apply(&[const_top]);
    if v != top {
        return Ok(Some(format!(
            "all maps the constantly-{} operation to {}",
            alg.universe.name(top),
            alg.universe.name(v)
        )));
    }
    Ok(None)
}

pub fn is_logic_algebra(alg: &AbstractionAlgebra) -> Result<bool, AlgebraError> {
    Ok(logic_algebra_violation(alg)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// The failing valuation restricted to the axiom's free variables.
    pub valuation: Vec<(VarOcc, OperationTable)>,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Term,
    pub valuations: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelReport {
    pub verdicts: Vec<AxiomVerdict>,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.verdicts.iter().filter(|v| v.passed()).count()
    }
}

/// Odometer over the codes of tables for the given variables.
pub(crate) fn valuations_over(vars: &[VarOcc], carrier: usize) -> Option<impl Iterator<Item = Valuation> + '_> {
    let counts: Vec<usize> = vars.iter().map(|v| OperationTable::count(v.arity, carrier)).collect::<Option<_>>()?;
    let total = counts.iter().try_fold(1usize, |acc, n| acc.checked_mul(*n))?;
    if total > MAX_TABLE {
        return None;
    }
    Some((0..total).map(move |mut idx| {
        let mut nu = Valuation::new();
        for (v, n) in vars.iter().zip(&counts).rev() {
            let code = idx % n;
            idx /= n;
            nu.overrides.insert(v.clone(), OperationTable::from_code(v.arity, carrier, code));
        }
        nu
    }))
}

/// Checks every axiom under every valuation of its own free variables.
pub fn check_model(alg: &AbstractionAlgebra, axioms: &[Term], arity_cap: usize) -> Result<ModelReport, AlgebraError> {
    if let Some(why) = logic_algebra_violation(alg)? {
        return Err(AlgebraError::NotLogicAlgebra(why));
    }
    let top = alg.top().expect("logic signature");
    let c = alg.carrier();
    let mut plans = Vec::with_capacity(axioms.len());
    for (i, ax) in axioms.iter().enumerate() {
        check_wellformed(ax, &alg.signature).map_err(AlgebraError::IllFormedTerm)?;
        let vars: Vec<VarOcc> = free_vars(ax).into_iter().collect();
        if let Some(v) = vars.iter().find(|v| v.arity > arity_cap) {
            return Err(AlgebraError::ArityCapExceeded { axiom: i, var: v.clone(), cap: arity_cap });
        }
        plans.push(vars);
    }
    let mut verdicts = Vec::with_capacity(axioms.len());
    for (i, (ax, vars)) in axioms.iter().zip(&plans).enumerate() {
        let valuations = valuations_over(vars, c).ok_or(AlgebraError::EnumerationTooLarge { axiom: i })?;
        let mut count = 0;
        let mut counterexample = None;
        for nu in valuations {
            count += 1;
            let Ok(v) = Evaluator::new(alg, &nu).eval(ax);
            if v != top {
                counterexample = Some(Counterexample { valuation: nu.overrides.into_iter().collect(), value: v });
                break;
            }
        }
        verdicts.push(AxiomVerdict { axiom: ax.clone(), valuations: count, counterexample });
    }
    Ok(ModelReport { verdicts })
}

pub const T: Value = Value(0);
pub const F: Value = Value(1);

/// The two-element boolean algebra over the signature of classical logic,
/// with `T = #0` and `F = #1`.
pub fn boolean_model() -> AbstractionAlgebra {
    let sig = crate::logics::builtin_logic(crate::logics::LogicName::K).signature().clone();
    let universe = Universe::new(vec!["T".into(), "F".into()]).expect("two names");
    let b = |x: bool| if x { T } else { F };
    let mut interp = BTreeMap::new();
    for decl in sig.decls() {
        let shape = decl.shape.clone();
        let op = match decl.name.as_str() {
            "true" => OperatorImpl::constant(shape, 2, T),
            "false" => OperatorImpl::constant(shape, 2, F),
            name => OperatorImpl::from_fn(shape, 2, |args| {
                let v = |i: usize| args[i].as_value() == T;
                match name {
                    "imp" => b(!v(0) || v(1)),
                    "eq" => b(args[0].as_value() == args[1].as_value()),
                    "neq" => b(args[0].as_value() != args[1].as_value()),
                    "not" => b(!v(0)),
                    "and" => b(v(0) && v(1)),
                    "or" => b(v(0) || v(1)),
                    "iff" => b(v(0) == v(1)),
                    "all" => b(args[0].entries().iter().all(|&e| e == T)),
                    "ex" => b(args[0].entries().contains(&T)),
                    other => unreachable!("no boolean meaning for {other}"),
                }
            }),
        }
        .expect("small tables");
        interp.insert(decl.name.clone(), op);
    }
    AbstractionAlgebra::new(universe, sig, interp).expect("complete interpretation")
}

/// The one-element algebra over any signature.
pub fn degenerate_model(sig: &Signature) -> AbstractionAlgebra {
    let interp = sig
        .decls()
        .iter()
        .map(|d| {
            let op = OperatorImpl::constant(d.shape.clone(), 1, Value(0)).expect("one entry");
            (d.name.clone(), op)
        })
        .collect();
    AbstractionAlgebra::new(Universe::new(vec!["U".into()]).expect("one name"), sig.clone(), interp)
        .expect("complete interpretation")
}

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;

use abslogic::algebra::{
    eval, operator_table_len, AbstractionAlgebra, OperationTable, OperatorImpl, Universe, Valuation, Value,
};
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::signature::{AbstractionDecl, Signature};
use abslogic::subst::{Substitution, Template};
use abslogic::syntax::parse_shape;
use abslogic::term::{free_vars, Term, VarOcc};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn theory_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("theories").join(name)
}

pub fn read_theory(name: &str) -> String {
    std::fs::read_to_string(theory_path(name)).expect("shipped theory file")
}

/// Classical logic plus two abstractions with less common binding
/// structure: `integral : (1; {}, {0})` and `lam2 : (2; {0, 1})`.
pub fn test_signature() -> Signature {
    builtin_logic(LogicName::K)
        .signature()
        .extend([
            AbstractionDecl::new("integral", parse_shape("(1; {}, {0})").unwrap()),
            AbstractionDecl::new("lam2", parse_shape("(2; {0, 1})").unwrap()),
        ])
        .unwrap()
}

const BOUND: &[&str] = &["x", "y", "z", "w"];
const FREE: &[(&str, usize)] = &[("x", 0), ("y", 0), ("A", 0), ("B", 0), ("f", 1), ("g", 2), ("x", 1)];

pub struct Gen {
    pub rng: StdRng,
    pub sig: Signature,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: StdRng::seed_from_u64(seed), sig: test_signature() }
    }

    pub fn with_signature(seed: u64, sig: Signature) -> Gen {
        Gen { rng: StdRng::seed_from_u64(seed), sig }
    }

    /// A well-formed term of depth at most `depth`; bound names come from a
    /// small pool so shadowing and capture situations are common.
    pub fn term(&mut self, depth: usize) -> Term {
        self.term_in(depth, &[])
    }

    fn term_in(&mut self, depth: usize, scope: &[String]) -> Term {
        if depth <= 1 || self.rng.gen_bool(0.25) {
            return self.leaf(scope, depth);
        }
        if self.rng.gen_bool(0.2) {
            let (name, arity) = *FREE.iter().filter(|(_, a)| *a > 0).collect::<Vec<_>>().choose(&mut self.rng).unwrap();
            let args = (0..*arity).map(|_| self.term_in(depth - 1, scope)).collect();
            return Term::app(*name, args);
        }
        let decls = self.sig.decls().to_vec();
        let decl = decls.choose(&mut self.rng).unwrap();
        let mut pool: Vec<&str> = BOUND.to_vec();
        pool.shuffle(&mut self.rng);
        let binders: Vec<String> = pool[..decl.shape.valence()].iter().map(|s| s.to_string()).collect();
        let args = (0..decl.shape.arity())
            .map(|i| {
                let mut inner = scope.to_vec();
                inner.extend(decl.shape.scope(i).iter().map(|&j| binders[j].clone()));
                self.term_in(depth - 1, &inner)
            })
            .collect();
        Term::apply(&self.sig, &decl.name, binders, args).unwrap()
    }

    fn leaf(&mut self, scope: &[String], depth: usize) -> Term {
        let zero_ary: Vec<&str> =
            self.sig.decls().iter().filter(|d| d.shape.arity() == 0).map(|d| d.name.as_str()).collect();
        match self.rng.gen_range(0..10) {
            0..=4 if !scope.is_empty() => Term::var(scope.choose(&mut self.rng).unwrap().clone()),
            5 if !zero_ary.is_empty() => {
                Term::apply(&self.sig, zero_ary.choose(&mut self.rng).unwrap(), vec![], vec![]).unwrap()
            }
            6 if depth > 1 => {
                let arg = self.leaf(scope, 1);
                Term::app("f", vec![arg])
            }
            _ => {
                let zero: Vec<&str> = FREE.iter().filter(|(_, a)| *a == 0).map(|(n, _)| *n).collect();
                Term::var(*zero.choose(&mut self.rng).unwrap())
            }
        }
    }

    pub fn template(&mut self, arity: usize, depth: usize) -> Template {
        let mut pool: Vec<&str> = BOUND.to_vec();
        pool.shuffle(&mut self.rng);
        let params: Vec<String> = pool[..arity].iter().map(|s| s.to_string()).collect();
        let body = self.term_in(depth, &params);
        Template::new(params, body).unwrap()
    }

    /// Replaces some of the variables of `t` (and possibly others).
    pub fn substitution(&mut self, t: &Term, depth: usize) -> Substitution {
        let mut targets: Vec<VarOcc> = free_vars(t).into_iter().collect();
        targets.extend(FREE.iter().map(|(n, a)| VarOcc::new(*n, *a)));
        targets.sort();
        targets.dedup();
        let mut sigma = Substitution::new();
        for v in targets {
            if self.rng.gen_bool(0.5) {
                let tmpl = self.template(v.arity, depth);
                sigma.insert(v, tmpl).unwrap();
            }
        }
        sigma
    }

    /// An arbitrary algebra (not necessarily a logic algebra).
    pub fn algebra(&mut self, carrier: usize) -> AbstractionAlgebra {
        let mut interp = BTreeMap::new();
        for d in self.sig.decls() {
            let len = operator_table_len(&d.shape, carrier).expect("small shapes");
            let table = (0..len).map(|_| Value(self.rng.gen_range(0..carrier))).collect();
            interp.insert(d.name.clone(), OperatorImpl::from_table(Arc::clone(&d.shape), carrier, table).unwrap());
        }
        AbstractionAlgebra::new(Universe::sized(carrier), self.sig.clone(), interp).unwrap()
    }

    /// Random tables for every variable in `vars`.
    pub fn valuation<'a>(&mut self, vars: impl IntoIterator<Item = &'a VarOcc>, carrier: usize) -> Valuation {
        let mut nu = Valuation::new();
        for v in vars {
            let count = OperationTable::count(v.arity, carrier).unwrap();
            let table = OperationTable::from_code(v.arity, carrier, self.rng.gen_range(0..count));
            nu.set(v.clone(), table).unwrap();
        }
        nu
    }

    /// Renames one binder of one abstraction node, rewriting the arity-0
    /// occurrences it binds. No capture check: the result may or may not be
    /// α-equivalent to `t`.
    pub fn rename_binder(&mut self, t: &Term) -> Term {
        let nodes = count_abs(t);
        if nodes == 0 {
            return t.clone();
        }
        let target = self.rng.gen_range(0..nodes);
        let new = BOUND.choose(&mut self.rng).unwrap().to_string();
        let mut seen = 0;
        rename_at(t, target, &new, &mut seen, &mut self.rng)
    }

    /// Replaces one random subterm with a fresh random term.
    pub fn mutate(&mut self, t: &Term) -> Term {
        let target = self.rng.gen_range(0..t.size());
        let mut seen = 0;
        let replacement = self.term(2);
        replace_at(t, target, &replacement, &mut seen)
    }
}

fn count_abs(t: &Term) -> usize {
    match t {
        Term::Var { args, .. } => args.iter().map(count_abs).sum(),
        Term::Abs { args, binders, .. } => usize::from(!binders.is_empty()) + args.iter().map(count_abs).sum::<usize>(),
    }
}

fn rename_at(t: &Term, target: usize, new: &str, seen: &mut usize, rng: &mut StdRng) -> Term {
    match t {
        Term::Var { name, args } => {
            Term::app(name.clone(), args.iter().map(|a| rename_at(a, target, new, seen, rng)).collect())
        }
        Term::Abs { name, shape, binders, args } => {
            if !binders.is_empty() {
                if *seen == target {
                    *seen += 1;
                    let j = rng.gen_range(0..binders.len());
                    let old = binders[j].clone();
                    let mut bs = binders.clone();
                    bs[j] = new.to_string();
                    if bs.iter().collect::<BTreeSet<_>>().len() < bs.len() {
                        return t.clone();
                    }
                    let args = args
                        .iter()
                        .enumerate()
                        .map(|(i, a)| if shape.scope(i).contains(&j) { rename_free(a, &old, new) } else { a.clone() })
                        .collect();
                    return Term::abs(name.clone(), shape.clone(), bs, args);
                }
                *seen += 1;
            }
            let args = args.iter().map(|a| rename_at(a, target, new, seen, rng)).collect();
            Term::abs(name.clone(), shape.clone(), binders.clone(), args)
        }
    }
}

/// Renames free arity-0 occurrences of `old`, stopping under rebinding.
fn rename_free(t: &Term, old: &str, new: &str) -> Term {
    match t {
        Term::Var { name, args } if args.is_empty() => Term::var(if name == old { new } else { name }),
        Term::Var { name, args } => Term::app(name.clone(), args.iter().map(|a| rename_free(a, old, new)).collect()),
        Term::Abs { name, shape, binders, args } => {
            let args = args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if shape.scope(i).iter().any(|&j| binders[j] == old) {
                        a.clone()
                    } else {
                        rename_free(a, old, new)
                    }
                })
                .collect();
            Term::abs(name.clone(), shape.clone(), binders.clone(), args)
        }
    }
}

fn replace_at(t: &Term, target: usize, with: &Term, seen: &mut usize) -> Term {
    if *seen == target {
        *seen += t.size();
        return with.clone();
    }
    *seen += 1;
    match t {
        Term::Var { name, args } => {
            Term::app(name.clone(), args.iter().map(|a| replace_at(a, target, with, seen)).collect())
        }
        Term::Abs { name, shape, binders, args } => Term::abs(
            name.clone(),
            shape.clone(),
            binders.clone(),
            args.iter().map(|a| replace_at(a, target, with, seen)).collect(),
        ),
    }
}

/// α-equivalence by the textbook method: walk both terms in parallel with a
/// stack of corresponding bound names.
pub fn alpha_oracle(s: &Term, t: &Term) -> bool {
    fn go(s: &Term, t: &Term, env: &mut Vec<(String, String)>) -> bool {
        match (s, t) {
            (Term::Var { name: a, args: xs }, Term::Var { name: b, args: ys }) => {
                if xs.len() != ys.len() {
                    return false;
                }
                if xs.is_empty() {
                    let left = env.iter().rposition(|(l, _)| l == a);
                    let right = env.iter().rposition(|(_, r)| r == b);
                    return match (left, right) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => a == b,
                        _ => false,
                    };
                }
                a == b && xs.iter().zip(ys).all(|(x, y)| go(x, y, env))
            }
            (
                Term::Abs { name: a, shape: sa, binders: ba, args: xs },
                Term::Abs { name: b, shape: sb, binders: bb, args: ys },
            ) => {
                if a != b || sa != sb {
                    return false;
                }
                xs.iter().zip(ys).enumerate().all(|(i, (x, y))| {
                    let depth = env.len();
                    for &j in sa.scope(i) {
                        env.push((ba[j].clone(), bb[j].clone()));
                    }
                    let ok = go(x, y, env);
                    env.truncate(depth);
                    ok
                })
            }
            _ => false,
        }
    }
    go(s, t, &mut Vec::new())
}

/// `ν_σ` computed directly from its definition: each substituted variable
/// denotes the operation taking its arguments to the value of the template
/// body, with the parameters bound to those arguments and everything else
/// read from `nu`.
pub fn induced_valuation(alg: &AbstractionAlgebra, nu: &Valuation, sigma: &Substitution) -> Valuation {
    let c = alg.carrier();
    let mut out = nu.clone();
    for (var, tmpl) in sigma.iter() {
        let mut entries = Vec::new();
        for tuple in tuples(var.arity, c) {
            let mut local = nu.clone();
            for (p, u) in tmpl.params().iter().zip(&tuple) {
                local.set_value(p.clone(), *u, c);
            }
            entries.push(eval(alg, &local, tmpl.body()).unwrap());
        }
        out.set(var.clone(), OperationTable::from_entries(var.arity, c, entries).unwrap()).unwrap();
    }
    out
}

/// All argument tuples, first argument most significant.
pub fn tuples(arity: usize, carrier: usize) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..carrier).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(Value(v));
                    p
                })
            })
            .collect();
    }
    out
}

/// Every valuation of `vars` over `alg`, enumerated naively.
pub fn all_valuations(vars: &[VarOcc], carrier: usize) -> Vec<Valuation> {
    let mut out = vec![Valuation::new()];
    for v in vars {
        let count = OperationTable::count(v.arity, carrier).unwrap();
        out = out
            .into_iter()
            .flat_map(|nu| {
                (0..count).map(move |code| {
                    nu.clone().with(v.clone(), OperationTable::from_code(v.arity, carrier, code)).unwrap()
                })
            })
            .collect();
    }
    out
}

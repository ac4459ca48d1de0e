//! Exhaustive search for finite models of an axiom set.
//!
//! Operator tables are filled in lazily: every axiom instance and both
//! logic-algebra conditions are evaluated against a partial interpretation,
//! and the search only branches on a table entry some pending constraint
//! actually needs. A violated constraint prunes the whole subtree. Since any
//! model can be relabelled so that `I(true)` is the first value, that entry is
//! fixed up front.

use std::collections::BTreeMap;

use crate::algebra::{
    check_model, domain_sizes, operator_table_len, valuations_over, AbstractionAlgebra, AlgebraError, Evaluator,
    Interpretation, OperationTable, OperatorImpl, Universe, Valuation, Value,
};
use crate::signature::{is_logic_signature, Signature, ALL, IMP, TRUE};
use crate::term::{check_wellformed, free_vars, Term, VarOcc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A model, already re-verified with `check_model`.
    Found { model: AbstractionAlgebra, nodes: u64 },
    /// The search space was exhausted: there is no model of this size.
    NoModel { nodes: u64 },
    /// The node budget ran out first.
    GaveUp { nodes: u64 },
}

struct Slot {
    domains: Vec<usize>,
    table: Vec<Option<Value>>,
}

struct Partial {
    carrier: usize,
    names: BTreeMap<String, usize>,
    slots: Vec<Slot>,
}

#[derive(Debug, Clone, Copy)]
struct Need {
    slot: usize,
    index: usize,
}

impl Interpretation for Partial {
    type Stop = Need;

    fn carrier(&self) -> usize {
        self.carrier
    }

    fn lookup(&self, name: &str, codes: &[usize]) -> Result<Value, Need> {
        let slot = self.names[name];
        let s = &self.slots[slot];
        let index = codes.iter().zip(&s.domains).fold(0, |acc, (c, d)| acc * d + c);
        s.table[index].ok_or(Need { slot, index })
    }
}

#[derive(Clone)]
enum Constraint {
    /// Axiom `ax` evaluates to the top value under this valuation.
    Axiom(usize, Valuation),
    /// `imp(top, u) != top`, for `u != top`.
    ModusPonens(Value),
    /// `all` maps the constantly-top operation to top.
    AllOfTop,
}

enum Status {
    Holds,
    Violated,
    Pending(Need),
}

struct Search<'a> {
    axioms: &'a [Term],
    constraints: Vec<Constraint>,
    /// How often each group (MP condition, all condition, one per axiom) has
    /// pruned a branch. Branching follows the most active pending group.
    activity: Vec<u64>,
    partial: Partial,
    nodes: u64,
    limit: Option<u64>,
}

const TOP: Value = Value(0);

fn group(c: &Constraint) -> usize {
    match c {
        Constraint::ModusPonens(_) => 0,
        Constraint::AllOfTop => 1,
        Constraint::Axiom(i, _) => i + 2,
    }
}

impl Search<'_> {
    fn status(&self, c: &Constraint) -> Status {
        let got = match c {
            Constraint::Axiom(i, nu) => Evaluator::new(&self.partial, nu).eval(&self.axioms[*i]).map(|v| v == TOP),
            Constraint::ModusPonens(u) => self.partial.lookup(IMP, &[TOP.0, u.0]).map(|v| v != TOP),
            Constraint::AllOfTop => {
                let code = OperationTable::constant(1, self.partial.carrier, TOP).code();
                self.partial.lookup(ALL, &[code]).map(|v| v == TOP)
            }
        };
        match got {
            Ok(true) => Status::Holds,
            Ok(false) => Status::Violated,
            Err(need) => Status::Pending(need),
        }
    }

    /// `Ok(true)` once every constraint holds in `partial`.
    fn dfs(&mut self, pending: Vec<usize>) -> Result<bool, ()> {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Err(());
        }
        let mut still = Vec::with_capacity(pending.len());
        let mut branch: Option<(u64, Need)> = None;
        for id in pending {
            let c = &self.constraints[id];
            match self.status(c) {
                Status::Holds => {}
                Status::Violated => {
                    self.activity[group(c)] += 1;
                    return Ok(false);
                }
                Status::Pending(need) => {
                    let score = self.activity[group(c)];
                    if branch.is_none_or(|(best, _)| score > best) {
                        branch = Some((score, need));
                    }
                    still.push(id);
                }
            }
        }
        let Some((_, Need { slot, index })) = branch else {
            return Ok(true);
        };
        for v in 0..self.partial.carrier {
            self.partial.slots[slot].table[index] = Some(Value(v));
            if self.dfs(still.clone())? {
                return Ok(true);
            }
        }
        self.partial.slots[slot].table[index] = None;
        Ok(false)
    }
}

/// Searches for a model of `axioms` over `sig` with exactly `carrier` values.
/// Free variables of axioms range over all operations of arity at most
/// `arity_cap`.
pub fn find_model(
    sig: &Signature,
    axioms: &[Term],
    carrier: usize,
    arity_cap: usize,
    node_limit: Option<u64>,
) -> Result<SearchOutcome, AlgebraError> {
    if !is_logic_signature(sig) {
        return Err(AlgebraError::NotLogicSignature);
    }
    let mut constraints = Vec::new();
    for u in 1..carrier {
        constraints.push(Constraint::ModusPonens(Value(u)));
    }
    constraints.push(Constraint::AllOfTop);
    for (i, ax) in axioms.iter().enumerate() {
        check_wellformed(ax, sig).map_err(AlgebraError::IllFormedTerm)?;
        let vars: Vec<VarOcc> = free_vars(ax).into_iter().collect();
        if let Some(v) = vars.iter().find(|v| v.arity > arity_cap) {
            return Err(AlgebraError::ArityCapExceeded { axiom: i, var: v.clone(), cap: arity_cap });
        }
        let valuations = valuations_over(&vars, carrier).ok_or(AlgebraError::EnumerationTooLarge { axiom: i })?;
        constraints.extend(valuations.map(|nu| Constraint::Axiom(i, nu)));
    }

    let mut names = BTreeMap::new();
    let mut slots = Vec::new();
    for d in sig.decls() {
        let len = operator_table_len(&d.shape, carrier)
            .ok_or_else(|| AlgebraError::TooLarge { shape: (*d.shape).clone(), carrier })?;
        names.insert(d.name.clone(), slots.len());
        slots.push(Slot { domains: domain_sizes(&d.shape, carrier).expect("bounded above"), table: vec![None; len] });
    }
    slots[names[TRUE]].table[0] = Some(TOP);

    let pending = (0..constraints.len()).collect();
    let mut search = Search {
        axioms,
        constraints,
        activity: vec![0; axioms.len() + 2],
        partial: Partial { carrier, names, slots },
        nodes: 0,
        limit: node_limit,
    };
    match search.dfs(pending) {
        Err(()) => Ok(SearchOutcome::GaveUp { nodes: search.nodes }),
        Ok(false) => Ok(SearchOutcome::NoModel { nodes: search.nodes }),
        Ok(true) => {
            let nodes = search.nodes;
            let mut interp = BTreeMap::new();
            for d in sig.decls() {
                let slot = &search.partial.slots[search.partial.names[&d.name]];
                let table = slot.table.iter().map(|v| v.unwrap_or(TOP)).collect();
                interp.insert(d.name.clone(), OperatorImpl::from_table(d.shape.clone(), carrier, table)?);
            }
            let model = AbstractionAlgebra::new(Universe::sized(carrier), sig.clone(), interp)?;
            debug_assert!(check_model(&model, axioms, arity_cap)?.passed());
            Ok(SearchOutcome::Found { model, nodes })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_logic_algebra;
    use crate::logics::{builtin_logic, LogicName};

    #[test]
    fn finds_a_two_valued_model_of_k() {
        let k = builtin_logic(LogicName::K);
        match find_model(k.signature(), &k.axiom_terms(), 2, 1, None).unwrap() {
            SearchOutcome::Found { model, .. } => {
                assert!(is_logic_algebra(&model).unwrap());
                assert!(check_model(&model, &k.axiom_terms(), 1).unwrap().passed());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn forall_x_x_has_no_small_model() {
        let d = builtin_logic(LogicName::D);
        let mut axioms = d.axiom_terms();
        axioms.push(d.parse("all x. x").unwrap());
        for c in [2, 3] {
            let out = find_model(d.signature(), &axioms, c, 1, None).unwrap();
            assert!(matches!(out, SearchOutcome::NoModel { .. }), "size {c}: {out:?}");
        }
        let out = find_model(d.signature(), &axioms, 1, 1, None).unwrap();
        assert!(matches!(out, SearchOutcome::Found { .. }));
    }

    #[test]
    fn node_limit_is_respected() {
        let k = builtin_logic(LogicName::K);
        let out = find_model(k.signature(), &k.axiom_terms(), 3, 1, Some(3)).unwrap();
        assert_eq!(out, SearchOutcome::GaveUp { nodes: 4 });
    }
}

//! Capture-avoiding substitution with templates, and the substitution lemma
//! checked on one example.
use abslogic::algebra::{boolean_model, eval, valuation_from_subst, OperationTable, Valuation, F};
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::subst::apply_subst;
use abslogic::syntax::{parse_substitution, parse_term};
use abslogic::term::VarOcc;

fn main() {
    let sig = builtin_logic(LogicName::K).signature();
    let t = parse_term("all x. A[x] -> B", sig).unwrap();

    // B mentions x; the binder is renamed rather than capturing it.
    let sigma = parse_substitution("{ A/1 := [u. u = y], B := x }", sig).unwrap();
    println!("{t}  ==>  {}", apply_subst(&sigma, &t));

    // Simultaneous: y := x and x := y swap, they do not chain.
    let swap = parse_substitution("{ x := y, y := x }", sig).unwrap();
    let pair = parse_term("x = y", sig).unwrap();
    println!("{pair}  ==>  {}", apply_subst(&swap, &pair));

    let alg = boolean_model();
    let nu = Valuation::new().with(VarOcc::new("x", 0), OperationTable::from_entries(0, 2, vec![F]).unwrap()).unwrap();
    let lhs = eval(&alg, &nu, &apply_subst(&sigma, &t)).unwrap();
    let rhs = eval(&alg, &valuation_from_subst(&nu, &sigma, &alg).unwrap(), &t).unwrap();
    let name = |v| alg.universe().name(v).to_string();
    println!("value of the substituted term {}, of the original under nu_sigma {}", name(lhs), name(rhs));
}

//! With `all x. x` as an axiom every term is provable, and no model has
//! more than one value.
use abslogic::kernel::{check_proof, inconsistency_expand, AxRef, Proof};
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::search::{find_model, SearchOutcome};

fn main() {
    let d = builtin_logic(LogicName::D);
    let all_x_x = d.parse("all x. x").unwrap();
    let bad = d.extend("D+X", [], [("X".to_string(), all_x_x.clone())]).unwrap();

    for target in ["A", "true -> (all y. y)", "B[A, true]"] {
        let target = bad.parse(target).unwrap();
        let proof = inconsistency_expand(&bad, &Proof::Ax(AxRef::Label("X".into())), &target).unwrap();
        println!("{}", check_proof(&bad, &proof).unwrap());
    }

    let axioms = bad.axiom_terms();
    for c in 1..=3 {
        let out = find_model(bad.signature(), &axioms, c, 1, None).unwrap();
        let verdict = match out {
            SearchOutcome::Found { nodes, .. } => format!("model found ({nodes} nodes)"),
            SearchOutcome::NoModel { nodes } => format!("no model ({nodes} nodes)"),
            SearchOutcome::GaveUp { nodes } => format!("gave up after {nodes} nodes"),
        };
        println!("size {c}: {verdict}");
    }
}

//! Searching for small models of the builtin logics.
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::search::{find_model, SearchOutcome};

fn main() {
    for name in [LogicName::K, LogicName::U, LogicName::P] {
        let l = builtin_logic(name);
        for c in [2, 3] {
            match find_model(l.signature(), &l.axiom_terms(), c, 1, Some(20_000)).unwrap() {
                SearchOutcome::Found { model, nodes } => {
                    println!("{name} size {c}: found after {nodes} nodes");
                    for d in l.signature().decls().iter().filter(|d| d.shape.arity() <= 1 && d.shape.valence() == 0) {
                        let op = model.interp(&d.name).unwrap();
                        let table: Vec<String> = op.table().iter().map(|v| v.to_string()).collect();
                        println!("    {:<6} {}", d.name, table.join(" "));
                    }
                }
                SearchOutcome::NoModel { nodes } => println!("{name} size {c}: none ({nodes} nodes)"),
                SearchOutcome::GaveUp { nodes } => println!("{name} size {c}: undecided after {nodes} nodes"),
            }
        }
    }
}

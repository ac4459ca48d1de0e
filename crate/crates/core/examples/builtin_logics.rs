//! The builtin logics, how they extend each other, and their degenerate
//! models.
use abslogic::algebra::{check_model, degenerate_model};
use abslogic::logics::{builtin_logic, is_extension, LogicName};

fn main() {
    for name in LogicName::ALL {
        let l = builtin_logic(name);
        let ok = check_model(&degenerate_model(l.signature()), &l.axiom_terms(), 2).unwrap().passed();
        println!(
            "{:<3} {:>2} abstractions {:>2} axioms  degenerate model: {}",
            name,
            l.signature().len(),
            l.axioms().len(),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    let k = builtin_logic(LogicName::K);
    for name in [LogicName::D, LogicName::P, LogicName::U] {
        let l = builtin_logic(name);
        println!("{name} extends K: {:<5}  K extends {name}: {}", is_extension(l, k), is_extension(k, l));
    }
    println!("\n{}", builtin_logic(LogicName::UPrime));
}

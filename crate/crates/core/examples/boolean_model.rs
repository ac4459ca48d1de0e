//! Exhaustive model checking of classical logic in the boolean algebra.
use abslogic::algebra::{boolean_model, check_model, eval, Valuation};
use abslogic::logics::{builtin_logic, LogicName};

fn main() {
    let k = builtin_logic(LogicName::K);
    let alg = boolean_model();
    let report = check_model(&alg, &k.axiom_terms(), 1).unwrap();
    for (ax, v) in k.axioms().iter().zip(&report.verdicts) {
        println!(
            "{:<4} {:<5} {:>3} valuations  {}",
            ax.label,
            if v.passed() { "PASS" } else { "FAIL" },
            v.valuations,
            ax.term
        );
    }
    println!("{}/{} axioms hold", report.passed_count(), report.verdicts.len());

    let all_x_x = k.parse("all x. x").unwrap();
    let v = eval(&alg, &Valuation::new(), &all_x_x).unwrap();
    println!("{all_x_x} = {}", alg.universe().name(v));

    // Peirce's law is not an axiom, but it is valid.
    let peirce = k.parse("((A -> B) -> A) -> A").unwrap();
    println!("{peirce}: {}", check_model(&alg, std::slice::from_ref(&peirce), 0).unwrap().passed());
}

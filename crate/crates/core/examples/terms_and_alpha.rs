//! Parsing, printing and α-equivalence through the nameless form.
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::syntax::{parse_term, print_term, Style};
use abslogic::term::{alpha_eq, free_vars, to_debruijn};

fn main() {
    let sig = builtin_logic(LogicName::K).signature();
    let s = parse_term("all x. A[x] -> (ex y. x = y)", sig).unwrap();
    let t = parse_term("(all z. (A[z] -> (ex w. z = w)))", sig).unwrap();
    let u = parse_term("all x. A[x] -> (ex x. x = x)", sig).unwrap();

    println!("s       = {}", print_term(&s, Style::Ascii));
    println!("s       = {}", print_term(&s, Style::Unicode));
    println!("nameless: {:?}", to_debruijn(&s));
    println!("s ~ t: {}", alpha_eq(&s, &t));
    println!("s ~ u: {}  (the inner binder now shadows x)", alpha_eq(&s, &u));

    let open = parse_term("f[x, y] /\\ (all y. g[y]) /\\ x", sig).unwrap();
    let fv: Vec<String> = free_vars(&open).iter().map(|v| v.to_string()).collect();
    println!("free variables of {open}: {}", fv.join(" "));
}

//! Checking a theory file in memory, and driving the `al` CLI.
use abslogic::cli::execute_command;
use abslogic::syntax::Style;
use abslogic::theory::{check_source, parse_theory, print_theory};

const SRC: &str = "logic F

theorem efq_instance : false -> (all x. x)
proof
  f1: by ax F1
  e2: by ax E2
  s1: by subst e2 { x := false, y := (all x. x), A/1 := [u. u] }
  s2: false -> (all x. x) by mp f1 s1
qed

# Fails: the implication must come second.
theorem wrong : true
proof
  d1: by ax D1
  d2: by ax D2
  s: true by mp d2 d1
qed
";

fn main() {
    let checked = check_source(SRC).unwrap();
    for b in &checked.blocks {
        println!("{:?} {} {:?}", b.kind, b.name, b.verdict);
        for d in &b.diagnostics {
            println!("  {}", d.render("<memory>"));
        }
    }
    println!("\n{}", print_theory(&parse_theory(SRC).unwrap(), Style::Unicode));

    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/theories/prelude_k.al");
    let (code, out) = execute_command(["al", "check", file]);
    print!("{out}");
    println!("exit {code}");
}

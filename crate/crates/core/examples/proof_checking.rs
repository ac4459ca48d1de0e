//! Building proofs from the four rules and checking them; a failure names
//! the offending node by its path in the tree.
use abslogic::kernel::{check_proof, Proof};
use abslogic::logics::{builtin_logic, LogicName};
use abslogic::syntax::parse_substitution;

fn main() {
    let d = builtin_logic(LogicName::D);
    let t = |s: &str| d.parse(s).unwrap();
    let sigma = |s: &str| parse_substitution(s, d.signature()).unwrap();

    // A -> A from D2 and D3.
    let s1 = Proof::subst(t("A -> ((A -> A) -> A)"), sigma("{ B := A -> A }"), Proof::ax_label("D2"));
    let s2 = Proof::subst(
        t("(A -> ((A -> A) -> A)) -> ((A -> (A -> A)) -> (A -> A))"),
        sigma("{ B := A -> A, C := A }"),
        Proof::ax_label("D3"),
    );
    let s3 = Proof::mp(t("(A -> (A -> A)) -> (A -> A)"), s1, s2);
    let s4 = Proof::subst(t("A -> (A -> A)"), sigma("{ B := A }"), Proof::ax_label("D2"));
    let id = Proof::mp(t("A -> A"), s4, s3);
    let th = check_proof(d, &id).unwrap();
    println!("{th}  ({} nodes)", id.size());

    let gen = Proof::all(t("all x. x -> x"), "x", Proof::subst(t("x -> x"), sigma("{ A := x }"), Proof::Lemma(th)));
    println!("{}", check_proof(d, &gen).unwrap());

    let bad = Proof::mp(
        t("B"),
        Proof::ax_label("D1"),
        Proof::subst(t("true -> B"), sigma("{ A := B }"), Proof::ax_label("D2")),
    );
    let e = check_proof(d, &bad).unwrap_err();
    println!("rejected at {:?}: [{}] {}", e.path, e.kind.code(), e.kind);
}

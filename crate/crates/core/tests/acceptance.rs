mod common;

use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use abslogic::algebra::{
    boolean_model, check_model, degenerate_model, eval, is_logic_algebra, valuation_from_subst, AbstractionAlgebra,
    OperatorImpl, Universe, Value, T,
};
use abslogic::cli::{execute_command, EXIT_FAIL, EXIT_OK};
use abslogic::kernel::{check_proof, inconsistency_expand, AxRef, Proof};
use abslogic::logics::{builtin_logic, peano, Logic, LogicName, PeanoBase};
use abslogic::search::{find_model, SearchOutcome};
use abslogic::signature::Signature;
use abslogic::subst::apply_subst;
use abslogic::term::{alpha_eq, free_vars, to_debruijn, Term, VarOcc};
use abslogic::theory::check_source;
use common::*;

/// Runs one criterion and prints its verdict line outside the test
/// harness's output capture.
fn criterion(n: u32, title: &str, body: impl FnOnce() -> String) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let mut out = std::io::stdout().lock();
    match &result {
        Ok(detail) => writeln!(out, "PASS criterion {n}: {title} ({detail}; {:.2?})", start.elapsed()).unwrap(),
        Err(_) => writeln!(out, "FAIL criterion {n}: {title}").unwrap(),
    }
    drop(out);
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn al(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("al").chain(args.iter().copied());
    execute_command(argv)
}

#[test]
fn c1_boolean_model_of_k() {
    criterion(1, "all 21 axioms of K hold in the two-element boolean model", || {
        let start = Instant::now();
        let k = builtin_logic(LogicName::K);
        assert_eq!(k.axioms().len(), 21);
        let report = check_model(&boolean_model(), &k.axiom_terms(), 1).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.passed_count(), 21);
        for v in &report.verdicts {
            let vars = free_vars(&v.axiom);
            let expected: usize = vars.iter().map(|x| if x.arity == 0 { 2 } else { 4 }).product();
            assert_eq!(v.valuations, expected, "not exhaustive for {}", v.axiom);
        }

        let path = theory_path("boolean_k.al");
        let path = path.to_str().unwrap();
        let (code, out) = al(&["model-check", path, "--model", "boolean", "--arity-cap", "1"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("model boolean: PASS, 21/21 axioms"), "{out}");
        // The same algebra written out as tables in the file.
        let (code, out) = al(&["model-check", path, "--model", "two", "--arity-cap", "1"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("21/21 axioms"), "{out}");

        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
        "21/21 axioms, exhaustive valuations".into()
    });
}

#[test]
fn c2_degenerate_models() {
    criterion(2, "every builtin logic holds in its one-element model", || {
        let mut logics: Vec<&Logic> = LogicName::ALL.iter().map(|&n| builtin_logic(n)).collect();
        logics.push(peano(PeanoBase::I));
        for logic in &logics {
            let alg = degenerate_model(logic.signature());
            assert!(is_logic_algebra(&alg).unwrap());
            let report = check_model(&alg, &logic.axiom_terms(), 2).unwrap();
            assert!(report.passed(), "{}: {report:?}", logic.name());
        }
        let (code, out) = al(&["model-check", theory_path("peano.al").to_str().unwrap(), "--model", "degenerate"]);
        assert_eq!(code, EXIT_OK, "{out}");
        format!("{} logics", logics.len())
    });
}

/// Every algebra over the signature of D with two values, by brute force.
fn all_two_valued_d_algebras(sig: &Signature) -> Vec<AbstractionAlgebra> {
    let mut out = Vec::new();
    let decl = |n: &str| sig.shape_of(n).unwrap().clone();
    for t in 0..2 {
        for imp in 0..16usize {
            for all in 0..16usize {
                let bits = |code: usize| (0..4).rev().map(|i| Value((code >> i) & 1)).collect::<Vec<_>>();
                let interp = [
                    ("true".to_string(), OperatorImpl::from_table(decl("true"), 2, vec![Value(t)]).unwrap()),
                    ("imp".to_string(), OperatorImpl::from_table(decl("imp"), 2, bits(imp)).unwrap()),
                    ("all".to_string(), OperatorImpl::from_table(decl("all"), 2, bits(all)).unwrap()),
                ]
                .into_iter()
                .collect();
                out.push(AbstractionAlgebra::new(Universe::sized(2), sig.clone(), interp).unwrap());
            }
        }
    }
    out
}

#[test]
fn c3_inconsistency() {
    criterion(3, "D + (all x. x) proves everything and has only degenerate models", || {
        let d = builtin_logic(LogicName::D);
        let all_x_x = d.parse("all x. x").unwrap();
        let bad = d.extend("D+X", [], [("X".to_string(), all_x_x.clone())]).unwrap();

        let mut gen = Gen::with_signature(3, bad.signature().clone());
        let p_forall = Proof::Ax(AxRef::Label("X".into()));
        let mut targets = vec![bad.parse("A").unwrap(), bad.parse("(all x. x) -> x").unwrap()];
        targets.extend((0..50).map(|_| gen.term(4)));
        for target in &targets {
            let proof = inconsistency_expand(&bad, &p_forall, target).unwrap();
            let th = check_proof(&bad, &proof).unwrap();
            assert!(alpha_eq(th.statement(), target));
        }
        let checked = check_source(&read_theory("inconsistent_d.al")).unwrap();
        assert!(checked.passed(), "{:?}", checked.blocks);

        let mut axioms = d.axiom_terms();
        axioms.push(all_x_x);
        // Independent oracle at size 2: every algebra, checked one by one.
        let mut logic_algebras = 0;
        for alg in all_two_valued_d_algebras(d.signature()) {
            if !is_logic_algebra(&alg).unwrap() {
                continue;
            }
            logic_algebras += 1;
            assert!(!check_model(&alg, &axioms, 1).unwrap().passed());
        }
        assert!(logic_algebras > 0);
        let mut nodes = Vec::new();
        for c in [2, 3] {
            match find_model(d.signature(), &axioms, c, 1, None).unwrap() {
                SearchOutcome::NoModel { nodes: n } => nodes.push(n),
                other => panic!("size {c}: {other:?}"),
            }
        }
        format!(
            "{} targets re-checked; {logic_algebras} two-valued logic algebras refuted; search exhausted sizes 2, 3 in {:?} nodes",
            targets.len(),
            nodes
        )
    });
}

#[test]
fn c4_substitution_lemma() {
    criterion(4, "evaluating a substituted term equals evaluating under the induced valuation", || {
        let start = Instant::now();
        let mut gen = Gen::new(4);
        let mut checks = 0;
        for triple in 0..1000 {
            let c = 1 + triple % 3;
            let alg = gen.algebra(c);
            let t = gen.term(5);
            let sigma = gen.substitution(&t, 3);
            let mut vars = free_vars(&t);
            for (_, tmpl) in sigma.iter() {
                vars.extend(free_vars(tmpl.body()));
            }
            let nu = gen.valuation(&vars, c);
            let induced = induced_valuation(&alg, &nu, &sigma);
            assert_eq!(induced, valuation_from_subst(&nu, &sigma, &alg).unwrap());
            for u in [t.clone(), gen.term(5), gen.term(5)] {
                assert!(u.depth() <= 5);
                let lhs = eval(&alg, &nu, &apply_subst(&sigma, &u)).unwrap();
                let rhs = eval(&alg, &induced, &u).unwrap();
                assert_eq!(lhs, rhs, "t = {u}\nsigma = {sigma:?}");
                checks += 1;
            }
        }
        assert!(start.elapsed() < Duration::from_secs(60));
        format!("1000 triples, {checks} terms")
    });
}

#[test]
fn c5_alpha_is_debruijn_identity() {
    criterion(5, "α-equivalence coincides with de Bruijn identity and implies equal values", || {
        let mut gen = Gen::new(5);
        let algebras: Vec<(AbstractionAlgebra, usize)> = (0..20)
            .map(|i| {
                let c = 1 + i % 3;
                (gen.algebra(c), c)
            })
            .collect();
        let (mut equivalent, mut different) = (0, 0);
        for i in 0..10_000 {
            let s = gen.term(5);
            let t = match i % 4 {
                0 => gen.rename_binder(&s),
                1 => {
                    let once = gen.rename_binder(&s);
                    gen.rename_binder(&once)
                }
                2 => gen.mutate(&s),
                _ => gen.term(5),
            };
            let expected = alpha_oracle(&s, &t);
            assert_eq!(alpha_eq(&s, &t), expected, "{s}  vs  {t}");
            assert_eq!(to_debruijn(&s) == to_debruijn(&t), expected, "{s}  vs  {t}");
            if expected {
                equivalent += 1;
                let mut vars = free_vars(&s);
                vars.extend(free_vars(&t));
                for (alg, c) in &algebras {
                    let nu = gen.valuation(&vars, *c);
                    assert_eq!(eval(alg, &nu, &s).unwrap(), eval(alg, &nu, &t).unwrap());
                }
            } else {
                different += 1;
            }
        }
        assert!(equivalent > 1000 && different > 1000, "{equivalent} / {different}");
        format!("10000 pairs: {equivalent} equivalent, {different} not")
    });
}

fn theorem_statement(checked: &abslogic::theory::CheckedTheory, name: &str) -> Term {
    checked.theorem(name).unwrap_or_else(|| panic!("no theorem {name}")).theorem.statement().clone()
}

#[test]
fn c6_proof_corpus() {
    criterion(6, "the shipped proof corpus checks", || {
        let expectations = [
            ("prelude_k.al", "efq", "false -> A"),
            ("prelude_k.al", "explosion", "A -> (not A -> B)"),
            ("prelude_k.al", "dichotomy", "(A = true) \\/ (A <-> false)"),
            ("peano.al", "two_is_nat", "nat (suc (suc zero))"),
            ("peano.al", "one_plus_zero", "add (suc zero) zero = suc zero"),
        ];
        for file in ["prelude_k.al", "peano.al"] {
            let (code, out) = al(&["check", theory_path(file).to_str().unwrap()]);
            assert_eq!(code, EXIT_OK, "{out}");
            let checked = check_source(&read_theory(file)).unwrap();
            for t in &checked.theorems {
                assert_eq!(&check_proof(&checked.logics[t.logic], &t.proof).unwrap(), &t.theorem);
            }
            for (_, name, statement) in expectations.iter().filter(|e| e.0 == file) {
                let expected = checked.logic().parse(statement).unwrap();
                assert!(alpha_eq(&theorem_statement(&checked, name), &expected), "{name}");
            }
        }
        "efq, explosion, dichotomy, two_is_nat, one_plus_zero".into()
    });
}

#[test]
fn c7_soundness_shadow() {
    criterion(7, "every theorem of the K corpus is true in the boolean model", || {
        let checked = check_source(&read_theory("prelude_k.al")).unwrap();
        assert!(checked.passed());
        let alg = boolean_model();
        let mut valuations = 0;
        for t in &checked.theorems {
            let statement = t.theorem.statement();
            let vars: Vec<VarOcc> = free_vars(statement).into_iter().collect();
            for nu in all_valuations(&vars, 2) {
                valuations += 1;
                assert_eq!(eval(&alg, &nu, statement).unwrap(), T, "{} under {nu:?}", t.name);
            }
        }
        format!("{} theorems, {valuations} valuations", checked.theorems.len())
    });
}

#[test]
fn c8_negative_kernel_scripts() {
    criterion(8, "each kernel error code is raised at the offending step", || {
        let cases = [
            ("not_an_axiom.al", "not-an-axiom", (5, 3)),
            ("subst_mismatch.al", "subst-mismatch", (6, 3)),
            ("not_an_implication.al", "not-an-implication", (7, 3)),
            ("mp_mismatch.al", "mp-mismatch", (7, 3)),
            ("all_mismatch.al", "all-mismatch", (6, 3)),
        ];
        for (file, code, (line, column)) in cases {
            let name = format!("errors/{file}");
            let checked = check_source(&read_theory(&name)).unwrap();
            let diags: Vec<_> = checked.blocks.iter().flat_map(|b| &b.diagnostics).collect();
            assert_eq!(diags.len(), 1, "{file}: {diags:?}");
            assert_eq!(diags[0].code, code, "{file}");
            assert_eq!((diags[0].span.line, diags[0].span.column), (line, column), "{file}");
            let (exit, out) = al(&["check", theory_path(&name).to_str().unwrap()]);
            assert_eq!(exit, EXIT_FAIL, "{out}");
            assert!(out.contains(&format!(":{line}:{column}: error[{code}]")), "{out}");
        }
        "5 scripts".into()
    });
}

#[test]
fn eval_of_all_x_x_in_boolean_model() {
    let (code, out) =
        al(&["eval", theory_path("prelude_k.al").to_str().unwrap(), "--term", "(all x. x)", "--model", "boolean"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "F"));
}

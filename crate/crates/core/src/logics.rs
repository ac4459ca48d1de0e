//! Logics (a logic signature plus labelled axioms) and the builtin ones:
//! deduction logic D, with equality E, with falsity F, intuitionistic I,
//! classical K, Peano arithmetic P and the two undefinedness theories U, U'.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::signature::{extends_signature, is_logic_signature, AbstractionDecl, Shape, Signature, SignatureError};
use crate::syntax::parse_term;
use crate::term::{check_wellformed, to_debruijn, DeBruijnTerm, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("signature of `{0}` lacks true : (0;), imp : (0; {{}}, {{}}) or all : (1; {{0}})")]
    NotLogicSignature(String),
    #[error("axiom {label} is ill-formed: {source}")]
    IllFormedAxiom { label: String, source: TermError },
    #[error("axiom label {0} is used twice")]
    DuplicateLabel(String),
    #[error("unknown logic `{0}` (expected one of D, E, F, I, K, P, U, U')")]
    UnknownLogic(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Content fingerprint of a logic: signature plus axioms modulo α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct LogicId(u64);

#[derive(Debug, Clone)]
pub struct Axiom {
    pub label: String,
    pub term: Term,
    canonical: DeBruijnTerm,
}

#[derive(Debug, Clone)]
pub struct Logic {
    name: String,
    signature: Signature,
    axioms: Vec<Axiom>,
    by_statement: HashMap<DeBruijnTerm, usize>,
    id: LogicId,
    /// Logics this one was built from with [`Logic::extend`].
    ancestors: Vec<LogicId>,
}

impl Logic {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        axioms: impl IntoIterator<Item = (String, Term)>,
    ) -> Result<Logic, LogicError> {
        let name = name.into();
        if !is_logic_signature(&signature) {
            return Err(LogicError::NotLogicSignature(name));
        }
        let mut logic = Logic {
            name,
            signature,
            axioms: Vec::new(),
            by_statement: HashMap::new(),
            id: LogicId(0),
            ancestors: Vec::new(),
        };
        logic.push_axioms(axioms)?;
        Ok(logic)
    }

    fn push_axioms(&mut self, axioms: impl IntoIterator<Item = (String, Term)>) -> Result<(), LogicError> {
        for (label, term) in axioms {
            if self.axioms.iter().any(|a| a.label == label) {
                return Err(LogicError::DuplicateLabel(label));
            }
            check_wellformed(&term, &self.signature)
                .map_err(|source| LogicError::IllFormedAxiom { label: label.clone(), source })?;
            let canonical = to_debruijn(&term);
            self.by_statement.entry(canonical.clone()).or_insert(self.axioms.len());
            self.axioms.push(Axiom { label, term, canonical });
        }
        let mut h = DefaultHasher::new();
        self.signature.decls().hash(&mut h);
        for a in &self.axioms {
            a.canonical.hash(&mut h);
        }
        self.id = LogicId(h.finish());
        Ok(())
    }

    /// A new logic with extra abstractions and axioms.
    pub fn extend(
        &self,
        name: impl Into<String>,
        decls: impl IntoIterator<Item = AbstractionDecl>,
        axioms: impl IntoIterator<Item = (String, Term)>,
    ) -> Result<Logic, LogicError> {
        let mut out = self.clone();
        out.ancestors.push(self.id);
        out.name = name.into();
        out.signature = self.signature.extend(decls)?;
        out.push_axioms(axioms)?;
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn axiom_terms(&self) -> Vec<Term> {
        self.axioms.iter().map(|a| a.term.clone()).collect()
    }

    pub fn axiom(&self, label: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.label == label)
    }

    /// The first axiom α-equivalent to `t`.
    pub fn find_axiom(&self, t: &Term) -> Option<&Axiom> {
        self.by_statement.get(&to_debruijn(t)).map(|&i| &self.axioms[i])
    }

    /// Whether theorems of logic `id` are theorems here: `id` is this logic
    /// or one it was extended from.
    pub fn inherits(&self, id: LogicId) -> bool {
        self.id == id || self.ancestors.contains(&id)
    }

    pub fn id(&self) -> LogicId {
        self.id
    }

    /// Parses a term over this logic's signature.
    pub fn parse(&self, src: &str) -> Result<Term, crate::syntax::ParseError> {
        parse_term(src, &self.signature)
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} abstractions, {} axioms)", self.name, self.signature.len(), self.axioms.len())
    }
}

/// Signature extension plus every parent axiom present modulo α.
pub fn is_extension(child: &Logic, parent: &Logic) -> bool {
    extends_signature(&child.signature, &parent.signature)
        && parent.axioms.iter().all(|a| child.by_statement.contains_key(&a.canonical))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicName {
    D,
    E,
    F,
    I,
    K,
    P,
    U,
    UPrime,
}

impl LogicName {
    pub const ALL: [LogicName; 8] = [
        LogicName::D,
        LogicName::E,
        LogicName::F,
        LogicName::I,
        LogicName::K,
        LogicName::P,
        LogicName::U,
        LogicName::UPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LogicName::D => "D",
            LogicName::E => "E",
            LogicName::F => "F",
            LogicName::I => "I",
            LogicName::K => "K",
            LogicName::P => "P",
            LogicName::U => "U",
            LogicName::UPrime => "U'",
        }
    }
}

impl FromStr for LogicName {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LogicName::ALL
            .into_iter()
            .find(|n| n.as_str() == s || (s == "U′" && *n == LogicName::UPrime))
            .ok_or_else(|| LogicError::UnknownLogic(s.to_string()))
    }
}

impl fmt::Display for LogicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which logic Peano arithmetic is layered on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeanoBase {
    I,
    #[default]
    K,
}

const D_AXIOMS: &[(&str, &str)] = &[
    ("D1", "true"),
    ("D2", "A -> (B -> A)"),
    ("D3", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    ("D4", "(all x. A[x]) -> A[x]"),
    ("D5", "(all x. A -> B[x]) -> (A -> (all x. B[x]))"),
];

const E_AXIOMS: &[(&str, &str)] = &[("E1", "x = x"), ("E2", "x = y -> (A[x] -> A[y])"), ("E3", "A -> (A = true)")];

const F_AXIOMS: &[(&str, &str)] =
    &[("F1", "false = (all x. x)"), ("F2", "(not A) = (A -> false)"), ("F3", "(x != y) = (not (x = y))")];

const I_AXIOMS: &[(&str, &str)] = &[
    ("I1", "(A /\\ B) -> A"),
    ("I2", "(A /\\ B) -> B"),
    ("I3", "A -> (B -> (A /\\ B))"),
    ("I4", "A -> (A \\/ B)"),
    ("I5", "B -> (A \\/ B)"),
    ("I6", "(A \\/ B) -> ((A -> C) -> ((B -> C) -> C))"),
    ("I7", "(A <-> B) = ((A -> B) /\\ (B -> A))"),
    ("I8", "A[x] -> (ex x. A[x])"),
    ("I9", "(ex x. A[x]) -> ((all x. A[x] -> B) -> B)"),
];

const K_AXIOMS: &[(&str, &str)] = &[("K", "A \\/ not A")];

const P_AXIOMS: &[(&str, &str)] = &[
    ("P1", "nat zero"),
    ("P2", "nat n -> nat (suc n)"),
    ("P3", "nat n -> (suc n != zero)"),
    ("P4", "nat n -> (nat m -> (suc n = suc m -> n = m))"),
    ("P5", "P[zero] -> (all n. nat n -> P[n] -> P[suc n]) -> nat n -> P[n]"),
    ("P6", "nat n -> add n zero = n"),
    ("P7", "nat n /\\ nat m -> add n (suc m) = suc (add n m)"),
    ("P8", "nat n -> mul n zero = zero"),
    ("P9", "nat n /\\ nat m -> mul n (suc m) = add (mul n m) n"),
];

const U_SHARED: &[(&str, &str)] =
    &[("U1", "(fail != true) /\\ (fail != false)"), ("U2", "(ex1 x. A[x]) = (ex x. A[x] /\\ (all y. A[y] -> x = y))")];

const U_THE: &[(&str, &str)] =
    &[("U3", "(ex1 x. A[x]) -> (A[x] <-> (the x. A[x]) = x)"), ("U4", "not (ex1 x. A[x]) -> (the x. A[x]) = fail")];

const U_SOME: &[(&str, &str)] =
    &[("U'3", "A[x] -> A[(some x. A[x])]"), ("U'4", "not (ex x. A[x]) -> (some x. A[x]) = fail")];

fn layer(base: &Logic, name: &str, decls: &[(&str, Shape)], axioms: &[&[(&str, &str)]]) -> Logic {
    let sig = base
        .signature()
        .extend(decls.iter().map(|(n, s)| AbstractionDecl::new(*n, s.clone())))
        .expect("builtin declarations are fresh");
    let parsed: Vec<(String, Term)> = axioms
        .iter()
        .flat_map(|group| group.iter())
        .map(|(label, src)| {
            let t = parse_term(src, &sig).unwrap_or_else(|e| panic!("builtin axiom {label}: {e}"));
            (label.to_string(), t)
        })
        .collect();
    base.extend(name, decls.iter().map(|(n, s)| AbstractionDecl::new(*n, s.clone())), parsed)
        .expect("builtin logics are well-formed")
}

fn deduction() -> Logic {
    let sig = Signature::new([
        AbstractionDecl::new("true", Shape::value()),
        AbstractionDecl::new("imp", Shape::operation(2)),
        AbstractionDecl::new("all", Shape::binder()),
    ])
    .expect("distinct names");
    let empty = Logic::new("", sig, []).expect("logic signature");
    layer(&empty, "D", &[], &[D_AXIOMS])
}

fn build(name: LogicName) -> Logic {
    let binop = Shape::operation(2);
    match name {
        LogicName::D => deduction(),
        LogicName::E => layer(builtin_logic(LogicName::D), "E", &[("eq", binop)], &[E_AXIOMS]),
        LogicName::F => layer(
            builtin_logic(LogicName::E),
            "F",
            &[("false", Shape::value()), ("not", Shape::operation(1)), ("neq", binop)],
            &[F_AXIOMS],
        ),
        LogicName::I => layer(
            builtin_logic(LogicName::F),
            "I",
            &[("and", binop.clone()), ("or", binop.clone()), ("iff", binop), ("ex", Shape::binder())],
            &[I_AXIOMS],
        ),
        LogicName::K => layer(builtin_logic(LogicName::I), "K", &[], &[K_AXIOMS]),
        LogicName::P => build_peano(PeanoBase::K),
        LogicName::U => layer(
            builtin_logic(LogicName::K),
            "U",
            &[("fail", Shape::value()), ("ex1", Shape::binder()), ("the", Shape::binder())],
            &[U_SHARED, U_THE],
        ),
        LogicName::UPrime => layer(
            builtin_logic(LogicName::K),
            "U'",
            &[("fail", Shape::value()), ("ex1", Shape::binder()), ("some", Shape::binder())],
            &[U_SHARED, U_SOME],
        ),
    }
}

fn build_peano(base: PeanoBase) -> Logic {
    let (base_logic, name) = match base {
        PeanoBase::K => (builtin_logic(LogicName::K), "P"),
        PeanoBase::I => (builtin_logic(LogicName::I), "P on I"),
    };
    layer(
        base_logic,
        name,
        &[
            ("zero", Shape::value()),
            ("suc", Shape::operation(1)),
            ("nat", Shape::operation(1)),
            ("add", Shape::operation(2)),
            ("mul", Shape::operation(2)),
        ],
        &[P_AXIOMS],
    )
}

/// One of the builtin logics; `P` is layered on `K`.
pub fn builtin_logic(name: LogicName) -> &'static Logic {
    static CACHE: [OnceLock<Logic>; 8] = [const { OnceLock::new() }; 8];
    let i = LogicName::ALL.iter().position(|n| *n == name).expect("listed");
    CACHE[i].get_or_init(|| build(name))
}

/// Peano arithmetic over the chosen base logic.
pub fn peano(base: PeanoBase) -> &'static Logic {
    static ON_I: OnceLock<Logic> = OnceLock::new();
    match base {
        PeanoBase::K => builtin_logic(LogicName::P),
        PeanoBase::I => ON_I.get_or_init(|| build_peano(PeanoBase::I)),
    }
}

/// Looks a builtin up by its name (`D`, `E`, `F`, `I`, `K`, `P`, `U`, `U'`).
pub fn builtin_by_name(name: &str) -> Result<&'static Logic, LogicError> {
    name.parse::<LogicName>().map(builtin_logic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{free_vars, VarOcc};

    #[test]
    fn sizes() {
        let expected = [
            (LogicName::D, 3, 5),
            (LogicName::E, 4, 8),
            (LogicName::F, 7, 11),
            (LogicName::I, 11, 20),
            (LogicName::K, 11, 21),
            (LogicName::P, 16, 30),
            (LogicName::U, 14, 25),
            (LogicName::UPrime, 14, 25),
        ];
        for (name, abstractions, axioms) in expected {
            let l = builtin_logic(name);
            assert_eq!(l.signature().len(), abstractions, "{name}");
            assert_eq!(l.axioms().len(), axioms, "{name}");
        }
    }

    #[test]
    fn extension_chain() {
        use LogicName::*;
        for (child, parent) in [(E, D), (F, E), (I, F), (K, I), (P, K), (U, K), (UPrime, K)] {
            assert!(is_extension(builtin_logic(child), builtin_logic(parent)), "{child} ⊒ {parent}");
            assert!(!is_extension(builtin_logic(parent), builtin_logic(child)));
        }
        assert!(is_extension(builtin_logic(K), builtin_logic(K)));
        assert!(is_extension(peano(PeanoBase::I), builtin_logic(I)));
        assert!(!is_extension(peano(PeanoBase::I), builtin_logic(K)));
        assert!(!is_extension(builtin_logic(U), builtin_logic(UPrime)));
    }

    #[test]
    fn renamed_axioms_still_extend() {
        let d = builtin_logic(LogicName::D);
        let renamed: Vec<(String, Term)> = d
            .axioms()
            .iter()
            .map(|a| {
                let src = if a.label == "D4" { "(all z. A[z]) -> A[x]" } else { "" };
                let t = if src.is_empty() { a.term.clone() } else { d.parse(src).unwrap() };
                (format!("my{}", a.label), t)
            })
            .collect();
        let child = Logic::new("D'", d.signature().clone(), renamed).unwrap();
        assert!(is_extension(&child, d));
        assert!(is_extension(d, &child));
        assert_eq!(child.id(), d.id());
    }

    #[test]
    fn induction_axiom_shape() {
        let p = builtin_logic(LogicName::P);
        let p5 = &p.axiom("P5").unwrap().term;
        let expected = p.parse("P[zero] -> ((all n. (nat n -> (P[n] -> P[suc n]))) -> (nat n -> P[n]))").unwrap();
        assert_eq!(*p5, expected);
        assert_eq!(free_vars(p5), [VarOcc::new("P", 1), VarOcc::new("n", 0)].into());
    }

    #[test]
    fn unknown_logic_name() {
        assert_eq!(builtin_by_name("Q").unwrap_err(), LogicError::UnknownLogic("Q".into()));
        assert_eq!(builtin_by_name("U'").unwrap().name(), "U'");
        assert_eq!(builtin_by_name("U′").unwrap().name(), "U'");
    }

    #[test]
    fn axioms_are_wellformed() {
        for name in LogicName::ALL {
            let l = builtin_logic(name);
            for a in l.axioms() {
                assert_eq!(check_wellformed(&a.term, l.signature()), Ok(()), "{}", a.label);
            }
        }
    }

    #[test]
    fn non_logic_signature_is_rejected() {
        let sig = Signature::new([AbstractionDecl::new("true", Shape::value())]).unwrap();
        assert!(matches!(Logic::new("X", sig, []), Err(LogicError::NotLogicSignature(_))));
    }
}

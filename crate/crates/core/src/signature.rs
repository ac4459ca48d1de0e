//! Shapes, abstraction declarations and signatures.
//!
//! A shape `(m; p_0, ..., p_{n-1})` records the valence `m` (how many
//! variables an application binds) and, for each of the `n` argument
//! positions, which of those binders are active there.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Name of the abstraction denoting truth.
pub const TRUE: &str = "true";
/// Name of the implication abstraction.
pub const IMP: &str = "imp";
/// Name of the universal quantifier.
pub const ALL: &str = "all";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("binder index {index} out of range for valence {valence}")]
    IndexOutOfRange { index: usize, valence: usize },
    #[error("degenerate shape: binder sets do not cover all {valence} binders")]
    DegenerateShape { valence: usize },
    #[error("binder index {index} listed twice in argument position {position}")]
    DuplicateIndex { index: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("abstraction `{0}` declared twice")]
    DuplicateAbstraction(String),
    #[error("abstraction `{name}` redeclared with shape {new}, already has shape {old}")]
    ShapeConflict { name: String, old: Shape, new: Shape },
}

/// Valence plus per-argument binder sets. Binder sets are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    valence: usize,
    binder_sets: Vec<Vec<usize>>,
}

impl Shape {
    pub fn new(valence: usize, binder_sets: Vec<Vec<usize>>) -> Result<Shape, ShapeError> {
        let mut covered = BTreeSet::new();
        let mut sorted_sets = Vec::with_capacity(binder_sets.len());
        for (position, set) in binder_sets.into_iter().enumerate() {
            let mut set = set;
            set.sort_unstable();
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(ShapeError::DuplicateIndex { index: w[0], position });
                }
            }
            for &index in &set {
                if index >= valence {
                    return Err(ShapeError::IndexOutOfRange { index, valence });
                }
                covered.insert(index);
            }
            sorted_sets.push(set);
        }
        if covered.len() != valence {
            return Err(ShapeError::DegenerateShape { valence });
        }
        Ok(Shape { valence, binder_sets: sorted_sets })
    }

    /// `(0;)`, the shape of a value.
    pub fn value() -> Shape {
        Shape { valence: 0, binder_sets: Vec::new() }
    }

    /// `(0; ∅, ..., ∅)` with `arity` argument positions.
    pub fn operation(arity: usize) -> Shape {
        Shape { valence: 0, binder_sets: vec![Vec::new(); arity] }
    }

    /// `(1; {0})`, the shape of quantifier-like binders.
    pub fn binder() -> Shape {
        Shape { valence: 1, binder_sets: vec![vec![0]] }
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn arity(&self) -> usize {
        self.binder_sets.len()
    }

    pub fn binder_sets(&self) -> &[Vec<usize>] {
        &self.binder_sets
    }

    /// Binder indices active in argument position `i`.
    pub fn scope(&self, i: usize) -> &[usize] {
        &self.binder_sets[i]
    }

    pub fn is_value(&self) -> bool {
        self.binder_sets.is_empty()
    }

    pub fn is_operation(&self) -> bool {
        self.valence == 0
    }

    /// Re-checks the non-degeneracy invariant; used after deserialization.
    pub fn validate(&self) -> Result<(), ShapeError> {
        Shape::new(self.valence, self.binder_sets.clone()).map(|_| ())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.valence)?;
        for (i, set) in self.binder_sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {{")?;
            for (k, j) in set.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{j}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbstractionDecl {
    pub name: String,
    pub shape: Arc<Shape>,
}

impl AbstractionDecl {
    pub fn new(name: impl Into<String>, shape: Shape) -> AbstractionDecl {
        AbstractionDecl { name: name.into(), shape: Arc::new(shape) }
    }
}

/// An immutable, ordered collection of abstraction declarations.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    decls: Vec<AbstractionDecl>,
    index: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    pub fn new(decls: impl IntoIterator<Item = AbstractionDecl>) -> Result<Signature, SignatureError> {
        Signature::empty().extend(decls)
    }

    /// Returns a new signature with `decls` appended. Redeclaring an existing
    /// abstraction is an error, even with an identical shape.
    pub fn extend(&self, decls: impl IntoIterator<Item = AbstractionDecl>) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        for decl in decls {
            if let Some(&i) = out.index.get(&decl.name) {
                let old = &out.decls[i];
                if old.shape != decl.shape {
                    return Err(SignatureError::ShapeConflict {
                        name: decl.name.clone(),
                        old: (*old.shape).clone(),
                        new: (*decl.shape).clone(),
                    });
                }
                return Err(SignatureError::DuplicateAbstraction(decl.name));
            }
            out.index.insert(decl.name.clone(), out.decls.len());
            out.decls.push(decl);
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Option<&AbstractionDecl> {
        self.index.get(name).map(|&i| &self.decls[i])
    }

    pub fn shape_of(&self, name: &str) -> Option<&Arc<Shape>> {
        self.get(name).map(|d| &d.shape)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn decls(&self) -> &[AbstractionDecl] {
        &self.decls
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    /// Keeps only the declarations whose names satisfy `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&AbstractionDecl) -> bool) -> Signature {
        Signature::new(self.decls.iter().filter(|d| keep(d)).cloned()).expect("a subset of a signature is a signature")
    }
}

/// True iff the signature declares `true : (0;)`, `imp : (0; ∅, ∅)` and
/// `all : (1; {0})`.
pub fn is_logic_signature(sig: &Signature) -> bool {
    let has = |name: &str, shape: Shape| sig.shape_of(name).is_some_and(|s| **s == shape);
    has(TRUE, Shape::value()) && has(IMP, Shape::operation(2)) && has(ALL, Shape::binder())
}

/// True iff every abstraction of `parent` appears in `child` with the same shape.
pub fn extends_signature(child: &Signature, parent: &Signature) -> bool {
    parent.decls().iter().all(|d| child.shape_of(&d.name).is_some_and(|s| *s == d.shape))
}

//! Abstraction Logic: signatures and shapes, terms modulo α, capture-avoiding
//! substitution, finite abstraction algebras, the builtin logics and a small
//! proof-checking kernel.

pub mod algebra;
pub mod cli;
pub mod kernel;
pub mod logics;
pub mod search;
pub mod signature;
pub mod subst;
pub mod syntax;
pub mod term;
pub mod theory;

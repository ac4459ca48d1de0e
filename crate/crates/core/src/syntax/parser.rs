//! Recursive-descent parser for terms, shapes, templates and substitutions.
//!
//! Precedence, loosest first: `<->`, `->`, `\/`, `/\`, `not`, `=`/`!=`,
//! prefix application. `->` and `<->` associate to the right, `\/` and `/\`
//! to the left, `=` does not associate. Binder sugar `q x. body` (for any
//! abstraction of shape `(1; {0})`) and `not` may start any operand and extend
//! as far right as possible.

use thiserror::Error;

use super::lexer::{tokenize, LexError, Span, Tok, Token};
use crate::signature::{Shape, ShapeError, Signature, SignatureError};
use crate::subst::{SubstError, Substitution, Template};
use crate::term::{Term, TermError, VarOcc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Subst(#[from] SubstError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { kind: ParseErrorKind::Syntax(e.message), span: e.span }
    }
}

pub type PResult<T> = Result<T, ParseError>;

/// Words that cannot be used as variable names.
pub const KEYWORDS: &[&str] =
    &["logic", "extend", "abstraction", "axiom", "theorem", "proof", "qed", "by", "model", "values", "default", "on"];

pub(crate) struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    pub(crate) sig: &'s Signature,
}

impl<'s> Parser<'s> {
    pub(crate) fn new(src: &str, sig: &'s Signature) -> PResult<Parser<'s>> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, sig })
    }

    pub(crate) fn from_tokens(toks: Vec<Token>, pos: usize, sig: &'s Signature) -> Parser<'s> {
        Parser { toks, pos, sig }
    }

    pub(crate) fn into_tokens(self) -> (Vec<Token>, usize) {
        (self.toks, self.pos)
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { kind: ParseErrorKind::Syntax(msg.into()), span: self.span() })
    }

    pub(crate) fn fail<T>(&self, kind: impl Into<ParseErrorKind>, span: Span) -> PResult<T> {
        Err(ParseError { kind: kind.into(), span })
    }

    pub(crate) fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub(crate) fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    pub(crate) fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.peek()))
        }
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.peek()))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a name, found {other}")),
        }
    }

    pub(crate) fn expect_number(&mut self) -> PResult<usize> {
        match *self.peek() {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            ref other => self.error(format!("expected a number, found {other}")),
        }
    }

    pub(crate) fn expect_eof(&self) -> PResult<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            other => self.error(format!("unexpected {other}")),
        }
    }

    /// A name usable as a variable or binder.
    pub(crate) fn variable_name(&mut self) -> PResult<String> {
        let span = self.span();
        let name = self.expect_ident()?;
        if KEYWORDS.contains(&name.as_str()) {
            return self.fail(ParseErrorKind::Syntax(format!("`{name}` is a keyword")), span);
        }
        if self.sig.contains(&name) {
            return self.fail(ParseErrorKind::Syntax(format!("`{name}` is an abstraction, not a variable")), span);
        }
        Ok(name)
    }

    fn mk(&self, name: &str, binders: Vec<String>, args: Vec<Term>, span: Span) -> PResult<Term> {
        if !self.sig.contains(name) {
            return self.fail(ParseErrorKind::UnknownName(name.to_string()), span);
        }
        Term::apply(self.sig, name, binders, args).or_else(|e| self.fail(e, span))
    }

    fn is_binder_abstraction(&self, name: &str) -> bool {
        self.sig.shape_of(name).is_some_and(|s| **s == Shape::binder())
    }

    fn prefix_arity(&self, name: &str) -> Option<usize> {
        self.sig.shape_of(name).filter(|s| s.valence() == 0 && s.arity() > 0).map(|s| s.arity())
    }

    pub(crate) fn term(&mut self) -> PResult<Term> {
        self.iff()
    }

    fn iff(&mut self) -> PResult<Term> {
        let span = self.span();
        let lhs = self.imp()?;
        if self.eat_sym("<->") {
            let rhs = self.iff()?;
            return self.mk("iff", vec![], vec![lhs, rhs], span);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> PResult<Term> {
        let span = self.span();
        let lhs = self.or()?;
        if self.eat_sym("->") {
            let rhs = self.imp()?;
            return self.mk("imp", vec![], vec![lhs, rhs], span);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Term> {
        let span = self.span();
        let mut lhs = self.and()?;
        while self.eat_sym("\\/") {
            let rhs = self.and()?;
            lhs = self.mk("or", vec![], vec![lhs, rhs], span)?;
        }
        Ok(lhs)
    }

    fn and(&mut self) -> PResult<Term> {
        let span = self.span();
        let mut lhs = self.unary()?;
        while self.eat_sym("/\\") {
            let rhs = self.unary()?;
            lhs = self.mk("and", vec![], vec![lhs, rhs], span)?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Term> {
        let span = self.span();
        if let Tok::Ident(name) = self.peek().clone() {
            if name == "not" && self.sig.shape_of("not").is_some_and(|s| **s == Shape::operation(1)) {
                self.bump();
                let arg = self.unary()?;
                return self.mk("not", vec![], vec![arg], span);
            }
            if self.is_binder_abstraction(&name)
                && matches!(self.peek_at(1), Tok::Ident(_))
                && matches!(self.peek_at(2), Tok::Sym("."))
            {
                self.bump();
                let binder = self.variable_name()?;
                self.expect_sym(".")?;
                let body = self.term()?;
                return self.mk(&name, vec![binder], vec![body], span);
            }
        }
        self.eq()
    }

    fn eq(&mut self) -> PResult<Term> {
        let span = self.span();
        let lhs = self.app()?;
        let op = if self.eat_sym("=") {
            "eq"
        } else if self.eat_sym("!=") {
            "neq"
        } else {
            return Ok(lhs);
        };
        let rhs = self.app()?;
        self.mk(op, vec![], vec![lhs, rhs], span)
    }

    fn app(&mut self) -> PResult<Term> {
        let span = self.span();
        if let Tok::Ident(name) = self.peek().clone() {
            if let Some(arity) = self.prefix_arity(&name) {
                self.bump();
                let mut args = Vec::with_capacity(arity);
                for _ in 0..arity {
                    args.push(self.atom()?);
                }
                return self.mk(&name, vec![], args, span);
            }
        }
        self.atom()
    }

    /// Looks past `( name x_0 ... x_{m-1}` for a `.`, which marks the
    /// explicit application form. Binder names are never abstraction names,
    /// so `(not all x. A)` is sugar, not a binder list.
    fn at_explicit_form(&self) -> bool {
        match self.peek_at(1) {
            Tok::Ident(name) if self.sig.contains(name) => {}
            _ => return false,
        }
        let mut k = 2;
        loop {
            match self.peek_at(k) {
                Tok::Sym(".") => return true,
                Tok::Ident(x) if !self.sig.contains(x) => k += 1,
                _ => return false,
            }
        }
    }

    fn atom(&mut self) -> PResult<Term> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Sym("(") => {
                if self.at_explicit_form() {
                    self.bump();
                    let name = self.expect_ident()?;
                    let mut binders = Vec::new();
                    while !self.at_sym(".") {
                        binders.push(self.variable_name()?);
                    }
                    self.bump();
                    let arity = self.sig.shape_of(&name).map(|s| s.arity()).unwrap_or(0);
                    let mut args = Vec::new();
                    if arity == 1 {
                        args.push(self.term()?);
                    } else {
                        while !self.at_sym(")") && !matches!(self.peek(), Tok::Eof) {
                            args.push(self.atom()?);
                        }
                    }
                    self.expect_sym(")")?;
                    self.mk(&name, binders, args, span)
                } else {
                    self.bump();
                    let t = self.term()?;
                    self.expect_sym(")")?;
                    Ok(t)
                }
            }
            Tok::Ident(name) => {
                if let Some(shape) = self.sig.shape_of(&name).cloned() {
                    self.bump();
                    if shape.is_value() {
                        return self.mk(&name, vec![], vec![], span);
                    }
                    return self.fail(
                        ParseErrorKind::Syntax(format!(
                            "`{name}` has shape {shape} and needs arguments here; add parentheses"
                        )),
                        span,
                    );
                }
                let name = self.variable_name()?;
                if self.eat_sym("[") {
                    let mut args = Vec::new();
                    if !self.at_sym("]") {
                        args.push(self.term()?);
                        while self.eat_sym(",") {
                            args.push(self.term()?);
                        }
                    }
                    self.expect_sym("]")?;
                    Ok(Term::app(name, args))
                } else {
                    Ok(Term::var(name))
                }
            }
            other => self.error(format!("expected a term, found {other}")),
        }
    }

    /// `(m; {..}, ..)`; `∅` is accepted for `{}`.
    pub(crate) fn shape(&mut self) -> PResult<Shape> {
        let span = self.span();
        self.expect_sym("(")?;
        let valence = self.expect_number()?;
        self.expect_sym(";")?;
        let mut sets = Vec::new();
        if !self.at_sym(")") {
            loop {
                self.expect_sym("{")?;
                let mut set = Vec::new();
                if !self.at_sym("}") {
                    set.push(self.expect_number()?);
                    while self.eat_sym(",") {
                        set.push(self.expect_number()?);
                    }
                }
                self.expect_sym("}")?;
                sets.push(set);
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym(")")?;
        Shape::new(valence, sets).or_else(|e| self.fail(e, span))
    }

    /// `[x y. body]`, `[. body]` or a plain term.
    pub(crate) fn template(&mut self) -> PResult<Template> {
        let span = self.span();
        if self.eat_sym("[") {
            let mut params = Vec::new();
            while !self.at_sym(".") {
                params.push(self.variable_name()?);
            }
            self.bump();
            let body = self.term()?;
            self.expect_sym("]")?;
            Template::new(params, body).or_else(|e| self.fail(e, span))
        } else {
            Ok(Template::term(self.term()?))
        }
    }

    /// `{ A/1 := [u. u -> u], x := y }`.
    pub(crate) fn substitution(&mut self) -> PResult<Substitution> {
        self.expect_sym("{")?;
        let mut sigma = Substitution::new();
        if !self.at_sym("}") {
            loop {
                let span = self.span();
                let name = self.variable_name()?;
                let arity = if self.eat_sym("/") { self.expect_number()? } else { 0 };
                self.expect_sym(":=")?;
                let tmpl = self.template()?;
                let var = VarOcc::new(name, arity);
                if sigma.get(&var).is_some() {
                    return self.fail(ParseErrorKind::Syntax(format!("{var} is substituted twice")), span);
                }
                sigma.insert(var, tmpl).or_else(|e| self.fail(e, span))?;
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym("}")?;
        Ok(sigma)
    }
}

pub fn parse_term(src: &str, sig: &Signature) -> PResult<Term> {
    let mut p = Parser::new(src, sig)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_shape(src: &str) -> PResult<Shape> {
    let sig = Signature::empty();
    let mut p = Parser::new(src, &sig)?;
    let s = p.shape()?;
    p.expect_eof()?;
    Ok(s)
}

pub fn parse_template(src: &str, sig: &Signature) -> PResult<Template> {
    let mut p = Parser::new(src, sig)?;
    let t = p.template()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_substitution(src: &str, sig: &Signature) -> PResult<Substitution> {
    let mut p = Parser::new(src, sig)?;
    let s = p.substitution()?;
    p.expect_eof()?;
    Ok(s)
}

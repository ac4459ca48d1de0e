//! Pretty-printer producing text the parser reads back to the same term.

use std::fmt;

use crate::signature::Shape;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const EQ: u8 = 6;
const APP: u8 = 7;
const ATOM: u8 = 8;

struct Infix {
    name: &'static str,
    ascii: &'static str,
    unicode: &'static str,
    prec: u8,
    lhs: u8,
    rhs: u8,
}

const INFIX: &[Infix] = &[
    Infix { name: "iff", ascii: "<->", unicode: "⇔", prec: IFF, lhs: IMP, rhs: IFF },
    Infix { name: "imp", ascii: "->", unicode: "⇒", prec: IMP, lhs: OR, rhs: IMP },
    Infix { name: "or", ascii: "\\/", unicode: "∨", prec: OR, lhs: OR, rhs: AND },
    Infix { name: "and", ascii: "/\\", unicode: "∧", prec: AND, lhs: AND, rhs: UNARY },
    Infix { name: "eq", ascii: "=", unicode: "=", prec: EQ, lhs: APP, rhs: APP },
    Infix { name: "neq", ascii: "!=", unicode: "≠", prec: EQ, lhs: APP, rhs: APP },
];

/// Glyph for an abstraction name in the Unicode style.
pub fn glyph_for(name: &str) -> Option<&'static str> {
    Some(match name {
        "true" => "⊤",
        "false" => "⊥",
        "fail" => "⅄",
        "all" => "∀",
        "ex" => "∃",
        "ex1" => "∃₁",
        "not" => "¬",
        _ => return None,
    })
}

pub fn print_term(t: &Term, style: Style) -> String {
    let mut out = String::new();
    Printer { style, out: &mut out }.term(t, IFF, true);
    out
}

struct Printer<'o> {
    style: Style,
    out: &'o mut String,
}

impl Printer<'_> {
    fn name<'n>(&self, n: &'n str) -> &'n str {
        match self.style {
            Style::Unicode => glyph_for(n).unwrap_or(n),
            Style::Ascii => n,
        }
    }

    fn open(&mut self, paren: bool) {
        if paren {
            self.out.push('(');
        }
    }

    fn close(&mut self, paren: bool) {
        if paren {
            self.out.push(')');
        }
    }

    /// `rightmost` is true when nothing follows this term before the end of
    /// the enclosing bracket, so a right-extending form needs no parentheses.
    fn term(&mut self, t: &Term, min: u8, rightmost: bool) {
        match t {
            Term::Var { name, args } => {
                self.out.push_str(name);
                if !args.is_empty() {
                    self.out.push('[');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            self.out.push_str(", ");
                        }
                        self.term(a, IFF, true);
                    }
                    self.out.push(']');
                }
            }
            Term::Abs { name, shape, binders, args } => {
                if shape.valence() == 0 && args.len() == 2 {
                    if let Some(op) = INFIX.iter().find(|op| op.name == name) {
                        let paren = min > op.prec;
                        let rightmost = rightmost || paren;
                        self.open(paren);
                        self.term(&args[0], op.lhs, false);
                        self.out.push(' ');
                        self.out.push_str(if self.style == Style::Unicode { op.unicode } else { op.ascii });
                        self.out.push(' ');
                        self.term(&args[1], op.rhs, rightmost);
                        self.close(paren);
                        return;
                    }
                }
                if name == "not" && **shape == Shape::operation(1) {
                    let paren = min > UNARY;
                    self.open(paren);
                    self.out.push_str(self.name("not"));
                    self.out.push(' ');
                    self.term(&args[0], UNARY, rightmost || paren);
                    self.close(paren);
                    return;
                }
                if **shape == Shape::binder() {
                    let paren = min > UNARY || !rightmost;
                    self.open(paren);
                    self.out.push_str(self.name(name));
                    self.out.push(' ');
                    self.out.push_str(&binders[0]);
                    self.out.push_str(". ");
                    self.term(&args[0], IFF, true);
                    self.close(paren);
                    return;
                }
                if shape.is_value() {
                    self.out.push_str(self.name(name));
                    return;
                }
                if shape.valence() == 0 {
                    let paren = min > APP;
                    self.open(paren);
                    self.out.push_str(self.name(name));
                    for a in args {
                        self.out.push(' ');
                        self.term(a, ATOM, false);
                    }
                    self.close(paren);
                    return;
                }
                self.out.push('(');
                self.out.push_str(self.name(name));
                for b in binders {
                    self.out.push(' ');
                    self.out.push_str(b);
                }
                self.out.push('.');
                if args.len() == 1 {
                    self.out.push(' ');
                    self.term(&args[0], IFF, true);
                } else {
                    for a in args {
                        self.out.push(' ');
                        self.term(a, ATOM, false);
                    }
                }
                self.out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self, Style::Ascii))
    }
}

//! Concrete syntax: tokens, the term parser and the pretty-printer.

mod lexer;
pub(crate) mod parser;
mod printer;

pub use lexer::{tokenize, LexError, Span, Tok, Token};
pub use parser::{parse_shape, parse_substitution, parse_template, parse_term, ParseError, ParseErrorKind, KEYWORDS};
pub use printer::{glyph_for, print_term, Style};

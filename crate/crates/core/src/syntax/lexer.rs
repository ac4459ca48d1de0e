use std::fmt;

/// Line and column (both 1-based, columns count characters).
///
/// Spans never take part in equality, so syntax trees compare by content.
#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(usize),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct LexError {
    pub message: String,
    pub span: Span,
}

const SYMBOLS: &[&str] =
    &["<->", ":=", "->", "!=", "\\/", "/\\", "(", ")", "[", "]", "{", "}", ".", ",", ":", ";", "=", "/"];

fn glyph(c: char) -> Option<Tok> {
    let ident = |s: &str| Some(Tok::Ident(s.to_string()));
    match c {
        '⊤' => ident("true"),
        '⊥' => ident("false"),
        '⅄' => ident("fail"),
        '∀' => ident("all"),
        '∃' => ident("ex"),
        '¬' => ident("not"),
        '⇒' => Some(Tok::Sym("->")),
        '⇔' => Some(Tok::Sym("<->")),
        '∧' => Some(Tok::Sym("/\\")),
        '∨' => Some(Tok::Sym("\\/")),
        '≠' => Some(Tok::Sym("!=")),
        '≔' => Some(Tok::Sym(":=")),
        _ => None,
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() && glyph(c).is_none() || c == '_'
}

pub fn is_ident_continue(c: char) -> bool {
    is_ident_start(c) || c.is_ascii_digit() || matches!(c, '\'' | '′' | '″' | '‴') || ('₀'..='₉').contains(&c)
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '∃' && chars.get(i + 1) == Some(&'₁') {
            out.push(Token { tok: Tok::Ident("ex1".into()), span });
            i += 2;
            col += 2;
            continue;
        }
        if c == '∅' {
            out.push(Token { tok: Tok::Sym("{"), span });
            out.push(Token { tok: Tok::Sym("}"), span });
            i += 1;
            col += 1;
            continue;
        }
        if let Some(tok) = glyph(c) {
            out.push(Token { tok, span });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| LexError { message: format!("number `{text}` is too large"), span })?;
            col += i - start;
            out.push(Token { tok: Tok::Number(n), span });
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), span });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                let n = sym.chars().count();
                i += n;
                col += n;
                out.push(Token { tok: Tok::Sym(sym), span });
            }
            None => {
                return Err(LexError { message: format!("unexpected character `{c}`"), span });
            }
        }
    }
    out.push(Token { tok: Tok::Eof, span: Span { line, column: col } });
    Ok(out)
}

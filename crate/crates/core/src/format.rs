//! The `.gcg` text format, plus JSON and Graphviz output.
//!
//! ```text
//! # comments run to end of line
//! vertex a, b;
//! edge a -> b;            # multiplicity 1
//! edge f: a -> a * 2;     # labeled bundle of two loops
//! edge b -> a * inf;      # infinitely many edges
//! ```
//!
//! Vertices must be declared before use. Unlabeled bundles between the same
//! pair are merged by adding multiplicities; labels must be unique.

use std::fmt;
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Multiplicity, MAX_VERTICES};

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "ck-spectra/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, found: String },
    UndeclaredVertex(String),
    DuplicateVertex(String),
    DuplicateLabel(String),
    ZeroMultiplicity,
    NumberTooLarge,
    TooManyVertices,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UndeclaredVertex(v) => write!(f, "undeclared vertex `{v}`"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "vertex `{v}` declared twice"),
            ParseErrorKind::DuplicateLabel(l) => write!(f, "duplicate bundle label `{l}`"),
            ParseErrorKind::ZeroMultiplicity => f.write_str("multiplicity must be at least 1"),
            ParseErrorKind::NumberTooLarge => f.write_str("multiplicity does not fit in 64 bits"),
            ParseErrorKind::TooManyVertices => {
                write!(f, "more than {MAX_VERTICES} vertices")
            }
        }
    }
}

/// A positioned parse failure. Lines and columns start at 1; columns count
/// characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Comma,
    Semi,
    Colon,
    Arrow,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(s) => write!(f, "`{s}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let tok = match c {
            '\n' | ' ' | '\t' | '\r' => {
                bump(&mut chars);
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            ',' | ';' | ':' | '*' => {
                bump(&mut chars);
                match c {
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    _ => Tok::Star,
                }
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    return Err(ParseError {
                        line: tl,
                        col: tc,
                        kind: ParseErrorKind::Syntax {
                            expected: "`->`".into(),
                            found: "`-`".into(),
                        },
                    });
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    bump(&mut chars);
                }
                Tok::Nat(s)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars
                    .peek()
                    .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
                {
                    s.push(d);
                    bump(&mut chars);
                }
                Tok::Ident(s)
            }
            other => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    kind: ParseErrorKind::Syntax {
                        expected: "a statement token".into(),
                        found: format!("`{other}`"),
                    },
                })
            }
        };
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    builder: GraphBuilder,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax {
            expected: expected.into(),
            found: self.peek().tok.to_string(),
        })
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek().tok == tok {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(tok.clone()) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn file(&mut self) -> Result<(), ParseError> {
        loop {
            match &self.peek().tok {
                Tok::Eof => return Ok(()),
                Tok::Ident(k) if k == "vertex" => {
                    self.pos += 1;
                    self.vertex_stmt()?;
                }
                Tok::Ident(k) if k == "edge" => {
                    self.pos += 1;
                    self.edge_stmt()?;
                }
                _ => return Err(self.unexpected("`vertex` or `edge`")),
            }
        }
    }

    fn vertex_stmt(&mut self) -> Result<(), ParseError> {
        loop {
            let at = self.pos;
            let name = self.ident("a vertex name")?;
            let t = &self.toks[at];
            let (line, col) = (t.line, t.col);
            if self.builder.lookup(&name).is_some() {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::DuplicateVertex(name),
                });
            }
            if self.builder.vertex(name).is_err() {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::TooManyVertices,
                });
            }
            if !self.eat(Tok::Comma) {
                return self.expect(Tok::Semi);
            }
        }
    }

    fn declared(&mut self) -> Result<crate::graph::Vertex, ParseError> {
        let at = self.pos;
        let name = self.ident("a vertex name")?;
        self.builder.lookup(&name).ok_or_else(|| ParseError {
            line: self.toks[at].line,
            col: self.toks[at].col,
            kind: ParseErrorKind::UndeclaredVertex(name),
        })
    }

    fn edge_stmt(&mut self) -> Result<(), ParseError> {
        let mut label = None;
        if matches!(
            self.toks.get(self.pos + 1).map(|t| &t.tok),
            Some(Tok::Colon)
        ) {
            let at = self.pos;
            let l = self.ident("a label or vertex name")?;
            if self.builder.has_label(&l) {
                return Err(ParseError {
                    line: self.toks[at].line,
                    col: self.toks[at].col,
                    kind: ParseErrorKind::DuplicateLabel(l),
                });
            }
            self.expect(Tok::Colon)?;
            label = Some(l);
        }
        let src = self.declared()?;
        self.expect(Tok::Arrow)?;
        let dst = self.declared()?;
        let mut mult = Multiplicity::ONE;
        if self.eat(Tok::Star) {
            mult = match &self.peek().tok {
                Tok::Ident(k) if k == "inf" => Multiplicity::Omega,
                Tok::Nat(digits) => match digits.parse::<u64>() {
                    Ok(0) => return Err(self.error_here(ParseErrorKind::ZeroMultiplicity)),
                    Ok(n) => Multiplicity::Finite(n),
                    Err(_) => return Err(self.error_here(ParseErrorKind::NumberTooLarge)),
                },
                _ => return Err(self.unexpected("a multiplicity or `inf`")),
            };
            self.pos += 1;
        }
        self.expect(Tok::Semi)?;
        self.builder
            .bundle(label.as_deref(), src, dst, mult)
            .expect("checked above");
        Ok(())
    }
}

/// Parses `.gcg` text.
pub fn parse_graph(src: &str) -> Result<Graph, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        builder: Graph::builder(),
    };
    p.file()?;
    Ok(p.builder.build())
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whether every vertex name and label can be written in `.gcg`.
pub fn is_emittable(g: &Graph) -> bool {
    g.names().iter().all(|n| is_ident(n))
        && g.bundles()
            .iter()
            .all(|b| b.label.as_deref().is_none_or(is_ident))
}

/// Canonical `.gcg` text: one `vertex` line in declaration order, then one
/// `edge` line per bundle in declaration order, multiplicity 1 omitted.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    if g.vertex_count() > 0 {
        let _ = writeln!(out, "vertex {};", g.names().join(", "));
    }
    for b in g.bundles() {
        out.push_str("edge ");
        if let Some(l) = &b.label {
            let _ = write!(out, "{l}: ");
        }
        let _ = write!(out, "{} -> {}", g.name(b.src), g.name(b.dst));
        match b.mult {
            Multiplicity::Omega => out.push_str(" * inf"),
            Multiplicity::Finite(1) => {}
            Multiplicity::Finite(n) => {
                let _ = write!(out, " * {n}");
            }
        }
        out.push_str(";\n");
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. Bundles are labeled by name and multiplicity, with
/// ω shown as `∞`.
pub fn emit_dot(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    for name in g.names() {
        let _ = writeln!(out, "  {};", dot_quote(name));
    }
    for b in g.bundles() {
        let mult = match b.mult {
            Multiplicity::Finite(1) => None,
            m => Some(m.to_string()),
        };
        let label = match (&b.label, mult) {
            (Some(l), Some(m)) => Some(format!("{l} ×{m}")),
            (Some(l), None) => Some(l.clone()),
            (None, Some(m)) => Some(m),
            (None, None) => None,
        };
        let _ = write!(
            out,
            "  {} -> {}",
            dot_quote(g.name(b.src)),
            dot_quote(g.name(b.dst))
        );
        if let Some(l) = label {
            let _ = write!(out, " [label={}]", dot_quote(&l));
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// Multiplicity as JSON: a number, or the string `"inf"`.
pub fn multiplicity_json(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(n) => json!(n),
        Multiplicity::Omega => json!("inf"),
    }
}

/// The graph as a JSON document with a `schema` field.
pub fn graph_to_json(g: &Graph) -> Value {
    let bundles: Vec<Value> = g
        .bundles()
        .iter()
        .map(|b| {
            json!({
                "label": b.label,
                "src": g.name(b.src),
                "dst": g.name(b.dst),
                "mult": multiplicity_json(b.mult),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "vertices": g.names(),
        "bundles": bundles,
    })
}

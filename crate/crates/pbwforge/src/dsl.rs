//! Line-oriented presentation DSL: parser, validator, and emitter.
//!
//! A presentation file declares a coefficient ring and, optionally, an
//! extension over it:
//!
//! ```text
//! ring jordan
//! gens t1 t2
//! rel t2*t1 -> t1*t2 + t1^2
//!
//! extension jordan-ext over jordan
//! vars x1
//! sigma 1: t1 -> t1; t2 -> 2*t1 + t2
//! sigma_inv 1: t1 -> t1; t2 -> t2 - 2*t1
//! delta 1: t1 -> 0; t2 -> 0
//! ```
//!
//! Statements: `ring`, `gens`, `param <id> = <rational>`, `rel <word> ->
//! <poly>`, `central <gen>`, `extension <name> over <ring>`, `vars`,
//! `sigma <k>: <gen> -> <expr>; …`, `sigma_inv <k>: …`, `delta <k>: …`,
//! `cross <j> <i>: d = <expr>, r0 = <expr>, r<l> = <expr>, …`, and
//! `option degree = <n>` / `option filtration = standard|trivial`.
//! Expressions use `+ - * ^`, parentheses, rational literals `p/q`, declared
//! generators, and declared parameters. `#` starts a comment. A `sigma` table
//! that is omitted entirely defaults to the identity, an omitted `delta`
//! table to the zero derivation, and omitted cross components to zero;
//! a table that is present but misses a generator is a diagnostic.
//!
//! Parsing is total: malformed input produces a list of diagnostics with
//! line/column positions, never a panic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffring::{DerivSpec, EndoSpec, RElement, RingPresentation};
use crate::freealg::{Alphabet, FreePoly, GenId, Word};
use crate::scalar::Scalar;
use crate::skewext::{AElement, CrossRelation, ExtensionPresentation, FiltrationMode};
use crate::Error;

/// A located parse or validation problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Joins diagnostics for error display.
pub fn render_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(Diagnostic::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Options a file may pin: the degree bound and the filtration mode used by
/// reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub degree: Option<usize>,
    pub filtration: Option<FiltrationMode>,
}

/// A fully validated presentation file.
#[derive(Debug)]
pub struct PresentationFile {
    pub ring: RingPresentation,
    /// Generator marked central by the file, if any.
    pub central: Option<String>,
    pub extension: Option<ExtensionPresentation>,
    pub options: FileOptions,
}

// ---- tokens ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(Scalar),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Arrow,
    Eq,
    Comma,
    Colon,
    Semi,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize_line(line: &str, line_no: usize, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push(Token {
                    tok: Tok::Plus,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token {
                        tok: Tok::Arrow,
                        line: line_no,
                        col,
                    });
                    i += 2;
                } else {
                    out.push(Token {
                        tok: Tok::Minus,
                        line: line_no,
                        col,
                    });
                    i += 1;
                }
            }
            '*' => {
                out.push(Token {
                    tok: Tok::Star,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            '^' => {
                out.push(Token {
                    tok: Tok::Caret,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            '(' => {
                out.push(Token {
                    tok: Tok::LParen,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            ')' => {
                out.push(Token {
                    tok: Tok::RParen,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            '=' => {
                out.push(Token {
                    tok: Tok::Eq,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            ',' => {
                out.push(Token {
                    tok: Tok::Comma,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            ':' => {
                out.push(Token {
                    tok: Tok::Colon,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            ';' => {
                out.push(Token {
                    tok: Tok::Semi,
                    line: line_no,
                    col,
                });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // a directly attached '/digits' makes a rational literal
                let mut text: String = chars[start..i].iter().collect();
                if chars.get(i) == Some(&'/')
                    && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    text.push('/');
                    text.extend(&chars[dstart..i]);
                }
                match text.parse::<Scalar>() {
                    Ok(v) => out.push(Token {
                        tok: Tok::Number(v),
                        line: line_no,
                        col,
                    }),
                    Err(e) => diags.push(Diagnostic::new(line_no, col, e)),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-')
                {
                    // a dash only continues an identifier when followed by an
                    // alphanumeric character that is not starting `->`
                    if chars[i] == '-'
                        && (chars.get(i + 1) == Some(&'>')
                            || !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()))
                    {
                        break;
                    }
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(text),
                    line: line_no,
                    col,
                });
            }
            other => {
                diags.push(Diagnostic::new(
                    line_no,
                    col,
                    format!("unexpected character `{other}`"),
                ));
                i += 1;
            }
        }
    }
    out
}

// ---- expressions ----

#[derive(Clone, Debug)]
enum Expr {
    Num(Scalar),
    Ident(String, usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, usize),
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], line: usize) -> Self {
        Parser {
            tokens,
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or((self.line, 1 + self.tokens.last().map_or(0, |t| t.col)))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, Diagnostic> {
        let (line, col) = self.here();
        match self.bump() {
            Some(t) if t.tok == tok => Ok(t),
            _ => Err(Diagnostic::new(line, col, format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut negs = 0;
        while self.peek() == Some(&Tok::Minus) {
            self.bump();
            negs += 1;
        }
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        for _ in 0..negs {
            acc = Expr::Neg(Box::new(acc));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let (line, col) = self.here();
            match self.bump() {
                Some(Token {
                    tok: Tok::Number(v),
                    ..
                }) => {
                    let text = v.to_string();
                    match text.parse::<usize>() {
                        Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                        Err(_) => Err(Diagnostic::new(
                            line,
                            col,
                            format!("exponent must be a natural number, got `{text}`"),
                        )),
                    }
                }
                _ => Err(Diagnostic::new(line, col, "expected an exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let (line, col) = self.here();
        match self.bump() {
            Some(Token {
                tok: Tok::Number(v),
                ..
            }) => Ok(Expr::Num(v)),
            Some(Token {
                tok: Tok::Ident(name),
                line,
                col,
            }) => Ok(Expr::Ident(name, line, col)),
            Some(Token {
                tok: Tok::LParen, ..
            }) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(Diagnostic::new(
                line,
                col,
                "expected a number, identifier, or `(`",
            )),
        }
    }
}

/// Evaluates an expression to a free-algebra element over `alphabet`,
/// resolving identifiers through the generators first and the parameter map
/// second.
fn eval_expr(
    expr: &Expr,
    alphabet: &Arc<Alphabet>,
    params: &BTreeMap<String, Scalar>,
) -> Result<FreePoly, Diagnostic> {
    match expr {
        Expr::Num(v) => Ok(FreePoly::scalar(alphabet.clone(), v.clone())),
        Expr::Ident(name, line, col) => {
            if let Some(id) = alphabet.index_of(name) {
                Ok(FreePoly::generator(alphabet.clone(), id))
            } else if let Some(v) = params.get(name) {
                Ok(FreePoly::scalar(alphabet.clone(), v.clone()))
            } else {
                Err(Diagnostic::new(
                    *line,
                    *col,
                    format!("undeclared identifier `{name}`"),
                ))
            }
        }
        Expr::Neg(inner) => Ok(eval_expr(inner, alphabet, params)?.neg()),
        Expr::Add(a, b) => eval_expr(a, alphabet, params)?
            .add(&eval_expr(b, alphabet, params)?)
            .map_err(|e| Diagnostic::new(0, 0, e.to_string())),
        Expr::Sub(a, b) => eval_expr(a, alphabet, params)?
            .sub(&eval_expr(b, alphabet, params)?)
            .map_err(|e| Diagnostic::new(0, 0, e.to_string())),
        Expr::Mul(a, b) => eval_expr(a, alphabet, params)?
            .mul(&eval_expr(b, alphabet, params)?)
            .map_err(|e| Diagnostic::new(0, 0, e.to_string())),
        Expr::Pow(base, e) => {
            let base = eval_expr(base, alphabet, params)?;
            let mut acc = FreePoly::one(alphabet.clone());
            for _ in 0..*e {
                acc = acc
                    .mul(&base)
                    .map_err(|er| Diagnostic::new(0, 0, er.to_string()))?;
            }
            Ok(acc)
        }
    }
}

// ---- raw file structure ----

struct RawRing {
    name: String,
    line: usize,
    gens: Vec<(String, usize, usize)>,
    params: Vec<(String, Scalar, usize, usize)>,
    rels: Vec<(Expr, Expr, usize)>,
    central: Option<(String, usize, usize)>,
}

struct RawTableEntry {
    gen: String,
    gen_line: usize,
    gen_col: usize,
    expr: Expr,
}

struct RawCross {
    j: usize,
    i: usize,
    line: usize,
    d: Option<Expr>,
    r0: Option<Expr>,
    r: Vec<(usize, Expr)>,
}

struct RawExtension {
    name: String,
    over: String,
    line: usize,
    vars: Vec<(String, usize, usize)>,
    sigma: BTreeMap<usize, (usize, Vec<RawTableEntry>)>,
    sigma_inv: BTreeMap<usize, (usize, Vec<RawTableEntry>)>,
    delta: BTreeMap<usize, (usize, Vec<RawTableEntry>)>,
    cross: Vec<RawCross>,
}

/// Parses and validates a presentation file. On success the ring (and
/// extension, when declared) are fully constructed: rewriting rules oriented
/// and confluence-checked, σ/δ verified well-defined, and cross relations
/// complete.
pub fn parse(text: &str) -> Result<PresentationFile, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut ring: Option<RawRing> = None;
    let mut ext: Option<RawExtension> = None;
    let mut options = FileOptions::default();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = tokenize_line(line, line_no, &mut diags);
        if tokens.is_empty() {
            continue;
        }
        let mut p = Parser::new(&tokens, line_no);
        let head = match p.bump() {
            Some(Token {
                tok: Tok::Ident(word),
                ..
            }) => word,
            Some(t) => {
                diags.push(Diagnostic::new(
                    t.line,
                    t.col,
                    "expected a statement keyword",
                ));
                continue;
            }
            None => continue,
        };
        match head.as_str() {
            "ring" => match p.bump() {
                Some(Token {
                    tok: Tok::Ident(name),
                    ..
                }) => {
                    if ring.is_some() {
                        diags.push(Diagnostic::new(line_no, 1, "duplicate `ring` block"));
                    } else {
                        ring = Some(RawRing {
                            name,
                            line: line_no,
                            gens: Vec::new(),
                            params: Vec::new(),
                            rels: Vec::new(),
                            central: None,
                        });
                    }
                }
                _ => diags.push(Diagnostic::new(line_no, 1, "expected a ring name")),
            },
            "gens" => {
                let Some(ring) = ring.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "`gens` outside of a ring block",
                    ));
                    continue;
                };
                let mut any = false;
                while let Some(t) = p.bump() {
                    match t.tok {
                        Tok::Ident(name) => {
                            any = true;
                            ring.gens.push((name, t.line, t.col));
                        }
                        _ => {
                            diags.push(Diagnostic::new(t.line, t.col, "expected a generator name"))
                        }
                    }
                }
                if !any {
                    diags.push(Diagnostic::new(line_no, 1, "expected generator names"));
                }
            }
            "param" => {
                let Some(ring) = ring.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "`param` outside of a ring block",
                    ));
                    continue;
                };
                let name = match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(name),
                        line,
                        col,
                    }) => (name, line, col),
                    _ => {
                        diags.push(Diagnostic::new(line_no, 1, "expected a parameter name"));
                        continue;
                    }
                };
                if p.expect(Tok::Eq, "`=`").map_err(|d| diags.push(d)).is_err() {
                    continue;
                }
                // a parameter value is a rational literal with optional sign
                let mut neg = false;
                while p.peek() == Some(&Tok::Minus) {
                    p.bump();
                    neg = !neg;
                }
                match p.bump() {
                    Some(Token {
                        tok: Tok::Number(v),
                        ..
                    }) => {
                        let v = if neg { -&v } else { v };
                        ring.params.push((name.0, v, name.1, name.2));
                    }
                    _ => diags.push(Diagnostic::new(line_no, 1, "expected a rational literal")),
                }
            }
            "rel" => {
                let Some(ring) = ring.as_mut() else {
                    diags.push(Diagnostic::new(line_no, 1, "`rel` outside of a ring block"));
                    continue;
                };
                let lhs = match p.expr() {
                    Ok(e) => e,
                    Err(d) => {
                        diags.push(d);
                        continue;
                    }
                };
                if p.expect(Tok::Arrow, "`->`")
                    .map_err(|d| diags.push(d))
                    .is_err()
                {
                    continue;
                }
                match p.expr() {
                    Ok(rhs) => {
                        if !p.at_end() {
                            let (l, c) = p.here();
                            diags.push(Diagnostic::new(l, c, "trailing input after rule"));
                        }
                        ring.rels.push((lhs, rhs, line_no));
                    }
                    Err(d) => diags.push(d),
                }
            }
            "central" => {
                let Some(ring) = ring.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "`central` outside of a ring block",
                    ));
                    continue;
                };
                match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(name),
                        line,
                        col,
                    }) => {
                        ring.central = Some((name, line, col));
                    }
                    _ => diags.push(Diagnostic::new(line_no, 1, "expected a generator name")),
                }
            }
            "extension" => {
                let name = match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(name),
                        ..
                    }) => name,
                    _ => {
                        diags.push(Diagnostic::new(line_no, 1, "expected an extension name"));
                        continue;
                    }
                };
                match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(kw),
                        ..
                    }) if kw == "over" => {}
                    _ => {
                        diags.push(Diagnostic::new(line_no, 1, "expected `over <ring>`"));
                        continue;
                    }
                }
                match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(over),
                        ..
                    }) => {
                        if ext.is_some() {
                            diags.push(Diagnostic::new(line_no, 1, "duplicate `extension` block"));
                        } else {
                            ext = Some(RawExtension {
                                name,
                                over,
                                line: line_no,
                                vars: Vec::new(),
                                sigma: BTreeMap::new(),
                                sigma_inv: BTreeMap::new(),
                                delta: BTreeMap::new(),
                                cross: Vec::new(),
                            });
                        }
                    }
                    _ => diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "expected a ring name after `over`",
                    )),
                }
            }
            "vars" => {
                let Some(ext) = ext.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "`vars` outside of an extension block",
                    ));
                    continue;
                };
                let mut any = false;
                while let Some(t) = p.bump() {
                    match t.tok {
                        Tok::Ident(name) => {
                            any = true;
                            ext.vars.push((name, t.line, t.col));
                        }
                        _ => diags.push(Diagnostic::new(t.line, t.col, "expected a variable name")),
                    }
                }
                if !any {
                    diags.push(Diagnostic::new(line_no, 1, "expected variable names"));
                }
            }
            "sigma" | "sigma_inv" | "delta" => {
                let Some(ext) = ext.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        format!("`{head}` outside of an extension block"),
                    ));
                    continue;
                };
                let index = match p.bump() {
                    Some(Token {
                        tok: Tok::Number(v),
                        line,
                        col,
                    }) => match v.to_string().parse::<usize>() {
                        Ok(k) if k >= 1 => k,
                        _ => {
                            diags.push(Diagnostic::new(line, col, "expected a variable index ≥ 1"));
                            continue;
                        }
                    },
                    _ => {
                        diags.push(Diagnostic::new(line_no, 1, "expected a variable index"));
                        continue;
                    }
                };
                if p.expect(Tok::Colon, "`:`")
                    .map_err(|d| diags.push(d))
                    .is_err()
                {
                    continue;
                }
                let mut entries = Vec::new();
                loop {
                    let gen = match p.bump() {
                        Some(Token {
                            tok: Tok::Ident(name),
                            line,
                            col,
                        }) => (name, line, col),
                        Some(t) => {
                            diags.push(Diagnostic::new(t.line, t.col, "expected a generator name"));
                            break;
                        }
                        None => break,
                    };
                    if p.expect(Tok::Arrow, "`->`")
                        .map_err(|d| diags.push(d))
                        .is_err()
                    {
                        break;
                    }
                    match p.expr() {
                        Ok(expr) => entries.push(RawTableEntry {
                            gen: gen.0,
                            gen_line: gen.1,
                            gen_col: gen.2,
                            expr,
                        }),
                        Err(d) => {
                            diags.push(d);
                            break;
                        }
                    }
                    match p.peek() {
                        Some(Tok::Semi) => {
                            p.bump();
                        }
                        None => break,
                        _ => {
                            let (l, c) = p.here();
                            diags.push(Diagnostic::new(l, c, "expected `;` between table entries"));
                            break;
                        }
                    }
                }
                let table = match head.as_str() {
                    "sigma" => &mut ext.sigma,
                    "sigma_inv" => &mut ext.sigma_inv,
                    _ => &mut ext.delta,
                };
                table
                    .entry(index)
                    .or_insert_with(|| (line_no, Vec::new()))
                    .1
                    .extend(entries);
            }
            "cross" => {
                let Some(ext) = ext.as_mut() else {
                    diags.push(Diagnostic::new(
                        line_no,
                        1,
                        "`cross` outside of an extension block",
                    ));
                    continue;
                };
                let mut index = |p: &mut Parser| -> Option<usize> {
                    match p.bump() {
                        Some(Token {
                            tok: Tok::Number(v),
                            line,
                            col,
                        }) => match v.to_string().parse::<usize>() {
                            Ok(k) if k >= 1 => Some(k),
                            _ => {
                                diags.push(Diagnostic::new(line, col, "expected an index ≥ 1"));
                                None
                            }
                        },
                        _ => {
                            diags.push(Diagnostic::new(
                                line_no,
                                1,
                                "expected two variable indices",
                            ));
                            None
                        }
                    }
                };
                let Some(j) = index(&mut p) else { continue };
                let Some(i) = index(&mut p) else { continue };
                if p.expect(Tok::Colon, "`:`")
                    .map_err(|d| diags.push(d))
                    .is_err()
                {
                    continue;
                }
                let mut raw = RawCross {
                    j,
                    i,
                    line: line_no,
                    d: None,
                    r0: None,
                    r: Vec::new(),
                };
                loop {
                    let key = match p.bump() {
                        Some(Token {
                            tok: Tok::Ident(name),
                            line,
                            col,
                        }) => (name, line, col),
                        Some(t) => {
                            diags.push(Diagnostic::new(
                                t.line,
                                t.col,
                                "expected `d`, `r0`, or `r<l>`",
                            ));
                            break;
                        }
                        None => break,
                    };
                    if p.expect(Tok::Eq, "`=`").map_err(|d| diags.push(d)).is_err() {
                        break;
                    }
                    let expr = match p.expr() {
                        Ok(e) => e,
                        Err(d) => {
                            diags.push(d);
                            break;
                        }
                    };
                    match key.0.as_str() {
                        "d" => raw.d = Some(expr),
                        "r0" => raw.r0 = Some(expr),
                        other => match other
                            .strip_prefix('r')
                            .and_then(|s| s.parse::<usize>().ok())
                        {
                            Some(l) if l >= 1 => raw.r.push((l, expr)),
                            _ => diags.push(Diagnostic::new(
                                key.1,
                                key.2,
                                format!("unknown cross component `{other}`"),
                            )),
                        },
                    }
                    match p.peek() {
                        Some(Tok::Comma) => {
                            p.bump();
                        }
                        None => break,
                        _ => {
                            let (l, c) = p.here();
                            diags.push(Diagnostic::new(
                                l,
                                c,
                                "expected `,` between cross components",
                            ));
                            break;
                        }
                    }
                }
                ext.cross.push(raw);
            }
            "option" => {
                let key = match p.bump() {
                    Some(Token {
                        tok: Tok::Ident(name),
                        ..
                    }) => name,
                    _ => {
                        diags.push(Diagnostic::new(line_no, 1, "expected an option name"));
                        continue;
                    }
                };
                if p.expect(Tok::Eq, "`=`").map_err(|d| diags.push(d)).is_err() {
                    continue;
                }
                match (key.as_str(), p.bump()) {
                    (
                        "degree",
                        Some(Token {
                            tok: Tok::Number(v),
                            line,
                            col,
                        }),
                    ) => match v.to_string().parse::<usize>() {
                        Ok(n) => options.degree = Some(n),
                        Err(_) => {
                            diags.push(Diagnostic::new(line, col, "expected a natural number"))
                        }
                    },
                    (
                        "filtration",
                        Some(Token {
                            tok: Tok::Ident(mode),
                            line,
                            col,
                        }),
                    ) => match mode.as_str() {
                        "standard" => options.filtration = Some(FiltrationMode::Standard),
                        "trivial" => options.filtration = Some(FiltrationMode::Trivial),
                        other => diags.push(Diagnostic::new(
                            line,
                            col,
                            format!("unknown filtration mode `{other}`"),
                        )),
                    },
                    (other, _) => diags.push(Diagnostic::new(
                        line_no,
                        1,
                        format!("unknown option `{other}`"),
                    )),
                }
            }
            other => diags.push(Diagnostic::new(
                line_no,
                1,
                format!("unknown statement `{other}`"),
            )),
        }
    }

    let Some(raw_ring) = ring else {
        diags.push(Diagnostic::new(1, 1, "missing `ring` block"));
        return Err(diags);
    };
    if !diags.is_empty() {
        return Err(diags);
    }

    let file = build(raw_ring, ext, options, &mut diags);
    match file {
        Some(f) if diags.is_empty() => Ok(f),
        _ => Err(diags),
    }
}

fn build(
    raw_ring: RawRing,
    raw_ext: Option<RawExtension>,
    options: FileOptions,
    diags: &mut Vec<Diagnostic>,
) -> Option<PresentationFile> {
    // generators and parameters
    for (i, (name, line, col)) in raw_ring.gens.iter().enumerate() {
        if raw_ring.gens[..i].iter().any(|(n, _, _)| n == name) {
            diags.push(Diagnostic::new(
                *line,
                *col,
                format!("duplicate generator `{name}`"),
            ));
        }
    }
    let alphabet = match Alphabet::new(raw_ring.gens.iter().map(|(n, _, _)| n.clone())) {
        Ok(a) => a,
        Err(e) => {
            diags.push(Diagnostic::new(raw_ring.line, 1, e.to_string()));
            return None;
        }
    };
    let mut params = BTreeMap::new();
    for (name, value, line, col) in &raw_ring.params {
        if alphabet.index_of(name).is_some() {
            diags.push(Diagnostic::new(
                *line,
                *col,
                format!("parameter `{name}` collides with a generator"),
            ));
        }
        if params.insert(name.clone(), value.clone()).is_some() {
            diags.push(Diagnostic::new(
                *line,
                *col,
                format!("duplicate parameter `{name}`"),
            ));
        }
    }

    // rules
    let mut rules = Vec::new();
    for (lhs_expr, rhs_expr, line) in &raw_ring.rels {
        let lhs = match eval_expr(lhs_expr, &alphabet, &params) {
            Ok(p) => p,
            Err(d) => {
                diags.push(located(d, *line));
                continue;
            }
        };
        let rhs = match eval_expr(rhs_expr, &alphabet, &params) {
            Ok(p) => p,
            Err(d) => {
                diags.push(located(d, *line));
                continue;
            }
        };
        let word = single_word(&lhs);
        let Some(word) = word else {
            diags.push(Diagnostic::new(
                *line,
                1,
                "the left-hand side of a rule must be a single word with coefficient 1",
            ));
            continue;
        };
        if word.degree() < 2 {
            diags.push(Diagnostic::new(
                *line,
                1,
                "rule left-hand side must have degree at least 2",
            ));
            continue;
        }
        if let Some(d) = rhs.degree() {
            if d > word.degree() {
                diags.push(Diagnostic::new(*line, 1, "rule violates degree bound"));
                continue;
            }
            let leading = rhs.terms().map(|(w, _)| w).max().expect("nonzero");
            if *leading >= word {
                diags.push(Diagnostic::new(
                    *line,
                    1,
                    "rule right-hand side is not below the left-hand side in deglex order",
                ));
                continue;
            }
        }
        rules.push((word, rhs));
    }
    if !diags.is_empty() {
        return None;
    }

    let ring = match RingPresentation::new(raw_ring.name.clone(), alphabet.clone(), rules, params) {
        Ok(r) => r,
        Err(e) => {
            diags.push(Diagnostic::new(raw_ring.line, 1, e.to_string()));
            return None;
        }
    };

    let central = match &raw_ring.central {
        None => None,
        Some((name, line, col)) => {
            if alphabet.index_of(name).is_none() {
                diags.push(Diagnostic::new(
                    *line,
                    *col,
                    format!("undeclared identifier `{name}`"),
                ));
                return None;
            }
            Some(name.clone())
        }
    };

    // extension
    let extension = match raw_ext {
        None => None,
        Some(raw) => {
            if raw.over != raw_ring.name {
                diags.push(Diagnostic::new(
                    raw.line,
                    1,
                    format!("extension is over undeclared ring `{}`", raw.over),
                ));
                return None;
            }
            let n = raw.vars.len();
            if n == 0 {
                diags.push(Diagnostic::new(
                    raw.line,
                    1,
                    "extension declares no variables",
                ));
                return None;
            }
            for (name, line, col) in &raw.vars {
                if ring.parameters().contains_key(name) {
                    diags.push(Diagnostic::new(
                        *line,
                        *col,
                        format!("variable `{name}` collides with a parameter"),
                    ));
                    return None;
                }
            }
            let build_table = |table: &BTreeMap<usize, (usize, Vec<RawTableEntry>)>,
                               what: &str,
                               default: &dyn Fn(GenId) -> RElement,
                               diags: &mut Vec<Diagnostic>|
             -> Option<Vec<Vec<RElement>>> {
                let mut out = Vec::with_capacity(n);
                for k in 1..=n {
                    match table.get(&k) {
                        None => out.push((0..ring.generator_count()).map(default).collect()),
                        Some((line, entries)) => {
                            let mut images: Vec<Option<RElement>> =
                                vec![None; ring.generator_count()];
                            for entry in entries {
                                let Some(id) = ring.alphabet().index_of(&entry.gen) else {
                                    diags.push(Diagnostic::new(
                                        entry.gen_line,
                                        entry.gen_col,
                                        format!("undeclared identifier `{}`", entry.gen),
                                    ));
                                    return None;
                                };
                                match eval_expr(&entry.expr, ring.alphabet(), ring.parameters()) {
                                    Ok(poly) => match ring.reduce(&poly) {
                                        Ok(elem) => images[id] = Some(elem),
                                        Err(e) => {
                                            diags.push(Diagnostic::new(*line, 1, e.to_string()));
                                            return None;
                                        }
                                    },
                                    Err(d) => {
                                        diags.push(located(d, *line));
                                        return None;
                                    }
                                }
                            }
                            let missing: Vec<&str> = images
                                .iter()
                                .enumerate()
                                .filter(|(_, v)| v.is_none())
                                .map(|(id, _)| ring.alphabet().name(id))
                                .collect();
                            if !missing.is_empty() {
                                diags.push(Diagnostic::new(
                                    *line,
                                    1,
                                    format!(
                                        "incomplete {what} table: missing {}",
                                        missing.join(", ")
                                    ),
                                ));
                                return None;
                            }
                            out.push(images.into_iter().map(Option::unwrap).collect());
                        }
                    }
                }
                for (&k, (line, _)) in table {
                    if k > n {
                        diags.push(Diagnostic::new(
                            *line,
                            1,
                            format!("{what} table index {k} exceeds the {n} declared variables"),
                        ));
                        return None;
                    }
                }
                Some(out)
            };

            let sigma_images = build_table(&raw.sigma, "sigma", &|id| ring.generator(id), diags)?;
            let delta_images = build_table(&raw.delta, "delta", &|_| ring.zero(), diags)?;
            let inv_declared = !raw.sigma_inv.is_empty();
            let sigma_inv_images = if inv_declared {
                Some(build_table(
                    &raw.sigma_inv,
                    "sigma_inv",
                    &|id| ring.generator(id),
                    diags,
                )?)
            } else {
                None
            };

            let mut sigma = Vec::with_capacity(n);
            let mut delta = Vec::with_capacity(n);
            for k in 0..n {
                let inverse = sigma_inv_images.as_ref().map(|inv| inv[k].clone());
                let line = raw.sigma.get(&(k + 1)).map_or(raw.line, |(l, _)| *l);
                let s = match EndoSpec::new(sigma_images[k].clone(), inverse, &ring) {
                    Ok(s) => s,
                    Err(e) => {
                        diags.push(Diagnostic::new(line, 1, e.to_string()));
                        return None;
                    }
                };
                let dline = raw.delta.get(&(k + 1)).map_or(raw.line, |(l, _)| *l);
                let d = match DerivSpec::new(delta_images[k].clone(), s.clone(), &ring) {
                    Ok(d) => d,
                    Err(e) => {
                        diags.push(Diagnostic::new(dline, 1, e.to_string()));
                        return None;
                    }
                };
                sigma.push(s);
                delta.push(d);
            }

            let mut cross = BTreeMap::new();
            for raw_cross in &raw.cross {
                if raw_cross.j > n || raw_cross.i > n || raw_cross.j <= raw_cross.i {
                    diags.push(Diagnostic::new(
                        raw_cross.line,
                        1,
                        "cross indices must satisfy n ≥ j > i ≥ 1",
                    ));
                    return None;
                }
                let eval = |expr: &Option<Expr>, diags: &mut Vec<Diagnostic>| -> Option<RElement> {
                    match expr {
                        None => Some(ring.zero()),
                        Some(e) => match eval_expr(e, ring.alphabet(), ring.parameters()) {
                            Ok(p) => match ring.reduce(&p) {
                                Ok(v) => Some(v),
                                Err(err) => {
                                    diags.push(Diagnostic::new(raw_cross.line, 1, err.to_string()));
                                    None
                                }
                            },
                            Err(d) => {
                                diags.push(located(d, raw_cross.line));
                                None
                            }
                        },
                    }
                };
                let d = eval(&raw_cross.d, diags)?;
                let r0 = eval(&raw_cross.r0, diags)?;
                let mut r = vec![ring.zero(); n];
                for (l, expr) in &raw_cross.r {
                    if *l > n {
                        diags.push(Diagnostic::new(
                            raw_cross.line,
                            1,
                            format!("cross component r{l} exceeds the {n} declared variables"),
                        ));
                        return None;
                    }
                    r[*l - 1] = eval(&Some(expr.clone()), diags)?;
                }
                if cross
                    .insert(
                        (raw_cross.i - 1, raw_cross.j - 1),
                        CrossRelation::new(d, r0, r),
                    )
                    .is_some()
                {
                    diags.push(Diagnostic::new(
                        raw_cross.line,
                        1,
                        format!(
                            "duplicate cross relation for pair {} {}",
                            raw_cross.j, raw_cross.i
                        ),
                    ));
                    return None;
                }
            }
            // default: undeclared pairs of a single-variable extension are
            // impossible; for n ≥ 2 every pair must be declared
            match ExtensionPresentation::new(
                raw.name.clone(),
                ring.clone(),
                raw.vars.iter().map(|(v, _, _)| v.clone()).collect(),
                sigma,
                delta,
                cross,
            ) {
                Ok(e) => Some(e),
                Err(e) => {
                    diags.push(Diagnostic::new(raw.line, 1, e.to_string()));
                    return None;
                }
            }
        }
    };

    Some(PresentationFile {
        ring,
        central,
        extension,
        options,
    })
}

fn located(d: Diagnostic, line: usize) -> Diagnostic {
    if d.line == 0 {
        Diagnostic::new(line, 1, d.message)
    } else {
        d
    }
}

/// The single word of a monic one-term polynomial, if that is what it is.
fn single_word(poly: &FreePoly) -> Option<Word> {
    let mut terms = poly.terms();
    match (terms.next(), terms.next()) {
        (Some((word, coeff)), None) if coeff.is_one() => Some(word.clone()),
        _ => None,
    }
}

/// Evaluates an element expression (over ring generators and extension
/// variables together) into PBW normal form. Words multiply out through the
/// extension's commutation rules, so `x*t^2` on the first Weyl algebra comes
/// back as `t^2*x + 2*t`.
pub fn evaluate_element(
    ext: &ExtensionPresentation,
    text: &str,
) -> Result<AElement, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let tokens = tokenize_line(text, 1, &mut diags);
    if !diags.is_empty() {
        return Err(diags);
    }
    let mut parser = Parser::new(&tokens, 1);
    let expr = match parser.expr() {
        Ok(e) => e,
        Err(d) => return Err(vec![d]),
    };
    if !parser.at_end() {
        let (l, c) = parser.here();
        return Err(vec![Diagnostic::new(
            l,
            c,
            "trailing input after expression",
        )]);
    }

    let mut names: Vec<String> = ext.base().alphabet().names().to_vec();
    names.extend(ext.variables().iter().cloned());
    let combined = match Alphabet::new(names) {
        Ok(a) => a,
        Err(e) => return Err(vec![Diagnostic::new(1, 1, e.to_string())]),
    };
    let poly = eval_expr(&expr, &combined, ext.base().parameters()).map_err(|d| vec![d])?;

    let m = ext.base().generator_count();
    let mut out = ext.zero();
    for (word, coeff) in poly.terms() {
        let mut acc = ext.one();
        for &letter in word.letters() {
            let factor = if letter < m {
                ext.from_coefficient(ext.base().generator(letter))
            } else {
                ext.variable(letter - m)
            };
            acc = ext
                .mul(&acc, &factor)
                .map_err(|e| vec![Diagnostic::new(1, 1, e.to_string())])?;
        }
        out = out
            .add(&acc.scale(coeff))
            .map_err(|e| vec![Diagnostic::new(1, 1, e.to_string())])?;
    }
    Ok(out)
}

// ---- emission ----

fn emit_ring_block(out: &mut String, ring: &RingPresentation, central: Option<&str>) {
    out.push_str(&format!("ring {}\n", ring.name()));
    if ring.generator_count() > 0 {
        out.push_str(&format!("gens {}\n", ring.alphabet().names().join(" ")));
    }
    for (name, value) in ring.parameters() {
        out.push_str(&format!("param {name} = {value}\n"));
    }
    for rule in ring.rules() {
        let lhs = FreePoly::from_terms(
            ring.alphabet().clone(),
            [(rule.lhs().clone(), Scalar::one())],
        );
        out.push_str(&format!("rel {} -> {}\n", lhs, rule.rhs()));
    }
    if let Some(z) = central {
        out.push_str(&format!("central {z}\n"));
    }
}

/// Renders a ring presentation in the input DSL.
pub fn emit_ring(ring: &RingPresentation, central: Option<&str>) -> String {
    let mut out = String::new();
    emit_ring_block(&mut out, ring, central);
    out
}

/// Renders a full extension presentation (ring block plus extension block)
/// in the input DSL. The output parses back to a structurally equal
/// presentation.
pub fn emit_extension(ext: &ExtensionPresentation, central: Option<&str>) -> String {
    let mut out = String::new();
    emit_ring_block(&mut out, ext.base(), central);
    out.push('\n');
    out.push_str(&format!(
        "extension {} over {}\n",
        ext.name(),
        ext.base().name()
    ));
    out.push_str(&format!("vars {}\n", ext.variables().join(" ")));
    let table = |label: &str, k: usize, images: &[RElement], out: &mut String| {
        if images.is_empty() {
            return;
        }
        let entries: Vec<String> = images
            .iter()
            .enumerate()
            .map(|(id, img)| format!("{} -> {}", ext.base().alphabet().name(id), img))
            .collect();
        out.push_str(&format!("{label} {}: {}\n", k + 1, entries.join("; ")));
    };
    for k in 0..ext.variable_count() {
        table("sigma", k, ext.sigma(k).images(), &mut out);
        if let Some(inverse) = ext.sigma(k).inverse_images() {
            table("sigma_inv", k, inverse, &mut out);
        }
        table("delta", k, ext.delta(k).images(), &mut out);
    }
    for (&(i, j), rel) in ext.cross_pairs() {
        let mut parts = vec![format!("d = {}", rel.d())];
        if !rel.r0().is_zero() {
            parts.push(format!("r0 = {}", rel.r0()));
        }
        for (l, rl) in rel.r().iter().enumerate() {
            if !rl.is_zero() {
                parts.push(format!("r{} = {}", l + 1, rl));
            }
        }
        out.push_str(&format!(
            "cross {} {}: {}\n",
            j + 1,
            i + 1,
            parts.join(", ")
        ));
    }
    out
}

/// Convenience wrapper turning parse diagnostics into the crate error type.
pub fn parse_or_error(text: &str) -> Result<PresentationFile, Error> {
    parse(text).map_err(Error::Parse)
}

#[cfg(test)]
mod tests {
    use super::*;

    const JORDAN_EXT: &str = "\
# the Jordan plane and its extension
ring jordan
gens t1 t2
rel t2*t1 -> t1*t2 + t1^2

extension jordan-ext over jordan
vars x1
sigma 1: t1 -> t1; t2 -> 2*t1 + t2
sigma_inv 1: t1 -> t1; t2 -> t2 - 2*t1
delta 1: t1 -> 0; t2 -> 0
";

    #[test]
    fn parse_jordan_extension() {
        let file = parse(JORDAN_EXT).unwrap();
        assert_eq!(file.ring.name(), "jordan");
        assert_eq!(file.ring.generator_count(), 2);
        assert_eq!(file.ring.rules().len(), 1);
        let ext = file.extension.unwrap();
        assert_eq!(ext.variables(), ["x1"]);
        assert!(ext.bijectivity().is_verified());
        assert!(ext.check_sigma_filtered().verdict);
    }

    #[test]
    fn emit_round_trip() {
        let file = parse(JORDAN_EXT).unwrap();
        let ext = file.extension.unwrap();
        let emitted = emit_extension(&ext, None);
        let reparsed = parse(&emitted).unwrap();
        assert_eq!(reparsed.ring, file.ring);
        assert_eq!(reparsed.extension.unwrap(), ext);
    }

    #[test]
    fn incomplete_sigma_table_is_diagnosed() {
        let text = "\
ring jordan
gens t1 t2
rel t2*t1 -> t1*t2 + t1^2
extension e over jordan
vars x1
sigma 1: t1 -> t1
";
        let err = parse(text).unwrap_err();
        assert!(
            err.iter()
                .any(|d| d.message.contains("incomplete sigma table")),
            "got {err:?}"
        );
        assert_eq!(err[0].line, 6);
    }

    #[test]
    fn degree_increasing_rule_is_diagnosed() {
        let text = "\
ring bad
gens t1 t2
rel t1*t2 -> t2*t1*t1
";
        let err = parse(text).unwrap_err();
        assert!(
            err.iter().any(|d| d.message.contains("degree bound")),
            "got {err:?}"
        );
        assert_eq!(err[0].line, 3);
    }

    #[test]
    fn undeclared_identifier_is_diagnosed() {
        let text = "\
ring bad
gens t1
rel t1*t1 -> q*t1
";
        let err = parse(text).unwrap_err();
        assert!(err
            .iter()
            .any(|d| d.message.contains("undeclared identifier `q`")));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let text = "\
ring ok
gens t
rel t*t -> + *
";
        let err = parse(text).unwrap_err();
        assert_eq!(err[0].line, 3);
        assert!(err[0].column > 1);
    }

    #[test]
    fn parameters_substitute_into_expressions() {
        let text = "\
ring kt
gens t
param c1 = 2
param c2 = -1/2
extension e over kt
vars x
sigma 1: t -> c1*t + c2
delta 1: t -> t^2
";
        let file = parse(text).unwrap();
        let ext = file.extension.unwrap();
        assert_eq!(ext.sigma(0).image(0).to_string(), "2*t - 1/2");
    }

    #[test]
    fn options_are_read() {
        let text = "\
ring k
option degree = 12
option filtration = trivial
";
        let file = parse(text).unwrap();
        assert_eq!(file.options.degree, Some(12));
        assert_eq!(file.options.filtration, Some(FiltrationMode::Trivial));
    }

    #[test]
    fn element_evaluation_uses_commutation_rules() {
        let file = parse(
            "\
ring kt
gens t
extension weyl over kt
vars x
delta 1: t -> 1
",
        )
        .unwrap();
        let ext = file.extension.unwrap();
        let value = evaluate_element(&ext, "x*t^2").unwrap();
        assert_eq!(ext.display(&value).to_string(), "t^2*x + 2*t");
        let err = evaluate_element(&ext, "x*y").unwrap_err();
        assert!(err[0].message.contains("undeclared identifier `y`"));
    }

    #[test]
    fn empty_base_field_ring() {
        let file = parse(
            "\
ring K
extension usl2 over K
vars e f h
cross 2 1: d = 1, r3 = -1
cross 3 1: d = 1, r1 = 2
cross 3 2: d = 1, r2 = -2
",
        )
        .unwrap();
        assert_eq!(file.ring.generator_count(), 0);
        let ext = file.extension.unwrap();
        let e = ext.variable(0);
        let f = ext.variable(1);
        let fe = ext.mul(&f, &e).unwrap();
        assert_eq!(ext.display(&fe).to_string(), "e*f - h");
    }

    #[test]
    fn missing_cross_pair_is_diagnosed() {
        let err = parse(
            "\
ring K
extension broken over K
vars x y
",
        )
        .unwrap_err();
        assert!(err
            .iter()
            .any(|d| d.message.contains("missing cross relation")));
    }
}

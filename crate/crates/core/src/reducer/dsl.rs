//! Systems over (N, +, |2) and their text syntax.
//!
//! ```text
//! system := [ "vars" var { var } sep ] { stmt sep }
//! stmt   := var "=" var "+" var | var "|2" var | var "=" nat
//! sep    := ";" | newline
//! ```
//!
//! `#` starts a comment running to the end of the line. Without a `vars`
//! header, variables are declared in order of first appearance.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// An atom over variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NAtom {
    /// `sum = a + b`.
    SumEq { a: usize, b: usize, sum: usize },
    /// `b = 2^s a` for some `s`.
    Div2 { a: usize, b: usize },
    /// `a = k`.
    ConstEq { a: usize, k: u64 },
}

impl NAtom {
    pub fn variables(&self) -> Vec<usize> {
        match *self {
            NAtom::SumEq { a, b, sum } => alloc::vec![a, b, sum],
            NAtom::Div2 { a, b } => alloc::vec![a, b],
            NAtom::ConstEq { a, .. } => alloc::vec![a],
        }
    }
}

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NSystem {
    pub variables: Vec<String>,
    pub atoms: Vec<NAtom>,
    /// Source position of each atom; empty for systems built in code.
    pub spans: Vec<Span>,
}

impl NSystem {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Checks that every referenced index is declared.
    pub fn validate(&self) -> Result<(), DslError> {
        let n = self.variables.len();
        for (i, atom) in self.atoms.iter().enumerate() {
            if let Some(bad) = atom.variables().into_iter().find(|&v| v >= n) {
                let span = self.spans.get(i).copied().unwrap_or_default();
                return Err(DslError::new(span, DslErrorKind::Undeclared(format!("#{bad}"))));
            }
        }
        Ok(())
    }

    /// Whether `values` satisfies atom `i`.
    pub fn atom_holds(&self, i: usize, values: &[u64]) -> bool {
        atom_holds(&self.atoms[i], values)
    }

    pub fn atom_to_string(&self, atom: &NAtom) -> String {
        let v = |i: usize| self.variables[i].as_str();
        match *atom {
            NAtom::SumEq { a, b, sum } => format!("{} = {} + {}", v(sum), v(a), v(b)),
            NAtom::Div2 { a, b } => format!("{} |2 {}", v(a), v(b)),
            NAtom::ConstEq { a, k } => format!("{} = {}", v(a), k),
        }
    }
}

impl fmt::Display for NSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.variables.join(" "))?;
        for atom in &self.atoms {
            writeln!(f, "{}", self.atom_to_string(atom))?;
        }
        Ok(())
    }
}

/// `Some(s)` with `b = 2^s a`; `0 |2 0` holds with `s = 0`.
pub fn div2_witness(a: u64, b: u64) -> Option<u32> {
    if a == 0 {
        return (b == 0).then_some(0);
    }
    if b % a != 0 {
        return None;
    }
    let q = b / a;
    q.is_power_of_two().then(|| q.trailing_zeros())
}

pub fn atom_holds(atom: &NAtom, values: &[u64]) -> bool {
    match *atom {
        NAtom::SumEq { a, b, sum } => values[a].checked_add(values[b]) == Some(values[sum]),
        NAtom::Div2 { a, b } => div2_witness(values[a], values[b]).is_some(),
        NAtom::ConstEq { a, k } => values[a] == k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax(String),
    Undeclared(String),
    Redeclared(String),
    NegativeLiteral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub span: Span,
    pub kind: DslErrorKind,
}

impl DslError {
    fn new(span: Span, kind: DslErrorKind) -> Self {
        Self { span, kind }
    }

    fn syntax(span: Span, msg: impl Into<String>) -> Self {
        Self::new(span, DslErrorKind::Syntax(msg.into()))
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DslErrorKind::Syntax(m) => write!(f, "{}: syntax error: {m}", self.span),
            DslErrorKind::Undeclared(v) => write!(f, "{}: undeclared variable '{v}'", self.span),
            DslErrorKind::Redeclared(v) => write!(f, "{}: variable '{v}' declared twice", self.span),
            DslErrorKind::NegativeLiteral => write!(f, "{}: negative literal", self.span),
        }
    }
}

impl core::error::Error for DslError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Eq,
    Plus,
    Minus,
    Div2,
    Sep,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Nat(n) => write!(f, "'{n}'"),
            Tok::Eq => write!(f, "'='"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Div2 => write!(f, "'|2'"),
            Tok::Sep => write!(f, "end of statement"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let span = |i: usize| Span { line: ln + 1, column: i + 1 };
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                ';' => {
                    out.push((Tok::Sep, span(i)));
                    i += 1;
                }
                '=' => {
                    out.push((Tok::Eq, span(i)));
                    i += 1;
                }
                '+' => {
                    out.push((Tok::Plus, span(i)));
                    i += 1;
                }
                '-' => {
                    out.push((Tok::Minus, span(i)));
                    i += 1;
                }
                '|' => {
                    if chars.get(i + 1) != Some(&'2') {
                        return Err(DslError::syntax(span(i), "expected '|2'"));
                    }
                    out.push((Tok::Div2, span(i)));
                    i += 2;
                }
                c if c.is_ascii_digit() => {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s.parse().map_err(|_| DslError::syntax(span(start), "literal too large"))?;
                    out.push((Tok::Nat(n), span(start)));
                }
                c if c.is_ascii_alphabetic() => {
                    while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    out.push((Tok::Ident(chars[start..i].iter().collect()), span(start)));
                }
                c => return Err(DslError::syntax(span(i), format!("unexpected character '{c}'"))),
            }
        }
        out.push((Tok::Sep, span(chars.len())));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    explicit: bool,
    sys: NSystem,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |(_, s)| *s)
    }

    fn skip_seps(&mut self) {
        while self.peek() == Some(&Tok::Sep) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(DslError::syntax(self.span(), format!("expected {what}, found {t}"))),
            None => Err(DslError::syntax(self.span(), format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Span), DslError> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s, span))
            }
            Some(t) => Err(DslError::syntax(span, format!("expected a variable, found {t}"))),
            None => Err(DslError::syntax(span, "expected a variable")),
        }
    }

    fn var(&mut self) -> Result<usize, DslError> {
        let (name, span) = self.ident()?;
        if let Some(i) = self.sys.var_index(&name) {
            return Ok(i);
        }
        if self.explicit {
            return Err(DslError::new(span, DslErrorKind::Undeclared(name)));
        }
        self.sys.variables.push(name);
        Ok(self.sys.variables.len() - 1)
    }

    fn header(&mut self) -> Result<(), DslError> {
        let is_header = matches!(self.peek(), Some(Tok::Ident(s)) if s == "vars")
            && matches!(self.toks.get(self.pos + 1), Some((Tok::Ident(_), _)));
        if !is_header {
            return Ok(());
        }
        self.pos += 1;
        self.explicit = true;
        while let Some(Tok::Ident(_)) = self.peek() {
            let (name, span) = self.ident()?;
            if self.sys.var_index(&name).is_some() {
                return Err(DslError::new(span, DslErrorKind::Redeclared(name)));
            }
            self.sys.variables.push(name);
        }
        self.expect(Tok::Sep, "';' or newline after the variable list")
    }

    fn stmt(&mut self) -> Result<(), DslError> {
        let span = self.span();
        let first = self.var()?;
        let atom = match self.peek() {
            Some(Tok::Div2) => {
                self.pos += 1;
                NAtom::Div2 { a: first, b: self.var()? }
            }
            Some(Tok::Eq) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Nat(k)) => {
                        self.pos += 1;
                        NAtom::ConstEq { a: first, k }
                    }
                    Some(Tok::Minus) => {
                        return Err(DslError::new(self.span(), DslErrorKind::NegativeLiteral));
                    }
                    _ => {
                        let a = self.var()?;
                        self.expect(Tok::Plus, "'+'")?;
                        let b = self.var()?;
                        NAtom::SumEq { a, b, sum: first }
                    }
                }
            }
            Some(t) => {
                let t = t.to_string();
                return Err(DslError::syntax(self.span(), format!("expected '=' or '|2', found {t}")));
            }
            None => return Err(DslError::syntax(self.span(), "expected '=' or '|2'")),
        };
        self.sys.atoms.push(atom);
        self.sys.spans.push(span);
        match self.peek() {
            None | Some(Tok::Sep) => Ok(()),
            Some(t) => {
                let t = t.to_string();
                Err(DslError::syntax(self.span(), format!("expected end of statement, found {t}")))
            }
        }
    }
}

/// Parses a system; deterministic, with positions in every error.
pub fn parse_nsystem(text: &str) -> Result<NSystem, DslError> {
    let toks = lex(text)?;
    let end = toks.last().map_or(Span { line: 1, column: 1 }, |(_, s)| *s);
    let mut p = Parser { toks, pos: 0, explicit: false, sys: NSystem::default(), end };
    p.skip_seps();
    p.header()?;
    loop {
        p.skip_seps();
        if p.peek().is_none() {
            return Ok(p.sys);
        }
        p.stmt()?;
    }
}

//! The line-based algebra file format.
//!
//! ```text
//! # comment
//! algebra notP
//! vars x y z          # a `*` suffix marks an invertible variable
//! bracket x y = x*y*z
//! bracket x z = x
//! ```
//!
//! Unlisted brackets are zero; each unordered pair may appear once.

use std::fmt::Write as _;
use std::sync::Arc;

use semicentre::parse::parse_polynomial;
use semicentre::signature::is_identifier;
use semicentre::{PoissonAlgebra, Polynomial, Signature};

#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub name: String,
    pub signature: Arc<Signature>,
    /// `(i, j, {x_i, x_j})` in file order.
    pub brackets: Vec<(usize, usize, Polynomial)>,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut name = None;
        let mut signature: Option<Arc<Signature>> = None;
        let mut brackets: Vec<(usize, usize, Polynomial)> = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "algebra" => {
                    if name.is_some() {
                        return Err(err(line_no, "duplicate `algebra` header"));
                    }
                    if !is_identifier(rest) {
                        return Err(err(line_no, format!("invalid algebra name `{rest}`")));
                    }
                    name = Some(rest.to_string());
                }
                "vars" => {
                    if name.is_none() {
                        return Err(err(line_no, "`vars` before the `algebra` header"));
                    }
                    if signature.is_some() {
                        return Err(err(line_no, "duplicate `vars` line"));
                    }
                    let vars = rest.split_whitespace().map(|v| match v.strip_suffix('*') {
                        Some(base) => (base, true),
                        None => (v, false),
                    });
                    signature = Some(Signature::new(vars).map_err(|e| err(line_no, e.to_string()))?);
                }
                "bracket" => {
                    let Some(sig) = &signature else {
                        return Err(err(line_no, "`bracket` before the `vars` line"));
                    };
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| err(line_no, "expected `bracket <var> <var> = <expr>`"))?;
                    let pair: Vec<&str> = lhs.split_whitespace().collect();
                    let [a, b] = pair[..] else {
                        return Err(err(line_no, "expected exactly two variables before `=`"));
                    };
                    let index = |v: &str| sig.index_of(v).ok_or_else(|| err(line_no, format!("unknown variable `{v}`")));
                    let (i, j) = (index(a)?, index(b)?);
                    if i == j {
                        return Err(err(line_no, format!("bracket of `{a}` with itself")));
                    }
                    if brackets.iter().any(|&(p, q, _)| (p, q) == (i, j) || (p, q) == (j, i)) {
                        return Err(err(line_no, format!("bracket {{{a}, {b}}} given twice")));
                    }
                    let value = parse_polynomial(rhs.trim(), sig).map_err(|e| err(line_no, e.to_string()))?;
                    brackets.push((i, j, value));
                }
                other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| err(last_line.max(1), "missing `algebra` header"))?;
        let signature = signature.ok_or_else(|| err(last_line.max(1), "missing `vars` line"))?;
        Ok(AlgebraFile {
            name,
            signature,
            brackets,
        })
    }

    /// Canonical text: header, vars, then the nonzero brackets as listed.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "algebra {}", self.name).unwrap();
        writeln!(out, "vars {}", self.signature).unwrap();
        for (i, j, p) in &self.brackets {
            if p.is_zero() {
                continue;
            }
            writeln!(out, "bracket {} {} = {}", self.signature.name(*i), self.signature.name(*j), p).unwrap();
        }
        out
    }

    /// The bracket matrix; Jacobi is not checked here.
    pub fn algebra(&self) -> PoissonAlgebra {
        PoissonAlgebra::new(&self.signature, self.brackets.iter().cloned()).expect("pairs were validated while parsing")
    }
}

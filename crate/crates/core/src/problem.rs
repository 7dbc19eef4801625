//! Line-oriented problem files.
//!
//! ```text
//! # Example: u_t = (x^2/2) u_xx
//! kind: heat
//! vars: x
//! L: (1/2)*x^2*D(x,2)
//! f: 0
//! u0: x^2
//! order: 12
//! ```
//!
//! Keys are `kind`, `vars`, `L`, `f`, `u0`, `u1` (wave only) and `order`.
//! `f` defaults to `0` and `order` to 12. Blank lines and `#` comments are
//! ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::parse::{self, ParseError};
use crate::poly::{PolyError, VariableSet};
use crate::series::{HeatProblem, Kind, Problem, WaveProblem, DEFAULT_ORDER};

pub const MIN_FILE_ORDER: usize = 4;
pub const MAX_FILE_ORDER: usize = 64;

const KEYS: &[&str] = &["kind", "vars", "L", "f", "u0", "u1", "order"];

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key: value`")]
    NotKeyValue { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { key: String, line: usize },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: invalid {key}: {message}")]
    Malformed {
        key: &'static str,
        line: usize,
        message: String,
    },
    #[error("line {line}: in {key}: {source}")]
    Expression {
        key: &'static str,
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Inconsistent(String),
}

/// A problem as written in a file: expression texts plus metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub kind: Kind,
    pub vars: VariableSet,
    pub operator: String,
    pub source: String,
    pub u0: String,
    pub u1: Option<String>,
    pub order: usize,
    lines: BTreeMap<&'static str, usize>,
}

impl ProblemSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses and validates, including every expression.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut values: BTreeMap<&'static str, (String, usize)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or(SpecError::NotKeyValue { line })?;
            let key = key.trim();
            let key: &'static str =
                KEYS.iter()
                    .find(|k| **k == key)
                    .ok_or_else(|| SpecError::UnknownKey {
                        key: key.to_string(),
                        line,
                    })?;
            if values.contains_key(key) {
                return Err(SpecError::DuplicateKey {
                    key: key.to_string(),
                    line,
                });
            }
            values.insert(key, (value.trim().to_string(), line));
        }

        let take = |key: &'static str| values.get(key).cloned().ok_or(SpecError::MissingKey(key));
        let (kind_text, kind_line) = take("kind")?;
        let kind = match kind_text.as_str() {
            "heat" => Kind::Heat,
            "wave" => Kind::Wave,
            other => {
                return Err(SpecError::Malformed {
                    key: "kind",
                    line: kind_line,
                    message: format!("`{other}` is neither heat nor wave"),
                })
            }
        };
        let (vars_text, vars_line) = take("vars")?;
        let names: Vec<&str> = vars_text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let vars = VariableSet::new(names).map_err(|e| SpecError::Malformed {
            key: "vars",
            line: vars_line,
            message: e.to_string(),
        })?;
        let (operator, _) = take("L")?;
        let (u0, _) = take("u0")?;
        let source = values
            .get("f")
            .map_or_else(|| "0".to_string(), |v| v.0.clone());
        let u1 = values.get("u1").map(|v| v.0.clone());
        match (kind, &u1) {
            (Kind::Wave, None) => return Err(SpecError::MissingKey("u1")),
            (Kind::Heat, Some(_)) => {
                return Err(SpecError::Malformed {
                    key: "u1",
                    line: values["u1"].1,
                    message: "heat problems take only u0".into(),
                })
            }
            _ => {}
        }
        let order = match values.get("order") {
            None => DEFAULT_ORDER,
            Some((text, line)) => {
                let n: usize = text.parse().map_err(|_| SpecError::Malformed {
                    key: "order",
                    line: *line,
                    message: format!("`{text}` is not a non-negative integer"),
                })?;
                if !(MIN_FILE_ORDER..=MAX_FILE_ORDER).contains(&n) {
                    return Err(SpecError::Malformed {
                        key: "order",
                        line: *line,
                        message: format!("{n} is outside [{MIN_FILE_ORDER}, {MAX_FILE_ORDER}]"),
                    });
                }
                n
            }
        };
        let spec = ProblemSpec {
            kind,
            vars,
            operator,
            source,
            u0,
            u1,
            order,
            lines: values.iter().map(|(k, (_, l))| (*k, *l)).collect(),
        };
        spec.build()?;
        Ok(spec)
    }

    fn line(&self, key: &'static str) -> usize {
        self.lines.get(key).copied().unwrap_or(0)
    }

    fn expr_err(&self, key: &'static str) -> impl Fn(ParseError) -> SpecError + '_ {
        move |source| SpecError::Expression {
            key,
            line: self.line(key),
            source,
        }
    }

    pub fn build(&self) -> Result<Problem, SpecError> {
        let op = parse::parse_operator(&self.operator, &self.vars).map_err(self.expr_err("L"))?;
        let f = parse::parse_poly(&self.source, &self.vars).map_err(self.expr_err("f"))?;
        let u0 = parse::parse_poly(&self.u0, &self.vars).map_err(self.expr_err("u0"))?;
        let inconsistent = |e: PolyError| SpecError::Inconsistent(e.to_string());
        Ok(match self.kind {
            Kind::Heat => Problem::Heat(HeatProblem::new(op, f, u0).map_err(inconsistent)?),
            Kind::Wave => {
                let text = self.u1.as_deref().ok_or(SpecError::MissingKey("u1"))?;
                let u1 = parse::parse_poly(text, &self.vars).map_err(self.expr_err("u1"))?;
                Problem::Wave(WaveProblem::new(op, f, u0, u1).map_err(inconsistent)?)
            }
        })
    }

    /// Canonical file text; parses back to an equal spec (line numbers aside).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind: {}", self.kind);
        let _ = writeln!(out, "vars: {}", self.vars);
        let _ = writeln!(out, "L: {}", self.operator);
        let _ = writeln!(out, "f: {}", self.source);
        let _ = writeln!(out, "u0: {}", self.u0);
        if let Some(u1) = &self.u1 {
            let _ = writeln!(out, "u1: {u1}");
        }
        let _ = writeln!(out, "order: {}", self.order);
        out
    }
}

//! Expression grammar shared by problem files and closed-form rendering.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := INT ('/' INT)? | IDENT | IDENT '(' args ')' | '(' expr ')'
//! ```
//!
//! `a/b` is only legal between two integer literals. Calls are `D(var, k)`
//! in operators and `exp(...)`, `sinh(...)`, `cosh(...)` of a rational
//! multiple of `t` in closed forms. Multiplication is always explicit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::closedform::ClosedForm;
use crate::diffop::{DerivIndex, DiffOp, DiffOpTerm};
use crate::poly::{PolyError, Polynomial, VariableSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("exponent must be a non-negative integer literal")]
    BadExponent,
    #[error("division is only allowed between integer literals, as in 1/2")]
    Division,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("`t` may only appear inside exp(), sinh() or cosh()")]
    BareTime,
    #[error("`{0}` is not allowed here")]
    NotAllowed(String),
    #[error("function argument must be a rational multiple of t")]
    BadRate,
    #[error("derivative order must be at least 1")]
    BadOrder,
    #[error("operator term has no D(var, order) factor")]
    MissingDerivative,
    #[error("D(...) must be a top-level factor of an operator term")]
    NestedDerivative,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
        }
    }
}

fn err(column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { column, kind }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(err(col, ParseErrorKind::UnexpectedChar(other))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(Rational),
    Var(String),
    Time,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Deriv {
        var: String,
        var_col: usize,
        order: u32,
    },
    Func {
        name: String,
        arg: Box<Expr>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Expr {
    node: Node,
    col: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let toks = lex(text)?;
        if toks.is_empty() {
            return Err(err(1, ParseErrorKind::Empty));
        }
        Ok(Self {
            toks,
            pos: 0,
            end_col: text.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".to_string(), Tok::to_string)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<usize, ParseError> {
        if self.peek() == Some(&want) {
            Ok(self.bump().expect("peeked").1)
        } else {
            Err(err(
                self.col(),
                ParseErrorKind::Unexpected {
                    expected,
                    found: self.found(),
                },
            ))
        }
    }

    fn parse_all(mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        if self.pos < self.toks.len() {
            let kind = match self.peek() {
                Some(Tok::Slash) => ParseErrorKind::Division,
                Some(Tok::RParen) => ParseErrorKind::Unexpected {
                    expected: "end of input (unbalanced `)`)",
                    found: self.found(),
                },
                _ => ParseErrorKind::Unexpected {
                    expected: "an operator",
                    found: self.found(),
                },
            };
            return Err(err(self.col(), kind));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let col = self.col();
            let node = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    Node::Add(Box::new(lhs), Box::new(self.term()?))
                }
                Some(Tok::Minus) => {
                    self.bump();
                    Node::Sub(Box::new(lhs), Box::new(self.term()?))
                }
                _ => return Ok(lhs),
            };
            lhs = Expr { node, col };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            let col = self.col();
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr {
                node: Node::Mul(Box::new(lhs), Box::new(rhs)),
                col,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            let col = self.col();
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr {
                node: Node::Neg(Box::new(inner)),
                col,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        self.bump();
        let exp_col = self.col();
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                let e = u32::try_from(&n).map_err(|_| err(exp_col, ParseErrorKind::BadExponent))?;
                Ok(Expr {
                    node: Node::Pow(Box::new(base), e),
                    col,
                })
            }
            _ => Err(err(exp_col, ParseErrorKind::BadExponent)),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Expr {
                        node: Node::Num(Rational::from_integer(n)),
                        col,
                    });
                }
                self.bump();
                let den_col = self.col();
                match self.bump() {
                    Some((Tok::Int(d), _)) if d.is_zero() => {
                        Err(err(den_col, ParseErrorKind::ZeroDenominator))
                    }
                    Some((Tok::Int(d), _)) => Ok(Expr {
                        node: Node::Num(Rational::new(n, d)),
                        col,
                    }),
                    _ => Err(err(den_col, ParseErrorKind::Division)),
                }
            }
            Some((Tok::Ident(name), _)) => {
                if self.peek() == Some(&Tok::LParen) {
                    return self.call(name, col);
                }
                let node = if name == "t" {
                    Node::Time
                } else {
                    Node::Var(name)
                };
                Ok(Expr { node, col })
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((tok, _)) => Err(err(
                col,
                ParseErrorKind::Unexpected {
                    expected: "a number, variable or `(`",
                    found: tok.to_string(),
                },
            )),
            None => Err(err(
                col,
                ParseErrorKind::Unexpected {
                    expected: "a number, variable or `(`",
                    found: "end of input".into(),
                },
            )),
        }
    }

    fn call(&mut self, name: String, col: usize) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        match name.as_str() {
            "D" => {
                let var_col = self.col();
                let var = match self.bump() {
                    Some((Tok::Ident(v), _)) => v,
                    _ => {
                        return Err(err(
                            var_col,
                            ParseErrorKind::Unexpected {
                                expected: "a variable name",
                                found: self
                                    .toks
                                    .get(self.pos - 1)
                                    .map_or("end of input".into(), |t| t.0.to_string()),
                            },
                        ))
                    }
                };
                self.expect(Tok::Comma, "`,`")?;
                let order_col = self.col();
                let order = match self.bump() {
                    Some((Tok::Int(k), _)) => u32::try_from(&k).ok().filter(|&k| k >= 1),
                    Some((Tok::Minus, _)) => None,
                    _ => {
                        return Err(err(
                            order_col,
                            ParseErrorKind::Unexpected {
                                expected: "an integer order",
                                found: self
                                    .toks
                                    .get(self.pos - 1)
                                    .map_or("end of input".into(), |t| t.0.to_string()),
                            },
                        ))
                    }
                }
                .ok_or_else(|| err(order_col, ParseErrorKind::BadOrder))?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr {
                    node: Node::Deriv {
                        var,
                        var_col,
                        order,
                    },
                    col,
                })
            }
            "exp" | "sinh" | "cosh" => {
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr {
                    node: Node::Func {
                        name,
                        arg: Box::new(arg),
                    },
                    col,
                })
            }
            _ => Err(err(col, ParseErrorKind::UnknownFunction(name))),
        }
    }
}

/// Value domain for evaluation: closed forms, which contain polynomials as
/// the rate-0 part.
struct Eval<'a> {
    vars: &'a VariableSet,
    allow_time: bool,
}

impl Eval<'_> {
    fn eval(&self, e: &Expr) -> Result<ClosedForm, ParseError> {
        let at = |k: PolyError| err(e.col, ParseErrorKind::Poly(k));
        match &e.node {
            Node::Num(r) => Ok(ClosedForm::exp_term(
                Rational::zero(),
                Polynomial::constant(self.vars, r.clone()),
            )),
            Node::Var(name) => {
                if self.vars.index_of(name).is_none() {
                    return Err(err(e.col, ParseErrorKind::UnknownVariable(name.clone())));
                }
                let p = Polynomial::var(self.vars, name).map_err(at)?;
                Ok(ClosedForm::exp_term(Rational::zero(), p))
            }
            Node::Time => Err(err(e.col, ParseErrorKind::BareTime)),
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?).map_err(at),
            Node::Sub(a, b) => self.eval(a)?.add(&self.eval(b)?.neg()).map_err(at),
            Node::Neg(a) => Ok(self.eval(a)?.neg()),
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?).map_err(at),
            Node::Pow(a, n) => {
                let base = self.eval(a)?;
                let mut acc = ClosedForm::exp_term(
                    Rational::zero(),
                    Polynomial::constant(self.vars, Rational::one()),
                );
                for _ in 0..*n {
                    acc = acc.mul(&base).map_err(at)?;
                }
                Ok(acc)
            }
            Node::Deriv { .. } => Err(err(e.col, ParseErrorKind::NotAllowed("D(...)".into()))),
            Node::Func { name, arg } => {
                if !self.allow_time {
                    return Err(err(
                        e.col,
                        ParseErrorKind::NotAllowed(format!("{name}(...)")),
                    ));
                }
                let rate = rate_of(arg)?;
                let one = Polynomial::constant(self.vars, Rational::one());
                let half = Rational::new(1.into(), 2.into());
                let up = ClosedForm::exp_term(rate.clone(), one.scale(&half));
                let down = ClosedForm::exp_term(-rate.clone(), one.scale(&half));
                let cf = match name.as_str() {
                    "exp" => ClosedForm::exp_term(rate, one),
                    "cosh" => up.add(&down).map_err(at)?,
                    _ => up.add(&down.neg()).map_err(at)?,
                };
                Ok(cf)
            }
        }
    }
}

/// Evaluates an argument as `c·t`, returning `c`.
fn rate_of(e: &Expr) -> Result<Rational, ParseError> {
    // (coefficient of t, constant)
    fn lin(e: &Expr) -> Result<(Rational, Rational), ParseError> {
        let bad = || err(e.col, ParseErrorKind::BadRate);
        Ok(match &e.node {
            Node::Num(r) => (Rational::zero(), r.clone()),
            Node::Time => (Rational::one(), Rational::zero()),
            Node::Add(a, b) => {
                let (x, y) = (lin(a)?, lin(b)?);
                (x.0 + y.0, x.1 + y.1)
            }
            Node::Sub(a, b) => {
                let (x, y) = (lin(a)?, lin(b)?);
                (x.0 - y.0, x.1 - y.1)
            }
            Node::Neg(a) => {
                let x = lin(a)?;
                (-x.0, -x.1)
            }
            Node::Mul(a, b) => {
                let (x, y) = (lin(a)?, lin(b)?);
                if !x.0.is_zero() && !y.0.is_zero() {
                    return Err(bad());
                }
                (&x.0 * &y.1 + &y.0 * &x.1, x.1 * y.1)
            }
            Node::Pow(a, n) => {
                let x = lin(a)?;
                if *n == 0 {
                    (Rational::zero(), Rational::one())
                } else if *n == 1 {
                    x
                } else if x.0.is_zero() {
                    (Rational::zero(), crate::rational::pow(&x.1, *n as usize))
                } else {
                    return Err(bad());
                }
            }
            _ => return Err(bad()),
        })
    }
    let (rate, constant) = lin(e)?;
    if !constant.is_zero() {
        return Err(err(e.col, ParseErrorKind::BadRate));
    }
    Ok(rate)
}

fn first_col(e: &Expr) -> usize {
    match &e.node {
        Node::Add(a, _) | Node::Sub(a, _) | Node::Mul(a, _) | Node::Pow(a, _) => {
            first_col(a).min(e.col)
        }
        _ => e.col,
    }
}

/// Parses a polynomial in `vars`.
pub fn parse_poly(text: &str, vars: &VariableSet) -> Result<Polynomial, ParseError> {
    let e = Parser::new(text)?.parse_all()?;
    let cf = Eval {
        vars,
        allow_time: false,
    }
    .eval(&e)?;
    Ok(cf.spatial(&Rational::zero()))
}

/// Parses a function of `t` built from `exp`, `sinh`, `cosh`, e.g.
/// `x + x^2*sinh(t)`.
pub fn parse_closed_form(text: &str, vars: &VariableSet) -> Result<ClosedForm, ParseError> {
    let e = Parser::new(text)?.parse_all()?;
    Eval {
        vars,
        allow_time: true,
    }
    .eval(&e)
}

/// Parses `coef*D(var,k) + …`. Several `D` factors in one term form a mixed
/// partial. Terms that vanish identically, such as a bare `0`, are allowed.
pub fn parse_operator(text: &str, vars: &VariableSet) -> Result<DiffOp, ParseError> {
    let e = Parser::new(text)?.parse_all()?;
    let mut summands = Vec::new();
    collect_summands(&e, false, &mut summands);
    let mut op = DiffOp::zero(vars);
    let eval = Eval {
        vars,
        allow_time: false,
    };
    for (negated, term) in summands {
        let mut factors = Vec::new();
        collect_factors(term, &mut factors);
        let mut orders = vec![0u32; vars.len()];
        let mut coefficient = Polynomial::constant(
            vars,
            if negated {
                -Rational::one()
            } else {
                Rational::one()
            },
        );
        let mut has_deriv = false;
        for f in factors {
            if let Node::Deriv {
                var,
                var_col,
                order,
            } = &f.node
            {
                let idx = vars
                    .index_of(var)
                    .ok_or_else(|| err(*var_col, ParseErrorKind::UnknownVariable(var.clone())))?;
                orders[idx] += order;
                has_deriv = true;
            } else {
                if let Some(col) = find_deriv(f) {
                    return Err(err(col, ParseErrorKind::NestedDerivative));
                }
                let value = eval.eval(f)?.spatial(&Rational::zero());
                coefficient = coefficient
                    .mul(&value)
                    .map_err(|k| err(f.col, ParseErrorKind::Poly(k)))?;
            }
        }
        if !has_deriv && !coefficient.is_zero() {
            return Err(err(first_col(term), ParseErrorKind::MissingDerivative));
        }
        if let Some(t) = DiffOpTerm::new(coefficient, DerivIndex::new(orders)) {
            let single = DiffOp::new(vars, vec![t])
                .map_err(|k| err(first_col(term), ParseErrorKind::Poly(k)))?;
            op = op
                .sum(&single)
                .map_err(|k| err(first_col(term), ParseErrorKind::Poly(k)))?;
        }
    }
    Ok(op)
}

fn collect_summands<'a>(e: &'a Expr, negated: bool, out: &mut Vec<(bool, &'a Expr)>) {
    match &e.node {
        Node::Add(a, b) => {
            collect_summands(a, negated, out);
            collect_summands(b, negated, out);
        }
        Node::Sub(a, b) => {
            collect_summands(a, negated, out);
            collect_summands(b, !negated, out);
        }
        Node::Neg(a) => collect_summands(a, !negated, out),
        _ => out.push((negated, e)),
    }
}

fn collect_factors<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match &e.node {
        Node::Mul(a, b) => {
            collect_factors(a, out);
            collect_factors(b, out);
        }
        _ => out.push(e),
    }
}

fn find_deriv(e: &Expr) -> Option<usize> {
    match &e.node {
        Node::Deriv { .. } => Some(e.col),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => {
            find_deriv(a).or_else(|| find_deriv(b))
        }
        Node::Neg(a) | Node::Pow(a, _) => find_deriv(a),
        Node::Func { arg, .. } => find_deriv(arg),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{int, ratio};

    fn vars(names: &[&str]) -> VariableSet {
        VariableSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn simple_polynomials() {
        let v = vars(&["x"]);
        assert_eq!(
            parse_poly("x^2", &v).unwrap(),
            Polynomial::monomial(&v, Monomial::new(vec![2]), int(1))
        );
        let v3 = vars(&["x", "y", "z"]);
        assert_eq!(
            parse_poly("x^4*y^4*z^4", &v3).unwrap().to_string(),
            "x^4*y^4*z^4"
        );
        assert_eq!(
            parse_poly("x^2 + y^2 - z^2", &v3).unwrap().to_string(),
            "x^2+y^2-z^2"
        );
        assert_eq!(
            parse_poly("-(1/2)*x*2 + 3/6", &v3).unwrap().to_string(),
            "-x+1/2"
        );
        assert_eq!(parse_poly("0", &v3).unwrap(), Polynomial::zero(&v3));
        assert_eq!(parse_poly("(x+1)^2", &v).unwrap().to_string(), "x^2+2*x+1");
        assert_eq!(parse_poly("--x", &v).unwrap().to_string(), "x");
    }

    #[test]
    fn operators() {
        let v = vars(&["x"]);
        let l = parse_operator("(1/2)*x^2*D(x,2)", &v).unwrap();
        assert_eq!(l.terms().len(), 1);
        assert_eq!(l.terms()[0].coefficient().to_string(), "1/2*x^2");
        assert_eq!(l.terms()[0].deriv().orders(), &[2]);

        let v3 = vars(&["x", "y", "z"]);
        let l3 = parse_operator(
            "(1/36)*x^2*D(x,2) + (1/36)*y^2*D(y,2) + (1/36)*z^2*D(z,2)",
            &v3,
        )
        .unwrap();
        assert_eq!(l3.terms().len(), 3);
        let f = parse_poly("x^4*y^4*z^4", &v3).unwrap();
        assert_eq!(l3.apply(&f).unwrap(), f);

        let mixed = parse_operator("D(x,1)*D(y,1) - y*D(x,2)", &vars(&["x", "y"])).unwrap();
        assert_eq!(mixed.terms()[0].deriv().orders(), &[2, 0]);
        assert_eq!(mixed.terms()[0].coefficient().to_string(), "-y");
        assert_eq!(mixed.terms()[1].deriv().orders(), &[1, 1]);
        assert!(parse_operator("0", &v).unwrap().is_zero());
        assert!(parse_operator("0*x + D(x,1) - D(x,1)", &v)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn closed_forms() {
        let v = vars(&["x"]);
        let cf = parse_closed_form("x + x^2*sinh(t)", &v).unwrap();
        assert_eq!(cf.rates(), vec![int(0), int(1), int(-1)]);
        assert_eq!(cf.spatial(&int(1)).to_string(), "1/2*x^2");
        assert_eq!(cf.render_hyperbolic(), "x + x^2*sinh(t)");
        let e = parse_closed_form("exp(-t/2)", &v);
        assert!(e.is_err(), "division by t is not a literal rational");
        let e = parse_closed_form("exp(-1/2*t)*exp(t)", &v).unwrap();
        assert_eq!(e.rates(), vec![ratio(1, 2)]);
        assert_eq!(
            parse_closed_form("cosh(0)", &v).unwrap().rates(),
            vec![int(0)]
        );
    }

    fn column_of<T: std::fmt::Debug>(r: Result<T, ParseError>) -> (usize, ParseErrorKind) {
        let e = r.unwrap_err();
        (e.column, e.kind)
    }

    #[test]
    fn rejections_carry_positions() {
        let v = vars(&["x", "y"]);
        assert_eq!(column_of(parse_poly("(x+1", &v)).0, 5);
        assert_eq!(column_of(parse_poly("x+1)", &v)).0, 4);
        assert_eq!(
            column_of(parse_poly("x^-1", &v)),
            (3, ParseErrorKind::BadExponent)
        );
        assert_eq!(
            column_of(parse_poly("x + w", &v)),
            (5, ParseErrorKind::UnknownVariable("w".into()))
        );
        assert_eq!(
            column_of(parse_poly("x/2", &v)),
            (2, ParseErrorKind::Division)
        );
        assert_eq!(
            column_of(parse_poly("2/x", &v)),
            (3, ParseErrorKind::Division)
        );
        assert_eq!(
            column_of(parse_poly("1/0", &v)),
            (3, ParseErrorKind::ZeroDenominator)
        );
        assert_eq!(column_of(parse_poly("2 x", &v)).0, 3);
        assert_eq!(column_of(parse_poly("", &v)), (1, ParseErrorKind::Empty));
        assert_eq!(
            column_of(parse_poly("x*t", &v)),
            (3, ParseErrorKind::BareTime)
        );
        assert_eq!(
            column_of(parse_poly("x ? y", &v)),
            (3, ParseErrorKind::UnexpectedChar('?'))
        );
        assert_eq!(
            column_of(parse_operator("x^2", &v)),
            (1, ParseErrorKind::MissingDerivative)
        );
        assert_eq!(
            column_of(parse_operator("D(x,0)", &v)),
            (5, ParseErrorKind::BadOrder)
        );
        assert_eq!(
            column_of(parse_operator("D(z,2)", &v)),
            (3, ParseErrorKind::UnknownVariable("z".into()))
        );
        assert_eq!(
            column_of(parse_operator("(x*D(x,2))^2", &v)),
            (4, ParseErrorKind::NestedDerivative)
        );
        assert_eq!(column_of(parse_operator("D(x,2) + ", &v)).0, 10);
        assert_eq!(
            column_of(parse_closed_form("exp(x)", &v)),
            (5, ParseErrorKind::BadRate)
        );
        assert_eq!(column_of(parse_closed_form("exp(t+1)", &v)).0, 6);
        assert_eq!(
            column_of(parse_poly("sin(x)", &v)),
            (1, ParseErrorKind::UnknownFunction("sin".into()))
        );
    }
}

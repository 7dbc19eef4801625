//! Sparse multivariate polynomials over exact rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("invalid variable set: {0}")]
    InvalidVariables(String),
    #[error("total degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: u64, cap: u32 },
    #[error("term count {terms} exceeds the cap of {cap}")]
    TermCap { terms: usize, cap: usize },
}

/// Names that cannot be used as spatial variables because the expression
/// grammar gives them another meaning.
pub const RESERVED_NAMES: &[&str] = &["t", "D", "exp", "sinh", "cosh"];

/// Ordered, duplicate-free list of spatial variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableSet(Arc<[String]>);

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::InvalidVariables(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if RESERVED_NAMES.contains(&name.as_str()) {
                return Err(PolyError::InvalidVariables(format!("`{name}` is reserved")));
            }
            if names[..i].contains(name) {
                return Err(PolyError::InvalidVariables(format!(
                    "`{name}` is listed twice"
                )));
            }
        }
        Ok(Self(names.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub(crate) fn check_same(&self, other: &VariableSet) -> Result<(), PolyError> {
        if self == other {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(", "))
    }
}

/// Exponent vector, one entry per variable of the owning [`VariableSet`].
///
/// Ordered graded-lexicographically: higher total degree is greater, ties are
/// broken by comparing exponents in declared variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Guards against runaway growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_degree: 64,
            max_terms: 100_000,
        }
    }
}

impl Limits {
    fn check(&self, p: &Polynomial) -> Result<(), PolyError> {
        if p.terms.len() > self.max_terms {
            return Err(PolyError::TermCap {
                terms: p.terms.len(),
                cap: self.max_terms,
            });
        }
        match p.degree() {
            Some(d) if d > u64::from(self.max_degree) => Err(PolyError::DegreeCap {
                degree: d,
                cap: self.max_degree,
            }),
            _ => Ok(()),
        }
    }
}

/// A polynomial in the spatial variables with [`Rational`] coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VariableSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &VariableSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VariableSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &VariableSet, name: &str) -> Result<Self, PolyError> {
        let idx = vars.require(name)?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::monomial(vars, Monomial(exps), Rational::one()))
    }

    pub fn monomial(vars: &VariableSet, m: Monomial, c: Rational) -> Self {
        assert_eq!(
            m.0.len(),
            vars.len(),
            "monomial arity must match the variable set"
        );
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects like terms; zero sums are dropped.
    pub fn from_terms<I>(vars: &VariableSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                vars.len(),
                "monomial arity must match the variable set"
            );
            p.accumulate(m, c);
        }
        p
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The constant value, if this polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.vars.check_same(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.vars.check_same(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.mul_with(other, &Limits::default())
    }

    pub fn mul_with(&self, other: &Polynomial, limits: &Limits) -> Result<Polynomial, PolyError> {
        self.vars.check_same(&other.vars)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a + b > u64::from(limits.max_degree) {
                return Err(PolyError::DegreeCap {
                    degree: a + b,
                    cap: limits.max_degree,
                });
            }
        }
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        limits.check(&out)?;
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::constant(&self.vars, Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `order`-fold partial derivative with respect to `var`.
    pub fn diff(&self, var: &str, order: u32) -> Result<Polynomial, PolyError> {
        let idx = self.vars.require(var)?;
        Ok(self.diff_index(idx, order))
    }

    pub(crate) fn diff_index(&self, idx: usize, order: u32) -> Polynomial {
        if order == 0 {
            return self.clone();
        }
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e < order {
                continue;
            }
            // e (e-1) ... (e-order+1)
            let falling: BigInt = (0..order).map(|k| BigInt::from(e - k)).product();
            let mut exps = m.0.clone();
            exps[idx] -= order;
            out.accumulate(Monomial(exps), c * Rational::from_integer(falling));
        }
        out
    }

    /// Exact evaluation. Every variable must be assigned; extra keys are ignored.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, PolyError> {
        let values = self.lookup(point)?;
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    term *= rational::pow(v, e as usize);
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    pub fn eval_f64(&self, point: &BTreeMap<String, f64>) -> Result<f64, PolyError> {
        let values = self.lookup(point)?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(&values)
                    .fold(rational::to_f64(c), |acc, (&e, v)| acc * v.powi(e as i32))
            })
            .sum())
    }

    fn lookup<T: Clone>(&self, point: &BTreeMap<String, T>) -> Result<Vec<T>, PolyError> {
        self.vars
            .names()
            .iter()
            .map(|n| {
                point
                    .get(n)
                    .cloned()
                    .ok_or_else(|| PolyError::MissingAssignment(n.clone()))
            })
            .collect()
    }

    pub fn check_limits(&self, limits: &Limits) -> Result<(), PolyError> {
        limits.check(self)
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.vars.names().iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical compact rendering, e.g. `x^2+y^2-1/2*z^2`. Reparses to the same
/// polynomial under the crate's expression grammar.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                f.write_str(&rational::format(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rational::format(&mag))?;
                }
                self.write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{:?}]({})", self.vars, self)
    }
}

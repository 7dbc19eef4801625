//! Linear differential operators with polynomial coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::poly::{Limits, PolyError, Polynomial, VariableSet};
use crate::rational;

/// Per-variable derivative orders. The all-zero index is plain multiplication.
/// Ordered by total order, then lexicographically, like monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivIndex(Vec<u32>);

impl Ord for DerivIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_order()
            .cmp(&other.total_order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DerivIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl DerivIndex {
    pub fn new(orders: Vec<u32>) -> Self {
        Self(orders)
    }

    /// `∂^order / ∂var^order`.
    pub fn single(vars: &VariableSet, var: &str, order: u32) -> Result<Self, PolyError> {
        let idx = vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut orders = vec![0; vars.len()];
        orders[idx] = order;
        Ok(Self(orders))
    }

    pub fn orders(&self) -> &[u32] {
        &self.0
    }

    pub fn total_order(&self) -> u64 {
        self.0.iter().map(|&o| u64::from(o)).sum()
    }

    pub fn apply(&self, u: &Polynomial) -> Polynomial {
        self.0
            .iter()
            .enumerate()
            .fold(u.clone(), |acc, (idx, &order)| acc.diff_index(idx, order))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOpTerm {
    coefficient: Polynomial,
    deriv: DerivIndex,
}

impl DiffOpTerm {
    /// Returns `None` for a zero coefficient, which would be a dead term.
    pub fn new(coefficient: Polynomial, deriv: DerivIndex) -> Option<Self> {
        assert_eq!(
            deriv.0.len(),
            coefficient.vars().len(),
            "derivative index arity"
        );
        (!coefficient.is_zero()).then_some(Self { coefficient, deriv })
    }

    pub fn coefficient(&self) -> &Polynomial {
        &self.coefficient
    }

    pub fn deriv(&self) -> &DerivIndex {
        &self.deriv
    }
}

/// `Σ coefficient_i · ∂^{deriv_i}`, acting on polynomials. Terms are kept
/// canonical: one per derivative index, none with a zero coefficient, sorted
/// from the highest index down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    vars: VariableSet,
    terms: Vec<DiffOpTerm>,
    limits: Limits,
}

impl DiffOp {
    pub fn zero(vars: &VariableSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: Vec::new(),
            limits: Limits::default(),
        }
    }

    pub fn new(vars: &VariableSet, terms: Vec<DiffOpTerm>) -> Result<Self, PolyError> {
        for t in &terms {
            vars.check_same(t.coefficient.vars())?;
        }
        Ok(Self {
            vars: vars.clone(),
            terms: canonical(terms)?,
            limits: Limits::default(),
        })
    }

    /// Single term `coefficient · ∂^order/∂var^order`.
    pub fn term(coefficient: Polynomial, var: &str, order: u32) -> Result<Self, PolyError> {
        let vars = coefficient.vars().clone();
        let deriv = DerivIndex::single(&vars, var, order)?;
        Ok(Self {
            terms: DiffOpTerm::new(coefficient, deriv).into_iter().collect(),
            vars,
            limits: Limits::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn terms(&self) -> &[DiffOpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply(&self, u: &Polynomial) -> Result<Polynomial, PolyError> {
        self.vars.check_same(u.vars())?;
        let mut out = Polynomial::zero(&self.vars);
        for term in &self.terms {
            let d = term.deriv.apply(u);
            if d.is_zero() {
                continue;
            }
            out = out.add(&term.coefficient.mul_with(&d, &self.limits)?)?;
        }
        out.check_limits(&self.limits)?;
        Ok(out)
    }

    /// Termwise sum; coefficients of identical derivative indices merge and
    /// cancelled terms are dropped.
    pub fn sum(&self, other: &DiffOp) -> Result<DiffOp, PolyError> {
        self.vars.check_same(&other.vars)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(DiffOp {
            vars: self.vars.clone(),
            terms: canonical(terms)?,
            limits: self.limits,
        })
    }
}

fn canonical(terms: Vec<DiffOpTerm>) -> Result<Vec<DiffOpTerm>, PolyError> {
    let mut merged: BTreeMap<DerivIndex, Polynomial> = BTreeMap::new();
    for t in terms {
        let sum = match merged.remove(&t.deriv) {
            Some(c) => c.add(&t.coefficient)?,
            None => t.coefficient,
        };
        merged.insert(t.deriv, sum);
    }
    Ok(merged
        .into_iter()
        .rev()
        .filter_map(|(deriv, coefficient)| DiffOpTerm::new(coefficient, deriv))
        .collect())
}

/// Renders in the operator grammar, e.g. `1/2*x^2*D(x,2)`.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let c = &term.coefficient;
            match c.as_constant() {
                Some(k) if k.is_one() && term.deriv.total_order() > 0 => {}
                Some(k) => write!(f, "({})", rational::format(&k))?,
                None => write!(f, "({c})")?,
            }
            let mut first = c.as_constant().is_some_and(|k| k.is_one());
            for (name, &order) in self.vars.names().iter().zip(term.deriv.orders()) {
                if order == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "D({name},{order})")?;
            }
        }
        Ok(())
    }
}

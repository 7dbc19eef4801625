//! Homotopy-perturbation iteration for the linear heat- and wave-like models.
//!
//! With the linear homotopy, the initial data as initial guess and every
//! integration constant set to zero, the iterates are
//!
//! * heat: `v_0 = u0`, `v_{k+1} = ∫₀ᵗ (L v_k + f δ_{k0})`
//! * wave: `v_0 = u0 + u1 t`, `v_{k+1} = ∫₀ᵗ∫₀ᵗ (L v_k + f δ_{k0})`
//!
//! and [`hpm_equals_taylor`] compares their sum with the power series.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial, VariableSet};
use crate::rational;
use crate::series::{HeatProblem, Kind, SeriesSolution, WaveProblem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HpmError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("at least one homotopy term is required")]
    NoTerms,
    #[error("expansion kind {expansion} does not match series kind {series}")]
    KindMismatch { expansion: Kind, series: Kind },
    #[error("series order {order} does not reach t^{needed}")]
    SeriesTooShort { order: usize, needed: usize },
}

/// Polynomial in `t` with spatial-polynomial coefficients; entry `n` is the
/// coefficient of `tⁿ`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimePoly {
    vars: VariableSet,
    coeffs: Vec<Polynomial>,
}

impl TimePoly {
    pub fn zero(vars: &VariableSet) -> Self {
        Self {
            vars: vars.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn new(vars: &VariableSet, coeffs: Vec<Polynomial>) -> Result<Self, PolyError> {
        for c in &coeffs {
            vars.check_same(c.vars())?;
        }
        let mut tp = Self {
            vars: vars.clone(),
            coeffs,
        };
        tp.trim();
        Ok(tp)
    }

    /// `p · t^power`.
    pub fn monomial(p: Polynomial, power: usize) -> Self {
        let vars = p.vars().clone();
        let mut coeffs = vec![Polynomial::zero(&vars); power];
        coeffs.push(p);
        let mut tp = Self { vars, coeffs };
        tp.trim();
        tp
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Coefficient of `t^power` (zero beyond the stored range).
    pub fn coeff(&self, power: usize) -> Polynomial {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Powers of `t` carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    pub fn add(&self, other: &TimePoly) -> Result<TimePoly, PolyError> {
        self.vars.check_same(&other.vars)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|n| self.coeff(n).add(&other.coeff(n)))
            .collect::<Result<Vec<_>, _>>()?;
        TimePoly::new(&self.vars, coeffs)
    }

    /// Spatial operator applied coefficient-wise.
    fn map_spatial<F>(&self, f: F) -> Result<TimePoly, PolyError>
    where
        F: Fn(&Polynomial) -> Result<Polynomial, PolyError>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        TimePoly::new(&self.vars, coeffs)
    }
}

impl fmt::Display for TimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `∫₀ᵗ` applied `times` times with zero integration constants.
pub fn time_integrate(tp: &TimePoly, times: usize) -> TimePoly {
    let mut coeffs = tp.coeffs.clone();
    for _ in 0..times {
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(Polynomial::zero(&tp.vars));
        for (n, c) in coeffs.iter().enumerate() {
            next.push(c.scale(&rational::ratio(1, n as i64 + 1)));
        }
        coeffs = next;
    }
    let mut out = TimePoly {
        vars: tp.vars.clone(),
        coeffs,
    };
    out.trim();
    out
}

/// Iterates `v_0 ..= v_K` of the homotopy series at `p = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpmExpansion {
    kind: Kind,
    terms: Vec<TimePoly>,
}

impl HpmExpansion {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn terms(&self) -> &[TimePoly] {
        &self.terms
    }

    /// Number of correction terms `K`.
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    /// Highest `t` power the expansion is complete through.
    pub fn covered_power(&self) -> usize {
        match self.kind {
            Kind::Heat => self.order(),
            Kind::Wave => 2 * self.order() + 1,
        }
    }

    /// Which iterate is expected to own `t^power`.
    pub fn owner_of(&self, power: usize) -> usize {
        match self.kind {
            Kind::Heat => power,
            Kind::Wave => power / 2,
        }
    }

    pub fn partial_sum(&self) -> Result<TimePoly, PolyError> {
        let vars = &self.terms[0].vars;
        self.terms
            .iter()
            .try_fold(TimePoly::zero(vars), |acc, v| acc.add(v))
    }
}

fn iterate<L>(
    v0: TimePoly,
    source: &Polynomial,
    terms: usize,
    integrations: usize,
    apply: L,
) -> Result<Vec<TimePoly>, PolyError>
where
    L: Fn(&Polynomial) -> Result<Polynomial, PolyError>,
{
    let mut out = vec![v0];
    for k in 0..terms {
        let mut rhs = out[k].map_spatial(&apply)?;
        if k == 0 {
            rhs = rhs.add(&TimePoly::monomial(source.clone(), 0))?;
        }
        out.push(time_integrate(&rhs, integrations));
    }
    Ok(out)
}

pub fn hpm_heat(p: &HeatProblem, terms: usize) -> Result<HpmExpansion, HpmError> {
    if terms == 0 {
        return Err(HpmError::NoTerms);
    }
    let v0 = TimePoly::monomial(p.u0.clone(), 0);
    let terms = iterate(v0, &p.source, terms, 1, |u| p.op.apply(u))?;
    Ok(HpmExpansion {
        kind: Kind::Heat,
        terms,
    })
}

pub fn hpm_wave(p: &WaveProblem, terms: usize) -> Result<HpmExpansion, HpmError> {
    if terms == 0 {
        return Err(HpmError::NoTerms);
    }
    let v0 = TimePoly::new(p.op.vars(), vec![p.u0.clone(), p.u1.clone()])?;
    let terms = iterate(v0, &p.source, terms, 2, |u| p.op.apply(u))?;
    Ok(HpmExpansion {
        kind: Kind::Wave,
        terms,
    })
}

/// First place where the homotopy sum and the series disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub term: usize,
    pub power: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HpmVerdict {
    pub equal: bool,
    pub checked_through: usize,
    pub first_divergence: Option<Divergence>,
}

/// Compares `Σ v_k` with `s` for `t` powers `0 ..= covered_power`.
pub fn hpm_equals_taylor(e: &HpmExpansion, s: &SeriesSolution) -> Result<HpmVerdict, HpmError> {
    if e.kind != s.kind() {
        return Err(HpmError::KindMismatch {
            expansion: e.kind,
            series: s.kind(),
        });
    }
    let needed = e.covered_power();
    if s.order() < needed {
        return Err(HpmError::SeriesTooShort {
            order: s.order(),
            needed,
        });
    }
    let sum = e.partial_sum()?;
    let first = (0..=needed).find(|&n| sum.coeff(n) != *s.coeff(n));
    Ok(HpmVerdict {
        equal: first.is_none(),
        checked_through: needed,
        first_divergence: first.map(|power| Divergence {
            term: e.owner_of(power),
            power,
        }),
    })
}

/// The stronger per-iterate statement: heat `v_k = u_k t^k`; wave
/// `v_0 = u_0 + u_1 t`, `v_k = u_{2k} t^{2k} + u_{2k+1} t^{2k+1}`.
pub fn terms_match_series(e: &HpmExpansion, s: &SeriesSolution) -> Result<bool, HpmError> {
    if e.kind != s.kind() {
        return Err(HpmError::KindMismatch {
            expansion: e.kind,
            series: s.kind(),
        });
    }
    let needed = e.covered_power();
    if s.order() < needed {
        return Err(HpmError::SeriesTooShort {
            order: s.order(),
            needed,
        });
    }
    let vars = s.vars();
    for (k, v) in e.terms.iter().enumerate() {
        let powers: Vec<usize> = match e.kind {
            Kind::Heat => vec![k],
            Kind::Wave => vec![2 * k, 2 * k + 1],
        };
        let mut expected = vec![Polynomial::zero(vars); powers[powers.len() - 1] + 1];
        for &n in &powers {
            expected[n] = s.coeff(n).clone();
        }
        if *v != TimePoly::new(vars, expected)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOp;
    use crate::poly::Monomial;
    use crate::rational::{int, ratio, Rational};

    fn vars(names: &[&str]) -> VariableSet {
        VariableSet::new(names.iter().copied()).unwrap()
    }

    fn mono(vs: &VariableSet, exps: &[u32], c: Rational) -> Polynomial {
        Polynomial::monomial(vs, Monomial::new(exps.to_vec()), c)
    }

    #[test]
    fn integration_steps() {
        let v = vars(&["x"]);
        let p = mono(&v, &[1], int(1));
        let once = time_integrate(&TimePoly::monomial(p.clone(), 0), 1);
        assert_eq!(once, TimePoly::monomial(p.clone(), 1));
        let q = time_integrate(&TimePoly::monomial(p.clone(), 1), 1);
        assert_eq!(q, TimePoly::monomial(p.scale(&ratio(1, 2)), 2));
        let twice = time_integrate(&TimePoly::monomial(p.clone(), 0), 2);
        assert_eq!(twice, TimePoly::monomial(p.scale(&ratio(1, 2)), 2));
        assert!(time_integrate(&TimePoly::zero(&v), 2).is_zero());
    }

    #[test]
    fn heat_iterates_example1() {
        let v = vars(&["x"]);
        let x2 = mono(&v, &[2], int(1));
        let l = DiffOp::term(mono(&v, &[2], ratio(1, 2)), "x", 2).unwrap();
        let p = HeatProblem::new(l, Polynomial::zero(&v), x2.clone()).unwrap();
        let e = hpm_heat(&p, 2).unwrap();
        assert_eq!(e.terms()[0], TimePoly::monomial(x2.clone(), 0));
        assert_eq!(e.terms()[1], TimePoly::monomial(x2.clone(), 1));
        assert_eq!(e.terms()[2], TimePoly::monomial(x2.scale(&ratio(1, 2)), 2));
    }

    #[test]
    fn wave_iterates_example4() {
        let v = vars(&["x"]);
        let x = mono(&v, &[1], int(1));
        let x2 = mono(&v, &[2], int(1));
        let l = DiffOp::term(mono(&v, &[2], ratio(1, 2)), "x", 2).unwrap();
        let p = WaveProblem::new(l, Polynomial::zero(&v), x.clone(), x2.clone()).unwrap();
        let e = hpm_wave(&p, 1).unwrap();
        assert_eq!(
            e.terms()[0],
            TimePoly::new(&v, vec![x, x2.clone()]).unwrap()
        );
        assert_eq!(e.terms()[1], TimePoly::monomial(x2.scale(&ratio(1, 6)), 3));
    }

    #[test]
    fn zero_problem_gives_zero_iterates() {
        let v = vars(&["x"]);
        let z = Polynomial::zero(&v);
        let p = WaveProblem::new(DiffOp::zero(&v), z.clone(), z.clone(), z).unwrap();
        assert!(hpm_wave(&p, 3)
            .unwrap()
            .terms()
            .iter()
            .all(TimePoly::is_zero));
        assert_eq!(hpm_wave(&p, 0), Err(HpmError::NoTerms));
    }

    #[test]
    fn short_series_and_kind_mismatch() {
        let v = vars(&["x"]);
        let z = Polynomial::zero(&v);
        let heat = HeatProblem::new(DiffOp::zero(&v), z.clone(), z.clone()).unwrap();
        let e = hpm_heat(&heat, 4).unwrap();
        let s = crate::series::solve_heat(&heat, 3).unwrap();
        assert_eq!(
            hpm_equals_taylor(&e, &s),
            Err(HpmError::SeriesTooShort {
                order: 3,
                needed: 4
            })
        );
        let wave = WaveProblem::new(DiffOp::zero(&v), z.clone(), z.clone(), z).unwrap();
        let ws = crate::series::solve_wave(&wave, 12).unwrap();
        assert!(matches!(
            hpm_equals_taylor(&e, &ws),
            Err(HpmError::KindMismatch { .. })
        ));
    }
}

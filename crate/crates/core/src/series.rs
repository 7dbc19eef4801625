//! Truncated time-power-series solutions `u(r,t) = Σ u_n(r) tⁿ`.
//!
//! Heat-like problems `u_t = L u + f` are advanced with
//! `u_{n+1} = (L u_n + f δ_{n0}) / (n+1)` from `u_0` alone; wave-like problems
//! `u_tt = L u + f` with `u_{n+2} = (L u_n + f δ_{n0}) / ((n+1)(n+2))` from
//! `u_0` and `u_1`. No boundary data enter anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diffop::DiffOp;
use crate::poly::{PolyError, Polynomial, VariableSet};
use crate::rational::{self, Rational};

pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("truncation order {order} is below the minimum of {min} for a {kind} problem")]
    OrderTooLow {
        order: usize,
        min: usize,
        kind: Kind,
    },
    #[error("series kind {series} does not match problem kind {problem}")]
    KindMismatch { series: Kind, problem: Kind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Heat,
    Wave,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Heat => "heat",
            Kind::Wave => "wave",
        })
    }
}

/// `u_t = L u + f`, `u(r,0) = u0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatProblem {
    pub op: DiffOp,
    pub source: Polynomial,
    pub u0: Polynomial,
}

/// `u_tt = L u + f`, `u(r,0) = u0`, `u_t(r,0) = u1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveProblem {
    pub op: DiffOp,
    pub source: Polynomial,
    pub u0: Polynomial,
    pub u1: Polynomial,
}

impl HeatProblem {
    pub fn new(op: DiffOp, source: Polynomial, u0: Polynomial) -> Result<Self, PolyError> {
        op.vars().check_same(source.vars())?;
        op.vars().check_same(u0.vars())?;
        Ok(Self { op, source, u0 })
    }
}

impl WaveProblem {
    pub fn new(
        op: DiffOp,
        source: Polynomial,
        u0: Polynomial,
        u1: Polynomial,
    ) -> Result<Self, PolyError> {
        op.vars().check_same(source.vars())?;
        op.vars().check_same(u0.vars())?;
        op.vars().check_same(u1.vars())?;
        Ok(Self { op, source, u0, u1 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Heat(HeatProblem),
    Wave(WaveProblem),
}

impl Problem {
    pub fn kind(&self) -> Kind {
        match self {
            Problem::Heat(_) => Kind::Heat,
            Problem::Wave(_) => Kind::Wave,
        }
    }

    pub fn op(&self) -> &DiffOp {
        match self {
            Problem::Heat(p) => &p.op,
            Problem::Wave(p) => &p.op,
        }
    }

    pub fn source(&self) -> &Polynomial {
        match self {
            Problem::Heat(p) => &p.source,
            Problem::Wave(p) => &p.source,
        }
    }

    pub fn vars(&self) -> &VariableSet {
        self.op().vars()
    }

    pub fn solve(&self, order: usize) -> Result<SeriesSolution, SeriesError> {
        match self {
            Problem::Heat(p) => solve_heat(p, order),
            Problem::Wave(p) => solve_wave(p, order),
        }
    }
}

/// Coefficients `u_0 ..= u_N` of a truncated time-power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSolution {
    kind: Kind,
    vars: VariableSet,
    coeffs: Vec<Polynomial>,
}

impl SeriesSolution {
    /// Wraps an explicit coefficient list. `coeffs` must be nonempty.
    pub fn from_coeffs(
        kind: Kind,
        vars: &VariableSet,
        coeffs: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        assert!(!coeffs.is_empty(), "a series needs at least u_0");
        for c in &coeffs {
            vars.check_same(c.vars())?;
        }
        Ok(Self {
            kind,
            vars: vars.clone(),
            coeffs,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Polynomial {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    /// Every coefficient scaled by `c`.
    pub fn scale(&self, c: &Rational) -> SeriesSolution {
        SeriesSolution {
            kind: self.kind,
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Exact value at a rational point, Horner in `t`.
    pub fn eval(
        &self,
        point: &BTreeMap<String, Rational>,
        t: &Rational,
    ) -> Result<Rational, PolyError> {
        let values = self
            .coeffs
            .iter()
            .map(|c| c.eval(point))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(values
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, v| acc * t + v))
    }

    pub fn eval_f64(&self, point: &BTreeMap<String, f64>, t: f64) -> Result<f64, PolyError> {
        let values = self
            .coeffs
            .iter()
            .map(|c| c.eval_f64(point))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(values.iter().rev().fold(0.0, |acc, v| acc * t + v))
    }

    /// Re-checks the recurrence for every coefficient it determines.
    pub fn satisfies_recurrence(&self, problem: &Problem) -> Result<bool, SeriesError> {
        check_kind(self.kind, problem.kind())?;
        let (op, f) = (problem.op(), problem.source());
        let step = match self.kind {
            Kind::Heat => heat_step,
            Kind::Wave => wave_step,
        };
        let lag = match self.kind {
            Kind::Heat => 1,
            Kind::Wave => 2,
        };
        for n in 0..self.coeffs.len().saturating_sub(lag) {
            if step(op, f, &self.coeffs[n], n)? != self.coeffs[n + lag] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_kind(series: Kind, problem: Kind) -> Result<(), SeriesError> {
    if series == problem {
        Ok(())
    } else {
        Err(SeriesError::KindMismatch { series, problem })
    }
}

/// `L u_n + f δ_{n0}`.
fn forced(
    op: &DiffOp,
    f: &Polynomial,
    u_n: &Polynomial,
    n: usize,
) -> Result<Polynomial, PolyError> {
    let lu = op.apply(u_n)?;
    if n == 0 {
        lu.add(f)
    } else {
        op.vars().check_same(f.vars())?;
        Ok(lu)
    }
}

/// `u_{n+1} = (L u_n + f δ_{n0}) / (n+1)`.
pub fn heat_step(
    op: &DiffOp,
    f: &Polynomial,
    u_n: &Polynomial,
    n: usize,
) -> Result<Polynomial, PolyError> {
    let denom = n as i64 + 1;
    Ok(forced(op, f, u_n, n)?.scale(&rational::ratio(1, denom)))
}

/// `u_{n+2} = (L u_n + f δ_{n0}) / ((n+1)(n+2))`.
pub fn wave_step(
    op: &DiffOp,
    f: &Polynomial,
    u_n: &Polynomial,
    n: usize,
) -> Result<Polynomial, PolyError> {
    let denom = Rational::from_integer(((n as u64 + 1) * (n as u64 + 2)).into());
    Ok(forced(op, f, u_n, n)?.scale(&denom.recip()))
}

pub fn solve_heat(p: &HeatProblem, order: usize) -> Result<SeriesSolution, SeriesError> {
    if order < 1 {
        return Err(SeriesError::OrderTooLow {
            order,
            min: 1,
            kind: Kind::Heat,
        });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(p.u0.clone());
    for n in 0..order {
        let next = heat_step(&p.op, &p.source, &coeffs[n], n)?;
        coeffs.push(next);
    }
    Ok(SeriesSolution {
        kind: Kind::Heat,
        vars: p.op.vars().clone(),
        coeffs,
    })
}

pub fn solve_wave(p: &WaveProblem, order: usize) -> Result<SeriesSolution, SeriesError> {
    if order < 2 {
        return Err(SeriesError::OrderTooLow {
            order,
            min: 2,
            kind: Kind::Wave,
        });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(p.u0.clone());
    coeffs.push(p.u1.clone());
    for n in 0..order - 1 {
        let next = wave_step(&p.op, &p.source, &coeffs[n], n)?;
        coeffs.push(next);
    }
    Ok(SeriesSolution {
        kind: Kind::Wave,
        vars: p.op.vars().clone(),
        coeffs,
    })
}

/// Lowest `t`-degree at which the truncated series fails the PDE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ResidualFloor {
    Finite(usize),
    Infinite,
}

impl ResidualFloor {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            ResidualFloor::Finite(k) => k >= n,
            ResidualFloor::Infinite => true,
        }
    }
}

/// A number, or the string `"inf"`.
impl Serialize for ResidualFloor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ResidualFloor::Finite(k) => serializer.serialize_u64(*k as u64),
            ResidualFloor::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for ResidualFloor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualFloor::Finite(k) => write!(f, "{k}"),
            ResidualFloor::Infinite => f.write_str("inf"),
        }
    }
}

/// Residual `∂_t^k u − L u − f` of the truncated series as a polynomial in
/// `t`; entry `n` is the coefficient of `tⁿ`.
pub fn residual(s: &SeriesSolution, problem: &Problem) -> Result<Vec<Polynomial>, SeriesError> {
    check_kind(s.kind, problem.kind())?;
    let (op, f) = (problem.op(), problem.source());
    s.vars.check_same(op.vars())?;
    let lag = match s.kind {
        Kind::Heat => 1,
        Kind::Wave => 2,
    };
    let mut out = Vec::with_capacity(s.coeffs.len());
    for (n, u_n) in s.coeffs.iter().enumerate() {
        // time derivative contributes (n+1)...(n+lag) u_{n+lag} at tⁿ
        let dt = match s.coeffs.get(n + lag) {
            Some(next) => {
                let factor: u64 = (1..=lag as u64).map(|k| n as u64 + k).product();
                next.scale(&Rational::from_integer(factor.into()))
            }
            None => Polynomial::zero(&s.vars),
        };
        let mut r = dt.sub(&op.apply(u_n)?)?;
        if n == 0 {
            r = r.sub(f)?;
        }
        out.push(r);
    }
    Ok(out)
}

pub fn residual_floor(s: &SeriesSolution, problem: &Problem) -> Result<ResidualFloor, SeriesError> {
    Ok(residual(s, problem)?
        .iter()
        .position(|r| !r.is_zero())
        .map_or(ResidualFloor::Infinite, ResidualFloor::Finite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{int, ratio};

    fn vars(names: &[&str]) -> VariableSet {
        VariableSet::new(names.iter().copied()).unwrap()
    }

    fn mono(vs: &VariableSet, exps: &[u32], c: Rational) -> Polynomial {
        Polynomial::monomial(vs, Monomial::new(exps.to_vec()), c)
    }

    fn euler_op(vs: &VariableSet, c: Rational) -> DiffOp {
        vs.names()
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut e = vec![0; vs.len()];
                e[i] = 2;
                DiffOp::term(mono(vs, &e, c.clone()), name, 2).unwrap()
            })
            .fold(DiffOp::zero(vs), |acc, t| acc.sum(&t).unwrap())
    }

    #[test]
    fn heat_step_examples() {
        let v = vars(&["x"]);
        let l1 = euler_op(&v, ratio(1, 2));
        let x2 = mono(&v, &[2], int(1));
        assert_eq!(heat_step(&l1, &Polynomial::zero(&v), &x2, 0).unwrap(), x2);

        let v3 = vars(&["x", "y", "z"]);
        let l3 = euler_op(&v3, ratio(1, 36));
        let f = mono(&v3, &[4, 4, 4], int(1));
        assert_eq!(heat_step(&l3, &f, &Polynomial::zero(&v3), 0).unwrap(), f);
        // δ_{n0}: the source is only injected at n = 0
        assert!(heat_step(&l3, &f, &Polynomial::zero(&v3), 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn wave_step_examples() {
        let v = vars(&["x"]);
        let l1 = euler_op(&v, ratio(1, 2));
        let x = mono(&v, &[1], int(1));
        assert!(wave_step(&l1, &Polynomial::zero(&v), &x, 0)
            .unwrap()
            .is_zero());

        let v3 = vars(&["x", "y", "z"]);
        let l6 = euler_op(&v3, ratio(1, 2));
        let f = Polynomial::from_terms(
            &v3,
            [[2, 0, 0], [0, 2, 0], [0, 0, 2]].map(|e| (Monomial::new(e.to_vec()), int(1))),
        );
        assert_eq!(
            wave_step(&l6, &f, &Polynomial::zero(&v3), 0).unwrap(),
            f.scale(&ratio(1, 2))
        );
        assert!(
            wave_step(&l6, &Polynomial::zero(&v3), &Polynomial::zero(&v3), 4)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn order_preconditions() {
        let v = vars(&["x"]);
        let z = Polynomial::zero(&v);
        let heat = HeatProblem::new(DiffOp::zero(&v), z.clone(), z.clone()).unwrap();
        assert!(matches!(
            solve_heat(&heat, 0),
            Err(SeriesError::OrderTooLow { .. })
        ));
        let wave = WaveProblem::new(DiffOp::zero(&v), z.clone(), z.clone(), z).unwrap();
        assert!(matches!(
            solve_wave(&wave, 1),
            Err(SeriesError::OrderTooLow { .. })
        ));
    }

    #[test]
    fn zero_problem_has_infinite_floor() {
        let v = vars(&["x"]);
        let z = Polynomial::zero(&v);
        let l = euler_op(&v, ratio(1, 2));
        let p = Problem::Heat(HeatProblem::new(l, z.clone(), z).unwrap());
        let s = p.solve(5).unwrap();
        assert!(s.coeffs().iter().all(Polynomial::is_zero));
        assert_eq!(residual_floor(&s, &p).unwrap(), ResidualFloor::Infinite);
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let v = vars(&["x"]);
        let z = Polynomial::zero(&v);
        let heat = Problem::Heat(HeatProblem::new(DiffOp::zero(&v), z.clone(), z.clone()).unwrap());
        let wave =
            Problem::Wave(WaveProblem::new(DiffOp::zero(&v), z.clone(), z.clone(), z).unwrap());
        let s = heat.solve(3).unwrap();
        assert!(matches!(
            residual_floor(&s, &wave),
            Err(SeriesError::KindMismatch { .. })
        ));
    }

    #[test]
    fn horner_eval() {
        let v = vars(&["x"]);
        let s = SeriesSolution::from_coeffs(
            Kind::Heat,
            &v,
            vec![
                mono(&v, &[0], int(1)),
                mono(&v, &[1], int(2)),
                mono(&v, &[0], int(3)),
            ],
        )
        .unwrap();
        let at = BTreeMap::from([("x".to_string(), int(5))]);
        // 1 + 10 t + 3 t², t = 1/2
        assert_eq!(s.eval(&at, &ratio(1, 2)).unwrap(), ratio(27, 4));
        let atf = BTreeMap::from([("x".to_string(), 5.0)]);
        assert_eq!(s.eval_f64(&atf, 0.5).unwrap(), 6.75);
    }
}

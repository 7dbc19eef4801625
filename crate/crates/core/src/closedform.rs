//! Recognition of truncated series as exponential sums.
//!
//! A series whose coefficients satisfy `u_n = Σ_j p_j λ_jⁿ / n!` is the Taylor
//! data of `Σ_j p_j e^{λ_j t}`. For every spatial monomial the normalized
//! sequence `a_n = n!·c_n` then obeys a constant-coefficient linear recurrence
//! whose characteristic roots are the rates `λ_j`. Recognition finds that
//! recurrence by Berlekamp–Massey over exact rationals and reads the rates off
//! its rational roots. The amplitudes then come from a Vandermonde solve,
//! and the result is checked against every available order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::poly::{Monomial, PolyError, Polynomial, VariableSet};
use crate::rational::{self, Rational};
use crate::series::SeriesSolution;

/// Smallest truncation order accepted by [`recognize`].
pub const MIN_RECOGNITION_ORDER: usize = 6;

/// Coefficient of one spatial monomial across `u_0 ..= u_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTrace {
    pub monomial: Monomial,
    pub seq: Vec<Rational>,
}

/// One trace per monomial that appears anywhere in the series, in descending
/// graded-lex order.
pub fn extract_traces(s: &SeriesSolution) -> Vec<MonomialTrace> {
    let len = s.coeffs().len();
    let mut by_monomial: BTreeMap<&Monomial, Vec<Rational>> = BTreeMap::new();
    for (n, u) in s.coeffs().iter().enumerate() {
        for (m, c) in u.terms() {
            by_monomial
                .entry(m)
                .or_insert_with(|| vec![Rational::zero(); len])[n] = c.clone();
        }
    }
    by_monomial
        .into_iter()
        .rev()
        .map(|(m, seq)| MonomialTrace {
            monomial: m.clone(),
            seq,
        })
        .collect()
}

/// `a_k = Σ_{i=1..L} r_i · a_{k-i}` for all `k ≥ L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<Rational>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `r_1 ..= r_L`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn holds_on(&self, a: &[Rational]) -> bool {
        let l = self.coeffs.len();
        (l..a.len()).all(|k| {
            let rhs: Rational = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, r)| r * &a[k - i - 1])
                .sum();
            rhs == a[k]
        })
    }

    /// Characteristic polynomial `z^L − r_1 z^{L−1} − … − r_L`, ascending powers.
    pub fn characteristic(&self) -> Vec<Rational> {
        let l = self.coeffs.len();
        let mut p = vec![Rational::zero(); l + 1];
        p[l] = Rational::one();
        for (i, r) in self.coeffs.iter().enumerate() {
            p[l - i - 1] = -r;
        }
        p
    }
}

/// Shortest linear recurrence generating all of `a`, or `None` when `a` has
/// fewer than four entries or the recurrence is longer than `a.len() / 2`.
pub fn find_min_recurrence(a: &[Rational]) -> Option<Recurrence> {
    if a.len() < 4 {
        return None;
    }
    // Connection polynomial C(z) = 1 + c_1 z + … with a_n + Σ c_i a_{n-i} = 0.
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_disc = Rational::one();
    for n in 0..a.len() {
        let mut d = a[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &a[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &d / &last_disc;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &factor * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    if l > a.len() / 2 {
        return None;
    }
    c.resize(l + 1, Rational::zero());
    Some(Recurrence {
        coeffs: c[1..].iter().map(|ci| -ci).collect(),
    })
}

/// Why a series was not recognized. Not an error: a legitimate outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotRecognized {
    BelowEvidenceFloor { order: usize, min: usize },
    NoShortRecurrence { monomial: String },
    UnsupportedRoots { monomial: String },
    RepeatedRoot { monomial: String },
    VerificationFailed,
}

impl fmt::Display for NotRecognized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotRecognized::BelowEvidenceFloor { order, min } => {
                write!(f, "order {order} is below the evidence floor of {min}")
            }
            NotRecognized::NoShortRecurrence { monomial } => {
                write!(
                    f,
                    "coefficients of {monomial} satisfy no short linear recurrence"
                )
            }
            NotRecognized::UnsupportedRoots { monomial } => {
                write!(
                    f,
                    "coefficients of {monomial} need irrational or complex rates"
                )
            }
            NotRecognized::RepeatedRoot { monomial } => {
                write!(f, "coefficients of {monomial} need a repeated rate")
            }
            NotRecognized::VerificationFailed => {
                f.write_str("re-expansion does not match the series")
            }
        }
    }
}

/// Orders rates for storage and display: 0 first, then by magnitude with the
/// positive rate before the negative one.
fn rate_order(a: &Rational, b: &Rational) -> Ordering {
    a.abs()
        .cmp(&b.abs())
        .then_with(|| a.is_negative().cmp(&b.is_negative()))
}

/// `Σ_j spatial_j · e^{rate_j t}` with pairwise distinct rates and nonzero
/// spatial parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    vars: VariableSet,
    terms: Vec<(Rational, Polynomial)>,
}

impl ClosedForm {
    pub fn zero(vars: &VariableSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    /// Merges equal rates and drops vanishing parts.
    pub fn new<I>(vars: &VariableSet, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Rational, Polynomial)>,
    {
        let mut cf = Self::zero(vars);
        for (rate, p) in terms {
            cf.add_term(rate, p)?;
        }
        Ok(cf)
    }

    /// `spatial · e^{rate t}`.
    pub fn exp_term(rate: Rational, spatial: Polynomial) -> Self {
        let vars = spatial.vars().clone();
        let terms = if spatial.is_zero() {
            Vec::new()
        } else {
            vec![(rate, spatial)]
        };
        Self { vars, terms }
    }

    fn add_term(&mut self, rate: Rational, p: Polynomial) -> Result<(), PolyError> {
        self.vars.check_same(p.vars())?;
        match self.terms.iter().position(|(r, _)| *r == rate) {
            Some(i) => {
                let merged = self.terms[i].1.add(&p)?;
                if merged.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = merged;
                }
            }
            None if p.is_zero() => {}
            None => {
                let at = self
                    .terms
                    .iter()
                    .position(|(r, _)| rate_order(&rate, r) == Ordering::Less)
                    .unwrap_or(self.terms.len());
                self.terms.insert(at, (rate, p));
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    /// `(rate, spatial)` pairs in canonical order.
    pub fn terms(&self) -> &[(Rational, Polynomial)] {
        &self.terms
    }

    pub fn rates(&self) -> Vec<Rational> {
        self.terms.iter().map(|(r, _)| r.clone()).collect()
    }

    pub fn spatial(&self, rate: &Rational) -> Polynomial {
        self.terms
            .iter()
            .find(|(r, _)| r == rate)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClosedForm) -> Result<ClosedForm, PolyError> {
        let mut out = self.clone();
        for (r, p) in &other.terms {
            out.add_term(r.clone(), p.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> ClosedForm {
        ClosedForm {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(r, p)| (r.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ClosedForm) -> Result<ClosedForm, PolyError> {
        self.vars.check_same(&other.vars)?;
        let mut out = ClosedForm::zero(&self.vars);
        for (ra, pa) in &self.terms {
            for (rb, pb) in &other.terms {
                out.add_term(ra + rb, pa.mul(pb)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ClosedForm {
        if c.is_zero() {
            return ClosedForm::zero(&self.vars);
        }
        ClosedForm {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(r, p)| (r.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Taylor coefficients `u_n = Σ_j p_j λ_jⁿ / n!` for `n = 0 ..= order`.
    pub fn reexpand(&self, order: usize) -> Vec<Polynomial> {
        (0..=order)
            .map(|n| {
                let inv_fact = rational::factorial(n).recip();
                self.terms
                    .iter()
                    .fold(Polynomial::zero(&self.vars), |acc, (rate, p)| {
                        let c = rational::pow(rate, n) * &inv_fact;
                        acc.add(&p.scale(&c)).expect("terms share the variable set")
                    })
            })
            .collect()
    }

    /// Substitutes a full spatial point, leaving a function of `t` alone.
    pub fn at_point(&self, point: &BTreeMap<String, Rational>) -> Result<ClosedForm, PolyError> {
        let empty = VariableSet::new(Vec::<String>::new())?;
        let mut out = ClosedForm::zero(&empty);
        for (r, p) in &self.terms {
            out.add_term(r.clone(), Polynomial::constant(&empty, p.eval(point)?))?;
        }
        Ok(out)
    }

    pub fn eval_f64(&self, point: &BTreeMap<String, f64>, t: f64) -> Result<f64, PolyError> {
        let mut sum = 0.0;
        for (r, p) in &self.terms {
            sum += p.eval_f64(point)? * (rational::to_f64(r) * t).exp();
        }
        Ok(sum)
    }

    /// Exponential-basis rendering, e.g. `x^4*y^4*z^4*(exp(t)-1)`.
    pub fn render(&self) -> String {
        let mut out = Renderer::new(&self.vars);
        let constant = self.spatial(&Rational::zero());
        let moving: Vec<&(Rational, Polynomial)> =
            self.terms.iter().filter(|(r, _)| !r.is_zero()).collect();
        let moving_sum = moving
            .iter()
            .fold(Polynomial::zero(&self.vars), |acc, (_, p)| {
                acc.add(p).expect("shared vars")
            });
        let grouped = !constant.is_zero()
            && !moving.is_empty()
            && moving_sum.add(&constant).expect("shared vars").is_zero();
        if grouped {
            for (r, p) in moving {
                out.product(p, &format!("(exp({})-1)", rate_arg(r)));
            }
        } else {
            out.polynomial(&constant);
            for (r, p) in moving {
                out.product(p, &format!("exp({})", rate_arg(r)));
            }
        }
        out.finish()
    }

    /// Like [`render`](Self::render), but rewrites each `±a` rate pair as
    /// `cosh(at)`/`sinh(at)` whenever that does not increase the number of
    /// spatial monomials shown. Presentation only.
    pub fn render_hyperbolic(&self) -> String {
        let mut items: Vec<(Rational, u8, Polynomial, String)> = Vec::new();
        let mut rewritten = false;
        for (r, p) in &self.terms {
            if r.is_zero() {
                continue;
            }
            let partner = self.spatial(&-r);
            if r.is_positive() && !partner.is_zero() {
                let cosh = p.add(&partner).expect("shared vars");
                let sinh = p.sub(&partner).expect("shared vars");
                if cosh.len() + sinh.len() <= p.len() + partner.len() {
                    rewritten = true;
                    items.push((r.clone(), 0, cosh, format!("cosh({})", rate_arg(r))));
                    items.push((r.clone(), 1, sinh, format!("sinh({})", rate_arg(r))));
                    continue;
                }
            }
            if r.is_negative() && self.terms.iter().any(|(q, _)| *q == -r) {
                let pos = self.spatial(&-r);
                let cosh = pos.add(p).expect("shared vars");
                let sinh = pos.sub(p).expect("shared vars");
                if cosh.len() + sinh.len() <= pos.len() + p.len() {
                    continue;
                }
            }
            let slot = if r.is_positive() { 0 } else { 1 };
            items.push((r.abs(), slot, p.clone(), format!("exp({})", rate_arg(r))));
        }
        if !rewritten {
            return self.render();
        }
        items.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut out = Renderer::new(&self.vars);
        out.polynomial(&self.spatial(&Rational::zero()));
        for (_, _, p, factor) in &items {
            out.product(p, factor);
        }
        out.finish()
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `t`, `-t`, `2*t`, `-1/2*t`.
fn rate_arg(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let mag = r.abs();
    if mag.is_one() {
        format!("{sign}t")
    } else {
        format!("{sign}{}*t", rational::format(&mag))
    }
}

/// Accumulates signed top-level summands.
struct Renderer {
    vars: VariableSet,
    out: String,
}

impl Renderer {
    fn new(vars: &VariableSet) -> Self {
        Self {
            vars: vars.clone(),
            out: String::new(),
        }
    }

    fn sign(&mut self, negative: bool) {
        match (self.out.is_empty(), negative) {
            (true, true) => self.out.push('-'),
            (true, false) => {}
            (false, true) => self.out.push_str(" - "),
            (false, false) => self.out.push_str(" + "),
        }
    }

    /// Each monomial of `p` as its own summand.
    fn polynomial(&mut self, p: &Polynomial) {
        for (m, c) in p.terms() {
            self.sign(c.is_negative());
            let single = Polynomial::monomial(&self.vars, m.clone(), c.abs());
            self.out.push_str(&single.to_string());
        }
    }

    /// `p * factor`, parenthesizing `p` when it has several terms.
    fn product(&mut self, p: &Polynomial, factor: &str) {
        if p.is_zero() {
            return;
        }
        if p.len() == 1 {
            let (m, c) = p.terms().next().expect("one term");
            self.sign(c.is_negative());
            let mag = c.abs();
            if m.is_one() {
                if !mag.is_one() {
                    self.out.push_str(&rational::format(&mag));
                    self.out.push('*');
                }
            } else {
                let single = Polynomial::monomial(&self.vars, m.clone(), mag);
                self.out.push_str(&single.to_string());
                self.out.push('*');
            }
        } else {
            self.sign(false);
            self.out.push_str(&format!("({p})*"));
        }
        self.out.push_str(factor);
    }

    fn finish(self) -> String {
        if self.out.is_empty() {
            "0".to_string()
        } else {
            self.out
        }
    }
}

/// Recognizes `s` as a [`ClosedForm`], or explains why not.
pub fn recognize(s: &SeriesSolution) -> Result<ClosedForm, NotRecognized> {
    if s.order() < MIN_RECOGNITION_ORDER {
        return Err(NotRecognized::BelowEvidenceFloor {
            order: s.order(),
            min: MIN_RECOGNITION_ORDER,
        });
    }
    let vars = s.vars();
    let mut per_rate: BTreeMap<Rational, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for trace in extract_traces(s) {
        let name = Polynomial::monomial(vars, trace.monomial.clone(), Rational::one()).to_string();
        let normalized: Vec<Rational> = trace
            .seq
            .iter()
            .enumerate()
            .map(|(n, c)| c * rational::factorial(n))
            .collect();
        let rec =
            find_min_recurrence(&normalized).ok_or_else(|| NotRecognized::NoShortRecurrence {
                monomial: name.clone(),
            })?;
        let roots = match rational_roots(&rec.characteristic()) {
            RootSearch::Simple(roots) => roots,
            RootSearch::Repeated => return Err(NotRecognized::RepeatedRoot { monomial: name }),
            RootSearch::Unsupported => {
                return Err(NotRecognized::UnsupportedRoots { monomial: name })
            }
        };
        let amplitudes = vandermonde_solve(&roots, &normalized[..roots.len()]);
        for (rate, amp) in roots.into_iter().zip(amplitudes) {
            if !amp.is_zero() {
                per_rate
                    .entry(rate)
                    .or_default()
                    .push((trace.monomial.clone(), amp));
            }
        }
    }
    let cf = ClosedForm::new(
        vars,
        per_rate
            .into_iter()
            .map(|(rate, terms)| (rate, Polynomial::from_terms(vars, terms))),
    )
    .map_err(|_| NotRecognized::VerificationFailed)?;
    if cf.reexpand(s.order()).as_slice() != s.coeffs() {
        return Err(NotRecognized::VerificationFailed);
    }
    Ok(cf)
}

enum RootSearch {
    Simple(Vec<Rational>),
    Repeated,
    Unsupported,
}

/// All roots of `p` (ascending coefficients) when they are rational and
/// simple. Candidates come from the rational root theorem.
fn rational_roots(p: &[Rational]) -> RootSearch {
    let mut roots = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    match zeros {
        0 => {}
        1 => roots.push(Rational::zero()),
        _ => return RootSearch::Repeated,
    }
    let mut q: Vec<BigInt> = integer_primitive(&p[zeros..]);
    while q.len() > 1 {
        let lead = q.last().expect("nonempty").clone();
        let trail = q[0].clone();
        let (Some(nums), Some(dens)) = (divisors(&trail), divisors(&lead)) else {
            return RootSearch::Unsupported;
        };
        let mut found = None;
        'search: for d in &dens {
            for n in &nums {
                for cand in [
                    Rational::new(n.clone(), d.clone()),
                    Rational::new(-n, d.clone()),
                ] {
                    if eval_int_poly(&q, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else {
            return RootSearch::Unsupported;
        };
        if roots.contains(&root) {
            return RootSearch::Repeated;
        }
        q = deflate(&q, &root);
        if q.len() > 1 && eval_int_poly(&q, &root).is_zero() {
            return RootSearch::Repeated;
        }
        roots.push(root);
    }
    roots.sort_by(rate_order);
    RootSearch::Simple(roots)
}

/// Clears denominators and divides out the content.
fn integer_primitive(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| {
        let g = rational::gcd(&acc, c.denom());
        &acc / g * c.denom()
    });
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| rational::gcd(&acc, c));
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &content).collect()
    }
}

fn eval_int_poly(q: &[BigInt], x: &Rational) -> Rational {
    q.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * x + Rational::from_integer(c.clone())
    })
}

/// Divides `q` by `(den·z − num)` for the root `num/den`; exact by construction.
fn deflate(q: &[BigInt], root: &Rational) -> Vec<BigInt> {
    let (num, den) = (root.numer(), root.denom());
    // q(z) = (den z − num) s(z); solve top-down for s.
    let deg = q.len() - 1;
    let mut s = vec![BigInt::zero(); deg];
    // coefficient of z^k in the product is den·s[k−1] − num·s[k]
    for k in (1..=deg).rev() {
        let above = if k < deg { &s[k] * num } else { BigInt::zero() };
        s[k - 1] = (&q[k] + above) / den;
    }
    let content = s
        .iter()
        .fold(BigInt::zero(), |acc, c| rational::gcd(&acc, c));
    if content.is_zero() || content.is_one() {
        s
    } else {
        s.into_iter().map(|c| c / &content).collect()
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Positive divisors of `|n|`, or `None` when `|n|` cannot be factored by
/// trial division up to [`TRIAL_DIVISION_LIMIT`].
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs().to_u64()?;
    if m == 0 {
        return None;
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if m > TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT && p > TRIAL_DIVISION_LIMIT {
            return None;
        }
        factors.push((m, 1));
    }
    let mut divs = vec![1u128];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= u128::from(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(
        divs.into_iter()
            .map(|d| BigInt::from_biguint(Sign::Plus, d.into()))
            .collect(),
    )
}

/// Solves `Σ_j A_j λ_jⁿ = a_n` for `n < L` (distinct `λ_j`, `0⁰ = 1`).
fn vandermonde_solve(roots: &[Rational], a: &[Rational]) -> Vec<Rational> {
    let l = roots.len();
    let mut m: Vec<Vec<Rational>> = (0..l)
        .map(|n| {
            let mut row: Vec<Rational> = roots.iter().map(|r| rational::pow(r, n)).collect();
            row.push(a[n].clone());
            row
        })
        .collect();
    for col in 0..l {
        let pivot = (col..l)
            .find(|&r| !m[r][col].is_zero())
            .expect("distinct roots give a nonsingular system");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..l {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    m.into_iter().map(|row| row[l].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::series::Kind;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&k| int(k)).collect()
    }

    #[test]
    fn recurrence_of_constant_sequence() {
        let r = find_min_recurrence(&ints(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(r.coefficients(), &[int(1)]);
    }

    #[test]
    fn recurrence_of_alternating_sequence() {
        let r = find_min_recurrence(&ints(&[1, 0, 1, 0, 1, 0])).unwrap();
        assert_eq!(r.coefficients(), &[int(0), int(1)]);
    }

    #[test]
    fn recurrence_of_zero_sequence() {
        assert_eq!(
            find_min_recurrence(&ints(&[0, 0, 0, 0])).unwrap().order(),
            0
        );
    }

    #[test]
    fn recurrence_needs_evidence() {
        assert!(find_min_recurrence(&ints(&[1, 2, 3])).is_none());
        // 1,2,4,8,16,33: no recurrence of length ≤ 3 generates it
        assert!(find_min_recurrence(&ints(&[1, 2, 4, 8, 16, 33])).is_none());
    }

    #[test]
    fn recurrence_with_gap() {
        // e^t − 1 normalized: 0,1,1,1,...
        let a = ints(&[0, 1, 1, 1, 1, 1, 1]);
        let r = find_min_recurrence(&a).unwrap();
        assert_eq!(r.order(), 2);
        assert!(r.holds_on(&a));
    }

    #[test]
    fn roots_found_exactly() {
        // (z − 2)(z + 1/3) z = z³ − 5/3 z² − 2/3 z
        let p = vec![int(0), ratio(-2, 3), ratio(-5, 3), int(1)];
        match rational_roots(&p) {
            RootSearch::Simple(r) => assert_eq!(r, vec![int(0), ratio(-1, 3), int(2)]),
            _ => panic!("expected simple roots"),
        }
        // z² − 2 has no rational roots
        assert!(matches!(
            rational_roots(&[int(-2), int(0), int(1)]),
            RootSearch::Unsupported
        ));
        // (z − 1)²
        assert!(matches!(
            rational_roots(&[int(1), int(-2), int(1)]),
            RootSearch::Repeated
        ));
        // z²
        assert!(matches!(
            rational_roots(&[int(0), int(0), int(1)]),
            RootSearch::Repeated
        ));
    }

    #[test]
    fn divisor_enumeration() {
        let d = divisors(&BigInt::from(-12)).unwrap();
        assert_eq!(d, [1, 2, 3, 4, 6, 12].map(BigInt::from).to_vec());
        assert!(divisors(&BigInt::zero()).is_none());
    }

    #[test]
    fn rate_ordering() {
        let mut r = vec![int(-1), int(2), int(0), int(1), ratio(1, 2)];
        r.sort_by(rate_order);
        assert_eq!(r, vec![int(0), ratio(1, 2), int(1), int(-1), int(2)]);
    }

    #[test]
    fn render_variants() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let x2 = Polynomial::monomial(&v, Monomial::new(vec![2, 0]), int(1));
        let y2 = Polynomial::monomial(&v, Monomial::new(vec![0, 2]), int(1));
        let cf = ClosedForm::exp_term(int(1), x2.clone());
        assert_eq!(cf.render(), "x^2*exp(t)");
        let cf =
            ClosedForm::new(&v, [(int(-2), x2.scale(&int(-3))), (int(0), y2.clone())]).unwrap();
        assert_eq!(cf.render(), "y^2 - 3*x^2*exp(-2*t)");
        let cf = ClosedForm::new(&v, [(ratio(1, 2), Polynomial::constant(&v, int(1)))]).unwrap();
        assert_eq!(cf.render(), "exp(1/2*t)");
        assert_eq!(ClosedForm::zero(&v).render(), "0");
    }

    #[test]
    fn hyperbolic_rewrite_respects_term_count() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let x2 = Polynomial::monomial(&v, Monomial::new(vec![2, 0]), int(1));
        let y2 = Polynomial::monomial(&v, Monomial::new(vec![0, 2]), int(1));
        // 2 monomials each side collapse to one each: rewrite
        let a = x2.add(&y2).unwrap().scale(&ratio(1, 2));
        let b = y2.sub(&x2).unwrap().scale(&ratio(1, 2));
        let cf = ClosedForm::new(&v, [(int(1), a), (int(-1), b)]).unwrap();
        assert_eq!(cf.render_hyperbolic(), "y^2*cosh(t) + x^2*sinh(t)");
        // x² e^t + y² e^{-t} would need four monomials: keep exponentials
        let cf = ClosedForm::new(&v, [(int(1), x2.clone()), (int(-1), y2)]).unwrap();
        assert_eq!(cf.render_hyperbolic(), "x^2*exp(t) + y^2*exp(-t)");
    }

    #[test]
    fn reexpand_constants_and_empty() {
        let v = VariableSet::new(["x"]).unwrap();
        let p = Polynomial::var(&v, "x").unwrap();
        let cf = ClosedForm::exp_term(int(0), p.clone());
        let u = cf.reexpand(3);
        assert_eq!(u[0], p);
        assert!(u[1..].iter().all(Polynomial::is_zero));
        assert!(ClosedForm::zero(&v)
            .reexpand(4)
            .iter()
            .all(Polynomial::is_zero));
    }

    #[test]
    fn below_floor_is_not_recognized() {
        let v = VariableSet::new(["x"]).unwrap();
        let s = SeriesSolution::from_coeffs(Kind::Heat, &v, vec![Polynomial::zero(&v); 4]).unwrap();
        assert!(matches!(
            recognize(&s),
            Err(NotRecognized::BelowEvidenceFloor { order: 3, .. })
        ));
    }

    #[test]
    fn repeated_rate_is_not_recognized() {
        // t e^t: c_n = 1/(n-1)!, a_n = n
        let v = VariableSet::new(["x"]).unwrap();
        let coeffs = (0..10usize)
            .map(|n| {
                let c = if n == 0 {
                    int(0)
                } else {
                    rational::factorial(n - 1).recip()
                };
                Polynomial::constant(&v, c)
            })
            .collect();
        let s = SeriesSolution::from_coeffs(Kind::Heat, &v, coeffs).unwrap();
        assert!(matches!(
            recognize(&s),
            Err(NotRecognized::RepeatedRoot { .. })
        ));
    }
}

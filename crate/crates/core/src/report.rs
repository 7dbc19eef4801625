//! Command pipelines and their reports.
//!
//! Every report serializes to JSON and renders as plain text from the same
//! fields. Rationals are written as `p/q`, polynomials in the expression
//! grammar; floating point appears only where a value is inherently inexact.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::closedform::{self, ClosedForm};
use crate::corpus::{BoundaryCheck, CorpusEntry};
use crate::hpm::{self, Divergence, HpmError};
use crate::parse::{self, ParseError};
use crate::poly::{PolyError, VariableSet};
use crate::problem::{ProblemSpec, SpecError};
use crate::rational::{self, Rational};
use crate::series::{self, Kind, Problem, ResidualFloor, SeriesError, SeriesSolution};

/// Number of homotopy terms the corpus run checks.
pub const CORPUS_HPM_TERMS: usize = 8;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Hpm(#[from] HpmError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Input(String),
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn required_floor(kind: Kind, order: usize) -> usize {
    match kind {
        Kind::Heat => order,
        Kind::Wave => order.saturating_sub(1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateTerm {
    pub rate: String,
    pub spatial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Recognition {
    Recognized {
        terms: Vec<RateTerm>,
        exponential: String,
        hyperbolic: String,
    },
    NotRecognized {
        reason: String,
    },
}

impl Recognition {
    pub fn from_result(r: &Result<ClosedForm, closedform::NotRecognized>) -> Self {
        match r {
            Ok(cf) => Recognition::Recognized {
                terms: cf
                    .terms()
                    .iter()
                    .map(|(rate, p)| RateTerm {
                        rate: rational::format(rate),
                        spatial: p.to_string(),
                    })
                    .collect(),
                exponential: cf.render(),
                hyperbolic: cf.render_hyperbolic(),
            },
            Err(why) => Recognition::NotRecognized {
                reason: why.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub order: Option<usize>,
    pub recognize: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub problem: String,
    pub kind: Kind,
    pub variables: Vec<String>,
    pub order: usize,
    pub coefficients: Vec<String>,
    pub residual_floor: ResidualFloor,
    pub recognition: Option<Recognition>,
    pub timing_ms: f64,
}

pub fn run_solve(
    name: &str,
    spec: &ProblemSpec,
    opts: SolveOptions,
) -> Result<SolveReport, RunError> {
    let start = Instant::now();
    let problem = spec.build()?;
    let order = opts.order.unwrap_or(spec.order);
    let s = problem.solve(order)?;
    let floor = series::residual_floor(&s, &problem)?;
    let recognition = opts
        .recognize
        .then(|| Recognition::from_result(&closedform::recognize(&s)));
    Ok(SolveReport {
        problem: name.to_string(),
        kind: problem.kind(),
        variables: spec.vars.names().to_vec(),
        order,
        coefficients: s.coeffs().iter().map(ToString::to_string).collect(),
        residual_floor: floor,
        recognition,
        timing_ms: elapsed_ms(start),
    })
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "problem: {} ({}, vars {})",
            self.problem,
            self.kind,
            self.variables.join(", ")
        )?;
        writeln!(f, "order: {}", self.order)?;
        for (n, c) in self.coefficients.iter().enumerate() {
            writeln!(f, "  u{n} = {c}")?;
        }
        writeln!(f, "residual floor: {}", self.residual_floor)?;
        match &self.recognition {
            None => {}
            Some(Recognition::Recognized {
                terms,
                exponential,
                hyperbolic,
            }) => {
                writeln!(f, "closed form: {exponential}")?;
                writeln!(f, "hyperbolic: {hyperbolic}")?;
                for t in terms {
                    writeln!(f, "  rate {}: {}", t.rate, t.spatial)?;
                }
            }
            Some(Recognition::NotRecognized { reason }) => {
                writeln!(f, "closed form: not recognized ({reason})")?
            }
        }
        write!(f, "time: {:.3} ms", self.timing_ms)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HpmReport {
    pub problem: String,
    pub kind: Kind,
    pub terms: usize,
    pub series_order: usize,
    pub equal: bool,
    pub checked_through: usize,
    pub first_divergence: Option<Divergence>,
    pub per_term_match: bool,
    pub iterates: Vec<String>,
    pub timing_ms: f64,
}

pub fn run_hpm_check(name: &str, spec: &ProblemSpec, terms: usize) -> Result<HpmReport, RunError> {
    let start = Instant::now();
    let problem = spec.build()?;
    let e = match &problem {
        Problem::Heat(p) => hpm::hpm_heat(p, terms)?,
        Problem::Wave(p) => hpm::hpm_wave(p, terms)?,
    };
    let order = e.covered_power().max(spec.order);
    let s = problem.solve(order)?;
    let verdict = hpm::hpm_equals_taylor(&e, &s)?;
    let per_term_match = hpm::terms_match_series(&e, &s)?;
    Ok(HpmReport {
        problem: name.to_string(),
        kind: problem.kind(),
        terms,
        series_order: order,
        equal: verdict.equal,
        checked_through: verdict.checked_through,
        first_divergence: verdict.first_divergence,
        per_term_match,
        iterates: e.terms().iter().map(ToString::to_string).collect(),
        timing_ms: elapsed_ms(start),
    })
}

impl fmt::Display for HpmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {} ({})", self.problem, self.kind)?;
        for (k, v) in self.iterates.iter().enumerate() {
            writeln!(f, "  v{k} = {v}")?;
        }
        writeln!(
            f,
            "homotopy sum equals Taylor series through t^{}: {}",
            self.checked_through,
            if self.equal { "yes" } else { "no" }
        )?;
        if let Some(d) = &self.first_divergence {
            writeln!(f, "first divergence: term {} at t^{}", d.term, d.power)?;
        }
        writeln!(
            f,
            "each iterate is a pure Taylor block: {}",
            if self.per_term_match { "yes" } else { "no" }
        )?;
        write!(f, "time: {:.3} ms", self.timing_ms)
    }
}

/// Parses an exact number: `3`, `-2/5`, `0.125`, `1.5e-3`.
pub fn parse_number(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some(r) = rational::parse(text) {
        return Some(r);
    }
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(10.into());
    let factor = rational::pow(&ten, scale.unsigned_abs() as usize);
    let mut r = Rational::from_integer(all);
    if scale >= 0 {
        r *= factor;
    } else {
        r /= factor;
    }
    Some(if neg { -r } else { r })
}

/// Parses `x=1,y=1/2` into an exact point over `vars`.
pub fn parse_point(text: &str, vars: &VariableSet) -> Result<BTreeMap<String, Rational>, RunError> {
    let mut point = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| RunError::Input(format!("`{part}` is not of the form var=value")))?;
        let name = name.trim();
        if vars.index_of(name).is_none() {
            return Err(RunError::Input(format!("unknown variable `{name}`")));
        }
        let v = parse_number(value)
            .ok_or_else(|| RunError::Input(format!("`{value}` is not a number")))?;
        if point.insert(name.to_string(), v).is_some() {
            return Err(RunError::Input(format!("`{name}` assigned twice")));
        }
    }
    Ok(point)
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub problem: String,
    pub point: BTreeMap<String, String>,
    pub t: String,
    pub order: usize,
    pub series_exact: String,
    pub series_value: f64,
    pub closed_form: Option<String>,
    pub closed_form_value: Option<f64>,
    pub timing_ms: f64,
}

pub fn run_eval(
    name: &str,
    spec: &ProblemSpec,
    point: &BTreeMap<String, Rational>,
    t: &Rational,
    order: Option<usize>,
) -> Result<EvalReport, RunError> {
    let start = Instant::now();
    let problem = spec.build()?;
    let order = order.unwrap_or(spec.order);
    let s = problem.solve(order)?;
    let exact = s.eval(point, t)?;
    let cf = closedform::recognize(&s).ok();
    let fpoint: BTreeMap<String, f64> = point
        .iter()
        .map(|(k, v)| (k.clone(), rational::to_f64(v)))
        .collect();
    let cf_value = cf
        .as_ref()
        .map(|cf| cf.eval_f64(&fpoint, rational::to_f64(t)))
        .transpose()?;
    Ok(EvalReport {
        problem: name.to_string(),
        point: point
            .iter()
            .map(|(k, v)| (k.clone(), rational::format(v)))
            .collect(),
        t: rational::format(t),
        order,
        series_exact: rational::format(&exact),
        series_value: rational::to_f64(&exact),
        closed_form: cf.as_ref().map(ClosedForm::render),
        closed_form_value: cf_value,
        timing_ms: elapsed_ms(start),
    })
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "problem: {} at {}, t={}",
            self.problem,
            at.join(", "),
            self.t
        )?;
        writeln!(
            f,
            "series (order {}): {} ≈ {:e}",
            self.order, self.series_exact, self.series_value
        )?;
        match (&self.closed_form, self.closed_form_value) {
            (Some(cf), Some(v)) => writeln!(f, "closed form {cf}: {v:e}")?,
            _ => writeln!(f, "closed form: not recognized")?,
        }
        write!(f, "time: {:.3} ms", self.timing_ms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryVerdict {
    pub point: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Restricts the closed form to each boundary point and compares the
/// resulting function of `t` exactly with the stated boundary value.
pub fn run_boundary_check(
    checks: &[BoundaryCheck],
    cf: &ClosedForm,
) -> Result<Vec<BoundaryVerdict>, RunError> {
    let no_vars = VariableSet::new(Vec::<String>::new())?;
    checks
        .iter()
        .map(|c| {
            let actual = cf.at_point(&c.point)?;
            let expected =
                parse::parse_closed_form(&c.expected, &no_vars).map_err(|e: ParseError| {
                    RunError::Input(format!("boundary value `{}`: {e}", c.expected))
                })?;
            Ok(BoundaryVerdict {
                point: c
                    .point
                    .iter()
                    .map(|(k, v)| format!("{k}={}", rational::format(v)))
                    .collect::<Vec<_>>()
                    .join(","),
                expected: c.expected.clone(),
                actual: actual.render_hyperbolic(),
                pass: actual == expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub kind: Kind,
    pub order: usize,
    pub expected: String,
    pub recognized: Option<String>,
    pub exponential: Option<String>,
    pub form_matches: bool,
    pub recurrence_ok: bool,
    pub residual_floor: ResidualFloor,
    pub residual_ok: bool,
    pub expected_residual_floor: ResidualFloor,
    pub expected_residual_ok: bool,
    pub hpm_terms: usize,
    pub hpm_equal: bool,
    pub hpm_per_term: bool,
    pub boundary: Vec<BoundaryVerdict>,
    pub boundary_note: Option<String>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub order: Option<usize>,
    pub entries: Vec<EntryReport>,
    pub all_pass: bool,
    pub timing_ms: f64,
}

pub fn run_entry(entry: &CorpusEntry, order: Option<usize>) -> Result<EntryReport, RunError> {
    let problem = entry.spec.build()?;
    let kind = problem.kind();
    let vars = problem.vars().clone();
    let order = order.unwrap_or(entry.spec.order);
    let s = problem.solve(order)?;
    let mut failures = Vec::new();

    let recurrence_ok = s.satisfies_recurrence(&problem)?;
    if !recurrence_ok {
        failures.push("series violates its recurrence".to_string());
    }

    let floor = series::residual_floor(&s, &problem)?;
    let residual_ok = floor.at_least(required_floor(kind, order));
    if !residual_ok {
        failures.push(format!(
            "residual floor {floor} below {}",
            required_floor(kind, order)
        ));
    }

    let expected = parse::parse_closed_form(&entry.expected, &vars)
        .map_err(|e| RunError::Input(format!("{}: expected form: {e}", entry.id)))?;
    let expected_series = SeriesSolution::from_coeffs(kind, &vars, expected.reexpand(order))?;
    let expected_floor = series::residual_floor(&expected_series, &problem)?;
    let expected_residual_ok = expected_floor.at_least(required_floor(kind, order));
    if !expected_residual_ok {
        failures.push(format!("expected form has residual floor {expected_floor}"));
    }

    let recognized = closedform::recognize(&s);
    let form_matches = matches!(&recognized, Ok(cf) if *cf == expected);
    match &recognized {
        Ok(cf) if !form_matches => failures.push(format!(
            "recognized {} instead of {}",
            cf.render(),
            entry.expected
        )),
        Err(why) => failures.push(format!("not recognized: {why}")),
        _ => {}
    }

    let e = match &problem {
        Problem::Heat(p) => hpm::hpm_heat(p, CORPUS_HPM_TERMS)?,
        Problem::Wave(p) => hpm::hpm_wave(p, CORPUS_HPM_TERMS)?,
    };
    let long = problem.solve(e.covered_power().max(order))?;
    let hpm_equal = hpm::hpm_equals_taylor(&e, &long)?.equal;
    let hpm_per_term = hpm::terms_match_series(&e, &long)?;
    if !(hpm_equal && hpm_per_term) {
        failures.push("homotopy iterates differ from the Taylor series".to_string());
    }

    let boundary = match &recognized {
        Ok(cf) => run_boundary_check(&entry.boundary_checks, cf)?,
        Err(_) => Vec::new(),
    };
    for b in boundary.iter().filter(|b| !b.pass) {
        failures.push(format!(
            "boundary {}: got {}, expected {}",
            b.point, b.actual, b.expected
        ));
    }

    Ok(EntryReport {
        id: entry.id.to_string(),
        kind,
        order,
        expected: entry.expected.clone(),
        recognized: recognized.as_ref().ok().map(ClosedForm::render_hyperbolic),
        exponential: recognized.as_ref().ok().map(ClosedForm::render),
        form_matches,
        recurrence_ok,
        residual_floor: floor,
        residual_ok,
        expected_residual_floor: expected_floor,
        expected_residual_ok,
        hpm_terms: CORPUS_HPM_TERMS,
        hpm_equal,
        hpm_per_term,
        boundary,
        boundary_note: entry.boundary_note.map(str::to_string),
        pass: failures.is_empty(),
        failures,
    })
}

/// Runs every entry on its own thread; results keep corpus order.
pub fn run_corpus(entries: &[CorpusEntry], order: Option<usize>) -> Result<CorpusReport, RunError> {
    let start = Instant::now();
    let results: Vec<Result<EntryReport, RunError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| scope.spawn(move || run_entry(e, order)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    let entries = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CorpusReport {
        order,
        all_pass: entries.iter().all(|e| e.pass),
        entries,
        timing_ms: elapsed_ms(start),
    })
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{} {} ({}, order {}): {}",
                if e.pass { "PASS" } else { "FAIL" },
                e.id,
                e.kind,
                e.order,
                e.recognized.as_deref().unwrap_or("not recognized")
            )?;
            writeln!(
                f,
                "     residual floor {}, homotopy terms {} {}",
                e.residual_floor,
                e.hpm_terms,
                if e.hpm_equal && e.hpm_per_term {
                    "match"
                } else {
                    "differ"
                }
            )?;
            for b in &e.boundary {
                writeln!(
                    f,
                    "     boundary {}: {} (expected {}) {}",
                    b.point,
                    b.actual,
                    b.expected,
                    if b.pass { "ok" } else { "MISMATCH" }
                )?;
            }
            if let Some(note) = &e.boundary_note {
                writeln!(f, "     boundary checks unavailable: {note}")?;
            }
            for msg in &e.failures {
                writeln!(f, "     failure: {msg}")?;
            }
        }
        let passed = self.entries.iter().filter(|e| e.pass).count();
        writeln!(f, "{passed}/{} entries pass", self.entries.len())?;
        write!(f, "time: {:.3} ms", self.timing_ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn number_parsing() {
        assert_eq!(parse_number("0.5"), Some(ratio(1, 2)));
        assert_eq!(parse_number("-1/3"), Some(ratio(-1, 3)));
        assert_eq!(parse_number("1.5e-3"), Some(ratio(3, 2000)));
        assert_eq!(parse_number("2e2"), Some(ratio(200, 1)));
        assert_eq!(parse_number(".25"), Some(ratio(1, 4)));
        assert_eq!(parse_number("abc"), None);
        assert_eq!(parse_number("."), None);
    }

    #[test]
    fn point_parsing() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let p = parse_point("x=1, y=0.5", &v).unwrap();
        assert_eq!(p["y"], ratio(1, 2));
        assert!(parse_point("q=1", &v).is_err());
        assert!(parse_point("x=1,x=2", &v).is_err());
        assert!(parse_point("x:1", &v).is_err());
    }
}

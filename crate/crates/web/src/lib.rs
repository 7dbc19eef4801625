//! WebAssembly front end for `pde-series`.
//!
//! Every operation takes problem-file text and returns a JSON string. The
//! `*_json` functions are plain Rust so they can be tested natively; on
//! `wasm32` thin `wasm_bindgen` wrappers expose them to JavaScript.

use std::collections::BTreeMap;

use pde_series::closedform::{recognize, ClosedForm};
use pde_series::hpm::{hpm_equals_taylor, hpm_heat, hpm_wave, terms_match_series, Divergence};
use pde_series::report::parse_point;
use pde_series::series::{residual_floor, Kind, Problem, ResidualFloor};
use pde_series::{corpus, rational, ProblemSpec};
use serde::Serialize;

/// Orders above this are refused to keep the page responsive.
pub const MAX_ORDER: usize = 40;
/// Upper bound on plotted samples per curve.
pub const MAX_SAMPLES: usize = 2000;

#[derive(Serialize)]
struct RateTerm {
    rate: String,
    spatial: String,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum Recognition {
    Recognized {
        exponential: String,
        hyperbolic: String,
        terms: Vec<RateTerm>,
    },
    NotRecognized {
        reason: String,
    },
}

#[derive(Serialize)]
struct SolveOutput {
    kind: Kind,
    variables: Vec<String>,
    order: usize,
    coefficients: Vec<String>,
    residual_floor: ResidualFloor,
    recognition: Recognition,
}

#[derive(Serialize)]
struct HpmOutput {
    kind: Kind,
    terms: usize,
    iterates: Vec<String>,
    equal: bool,
    checked_through: usize,
    first_divergence: Option<Divergence>,
    per_term_match: bool,
}

#[derive(Serialize)]
struct CurveOutput {
    order: usize,
    point: BTreeMap<String, String>,
    t: Vec<f64>,
    series: Vec<f64>,
    closed_form: Option<String>,
    closed_form_values: Option<Vec<f64>>,
}

fn load(text: &str) -> Result<(ProblemSpec, Problem), String> {
    let spec = ProblemSpec::parse(text).map_err(|e| e.to_string())?;
    let problem = spec.build().map_err(|e| e.to_string())?;
    Ok((spec, problem))
}

fn pick_order(spec: &ProblemSpec, order: Option<usize>) -> Result<usize, String> {
    let n = order.unwrap_or(spec.order);
    if n > MAX_ORDER {
        return Err(format!("order {n} exceeds the demo limit of {MAX_ORDER}"));
    }
    Ok(n)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("outputs serialize")
}

fn recognition(cf: Result<ClosedForm, pde_series::NotRecognized>) -> Recognition {
    match cf {
        Ok(cf) => Recognition::Recognized {
            exponential: cf.render(),
            hyperbolic: cf.render_hyperbolic(),
            terms: cf
                .terms()
                .iter()
                .map(|(rate, p)| RateTerm {
                    rate: rational::format(rate),
                    spatial: p.to_string(),
                })
                .collect(),
        },
        Err(reason) => Recognition::NotRecognized {
            reason: reason.to_string(),
        },
    }
}

/// Series coefficients with their residual floor, plus the recognized
/// closed form when there is one.
/// `order` of `None` uses the order stated in the problem text.
pub fn solve_json(problem_text: &str, order: Option<usize>) -> Result<String, String> {
    let (spec, problem) = load(problem_text)?;
    let order = pick_order(&spec, order)?;
    let s = problem.solve(order).map_err(|e| e.to_string())?;
    let floor = residual_floor(&s, &problem).map_err(|e| e.to_string())?;
    Ok(to_json(&SolveOutput {
        kind: problem.kind(),
        variables: problem.vars().names().to_vec(),
        order,
        coefficients: s.coeffs().iter().map(ToString::to_string).collect(),
        residual_floor: floor,
        recognition: recognition(recognize(&s)),
    }))
}

/// Homotopy-perturbation iterates `v_0..v_K` and their comparison with the
/// Taylor series.
pub fn hpm_check_json(problem_text: &str, terms: usize) -> Result<String, String> {
    let (_, problem) = load(problem_text)?;
    if terms == 0 || terms > MAX_ORDER / 2 {
        return Err(format!("terms must lie in [1, {}]", MAX_ORDER / 2));
    }
    let e = match &problem {
        Problem::Heat(p) => hpm_heat(p, terms),
        Problem::Wave(p) => hpm_wave(p, terms),
    }
    .map_err(|e| e.to_string())?;
    let s = problem
        .solve(e.covered_power())
        .map_err(|e| e.to_string())?;
    let verdict = hpm_equals_taylor(&e, &s).map_err(|e| e.to_string())?;
    let per_term_match = terms_match_series(&e, &s).map_err(|e| e.to_string())?;
    Ok(to_json(&HpmOutput {
        kind: problem.kind(),
        terms,
        iterates: e.terms().iter().map(ToString::to_string).collect(),
        equal: verdict.equal,
        checked_through: verdict.checked_through,
        first_divergence: verdict.first_divergence,
        per_term_match,
    }))
}

/// Samples the truncated series and, when recognized, the closed form at a
/// fixed spatial point for `t` evenly spaced in `[t_min, t_max]`.
pub fn curves_json(
    problem_text: &str,
    order: Option<usize>,
    point: &str,
    t_min: f64,
    t_max: f64,
    samples: usize,
) -> Result<String, String> {
    let (spec, problem) = load(problem_text)?;
    let order = pick_order(&spec, order)?;
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err("need finite t_min < t_max".into());
    }
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in [2, {MAX_SAMPLES}]"));
    }
    let exact = parse_point(point, problem.vars()).map_err(|e| e.to_string())?;
    let at: BTreeMap<String, f64> = exact
        .iter()
        .map(|(k, v)| (k.clone(), rational::to_f64(v)))
        .collect();
    let s = problem.solve(order).map_err(|e| e.to_string())?;
    let cf = recognize(&s).ok();
    let ts: Vec<f64> = (0..samples)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (samples - 1) as f64)
        .collect();
    let series = ts
        .iter()
        .map(|&t| s.eval_f64(&at, t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let closed_form_values = cf
        .as_ref()
        .map(|cf| {
            ts.iter()
                .map(|&t| cf.eval_f64(&at, t))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()
        .map_err(|e| e.to_string())?;
    Ok(to_json(&CurveOutput {
        order,
        point: exact
            .iter()
            .map(|(k, v)| (k.clone(), rational::format(v)))
            .collect(),
        t: ts,
        series,
        closed_form: cf.as_ref().map(ClosedForm::render_hyperbolic),
        closed_form_values,
    }))
}

/// Ids of the built-in problems.
pub fn preset_ids() -> Vec<String> {
    corpus::IDS.iter().map(|s| s.to_string()).collect()
}

/// Problem-file text of a built-in problem.
pub fn preset_text(id: &str) -> Option<String> {
    corpus::file_text(id).map(str::to_string)
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(r: Result<String, String>) -> Result<String, JsError> {
        r.map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen]
    pub fn solve(problem_text: &str, order: Option<usize>) -> Result<String, JsError> {
        js(super::solve_json(problem_text, order))
    }

    #[wasm_bindgen(js_name = hpmCheck)]
    pub fn hpm_check(problem_text: &str, terms: usize) -> Result<String, JsError> {
        js(super::hpm_check_json(problem_text, terms))
    }

    #[wasm_bindgen]
    pub fn curves(
        problem_text: &str,
        order: Option<usize>,
        point: &str,
        t_min: f64,
        t_max: f64,
        samples: usize,
    ) -> Result<String, JsError> {
        js(super::curves_json(
            problem_text,
            order,
            point,
            t_min,
            t_max,
            samples,
        ))
    }

    #[wasm_bindgen(js_name = presetIds)]
    pub fn preset_ids() -> Vec<String> {
        super::preset_ids()
    }

    #[wasm_bindgen(js_name = presetText)]
    pub fn preset_text(id: &str) -> Option<String> {
        super::preset_text(id)
    }
}

//! The JSON operations behind the browser page, exercised natively.

use pde_series_web::{curves_json, hpm_check_json, preset_ids, preset_text, solve_json, MAX_ORDER};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("operation succeeds")).unwrap()
}

fn preset(id: &str) -> String {
    preset_text(id).expect("preset exists")
}

#[test]
fn presets_cover_the_six_examples() {
    let ids = preset_ids();
    assert_eq!(ids.len(), 6);
    for id in &ids {
        assert!(preset(id).contains("kind:"));
    }
    assert!(preset_text("example0").is_none());
}

#[test]
fn solve_recognizes_every_preset() {
    let expected = [
        ("example1", "x^2*exp(t)"),
        ("example2", "y^2*cosh(t) + x^2*sinh(t)"),
        ("example4", "x + x^2*sinh(t)"),
        ("example5", "x^4*cosh(t) + y^4*sinh(t)"),
    ];
    for (id, form) in expected {
        let v = parse(solve_json(&preset(id), Some(10)));
        assert_eq!(v["recognition"]["status"], "recognized", "{id}");
        assert_eq!(v["recognition"]["hyperbolic"], form, "{id}");
        assert_eq!(v["coefficients"].as_array().unwrap().len(), 11);
    }
    let v = parse(solve_json(&preset("example1"), None));
    assert_eq!(v["order"], 12, "file default order");
}

#[test]
fn solve_reports_unrecognized_series_without_failing() {
    let v = parse(solve_json(&preset("example1"), Some(4)));
    assert_eq!(v["recognition"]["status"], "not_recognized");
    assert!(v["recognition"]["reason"]
        .as_str()
        .unwrap()
        .contains("evidence"));
}

#[test]
fn hpm_check_matches_series() {
    for id in preset_ids() {
        let v = parse(hpm_check_json(&preset(&id), 6));
        assert_eq!(v["equal"], true, "{id}");
        assert_eq!(v["per_term_match"], true, "{id}");
        assert_eq!(v["iterates"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn curves_agree_with_exp() {
    let v = parse(curves_json(
        &preset("example1"),
        Some(30),
        "x=1",
        0.0,
        1.0,
        11,
    ));
    let ts = v["t"].as_array().unwrap();
    assert_eq!(ts.len(), 11);
    for (i, t) in ts.iter().enumerate() {
        let want = t.as_f64().unwrap().exp();
        let series = v["series"][i].as_f64().unwrap();
        let closed = v["closed_form_values"][i].as_f64().unwrap();
        assert!((series - want).abs() < 1e-12 * want);
        assert!((closed - want).abs() < 1e-12 * want);
    }
}

#[test]
fn bad_inputs_are_errors() {
    let p = preset("example1");
    assert!(solve_json("kind: heat\n", None)
        .unwrap_err()
        .contains("vars"));
    assert!(solve_json(&p, Some(MAX_ORDER + 1)).is_err());
    assert!(hpm_check_json(&p, 0).is_err());
    assert!(curves_json(&p, None, "y=1", 0.0, 1.0, 10)
        .unwrap_err()
        .contains("y"));
    assert!(curves_json(&p, None, "x=1", 1.0, 0.0, 10).is_err());
    assert!(curves_json(&p, None, "x=1", 0.0, 1.0, 1).is_err());
    let err = solve_json(&p.replace("u0: x^2", "u0: x^^2"), None).unwrap_err();
    assert!(err.contains("column 3"), "{err}");
}

#![allow(dead_code)]

use pde_series::diffop::{DerivIndex, DiffOp, DiffOpTerm};
use pde_series::poly::{Monomial, Polynomial, VariableSet};
use pde_series::rational::{self, Rational};
use pde_series::series::{HeatProblem, Problem, WaveProblem};
use pde_series::ProblemSpec;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn vars(names: &[&str]) -> VariableSet {
    VariableSet::new(names.iter().copied()).unwrap()
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    rational::ratio(num, den)
}

/// Up to `max_terms` monomials of total degree ≤ `max_degree`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    vs: &VariableSet,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let mut left = max_degree;
        let exps = (0..vs.len())
            .map(|_| {
                let e = rng.gen_range(0..=left);
                left -= e;
                e
            })
            .collect();
        (Monomial::new(exps), small_rational(rng))
    });
    Polynomial::from_terms(vs, terms.collect::<Vec<_>>())
}

/// At most three terms; polynomial coefficients of degree ≤ 2, derivative
/// orders 1 or 2.
pub fn random_op(rng: &mut ChaCha8Rng, vs: &VariableSet) -> DiffOp {
    let n = rng.gen_range(1..=3);
    let mut terms = Vec::new();
    for _ in 0..n {
        let mut orders = vec![0; vs.len()];
        let idx = rng.gen_range(0..vs.len());
        orders[idx] = rng.gen_range(1..=2);
        let coeff = random_poly(rng, vs, 2, 2);
        if let Some(t) = DiffOpTerm::new(coeff, DerivIndex::new(orders)) {
            terms.push(t);
        }
    }
    DiffOp::new(vs, terms).unwrap()
}

pub fn random_vars(rng: &mut ChaCha8Rng) -> VariableSet {
    if rng.gen_bool(0.5) {
        vars(&["x"])
    } else {
        vars(&["x", "y"])
    }
}

pub fn random_heat(rng: &mut ChaCha8Rng) -> HeatProblem {
    let vs = random_vars(rng);
    let op = random_op(rng, &vs);
    let f = random_poly(rng, &vs, 4, 3);
    let u0 = random_poly(rng, &vs, 4, 3);
    HeatProblem::new(op, f, u0).unwrap()
}

pub fn random_wave(rng: &mut ChaCha8Rng) -> WaveProblem {
    let vs = random_vars(rng);
    let op = random_op(rng, &vs);
    let f = random_poly(rng, &vs, 4, 3);
    let u0 = random_poly(rng, &vs, 4, 3);
    let u1 = random_poly(rng, &vs, 4, 3);
    WaveProblem::new(op, f, u0, u1).unwrap()
}

pub fn random_problem(rng: &mut ChaCha8Rng) -> Problem {
    if rng.gen_bool(0.5) {
        Problem::Heat(random_heat(rng))
    } else {
        Problem::Wave(random_wave(rng))
    }
}

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_problem(id: &str) -> Problem {
    ProblemSpec::load(corpus_dir().join(format!("{id}.problem")))
        .unwrap()
        .build()
        .unwrap()
}

/// Independent Taylor oracle: `Σ_j p_j · g_j^{(n)}(0)/n!` where each `g_j`
/// is one of the elementary time functions below, coded from its textbook
/// series rather than through the library's closed-form machinery.
#[derive(Clone, Copy, Debug)]
pub enum TimeFn {
    One,
    Exp,
    ExpNeg,
    Cosh,
    Sinh,
}

pub fn taylor_coeff(g: TimeFn, n: usize) -> Rational {
    let inv = rational::factorial(n).recip();
    let zero = rational::int(0);
    match g {
        TimeFn::One => {
            if n == 0 {
                rational::int(1)
            } else {
                zero
            }
        }
        TimeFn::Exp => inv,
        TimeFn::ExpNeg => {
            if n.is_multiple_of(2) {
                inv
            } else {
                -inv
            }
        }
        TimeFn::Cosh => {
            if n.is_multiple_of(2) {
                inv
            } else {
                zero
            }
        }
        TimeFn::Sinh => {
            if !n.is_multiple_of(2) {
                inv
            } else {
                zero
            }
        }
    }
}

pub fn taylor_oracle(vs: &VariableSet, parts: &[(&str, TimeFn)], order: usize) -> Vec<Polynomial> {
    (0..=order)
        .map(|n| {
            parts.iter().fold(Polynomial::zero(vs), |acc, (p, g)| {
                let p = pde_series::parse::parse_poly(p, vs).unwrap();
                acc.add(&p.scale(&taylor_coeff(*g, n))).unwrap()
            })
        })
        .collect()
}

/// The six closed forms as oracle parts.
pub fn closed_form_parts(id: &str) -> (VariableSet, Vec<(&'static str, TimeFn)>) {
    use TimeFn::*;
    match id {
        "example1" => (vars(&["x"]), vec![("x^2", Exp)]),
        "example2" => (vars(&["x", "y"]), vec![("y^2", Cosh), ("x^2", Sinh)]),
        "example3" => (
            vars(&["x", "y", "z"]),
            vec![("x^4*y^4*z^4", Exp), ("-x^4*y^4*z^4", One)],
        ),
        "example4" => (vars(&["x"]), vec![("x", One), ("x^2", Sinh)]),
        "example5" => (vars(&["x", "y"]), vec![("x^4", Cosh), ("y^4", Sinh)]),
        "example6" => (
            vars(&["x", "y", "z"]),
            vec![
                ("x^2+y^2", Exp),
                ("-x^2-y^2", One),
                ("z^2", ExpNeg),
                ("-z^2", One),
            ],
        ),
        _ => panic!("unknown example {id}"),
    }
}

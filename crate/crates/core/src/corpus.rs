//! The six reference problems, three heat-like and three wave-like. Each
//! carries its known closed-form solution. Where available it also carries
//! boundary data that the series must satisfy without ever being told.

use std::collections::BTreeMap;

use crate::problem::{ProblemSpec, SpecError};
use crate::rational::{self, Rational};

/// A spatial point and the time function the solution must reduce to there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCheck {
    pub point: BTreeMap<String, Rational>,
    pub expected: String,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub spec: ProblemSpec,
    /// Closed form in the expression grammar.
    pub expected: String,
    pub boundary_checks: Vec<BoundaryCheck>,
    /// Why boundary checks are absent, when they are.
    pub boundary_note: Option<&'static str>,
}

struct Raw {
    id: &'static str,
    file: &'static str,
    expected: &'static str,
    boundary: &'static [(&'static str, i64, &'static str)],
    note: Option<&'static str>,
}

const NEUMANN_NOTE: &str = "Neumann boundary data are stated only by count, without formulas";

const RAW: [Raw; 6] = [
    Raw {
        id: "example1",
        file: include_str!("../corpus/example1.problem"),
        expected: "x^2*exp(t)",
        boundary: &[("x", 0, "0"), ("x", 1, "exp(t)")],
        note: None,
    },
    Raw {
        id: "example2",
        file: include_str!("../corpus/example2.problem"),
        expected: "y^2*cosh(t) + x^2*sinh(t)",
        boundary: &[],
        note: Some(NEUMANN_NOTE),
    },
    Raw {
        id: "example3",
        file: include_str!("../corpus/example3.problem"),
        expected: "x^4*y^4*z^4*(exp(t)-1)",
        boundary: &[],
        note: Some(NEUMANN_NOTE),
    },
    Raw {
        id: "example4",
        file: include_str!("../corpus/example4.problem"),
        expected: "x + x^2*sinh(t)",
        boundary: &[("x", 0, "0"), ("x", 1, "1 + sinh(t)")],
        note: None,
    },
    Raw {
        id: "example5",
        file: include_str!("../corpus/example5.problem"),
        expected: "x^4*cosh(t) + y^4*sinh(t)",
        boundary: &[],
        note: Some(NEUMANN_NOTE),
    },
    Raw {
        id: "example6",
        file: include_str!("../corpus/example6.problem"),
        expected: "(x^2+y^2)*(exp(t)-1) + z^2*(exp(-t)-1)",
        boundary: &[],
        note: Some("boundary data are stated only by count, without formulas"),
    },
];

pub const IDS: [&str; 6] = [
    "example1", "example2", "example3", "example4", "example5", "example6",
];

/// Problem-file text of a corpus entry.
pub fn file_text(id: &str) -> Option<&'static str> {
    RAW.iter().find(|r| r.id == id).map(|r| r.file)
}

pub fn entry(id: &str) -> Option<Result<CorpusEntry, SpecError>> {
    RAW.iter().find(|r| r.id == id).map(build)
}

pub fn entries() -> Result<Vec<CorpusEntry>, SpecError> {
    RAW.iter().map(build).collect()
}

fn build(raw: &Raw) -> Result<CorpusEntry, SpecError> {
    Ok(CorpusEntry {
        id: raw.id,
        spec: ProblemSpec::parse(raw.file)?,
        expected: raw.expected.to_string(),
        boundary_checks: raw
            .boundary
            .iter()
            .map(|(var, value, expected)| BoundaryCheck {
                point: BTreeMap::from([(var.to_string(), rational::int(*value))]),
                expected: expected.to_string(),
            })
            .collect(),
        boundary_note: raw.note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Kind;

    #[test]
    fn all_entries_load() {
        let all = entries().unwrap();
        assert_eq!(all.len(), 6);
        let kinds: Vec<Kind> = all.iter().map(|e| e.spec.kind).collect();
        assert_eq!(
            kinds,
            [
                Kind::Heat,
                Kind::Heat,
                Kind::Heat,
                Kind::Wave,
                Kind::Wave,
                Kind::Wave
            ]
        );
        assert!(entry("example7").is_none());
    }

    #[test]
    fn boundary_data_only_where_printed() {
        for e in entries().unwrap() {
            let explicit = matches!(e.id, "example1" | "example4");
            assert_eq!(!e.boundary_checks.is_empty(), explicit, "{}", e.id);
            assert_eq!(e.boundary_note.is_none(), explicit, "{}", e.id);
        }
    }
}

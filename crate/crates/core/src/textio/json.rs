//! Serializable views of parsed objects. Field order is the declaration
//! order and is part of the output format.

use serde::Serialize;

use super::{format_element, format_grid, format_point, format_poly, format_ring};
use super::{parse_grid, parse_ideal, parse_points, parse_poly, parse_ring};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::poly::Poly;
use crate::ring::{RingKind, RingSpec, SetCondition};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingJson {
    pub spec: String,
    pub kind: &'static str,
    /// Decimal string, absent for ℤ and ℚ.
    pub cardinality: Option<String>,
    pub characteristic: u64,
    pub field: bool,
    pub domain: bool,
}

impl RingJson {
    pub fn new(r: &RingSpec) -> Self {
        let kind = match r.kind() {
            RingKind::Integers => "integers",
            RingKind::Rationals => "rationals",
            RingKind::IntegersMod(_) => "integers_mod",
            RingKind::PrimeField(_) => "prime_field",
            RingKind::ExtensionField { .. } => "extension_field",
            RingKind::Product(_) => "product",
        };
        RingJson {
            spec: format_ring(r),
            kind,
            cardinality: r.cardinality().map(|c| c.to_string()),
            characteristic: r.characteristic(),
            field: r.is_field(),
            domain: r.is_domain(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub text: String,
    pub nvars: usize,
    pub total_degree: String,
    /// Descending graded-lex order.
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn new(f: &Poly) -> Self {
        PolyJson {
            text: format_poly(f),
            nvars: f.nvars(),
            total_degree: f.total_degree().to_string(),
            terms: f
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exponents: m.exponents().to_vec(),
                    coefficient: format_element(c),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridJson {
    pub text: String,
    pub sets: Vec<Vec<String>>,
    pub conditions: Vec<SetCondition>,
    pub condition: SetCondition,
    pub phis: Vec<String>,
}

impl GridJson {
    pub fn new(g: &Grid) -> Self {
        GridJson {
            text: format_grid(g),
            sets: g
                .sets()
                .iter()
                .map(|s| s.iter().map(format_element).collect())
                .collect(),
            conditions: g.conditions().to_vec(),
            condition: g.condition(),
            phis: g.phis().iter().map(format_poly).collect(),
        }
    }
}

/// One postcondition checked while producing a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalAssertion {
    pub name: String,
    pub passed: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ParsedValue {
    Ring(RingJson),
    Poly(PolyJson),
    Grid(GridJson),
    Points(Vec<String>),
    Ideal(Vec<PolyJson>),
}

#[derive(Serialize)]
struct ParseError {
    message: String,
    position: Option<usize>,
}

#[derive(Serialize)]
struct ParseReport<'a> {
    kind: &'a str,
    ring: &'a str,
    nvars: usize,
    input: &'a str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<ParsedValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ParseError>,
}

fn parse_value(kind: &str, ring: &str, nvars: usize, input: &str) -> Result<ParsedValue> {
    if kind == "ring" {
        return Ok(ParsedValue::Ring(RingJson::new(&parse_ring(input)?)));
    }
    let r = Arc::new(parse_ring(ring)?);
    Ok(match kind {
        "poly" => ParsedValue::Poly(PolyJson::new(&parse_poly(input, &r, nvars)?)),
        "grid" => ParsedValue::Grid(GridJson::new(&parse_grid(input, &r, Some(nvars))?)),
        "points" => ParsedValue::Points(
            parse_points(input, &r, Some(nvars))?
                .iter()
                .map(|p| format_point(p))
                .collect(),
        ),
        "ideal" => ParsedValue::Ideal(
            parse_ideal(input, &r, nvars)?
                .iter()
                .map(PolyJson::new)
                .collect(),
        ),
        other => {
            return Err(Error::Parse {
                message: format!("unknown input kind '{other}'"),
                position: 0,
            })
        }
    })
}

/// Parses `input` as `kind` (`ring`, `poly`, `grid`, `points` or `ideal`)
/// and renders the result, or the error, as one line of compact JSON.
/// `ring` and `nvars` are ignored for `kind = "ring"`.
pub fn parse_report(kind: &str, ring: &str, nvars: usize, input: &str) -> String {
    let (value, error) = match parse_value(kind, ring, nvars, input) {
        Ok(v) => (Some(v), None),
        Err(e) => {
            let position = match &e {
                Error::Parse { position, .. } => Some(*position),
                _ => None,
            };
            (
                None,
                Some(ParseError {
                    message: e.to_string(),
                    position,
                }),
            )
        }
    };
    let report = ParseReport {
        kind,
        ring,
        nvars,
        input,
        ok: error.is_none(),
        value,
        error,
    };
    serde_json::to_string(&report).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_stable() {
        assert_eq!(
            parse_report("ring", "", 0, "Z/6"),
            r#"{"kind":"ring","ring":"","nvars":0,"input":"Z/6","ok":true,"value":{"spec":"Z/6","kind":"integers_mod","cardinality":"6","characteristic":6,"field":false,"domain":false}}"#
        );
        assert_eq!(
            parse_report("poly", "Z/2", 2, "2*t1*t2 + 3"),
            r#"{"kind":"poly","ring":"Z/2","nvars":2,"input":"2*t1*t2 + 3","ok":true,"value":{"text":"1","nvars":2,"total_degree":"0","terms":[{"exponents":[0,0],"coefficient":"1"}]}}"#
        );
        let err = parse_report("poly", "Z", 1, "t1^-1");
        assert!(err.contains(r#""ok":false"#) && err.contains(r#""position":3"#));
    }
}

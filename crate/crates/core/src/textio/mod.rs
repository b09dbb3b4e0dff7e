//! Text grammar for rings, elements, polynomials, grids and point lists,
//! the matching serializers, session configuration and JSON views.
//!
//! Grammar summary (whitespace is ignored between tokens):
//!
//! ```text
//! ring    := factor ('*' factor)*
//! factor  := 'Z' | 'Q' | 'Z/' n | 'GF(' q ')' | 'GF(' q ';' upoly ')'
//! q       := n | p '^' k
//! poly    := ['-'] term (('+' | '-') term)*
//! term    := power (['*'] power)*
//! power   := atom ['^' n]
//! atom    := n ['/' n] | '[' element-body ']' | 't' k | '(' poly ')'
//! grid    := 'X' k '=' ('{' elem (',' elem)* '}' | '*') (';' ...)*
//! points  := '(' elem (',' elem)* ')' (';' ...)*
//! ideal   := poly (';' poly)*
//! ```
//!
//! Inside brackets an extension-field element is written as a polynomial in
//! `u` (`[u+1]`, `[2u^2+u]`), and a product-ring element as a tuple of
//! component elements (`[1,0]`).

mod config;
mod json;
mod parse;

pub use config::{parse_caps, parse_config, OutputMode, SessionConfig};
pub use json::{
    parse_report, EvalAssertion, GridJson, PolyJson, RingJson, TermJson,
};
pub use parse::{
    parse_element, parse_grid, parse_ideal, parse_points, parse_poly, parse_ring, parse_u32_list,
};

use crate::grid::Grid;
use crate::poly::Poly;
use crate::ring::{RingElement, RingKind, RingSpec};

/// Dense GF(p)[u] coefficients (low to high) as `2u^2+u+1`.
fn format_upoly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "u".to_string(),
            _ => format!("u^{e}"),
        };
        parts.push(match (e, *c) {
            (0, c) => c.to_string(),
            (_, 1) => mono,
            (_, c) => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn format_ring(ring: &RingSpec) -> String {
    match ring.kind() {
        RingKind::Integers => "Z".into(),
        RingKind::Rationals => "Q".into(),
        RingKind::IntegersMod(n) => format!("Z/{n}"),
        RingKind::PrimeField(p) => format!("GF({p})"),
        RingKind::ExtensionField { p, modulus } => {
            let q = p.pow(modulus.len() as u32 - 1);
            format!("GF({q};{})", format_upoly(modulus))
        }
        RingKind::Product(fs) => fs.iter().map(format_ring).collect::<Vec<_>>().join("*"),
    }
}

/// A ring element as a literal the parser accepts in its ring.
pub fn format_element(e: &RingElement) -> String {
    match e {
        RingElement::Integer(v) => v.to_string(),
        RingElement::Rational(v) if v.is_integer() => v.numer().to_string(),
        RingElement::Rational(v) => format!("{}/{}", v.numer(), v.denom()),
        RingElement::Residue(v) => v.to_string(),
        RingElement::Ext(cs) if cs[1..].iter().any(|c| *c != 0) => format!("[{}]", format_upoly(cs)),
        RingElement::Ext(cs) => cs[0].to_string(),
        RingElement::Tuple(parts) => {
            format!("[{}]", parts.iter().map(format_element).collect::<Vec<_>>().join(","))
        }
    }
}

pub fn format_point(x: &[RingElement]) -> String {
    let parts: Vec<String> = x.iter().map(format_element).collect();
    format!("({})", parts.join(","))
}

pub fn format_points(points: &[Vec<RingElement>]) -> String {
    points.iter().map(|p| format_point(p)).collect::<Vec<_>>().join(";")
}

fn is_negative(e: &RingElement) -> bool {
    use num_traits::Signed;
    match e {
        RingElement::Integer(v) => v.is_negative(),
        RingElement::Rational(v) => v.is_negative(),
        _ => false,
    }
}

fn format_monomial(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            if *e == 1 {
                format!("t{}", i + 1)
            } else {
                format!("t{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms in descending graded-lex order, joined by ` + ` / ` - `.
pub fn format_poly(f: &Poly) -> String {
    let ring = f.ring();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let negative = is_negative(c);
        let magnitude = if negative { ring.neg(c) } else { c.clone() };
        let mono = format_monomial(m.exponents());
        let body = if mono.is_empty() {
            format_element(&magnitude)
        } else if ring.is_one(&magnitude) {
            mono
        } else {
            format!("{}*{mono}", format_element(&magnitude))
        };
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_grid(grid: &Grid) -> String {
    grid.sets()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let elems: Vec<String> = s.iter().map(format_element).collect();
            format!("X{}={{{}}}", i + 1, elems.join(","))
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn format_ideal(gens: &[Poly]) -> String {
    gens.iter().map(format_poly).collect::<Vec<_>>().join("; ")
}

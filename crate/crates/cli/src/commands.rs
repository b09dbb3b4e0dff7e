use std::sync::Arc;

use serde::Serialize;

use cnsatz::chevalley::{rvcw_report, CwInstance, PartStatus};
use cnsatz::grid::{
    atomic_interpolate, atomic_interpolate_poly, cnii_witness, coefficient_formula, CoefficientValue, Grid,
};
use cnsatz::ideal::{
    cni_certificate, evalmap_classify, finitesatz_membership, variety, variety_of_points, zariski_closure,
    Certificate, IdealPresentation, Injectivity, Membership, PointSet, Surjectivity,
};
use cnsatz::poly::{cylindrical_reduce, Poly, Ring};
use cnsatz::ring::SetCondition;
use cnsatz::textio::{
    format_element, format_point, format_poly, parse_grid, parse_ideal, parse_points, parse_poly, parse_ring,
    parse_u32_list, EvalAssertion, GridJson, PolyJson,
};

use crate::output::{assertion, emit};
use crate::{Command, Failure, Session};

type Outcome = Result<u8, Failure>;

fn ring(s: &Session) -> Result<Ring, Failure> {
    let spec = s
        .ring
        .as_deref()
        .ok_or_else(|| Failure::input("--ring is required"))?;
    Ok(Arc::new(parse_ring(spec)?))
}

fn grid_text<'a>(s: &'a Session, given: &'a Option<String>) -> Option<&'a str> {
    given.as_deref().or(s.grid.as_deref())
}

fn require_grid(s: &Session, r: &Ring, given: &Option<String>) -> Result<Grid, Failure> {
    let text = grid_text(s, given).ok_or_else(|| Failure::input("--grid is required"))?;
    Ok(parse_grid(text, r, s.nvars)?)
}

fn polys(list: &[Poly]) -> Vec<String> {
    list.iter().map(format_poly).collect()
}

fn quotient_bounds(f: &Poly, q: &[Poly], phis: &[Poly]) -> bool {
    q.iter().zip(phis).enumerate().all(|(i, (qi, phi))| {
        let d = phi.degree_in(i).finite().unwrap_or(0) as u64;
        qi.total_degree() <= f.total_degree().minus(d)
    })
}

pub fn run(s: &Session, cmd: &Command) -> Outcome {
    match cmd {
        Command::Reduce { poly, grid } => reduce(s, poly, grid),
        Command::Interpolate { grid, poly, values } => interpolate(s, grid, poly, values),
        Command::Coeff { poly, grid } => coeff(s, poly, grid),
        Command::Witness { poly, a, grid } => witness(s, poly, a, grid),
        Command::Certify { poly, grid, ideal } => certify(s, poly, grid, ideal),
        Command::Variety { ideal, grid, points } => variety_cmd(s, ideal, grid, points),
        Command::Closure { points } => closure(s, points),
        Command::Chevalley { system, grid } => chevalley(s, system, grid),
        Command::Condition { set } => condition(s, set),
        Command::Evalmap { points, all } => evalmap(s, points, *all),
    }
}

#[derive(Serialize)]
struct ReduceResult {
    poly: String,
    grid: GridJson,
    quotients: Vec<String>,
    remainder: String,
}

fn reduce(s: &Session, poly: &str, grid: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let g = require_grid(s, &r, grid)?;
    let f = parse_poly(poly, &r, g.nvars())?;
    let red = cylindrical_reduce(&f, g.phis())?;
    let checks = vec![
        assertion("expansion_identity", red.expand(g.phis()) == f),
        assertion("remainder_reduced", g.shape().contains(&red.remainder)),
        assertion("quotient_degree_bounds", quotient_bounds(&f, &red.quotients, g.phis())),
    ];
    let result = ReduceResult {
        poly: format_poly(&f),
        grid: GridJson::new(&g),
        quotients: polys(&red.quotients),
        remainder: format_poly(&red.remainder),
    };
    Ok(emit(s, "reduce", &r, g.nvars(), &result, &checks))
}

#[derive(Serialize)]
struct PointValue {
    point: String,
    value: String,
}

#[derive(Serialize)]
struct InterpolateResult {
    grid: GridJson,
    values: Vec<PointValue>,
    interpolant: PolyJson,
}

fn interpolate(s: &Session, grid: &Option<String>, poly: &Option<String>, values: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let g = require_grid(s, &r, grid)?;
    let points: Vec<_> = g.points().collect();
    let mut checks = Vec::new();
    let (interp, vals) = match (poly, values) {
        (Some(p), _) => {
            let f = parse_poly(p, &r, g.nvars())?;
            let h = atomic_interpolate_poly(&g, &f)?;
            let red = cylindrical_reduce(&f, g.phis())?;
            checks.push(assertion("equals_reduction_remainder", red.remainder == h));
            let vals: Vec<_> = points.iter().map(|x| f.eval_unchecked(x)).collect();
            (h, vals)
        }
        (None, Some(v)) => {
            let parsed = parse_points(&format!("({v})"), &r, None)?;
            let vals = parsed.into_iter().next().unwrap_or_default();
            if vals.len() != points.len() {
                return Err(Failure::input(format!(
                    "{} values given for {} grid points",
                    vals.len(),
                    points.len()
                )));
            }
            let table = points.iter().cloned().zip(vals.iter().cloned()).collect();
            (atomic_interpolate(&g, &table)?, vals)
        }
        (None, None) => return Err(Failure::input("either --poly or --values is required")),
    };
    checks.insert(
        0,
        assertion(
            "reproduces_values",
            points.iter().zip(&vals).all(|(x, v)| interp.eval_unchecked(x) == *v),
        ),
    );
    checks.insert(1, assertion("reduced", g.shape().contains(&interp)));
    let result = InterpolateResult {
        grid: GridJson::new(&g),
        values: points
            .iter()
            .zip(&vals)
            .map(|(x, v)| PointValue {
                point: format_point(x),
                value: format_element(v),
            })
            .collect(),
        interpolant: PolyJson::new(&interp),
    };
    Ok(emit(s, "interpolate", &r, g.nvars(), &result, &checks))
}

#[derive(Serialize)]
struct CoeffResult {
    poly: String,
    grid: GridJson,
    exponent: Vec<u32>,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numerator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    denominator: Option<String>,
    direct: String,
}

fn coeff(s: &Session, poly: &str, grid: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let g = require_grid(s, &r, grid)?;
    let f = parse_poly(poly, &r, g.nvars())?;
    let rep = coefficient_formula(&g, &f)?;
    let (mode, value, numerator, denominator, ok) = match &rep.value {
        CoefficientValue::Exact(c) => ("exact", Some(format_element(c)), None, None, *c == rep.direct),
        CoefficientValue::Cleared {
            numerator,
            denominator,
        } => (
            "cleared",
            None,
            Some(format_element(numerator)),
            Some(format_element(denominator)),
            r.mul(denominator, &rep.direct) == *numerator,
        ),
    };
    let checks = vec![assertion("matches_direct_coefficient", ok)];
    let result = CoeffResult {
        poly: format_poly(&f),
        grid: GridJson::new(&g),
        exponent: rep.exponent.clone(),
        mode,
        value,
        numerator,
        denominator,
        direct: format_element(&rep.direct),
    };
    Ok(emit(s, "coeff", &r, g.nvars(), &result, &checks))
}

#[derive(Serialize)]
struct WitnessHypotheses {
    degree: bool,
    coefficient: bool,
    condition: bool,
}

#[derive(Serialize)]
struct WitnessResult {
    poly: String,
    a: Vec<u32>,
    grid: GridJson,
    hypotheses: WitnessHypotheses,
    witness: Option<String>,
    value: Option<String>,
}

fn witness(s: &Session, poly: &str, a: &str, grid: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let a = parse_u32_list(a)?;
    let g = match grid_text(s, grid) {
        Some(text) => parse_grid(text, &r, Some(a.len()))?,
        None => {
            let sizes: Vec<usize> = a.iter().map(|x| *x as usize + 1).collect();
            Grid::leading(&r, &sizes)?
        }
    };
    let f = parse_poly(poly, &r, g.nvars())?;
    let out = cnii_witness(&f, &a, &g)?;
    let value = out.witness.as_ref().map(|w| f.eval_unchecked(w));
    let mut checks = vec![assertion(
        "witness_found_when_hypotheses_hold",
        !out.hypotheses_hold() || out.witness.is_some(),
    )];
    if let Some(v) = &value {
        checks.push(assertion("witness_nonvanishing", !r.is_zero(v)));
    }
    let result = WitnessResult {
        poly: format_poly(&f),
        a,
        grid: GridJson::new(&g),
        hypotheses: WitnessHypotheses {
            degree: out.degree_ok,
            coefficient: out.coefficient_ok,
            condition: out.condition_ok,
        },
        witness: out.witness.as_deref().map(format_point),
        value: value.as_ref().map(format_element),
    };
    let code = emit(s, "witness", &r, g.nvars(), &result, &checks);
    if code == 0 && !out.hypotheses_hold() {
        eprintln!("hypotheses not met: {}", out.failed_hypotheses().join(", "));
        return Ok(2);
    }
    Ok(code)
}

#[derive(Serialize)]
struct CertificateJson {
    f: String,
    phis: Vec<String>,
    generators: Vec<String>,
    q: Vec<String>,
    h: Vec<String>,
    verified: bool,
    degree_bounds: bool,
}

impl CertificateJson {
    fn new(c: &Certificate) -> Self {
        CertificateJson {
            f: format_poly(&c.f),
            phis: polys(&c.phis),
            generators: polys(&c.generators),
            q: polys(&c.q),
            h: polys(&c.h),
            verified: c.verified,
            degree_bounds: c.degree_bounds,
        }
    }
}

#[derive(Serialize)]
struct CertifyResult {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn certify(s: &Session, poly: &str, grid: &Option<String>, ideal: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let g = require_grid(s, &r, grid)?;
    let n = g.nvars();
    let f = parse_poly(poly, &r, n)?;
    let (result, checks) = match ideal {
        None => {
            let c = cni_certificate(&f, &g)?;
            let checks = vec![
                assertion("verified", c.check()),
                assertion("degree_bounds", c.degree_bounds),
            ];
            (
                CertifyResult {
                    member: true,
                    certificate: Some(CertificateJson::new(&c)),
                    witness: None,
                },
                checks,
            )
        }
        Some(text) => {
            let j = IdealPresentation::new(&r, n, parse_ideal(text, &r, n)?)?;
            match finitesatz_membership(&f, &g, &j)? {
                Membership::Member(c) => {
                    let checks = vec![
                        assertion("verified", c.check()),
                        assertion("degree_bounds", c.degree_bounds),
                    ];
                    (
                        CertifyResult {
                            member: true,
                            certificate: Some(CertificateJson::new(&c)),
                            witness: None,
                        },
                        checks,
                    )
                }
                Membership::NonMember(x) => {
                    let ok = j.vanishes_at(&x) && !r.is_zero(&f.eval_unchecked(&x));
                    (
                        CertifyResult {
                            member: false,
                            certificate: None,
                            witness: Some(format_point(&x)),
                        },
                        vec![assertion("witness_in_variety_and_nonvanishing", ok)],
                    )
                }
            }
        }
    };
    Ok(emit(s, "certify", &r, n, &result, &checks))
}

#[derive(Serialize)]
struct VarietyResult {
    generators: Vec<String>,
    count: usize,
    points: Vec<String>,
}

fn variety_cmd(s: &Session, ideal: &str, grid: &Option<String>, points: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let (n, v) = match points {
        Some(text) => {
            let pts = parse_points(text, &r, s.nvars)?;
            let n = pts[0].len();
            let j = IdealPresentation::new(&r, n, parse_ideal(ideal, &r, n)?)?;
            (n, (variety_of_points(&pts, &j)?, j))
        }
        None => {
            let g = require_grid(s, &r, grid)?;
            let n = g.nvars();
            let j = IdealPresentation::new(&r, n, parse_ideal(ideal, &r, n)?)?;
            (n, (variety(&g, &j)?, j))
        }
    };
    let (pts, j) = v;
    let checks = vec![assertion("generators_vanish", pts.iter().all(|x| j.vanishes_at(x)))];
    let result = VarietyResult {
        generators: polys(j.generators()),
        count: pts.len(),
        points: pts.iter().map(|x| format_point(x)).collect(),
    };
    Ok(emit(s, "variety", &r, n, &result, &checks))
}

#[derive(Serialize)]
struct ClosureResult {
    points: Vec<String>,
    closure: Vec<String>,
}

fn closure(s: &Session, points: &str) -> Outcome {
    let r = ring(s)?;
    let pts = parse_points(points, &r, s.nvars)?;
    let n = pts[0].len();
    let c = zariski_closure(&r, n, &pts, &s.caps)?;
    let again = zariski_closure(&r, n, &c, &s.caps)?;
    let checks = vec![
        assertion("contains_input", pts.iter().all(|x| c.contains(x))),
        assertion("idempotent", again == c),
    ];
    let result = ClosureResult {
        points: pts.iter().map(|x| format_point(x)).collect(),
        closure: c.iter().map(|x| format_point(x)).collect(),
    };
    Ok(emit(s, "closure", &r, n, &result, &checks))
}

#[derive(Serialize)]
struct CwHypotheses {
    degrees: Vec<u64>,
    lhs: String,
    rhs: String,
    holds: bool,
}

#[derive(Serialize)]
struct CwShape {
    full_field: bool,
    zero_one: bool,
    multiplicative: bool,
}

#[derive(Serialize)]
struct CwPart {
    applicable: bool,
    hypothesis: bool,
    holds: bool,
    pass: bool,
}

impl CwPart {
    fn new(p: &PartStatus) -> Self {
        CwPart {
            applicable: p.applicable,
            hypothesis: p.hypothesis,
            holds: p.holds,
            pass: p.passes(),
        }
    }
}

#[derive(Serialize)]
struct CwParts {
    a: CwPart,
    b: CwPart,
    c: CwPart,
    d: CwPart,
}

#[derive(Serialize)]
struct ChevalleyResult {
    system: Vec<String>,
    grid: GridJson,
    q: u64,
    p: u64,
    hypotheses: CwHypotheses,
    shape: CwShape,
    #[serde(rename = "V_count")]
    v_count: String,
    sum_value: String,
    chi: String,
    top_coefficient: String,
    even_weight: String,
    odd_weight: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    product_sum: Option<String>,
    parts: CwParts,
}

fn chevalley(s: &Session, system: &str, grid: &Option<String>) -> Outcome {
    let r = ring(s)?;
    let g = require_grid(s, &r, grid)?;
    let n = g.nvars();
    let sys = parse_ideal(system, &r, n)?;
    let inst = CwInstance::new(g.clone(), sys)?;
    let rep = rvcw_report(&inst, &s.caps)?;
    let checks = vec![
        assertion("part_a", rep.part_a.passes()),
        assertion("part_b", rep.part_b.passes()),
        assertion("part_c", rep.part_c.passes()),
        assertion("part_d", rep.part_d.passes()),
    ];
    let result = ChevalleyResult {
        system: polys(inst.polys()),
        grid: GridJson::new(&g),
        q: rep.q,
        p: rep.p,
        hypotheses: CwHypotheses {
            degrees: rep.degrees.clone(),
            lhs: rep.hypothesis_lhs.to_string(),
            rhs: rep.hypothesis_rhs.to_string(),
            holds: rep.hypothesis,
        },
        shape: CwShape {
            full_field: rep.shape.full_field,
            zero_one: rep.shape.zero_one,
            multiplicative: rep.shape.multiplicative,
        },
        v_count: rep.v_count.to_string(),
        sum_value: format_element(&rep.sum_value),
        chi: format_poly(&rep.chi),
        top_coefficient: format_element(&rep.top_coefficient),
        even_weight: rep.even_weight.to_string(),
        odd_weight: rep.odd_weight.to_string(),
        product_sum: rep.product_sum.as_ref().map(format_element),
        parts: CwParts {
            a: CwPart::new(&rep.part_a),
            b: CwPart::new(&rep.part_b),
            c: CwPart::new(&rep.part_c),
            d: CwPart::new(&rep.part_d),
        },
    };
    Ok(emit(s, "chevalley", &r, n, &result, &checks))
}

#[derive(Serialize)]
struct PairJson {
    x: String,
    y: String,
    difference: String,
    unit: bool,
    zero_divisor: bool,
}

#[derive(Serialize)]
struct ConditionResult {
    set: Vec<String>,
    condition: SetCondition,
    pairs: Vec<PairJson>,
}

fn condition(s: &Session, set: &str) -> Outcome {
    let r = ring(s)?;
    let inner = set.trim();
    let inner = inner
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(inner);
    let elems = parse_points(&format!("({inner})"), &r, None)?
        .into_iter()
        .next()
        .unwrap_or_default();
    let cond = r.condition_check(&elems)?;
    let mut pairs = Vec::new();
    let mut derived = SetCondition::F;
    for (k, x) in elems.iter().enumerate() {
        for y in &elems[k + 1..] {
            let d = r.sub(x, y);
            let unit = r.is_unit(&d);
            let zd = r.is_zero_divisor(&d);
            derived = derived.meet(if unit {
                SetCondition::F
            } else if zd {
                SetCondition::Neither
            } else {
                SetCondition::DOnly
            });
            pairs.push(PairJson {
                x: format_element(x),
                y: format_element(y),
                difference: format_element(&d),
                unit,
                zero_divisor: zd,
            });
        }
    }
    let checks = vec![assertion("classification_consistent", derived == cond)];
    let result = ConditionResult {
        set: elems.iter().map(format_element).collect(),
        condition: cond,
        pairs,
    };
    Ok(emit(s, "condition", &r, 1, &result, &checks))
}

#[derive(Serialize)]
struct SurjectivityJson {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y_prime: Option<String>,
}

#[derive(Serialize)]
struct InjectivityJson {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_witness: Option<String>,
    boolean_ring: bool,
}

#[derive(Serialize)]
struct EvalmapResult {
    hull_condition: Option<SetCondition>,
    surjectivity: SurjectivityJson,
    injectivity: InjectivityJson,
}

fn evalmap(s: &Session, points: &Option<String>, all: bool) -> Outcome {
    let r = ring(s)?;
    let (n, set) = match (points, all) {
        (Some(text), false) => {
            let pts = parse_points(text, &r, s.nvars)?;
            (pts[0].len(), PointSet::Finite(pts))
        }
        (None, true) => (s.nvars.unwrap_or(1), PointSet::Everything),
        _ => return Err(Failure::input("give either --points or --all")),
    };
    let rep = evalmap_classify(&r, n, &set, &s.caps)?;
    let surjectivity = match &rep.surjectivity {
        Surjectivity::Surjective => SurjectivityJson {
            verdict: "surjective",
            reason: Some("hull_satisfies_F"),
            axis: None,
            y: None,
            y_prime: None,
        },
        Surjectivity::NotSurjectiveInfinite => SurjectivityJson {
            verdict: "not_surjective",
            reason: Some("infinite"),
            axis: None,
            y: None,
            y_prime: None,
        },
        Surjectivity::NotSurjective { axis, y, y_prime } => SurjectivityJson {
            verdict: "not_surjective",
            reason: Some("non_unit_pair"),
            axis: Some(axis + 1),
            y: Some(format_point(y)),
            y_prime: Some(format_point(y_prime)),
        },
        Surjectivity::Undetermined => SurjectivityJson {
            verdict: "undetermined",
            reason: None,
            axis: None,
            y: None,
            y_prime: None,
        },
    };
    let mut checks: Vec<EvalAssertion> = Vec::new();
    let injectivity = match &rep.injectivity {
        Injectivity::Injective => InjectivityJson {
            verdict: "injective",
            kernel_witness: None,
            boolean_ring: false,
        },
        Injectivity::NotInjective {
            kernel_witness,
            boolean,
        } => {
            if let PointSet::Finite(pts) = &set {
                checks.push(assertion(
                    "kernel_witness_vanishes",
                    !kernel_witness.is_zero() && pts.iter().all(|x| r.is_zero(&kernel_witness.eval_unchecked(x))),
                ));
            }
            InjectivityJson {
                verdict: "not_injective",
                kernel_witness: Some(format_poly(kernel_witness)),
                boolean_ring: *boolean,
            }
        }
    };
    let result = EvalmapResult {
        hull_condition: rep.hull_condition,
        surjectivity,
        injectivity,
    };
    Ok(emit(s, "evalmap", &r, n, &result, &checks))
}

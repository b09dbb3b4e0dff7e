//! Cylindrical sets X = X_1 × … × X_n and the interpolation machinery built
//! on their vanishing polynomials φ_i(t_i) = ∏_{x ∈ X_i} (t_i − x).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{is_topped, Point, Poly, ReducedShape, Ring};
use crate::ring::{RingElement, SetCondition};

/// A finite cylindrical subset of R^n with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    ring: Ring,
    sets: Vec<Vec<RingElement>>,
    phis: Vec<Poly>,
    conditions: Vec<SetCondition>,
}

impl Grid {
    /// Each set must be nonempty with distinct members of `ring`.
    pub fn new(ring: &Ring, sets: Vec<Vec<RingElement>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidGrid("a grid needs at least one axis".into()));
        }
        let n = sets.len();
        let mut phis = Vec::with_capacity(n);
        let mut conditions = Vec::with_capacity(n);
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidGrid(format!("X{} is empty", i + 1)));
            }
            for (k, x) in set.iter().enumerate() {
                ring.ensure(x)?;
                if set[..k].contains(x) {
                    return Err(Error::InvalidGrid(format!(
                        "X{} contains a repeated element",
                        i + 1
                    )));
                }
            }
            phis.push(Poly::from_roots(ring, n, i, set));
            conditions.push(ring.condition_check(set)?);
        }
        Ok(Grid {
            ring: ring.clone(),
            sets,
            phis,
            conditions,
        })
    }

    /// X_i = R for every axis; finite rings only.
    pub fn full(ring: &Ring, nvars: usize) -> Result<Self> {
        let all = ring.enumerate()?;
        Self::new(ring, vec![all; nvars])
    }

    /// X_i = the first `sizes[i]` elements of R (0, 1, 2, … for ℤ and ℚ).
    pub fn leading(ring: &Ring, sizes: &[usize]) -> Result<Self> {
        let sets = sizes
            .iter()
            .map(|s| {
                if let Some(card) = ring.cardinality() {
                    if *s as u128 > card {
                        return Err(Error::InvalidGrid(format!(
                            "ring has only {card} elements, {s} requested"
                        )));
                    }
                    Ok((0..*s as u64).map(|k| ring.element_at(k)).collect())
                } else {
                    Ok((0..*s as i64).map(|k| ring.from_i64(k)).collect())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, sets)
    }

    /// Cylindrical hull ∏ π_i(A); coordinates kept in order of first occurrence.
    pub fn hull(ring: &Ring, nvars: usize, points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut sets = vec![Vec::new(); nvars];
        for pt in points {
            if pt.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: pt.len(),
                });
            }
            for (set, x) in sets.iter_mut().zip(pt) {
                if !set.contains(x) {
                    set.push(x.clone());
                }
            }
        }
        Self::new(ring, sets)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<RingElement>] {
        &self.sets
    }

    /// a_i = #X_i.
    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn shape(&self) -> ReducedShape {
        ReducedShape::new(self.sets.iter().map(|s| s.len() as u32).collect())
            .expect("sets are nonempty")
    }

    /// (a_1 − 1, …, a_n − 1), the exponent read by the coefficient formula.
    pub fn top_exponent(&self) -> Vec<u32> {
        self.sets.iter().map(|s| s.len() as u32 - 1).collect()
    }

    pub fn phis(&self) -> &[Poly] {
        &self.phis
    }

    pub fn conditions(&self) -> &[SetCondition] {
        &self.conditions
    }

    /// The weakest per-axis classification.
    pub fn condition(&self) -> SetCondition {
        self.conditions
            .iter()
            .fold(SetCondition::F, |acc, c| acc.meet(*c))
    }

    pub fn num_points(&self) -> u128 {
        self.sets.iter().map(|s| s.len() as u128).product()
    }

    pub fn contains(&self, x: &[RingElement]) -> bool {
        x.len() == self.nvars() && self.sets.iter().zip(x).all(|(s, c)| s.contains(c))
    }

    /// Points in lexicographic order of the given set orderings, last axis fastest.
    pub fn points(&self) -> GridPoints<'_> {
        GridPoints {
            grid: self,
            index: Some(vec![0; self.nvars()]),
        }
    }

    /// φ_i′(x) via the formal derivative of the expanded φ_i.
    pub fn phi_derivative_at(&self, i: usize, x: &RingElement) -> RingElement {
        let mut pt = vec![self.ring.zero(); self.nvars()];
        pt[i] = x.clone();
        self.phis[i].derivative(i).eval_unchecked(&pt)
    }

    /// ∏_{y ∈ X_i, y ≠ x} (x − y); equals φ_i′(x) for x ∈ X_i.
    pub fn difference_product(&self, i: usize, x: &RingElement) -> RingElement {
        self.sets[i]
            .iter()
            .filter(|y| *y != x)
            .fold(self.ring.one(), |acc, y| {
                self.ring.mul(&acc, &self.ring.sub(x, y))
            })
    }

    /// ∏_i φ_i′(x_i).
    pub fn weight(&self, x: &[RingElement]) -> RingElement {
        x.iter()
            .enumerate()
            .fold(self.ring.one(), |acc, (i, xi)| {
                self.ring.mul(&acc, &self.phi_derivative_at(i, xi))
            })
    }

    fn point_label(x: &[RingElement]) -> String {
        format!("{x:?}")
    }
}

/// Iterator over the points of a [`Grid`].
pub struct GridPoints<'a> {
    grid: &'a Grid,
    index: Option<Vec<usize>>,
}

impl Iterator for GridPoints<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let idx = self.index.as_mut()?;
        let point = idx
            .iter()
            .zip(&self.grid.sets)
            .map(|(k, s)| s[*k].clone())
            .collect();
        let mut axis = idx.len();
        loop {
            if axis == 0 {
                self.index = None;
                break;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < self.grid.sets[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
        Some(point)
    }
}

/// The expanded vanishing polynomials φ_1, …, φ_n.
pub fn vanishing_polys(grid: &Grid) -> Vec<Poly> {
    grid.phis.clone()
}

/// δ_{X,x}: numerator ∏_i ∏_{y ≠ x_i} (t_i − y) over denominator ∏_i φ_i′(x_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPoly {
    pub base: Point,
    pub numerator: Poly,
    pub denominator: RingElement,
    /// numerator / denominator, present whenever the denominator is a unit
    /// (always under condition (F)).
    pub poly: Option<Poly>,
}

/// Per-axis Lagrange factor ∏_{y ≠ x} (t_i − y), unscaled.
fn axis_numerator(grid: &Grid, i: usize, x: &RingElement) -> Poly {
    let others: Vec<RingElement> = grid.sets[i].iter().filter(|y| *y != x).cloned().collect();
    Poly::from_roots(&grid.ring, grid.nvars(), i, &others)
}

/// Scaled per-axis factors L_{i,x} for every x ∈ X_i; condition (F) required.
/// Checks L(x) = 1, L(y) = 0 for y ≠ x and deg L = a_i − 1.
fn axis_factors(grid: &Grid) -> Result<Vec<Vec<Poly>>> {
    let ring = &grid.ring;
    let n = grid.nvars();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(grid.sets[i].len());
        for x in &grid.sets[i] {
            let dphi = grid.phi_derivative_at(i, x);
            if dphi != grid.difference_product(i, x) {
                return Err(Error::Invariant("phi' disagrees with the difference product".into()));
            }
            let inv = ring.inverse(&dphi)?;
            let factor = axis_numerator(grid, i, x).scale(&inv);
            let mut pt = vec![ring.zero(); n];
            for y in &grid.sets[i] {
                pt[i] = y.clone();
                let v = factor.eval_unchecked(&pt);
                let expected = if y == x { ring.one() } else { ring.zero() };
                if v != expected {
                    return Err(Error::Invariant("delta factor fails the Kronecker property".into()));
                }
            }
            if factor.degree_in(i).finite() != Some(grid.sets[i].len() as i64 - 1) {
                return Err(Error::Invariant("delta factor has the wrong degree".into()));
            }
            row.push(factor);
        }
        out.push(row);
    }
    Ok(out)
}

fn position(set: &[RingElement], x: &RingElement) -> usize {
    set.iter().position(|y| y == x).expect("point lies in grid")
}

pub fn delta_poly(grid: &Grid, x: &[RingElement]) -> Result<DeltaPoly> {
    if !grid.contains(x) {
        return Err(Error::InvalidGrid(format!(
            "point {} is not in the grid",
            Grid::point_label(x)
        )));
    }
    let ring = &grid.ring;
    let n = grid.nvars();
    let condition = grid.condition();
    if !condition.satisfies_d() {
        return Err(Error::DegenerateGrid(
            "the grid satisfies neither condition (F) nor (D)".into(),
        ));
    }
    let numerator = (0..n).fold(Poly::one(ring, n), |acc, i| {
        &acc * &axis_numerator(grid, i, &x[i])
    });
    let denominator = grid.weight(x);
    let poly = if condition.satisfies_f() {
        let factors = axis_factors(grid)?;
        let delta = (0..n).fold(Poly::one(ring, n), |acc, i| {
            &acc * &factors[i][position(&grid.sets[i], &x[i])]
        });
        if !grid.shape().contains(&delta) {
            return Err(Error::Invariant("delta polynomial is not reduced".into()));
        }
        Some(delta)
    } else {
        ring.inverse(&denominator)
            .ok()
            .map(|inv| numerator.scale(&inv))
    };
    Ok(DeltaPoly {
        base: x.to_vec(),
        numerator,
        denominator,
        poly,
    })
}

fn require_f(grid: &Grid) -> Result<()> {
    if grid.condition().satisfies_f() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(
            "the grid does not satisfy condition (F)".into(),
        ))
    }
}

/// Σ_{x ∈ X} value(x)·δ_{X,x}; condition (F) required.
fn atomic_sum<F>(grid: &Grid, mut value: F) -> Result<Poly>
where
    F: FnMut(&Point) -> Result<RingElement>,
{
    require_f(grid)?;
    let ring = &grid.ring;
    let n = grid.nvars();
    let factors = axis_factors(grid)?;
    let mut acc = Poly::zero(ring, n);
    for pt in grid.points() {
        let v = value(&pt)?;
        ring.ensure(&v)?;
        if ring.is_zero(&v) {
            continue;
        }
        let delta = (0..n).fold(Poly::constant(ring, n, v), |p, i| {
            &p * &factors[i][position(&grid.sets[i], &pt[i])]
        });
        acc = &acc + &delta;
    }
    Ok(acc)
}

/// The unique X-reduced polynomial taking the given values on X.
pub fn atomic_interpolate(grid: &Grid, values: &BTreeMap<Point, RingElement>) -> Result<Poly> {
    atomic_sum(grid, |pt| {
        values
            .get(pt)
            .cloned()
            .ok_or_else(|| Error::MissingPoint(Grid::point_label(pt)))
    })
}

/// Atomic formula applied to the values of `f` on X; equals r_X(f).
pub fn atomic_interpolate_poly(grid: &Grid, f: &Poly) -> Result<Poly> {
    if f.nvars() != grid.nvars() {
        return Err(Error::DimensionMismatch {
            expected: grid.nvars(),
            found: f.nvars(),
        });
    }
    atomic_sum(grid, |pt| f.eval(pt))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientValue {
    /// c_d itself (condition (F)).
    Exact(RingElement),
    /// D·c_d = N (condition (D) with cleared denominators).
    Cleared {
        numerator: RingElement,
        denominator: RingElement,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientReport {
    /// d = (a_1 − 1, …, a_n − 1).
    pub exponent: Vec<u32>,
    pub value: CoefficientValue,
    /// The coefficient of t^d read straight off `f`.
    pub direct: RingElement,
}

/// Recovers the coefficient of t^d, d = (a_i − 1), from the values of `f` on X.
///
/// Requires `f` to be d-topped. Under condition (F) returns
/// Σ_x f(x)/∏φ_i′(x_i); under (D) alone returns the pair (N, D) with
/// D = ∏_i ∏_{x ∈ X_i} φ_i′(x) and N = Σ_x f(x)·D/∏_i φ_i′(x_i), the latter
/// quotient formed as a product of the remaining φ_i′ values.
pub fn coefficient_formula(grid: &Grid, f: &Poly) -> Result<CoefficientReport> {
    if f.nvars() != grid.nvars() {
        return Err(Error::DimensionMismatch {
            expected: grid.nvars(),
            found: f.nvars(),
        });
    }
    let ring = &grid.ring;
    let d = grid.top_exponent();
    if !is_topped(f, &d) {
        return Err(Error::HypothesisViolated(format!(
            "polynomial is not {d:?}-topped"
        )));
    }
    let condition = grid.condition();
    if !condition.satisfies_d() {
        return Err(Error::DegenerateGrid(
            "the grid satisfies neither condition (F) nor (D)".into(),
        ));
    }
    let direct = f.coefficient(&d);

    // derivs[i][k] = φ_i′(X_i[k])
    let derivs: Vec<Vec<RingElement>> = (0..grid.nvars())
        .map(|i| grid.sets[i].iter().map(|x| grid.phi_derivative_at(i, x)).collect())
        .collect();

    let value = if condition.satisfies_f() {
        let inv: Vec<Vec<RingElement>> = derivs
            .iter()
            .map(|row| row.iter().map(|v| ring.inverse(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut sum = ring.zero();
        for pt in grid.points() {
            let fx = f.eval_unchecked(&pt);
            if ring.is_zero(&fx) {
                continue;
            }
            let w = pt.iter().enumerate().fold(fx, |acc, (i, xi)| {
                ring.mul(&acc, &inv[i][position(&grid.sets[i], xi)])
            });
            sum = ring.add(&sum, &w);
        }
        if sum != direct {
            return Err(Error::Invariant(
                "coefficient formula disagrees with the direct coefficient".into(),
            ));
        }
        CoefficientValue::Exact(sum)
    } else {
        // cofactor[i][k] = ∏_{j ≠ k} φ_i′(X_i[j])
        let cofactors: Vec<Vec<RingElement>> = derivs
            .iter()
            .map(|row| {
                (0..row.len())
                    .map(|k| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != k)
                            .fold(ring.one(), |acc, (_, v)| ring.mul(&acc, v))
                    })
                    .collect()
            })
            .collect();
        let denominator = derivs
            .iter()
            .flatten()
            .fold(ring.one(), |acc, v| ring.mul(&acc, v));
        let mut numerator = ring.zero();
        for pt in grid.points() {
            let fx = f.eval_unchecked(&pt);
            if ring.is_zero(&fx) {
                continue;
            }
            let w = pt.iter().enumerate().fold(fx, |acc, (i, xi)| {
                ring.mul(&acc, &cofactors[i][position(&grid.sets[i], xi)])
            });
            numerator = ring.add(&numerator, &w);
        }
        if ring.mul(&denominator, &direct) != numerator {
            return Err(Error::Invariant(
                "cleared coefficient formula disagrees with the direct coefficient".into(),
            ));
        }
        CoefficientValue::Cleared {
            numerator,
            denominator,
        }
    };
    Ok(CoefficientReport {
        exponent: d,
        value,
        direct,
    })
}

/// Hypothesis status and scan result of [`cnii_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CniiOutcome {
    /// deg f ≤ a_1 + … + a_n.
    pub degree_ok: bool,
    /// The coefficient of t^a is nonzero.
    pub coefficient_ok: bool,
    /// The grid satisfies condition (D); automatic over a domain.
    pub condition_ok: bool,
    pub witness: Option<Point>,
}

impl CniiOutcome {
    pub fn hypotheses_hold(&self) -> bool {
        self.degree_ok && self.coefficient_ok && self.condition_ok
    }

    pub fn failed_hypotheses(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.degree_ok {
            out.push("degree");
        }
        if !self.coefficient_ok {
            out.push("coefficient");
        }
        if !self.condition_ok {
            out.push("condition");
        }
        out
    }
}

/// Scans X (with #X_i = a_i + 1) for a point where `f` does not vanish.
///
/// The hypotheses are checked and reported but the scan runs regardless.
/// When they hold and the scan finds nothing, an invariant error is returned.
pub fn cnii_witness(f: &Poly, a: &[u32], grid: &Grid) -> Result<CniiOutcome> {
    if a.len() != grid.nvars() || f.nvars() != grid.nvars() {
        return Err(Error::DimensionMismatch {
            expected: grid.nvars(),
            found: a.len(),
        });
    }
    if grid
        .sizes()
        .iter()
        .zip(a)
        .any(|(s, ai)| *s as u64 != *ai as u64 + 1)
    {
        return Err(Error::InvalidGrid(format!(
            "grid sizes {:?} do not match a + 1 for a = {a:?}",
            grid.sizes()
        )));
    }
    let ring = &grid.ring;
    let bound: i64 = a.iter().map(|x| *x as i64).sum();
    let outcome_base = CniiOutcome {
        degree_ok: f.total_degree() <= crate::poly::Degree::Finite(bound),
        coefficient_ok: !ring.is_zero(&f.coefficient(a)),
        condition_ok: grid.condition().satisfies_d(),
        witness: None,
    };
    let witness = grid
        .points()
        .find(|pt| !ring.is_zero(&f.eval_unchecked(pt)));
    if witness.is_none() && outcome_base.hypotheses_hold() {
        return Err(Error::Invariant(
            "no nonvanishing point although every hypothesis holds".into(),
        ));
    }
    Ok(CniiOutcome {
        witness,
        ..outcome_base
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatsVerdict {
    /// f is the zero polynomial.
    Zero,
    /// f(x) ≠ 0 at the first such point in scan order.
    NotVanishing(Point),
    /// f ≠ 0 but vanishes on all of X; only possible when X violates (D).
    NonzeroVanishing,
}

/// Decides whether an X-reduced `f` vanishes on X, and if so whether it is zero.
pub fn cats_decide(grid: &Grid, f: &Poly) -> Result<CatsVerdict> {
    if !grid.shape().contains(f) {
        return Err(Error::NotReduced(format!(
            "degree bounds {:?} violated",
            grid.sizes()
        )));
    }
    let ring = &grid.ring;
    if let Some(pt) = grid.points().find(|pt| !ring.is_zero(&f.eval_unchecked(pt))) {
        return Ok(CatsVerdict::NotVanishing(pt));
    }
    if f.is_zero() {
        return Ok(CatsVerdict::Zero);
    }
    if grid.condition().satisfies_d() {
        return Err(Error::Invariant(
            "nonzero reduced polynomial vanishes on a condition (D) grid".into(),
        ));
    }
    Ok(CatsVerdict::NonzeroVanishing)
}

/// For a grid violating (D): with x_j, x_k ∈ X_i and z ≠ 0 such that
/// (x_j − x_k)·z = 0, returns z·∏_{y ∈ X_i, y ≠ x_j} (t_i − y), a nonzero
/// X-reduced polynomial vanishing on X.
pub fn cats_counterexample(grid: &Grid) -> Result<Poly> {
    let ring = &grid.ring;
    for (i, set) in grid.sets.iter().enumerate() {
        for (j, xj) in set.iter().enumerate() {
            for xk in &set[j + 1..] {
                let Some(z) = ring.annihilator(&ring.sub(xj, xk)) else {
                    continue;
                };
                let f = axis_numerator(grid, i, xj).scale(&z);
                let mut pt = vec![ring.zero(); grid.nvars()];
                let vanishes = set.iter().all(|y| {
                    pt[i] = y.clone();
                    ring.is_zero(&f.eval_unchecked(&pt))
                });
                if f.is_zero() || !grid.shape().contains(&f) || !vanishes {
                    return Err(Error::Invariant("counterexample construction failed".into()));
                }
                return Ok(f);
            }
        }
    }
    Err(Error::NoCounterexample)
}

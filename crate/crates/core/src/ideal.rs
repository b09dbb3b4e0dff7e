//! The operators I and V_X on finite point sets, ideal membership modulo
//! I(X) with explicit certificates, Zariski closure over finite rings, and
//! classification of the evaluation map.

use std::collections::{HashMap, HashSet};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::grid::{delta_poly, Grid};
use crate::poly::{cylindrical_reduce, Monomial, Point, Poly, Ring};
use crate::ring::{RingElement, RingKind, RingSpec, SetCondition};
use crate::textio::{format_point, format_element};

/// A finite generating list for an ideal of R[t_1, …, t_n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    nvars: usize,
    generators: Vec<Poly>,
}

impl IdealPresentation {
    pub fn new(ring: &Ring, nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        for g in &generators {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            nvars,
            generators,
        })
    }

    /// ⟨1⟩.
    pub fn unit(ring: &Ring, nvars: usize) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            nvars,
            generators: vec![Poly::one(ring, nvars)],
        }
    }

    /// ⟨0⟩, presented by the empty list.
    pub fn zero(ring: &Ring, nvars: usize) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// J₁·J₂, generated by pairwise products.
    pub fn product(&self, other: &IdealPresentation) -> Result<Self> {
        if *self.ring != *other.ring || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a * b))
            .collect();
        Self::new(&self.ring, self.nvars, gens)
    }

    /// J₁ + J₂, generated by the concatenated lists.
    pub fn sum(&self, other: &IdealPresentation) -> Result<Self> {
        if *self.ring != *other.ring || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.ring, self.nvars, gens)
    }

    /// Appends an element of the ideal; the generated ideal is unchanged.
    pub fn with_generator(&self, g: Poly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(&self.ring, self.nvars, gens)
    }

    pub fn vanishes_at(&self, x: &[RingElement]) -> bool {
        self.generators
            .iter()
            .all(|g| self.ring.is_zero(&g.eval_unchecked(x)))
    }
}

/// Values of a function A → R on an ordered finite point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    ring: Ring,
    points: Vec<Point>,
    values: Vec<RingElement>,
}

impl FunctionTable {
    /// Points must be distinct; one value per point.
    pub fn new(ring: &Ring, points: Vec<Point>, values: Vec<RingElement>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: values.len(),
            });
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::InvalidGrid(format!(
                    "point {} listed twice",
                    format_point(p)
                )));
            }
        }
        for v in &values {
            ring.ensure(v)?;
        }
        Ok(FunctionTable {
            ring: ring.clone(),
            points,
            values,
        })
    }

    /// The table of x ↦ f(x).
    pub fn of_poly(f: &Poly, points: &[Point]) -> Result<Self> {
        let values = points.iter().map(|p| f.eval(p)).collect::<Result<Vec<_>>>()?;
        Self::new(f.ring(), points.to_vec(), values)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn values(&self) -> &[RingElement] {
        &self.values
    }

    pub fn get(&self, x: &[RingElement]) -> Option<&RingElement> {
        self.points.iter().position(|p| p == x).map(|k| &self.values[k])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.ring.is_zero(v))
    }

    fn zip_with<F>(&self, other: &FunctionTable, op: F) -> Result<FunctionTable>
    where
        F: Fn(&RingElement, &RingElement) -> RingElement,
    {
        if *self.ring != *other.ring || self.points != other.points {
            return Err(Error::RingMismatch);
        }
        Ok(FunctionTable {
            ring: self.ring.clone(),
            points: self.points.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &FunctionTable) -> Result<FunctionTable> {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn mul(&self, other: &FunctionTable) -> Result<FunctionTable> {
        self.zip_with(other, |a, b| self.ring.mul(a, b))
    }
}

/// V_X(J) for a grid, in grid scan order.
pub fn variety(grid: &Grid, ideal: &IdealPresentation) -> Result<Vec<Point>> {
    check_ideal(grid.ring(), grid.nvars(), ideal)?;
    Ok(grid.points().filter(|x| ideal.vanishes_at(x)).collect())
}

/// V_A(J) for an arbitrary finite point list, in list order.
pub fn variety_of_points(points: &[Point], ideal: &IdealPresentation) -> Result<Vec<Point>> {
    for p in points {
        if p.len() != ideal.nvars {
            return Err(Error::DimensionMismatch {
                expected: ideal.nvars,
                found: p.len(),
            });
        }
        for c in p {
            ideal.ring.ensure(c)?;
        }
    }
    Ok(points.iter().filter(|x| ideal.vanishes_at(x)).cloned().collect())
}

fn check_ideal(ring: &Ring, nvars: usize, ideal: &IdealPresentation) -> Result<()> {
    if **ring != *ideal.ring {
        return Err(Error::RingMismatch);
    }
    if ideal.nvars != nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: ideal.nvars,
        });
    }
    Ok(())
}

fn require_field(ring: &Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::FieldRequired(crate::textio::format_ring(ring)))
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(ring: &Ring, rows: &mut [Vec<RingElement>], ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|k| !ring.is_zero(&rows[*k][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.inverse(&rows[r][c])?;
        for v in rows[r].iter_mut() {
            *v = ring.mul(v, &inv);
        }
        for k in 0..rows.len() {
            if k != r && !ring.is_zero(&rows[k][c]) {
                let factor = rows[k][c].clone();
                for j in 0..ncols {
                    let delta = ring.mul(&factor, &rows[r][j]);
                    rows[k][j] = ring.sub(&rows[k][j], &delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

/// Generators of I(A) over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointIdeal {
    /// The cylindrical hull C(A).
    pub hull: Grid,
    /// Kernel of evaluation on A restricted to C(A)-reduced polynomials,
    /// thinned to those generators still needed alongside the φ_i.
    pub kernel: Vec<Poly>,
}

impl PointIdeal {
    /// φ_1, …, φ_n followed by the kernel generators.
    pub fn generators(&self) -> Vec<Poly> {
        let mut g = self.hull.phis().to_vec();
        g.extend(self.kernel.iter().cloned());
        g
    }

    pub fn presentation(&self) -> IdealPresentation {
        IdealPresentation::new(self.hull.ring(), self.hull.nvars(), self.generators())
            .expect("generators share ring and arity")
    }
}

/// I(A) for a finite A ⊆ F^n: the φ_i of C(A) together with the kernel of
/// evaluation on A among C(A)-reduced polynomials, found by Gaussian
/// elimination. Kernel vectors whose removal leaves V_{C(A)} equal to A are
/// dropped greedily; over a field the remaining list still generates I(A).
pub fn ideal_of_points(ring: &Ring, nvars: usize, points: &[Point]) -> Result<PointIdeal> {
    require_field(ring)?;
    let mut distinct: Vec<Point> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    let hull = Grid::hull(ring, nvars, &distinct)?;
    let mut basis: Vec<Monomial> = hull.shape().basis().into_iter().map(Monomial::new).collect();
    basis.sort();
    let ncols = basis.len();
    let monomial_value = |m: &Monomial, x: &Point| {
        m.exponents()
            .iter()
            .zip(x)
            .fold(ring.one(), |acc, (e, c)| ring.mul(&acc, &ring.pow(c, *e as u64)))
    };
    let mut rows: Vec<Vec<RingElement>> = distinct
        .iter()
        .map(|x| basis.iter().map(|m| monomial_value(m, x)).collect())
        .collect();
    let pivots = rref(ring, &mut rows, ncols)?;
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut terms = vec![(basis[free].exponents().to_vec(), ring.one())];
        for (k, pc) in pivots.iter().enumerate() {
            let v = ring.neg(&rows[k][free]);
            if !ring.is_zero(&v) {
                terms.push((basis[*pc].exponents().to_vec(), v));
            }
        }
        let g = Poly::from_terms(ring, nvars, terms)?;
        if distinct.iter().any(|x| !ring.is_zero(&g.eval_unchecked(x))) {
            return Err(Error::Invariant("kernel vector does not vanish on A".into()));
        }
        kernel.push(g);
    }

    let cuts_out_a = |gens: &[Poly]| {
        hull.points()
            .filter(|x| gens.iter().all(|g| ring.is_zero(&g.eval_unchecked(x))))
            .count()
            == distinct.len()
    };
    let mut kept = kernel.clone();
    let mut k = 0;
    while k < kept.len() {
        let mut trial = kept.clone();
        trial.remove(k);
        if cuts_out_a(&trial) {
            kept = trial;
        } else {
            k += 1;
        }
    }
    if !cuts_out_a(&kept) {
        return Err(Error::Invariant("generators do not cut out A".into()));
    }
    Ok(PointIdeal { hull, kernel: kept })
}

/// f = Σ q_i φ_i + Σ h_j g_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub f: Poly,
    pub phis: Vec<Poly>,
    pub generators: Vec<Poly>,
    pub q: Vec<Poly>,
    pub h: Vec<Poly>,
    /// The identity re-expands exactly.
    pub verified: bool,
    /// deg q_i ≤ deg g − deg φ_i, where g is the part of f carried by the φ_i.
    pub degree_bounds: bool,
}

impl Certificate {
    pub fn expand(&self) -> Poly {
        let ring = self.f.ring();
        let n = self.f.nvars();
        let mut acc = Poly::zero(ring, n);
        for (q, phi) in self.q.iter().zip(&self.phis) {
            acc = &acc + &(q * phi);
        }
        for (h, g) in self.h.iter().zip(&self.generators) {
            acc = &acc + &(h * g);
        }
        acc
    }

    pub fn check(&self) -> bool {
        self.q.len() == self.phis.len()
            && self.h.len() == self.generators.len()
            && self.expand() == self.f
    }
}

fn phi_bounds_hold(g: &Poly, q: &[Poly], phis: &[Poly]) -> bool {
    q.iter().zip(phis).enumerate().all(|(i, (qi, phi))| {
        let d = phi.degree_in(i).finite().unwrap_or(0) as u64;
        qi.total_degree() <= g.total_degree().minus(d)
    })
}

/// f = Σ q_i φ_i for f vanishing on a condition (D) grid.
pub fn cni_certificate(f: &Poly, grid: &Grid) -> Result<Certificate> {
    if f.nvars() != grid.nvars() {
        return Err(Error::DimensionMismatch {
            expected: grid.nvars(),
            found: f.nvars(),
        });
    }
    let ring = grid.ring();
    for x in grid.points() {
        let v = f.eval(&x)?;
        if !ring.is_zero(&v) {
            return Err(Error::NotVanishing {
                point: format_point(&x),
                value: format_element(&v),
            });
        }
    }
    if !grid.condition().satisfies_d() {
        return Err(Error::HypothesisViolated(
            "the grid does not satisfy condition (D)".into(),
        ));
    }
    let red = cylindrical_reduce(f, grid.phis())?;
    if !red.remainder.is_zero() {
        return Err(Error::Invariant(
            "nonzero remainder for a polynomial vanishing on a condition (D) grid".into(),
        ));
    }
    let degree_bounds = phi_bounds_hold(f, &red.quotients, grid.phis());
    let cert = Certificate {
        f: f.clone(),
        phis: grid.phis().to_vec(),
        generators: Vec::new(),
        q: red.quotients,
        h: Vec::new(),
        verified: false,
        degree_bounds,
    };
    let verified = cert.check();
    if !verified || !degree_bounds {
        return Err(Error::Invariant("certificate failed its own checks".into()));
    }
    Ok(Certificate { verified, ..cert })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(Certificate),
    /// A point of V_X(J) where f does not vanish.
    NonMember(Point),
}

/// Decides f ∈ J + I(X) over a field by evaluation on V_X(J), and certifies
/// membership when it holds.
pub fn finitesatz_membership(f: &Poly, grid: &Grid, ideal: &IdealPresentation) -> Result<Membership> {
    let ring = grid.ring();
    require_field(ring)?;
    check_ideal(ring, grid.nvars(), ideal)?;
    if f.nvars() != grid.nvars() {
        return Err(Error::DimensionMismatch {
            expected: grid.nvars(),
            found: f.nvars(),
        });
    }
    let n = grid.nvars();
    let gens = ideal.generators();
    let mut h = vec![Poly::zero(ring, n); gens.len()];
    for x in grid.points() {
        let values: Vec<RingElement> = gens.iter().map(|g| g.eval_unchecked(&x)).collect();
        let fx = f.eval(&x)?;
        match values.iter().position(|v| !ring.is_zero(v)) {
            None => {
                if !ring.is_zero(&fx) {
                    return Ok(Membership::NonMember(x));
                }
            }
            Some(j) => {
                if ring.is_zero(&fx) {
                    continue;
                }
                let c = ring.mul(&fx, &ring.inverse(&values[j])?);
                let delta = delta_poly(grid, &x)?
                    .poly
                    .ok_or_else(|| Error::Invariant("delta undefined over a field".into()))?;
                h[j] = &h[j] + &delta.scale(&c);
            }
        }
    }
    let mut residual = f.clone();
    for (hj, g) in h.iter().zip(gens) {
        residual = &residual - &(hj * g);
    }
    let inner = cni_certificate(&residual, grid)?;
    let cert = Certificate {
        f: f.clone(),
        phis: grid.phis().to_vec(),
        generators: gens.to_vec(),
        q: inner.q,
        h,
        verified: false,
        degree_bounds: inner.degree_bounds,
    };
    let verified = cert.check();
    if !verified {
        return Err(Error::Invariant("membership certificate does not re-expand".into()));
    }
    Ok(Membership::Member(Certificate { verified, ..cert }))
}

fn point_cap(ring: &Ring, nvars: usize, caps: &Caps) -> Result<u128> {
    let card = ring
        .cardinality()
        .ok_or_else(|| Error::NotEnumerable(crate::textio::format_ring(ring)))?;
    let total = card.checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if total > caps.points {
        return Err(Error::CapExceeded {
            what: "points".into(),
            required: total,
            cap: caps.points,
        });
    }
    Ok(total)
}

/// A local factor of a finite ring: a field, or ℤ/p^e with e ≥ 2.
#[derive(Debug, Clone, Copy)]
enum Local {
    Field,
    Chain { p: u64, e: u32 },
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Local factors in CRT order: ℤ/n splits by prime powers, products by factor.
fn local_factors(ring: &RingSpec) -> Vec<Local> {
    match ring.kind() {
        RingKind::IntegersMod(n) => prime_power_factors(*n)
            .into_iter()
            .map(|(p, e)| if e == 1 { Local::Field } else { Local::Chain { p, e } })
            .collect(),
        RingKind::Product(fs) => fs.iter().flat_map(local_factors).collect(),
        _ => vec![Local::Field],
    }
}

/// Coordinates of `x` in the factors of [`local_factors`]. A field
/// coordinate is the element's enumeration index in that field.
fn project(ring: &RingSpec, x: &RingElement, out: &mut Vec<u64>) {
    match (ring.kind(), x) {
        (RingKind::IntegersMod(n), RingElement::Residue(v)) => {
            out.extend(prime_power_factors(*n).iter().map(|(p, e)| v % p.pow(*e)));
        }
        (RingKind::Product(fs), RingElement::Tuple(parts)) => {
            for (f, part) in fs.iter().zip(parts) {
                project(f, part, out);
            }
        }
        _ => out.push(ring.index_of(x).expect("element of a finite ring")),
    }
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

fn inverse_mod(u: u64, p: u64, e: u32) -> u64 {
    let m = p.pow(e) as u128;
    let mut exp = p.pow(e - 1) * (p - 1) - 1;
    let (mut base, mut acc) = (u as u128 % m, 1u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

/// Closure of `a` in (ℤ/p^e)^n. The polynomial functions form the module
/// spanned by the monomial functions; echelonizing that span on the columns
/// of `a` leaves a spanning set of the functions vanishing on `a`, whose
/// common zeros are returned.
fn chain_closure(p: u64, e: u32, nvars: usize, a: &HashSet<Vec<u64>>, caps: &Caps) -> Result<HashSet<Vec<u64>>> {
    let m = p.pow(e);
    let npts = (m as usize).pow(nvars as u32);
    let pts: Vec<Vec<u64>> = (0..npts)
        .map(|mut k| {
            let mut digits = vec![0u64; nvars];
            for d in digits.iter_mut().rev() {
                *d = k as u64 % m;
                k /= m as usize;
            }
            digits
        })
        .collect();
    let position = |x: &[u64]| x.iter().fold(0usize, |acc, &c| acc * m as usize + c as usize);

    let mut rows: Vec<Vec<u64>> = vec![vec![1; npts]];
    let mut seen: HashSet<Vec<u64>> = rows.iter().cloned().collect();
    let mut k = 0;
    while k < rows.len() {
        for i in 0..nvars {
            let next: Vec<u64> = rows[k].iter().zip(&pts).map(|(v, x)| v * x[i] % m).collect();
            if seen.insert(next.clone()) {
                rows.push(next);
                if rows.len() > caps.fixpoint {
                    return Err(Error::CapExceeded {
                        what: "fixpoint".into(),
                        required: rows.len() as u128,
                        cap: caps.fixpoint as u128,
                    });
                }
            }
        }
        k += 1;
    }

    let mut columns: Vec<usize> = a.iter().map(|x| position(x)).collect();
    columns.sort_unstable();
    for col in columns {
        let Some(best) = (0..rows.len())
            .filter(|&r| rows[r][col] != 0)
            .min_by_key(|&r| valuation(rows[r][col], p))
        else {
            continue;
        };
        let mut pivot = rows.swap_remove(best);
        let v = valuation(pivot[col], p);
        let pv = p.pow(v);
        let u = inverse_mod(pivot[col] / pv, p, e);
        for x in pivot.iter_mut() {
            *x = *x * u % m;
        }
        for row in rows.iter_mut() {
            let f = row[col] / pv;
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + m - f * y % m) % m;
                }
            }
        }
        // Multiples of the pivot row that vanish in this column.
        if v > 0 {
            let scale = p.pow(e - v);
            let killed: Vec<u64> = pivot.iter().map(|x| x * scale % m).collect();
            if killed.iter().any(|&x| x != 0) {
                rows.push(killed);
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    Ok((0..npts)
        .filter(|&k| rows.iter().all(|r| r[k] == 0))
        .map(|k| pts[k].clone())
        .collect())
}

/// A̅ = V(I(A)) for finite R. Polynomial functions on a product of rings are
/// tuples of polynomial functions on the factors, so the closure is computed
/// factor by factor: on a field every function is polynomial and the closure
/// of a set is itself; on ℤ/p^e it comes from [`chain_closure`].
/// Points are returned in enumeration order of R^n.
pub fn zariski_closure(ring: &Ring, nvars: usize, a: &[Point], caps: &Caps) -> Result<Vec<Point>> {
    let total = point_cap(ring, nvars, caps)?;
    for x in a {
        if x.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: x.len(),
            });
        }
        for c in x {
            ring.ensure(c)?;
        }
    }
    let factors = local_factors(ring);
    let elems = ring.enumerate()?;
    let coords: Vec<Vec<u64>> = elems
        .iter()
        .map(|e| {
            let mut v = Vec::new();
            project(ring, e, &mut v);
            v
        })
        .collect();
    let index: HashMap<&RingElement, usize> = elems.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let split = |x: &[usize]| -> Vec<Vec<u64>> {
        (0..factors.len())
            .map(|j| x.iter().map(|&i| coords[i][j]).collect())
            .collect()
    };
    let a_split: Vec<Vec<Vec<u64>>> = a
        .iter()
        .map(|x| split(&x.iter().map(|c| index[c]).collect::<Vec<_>>()))
        .collect();
    let mut closed = Vec::with_capacity(factors.len());
    for (j, local) in factors.iter().enumerate() {
        let aj: HashSet<Vec<u64>> = a_split.iter().map(|x| x[j].clone()).collect();
        closed.push(match *local {
            Local::Field => aj,
            Local::Chain { p, e } => chain_closure(p, e, nvars, &aj, caps)?,
        });
    }
    let q = elems.len();
    let mut out = Vec::new();
    for mut k in 0..total as usize {
        let mut digits = vec![0usize; nvars];
        for d in digits.iter_mut().rev() {
            *d = k % q;
            k /= q;
        }
        if split(&digits).iter().zip(&closed).all(|(x, c)| c.contains(x)) {
            out.push(digits.iter().map(|&i| elems[i].clone()).collect());
        }
    }
    Ok(out)
}

/// A point set handed to [`evalmap_classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSet {
    Finite(Vec<Point>),
    /// All of R^n.
    Everything,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surjectivity {
    /// C(X) satisfies condition (F).
    Surjective,
    /// X is infinite.
    NotSurjectiveInfinite,
    /// y, y′ ∈ X differ only in coordinate `axis` by a non-unit, so the
    /// indicator of y on the cylinder Y = {y, y′} has no interpolant.
    NotSurjective {
        axis: usize,
        y: Point,
        y_prime: Point,
    },
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    /// R^n over an infinite domain.
    Injective,
    /// A nonzero polynomial vanishing on X.
    NotInjective { kernel_witness: Poly, boolean: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalMapReport {
    /// Weakest condition met by the axes of C(X); absent for infinite X.
    pub hull_condition: Option<SetCondition>,
    pub surjectivity: Surjectivity,
    pub injectivity: Injectivity,
}

/// Classifies E_X: R[t] → R^X as far as the available criteria allow.
pub fn evalmap_classify(ring: &Ring, nvars: usize, set: &PointSet, caps: &Caps) -> Result<EvalMapReport> {
    let points = match set {
        PointSet::Everything if !ring.is_finite() => {
            return Ok(EvalMapReport {
                hull_condition: None,
                surjectivity: Surjectivity::NotSurjectiveInfinite,
                injectivity: Injectivity::Injective,
            });
        }
        PointSet::Everything => {
            point_cap(ring, nvars, caps)?;
            Grid::full(ring, nvars)?.points().collect::<Vec<_>>()
        }
        PointSet::Finite(p) => p.clone(),
    };
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let hull = Grid::hull(ring, nvars, &points)?;
    let hull_condition = hull.condition();

    let surjectivity = if hull_condition.satisfies_f() {
        Surjectivity::Surjective
    } else {
        let mut found = None;
        'search: for (k, y) in points.iter().enumerate() {
            for y2 in &points[k + 1..] {
                let differing: Vec<usize> = (0..nvars).filter(|i| y[*i] != y2[*i]).collect();
                if let [axis] = differing[..] {
                    if !ring.is_unit(&ring.sub(&y[axis], &y2[axis])) {
                        found = Some(Surjectivity::NotSurjective {
                            axis,
                            y: y.clone(),
                            y_prime: y2.clone(),
                        });
                        break 'search;
                    }
                }
            }
        }
        found.unwrap_or(Surjectivity::Undetermined)
    };

    let boolean = ring.is_boolean();
    let kernel_witness = if boolean {
        let t1 = Poly::var(ring, nvars, 0);
        &(&t1 * &t1) - &t1
    } else {
        hull.phis()[0].clone()
    };
    if kernel_witness.is_zero()
        || points
            .iter()
            .any(|x| !ring.is_zero(&kernel_witness.eval_unchecked(x)))
    {
        return Err(Error::Invariant("kernel witness does not vanish on X".into()));
    }
    Ok(EvalMapReport {
        hull_condition: Some(hull_condition),
        surjectivity,
        injectivity: Injectivity::NotInjective {
            kernel_witness,
            boolean,
        },
    })
}

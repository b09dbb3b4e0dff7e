//! Sparse multivariate polynomials over a [`RingSpec`], monic division and
//! cylindrical reduction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};

/// Shared handle to a ring; every polynomial, grid and certificate holds one.
pub type Ring = Arc<RingSpec>;

/// A point of R^n.
pub type Point = Vec<RingElement>;

/// Exponent vector, ordered graded-lexicographically (t1 most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|e| *e as u64).sum()
    }

    /// True iff every exponent is at least the corresponding entry of `other`.
    pub fn dominates(&self, other: &[u32]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a >= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial degree; the zero polynomial has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(i64),
}

impl Degree {
    /// `self - k`, with minus infinity absorbing.
    pub fn minus(self, k: u64) -> Degree {
        match self {
            Degree::MinusInfinity => Degree::MinusInfinity,
            Degree::Finite(d) => Degree::Finite(d - k as i64),
        }
    }

    pub fn plus(self, k: u64) -> Degree {
        match self {
            Degree::MinusInfinity => Degree::MinusInfinity,
            Degree::Finite(d) => Degree::Finite(d + k as i64),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial: no stored zero coefficients.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, RingElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Ring, nvars: usize) -> Self {
        Poly {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: RingElement) -> Self {
        Self::monomial(ring, nvars, vec![0; nvars], c)
    }

    pub fn one(ring: &Ring, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    /// The variable t_{i+1} (0-based index `i`).
    pub fn var(ring: &Ring, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(ring, nvars, e, ring.one())
    }

    pub fn monomial(ring: &Ring, nvars: usize, exponents: Vec<u32>, c: RingElement) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial(exponents), c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, validating
    /// coefficients and exponent lengths; repeated monomials are summed.
    pub fn from_terms<I>(ring: &Ring, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, RingElement)>,
    {
        let mut p = Self::zero(ring, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            ring.ensure(&c)?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Univariate polynomial in t_{i+1} from dense coefficients (low to high).
    pub fn univariate(ring: &Ring, nvars: usize, i: usize, coeffs: &[RingElement]) -> Self {
        let mut p = Self::zero(ring, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// ∏_{x ∈ roots} (t_{i+1} − x), expanded.
    pub fn from_roots(ring: &Ring, nvars: usize, i: usize, roots: &[RingElement]) -> Self {
        // dense coefficients, low to high
        let mut coeffs = vec![ring.one()];
        for x in roots {
            let mut next = vec![ring.zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = ring.add(&next[k + 1], c);
                next[k] = ring.sub(&next[k], &ring.mul(c, x));
            }
            coeffs = next;
        }
        Self::univariate(ring, nvars, i, &coeffs)
    }

    fn add_term(&mut self, m: Monomial, c: RingElement) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.ring.add(existing, &c);
                if self.ring.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RingElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> RingElement {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |m| Degree::Finite(m.total_degree() as i64))
    }

    pub fn degree_in(&self, i: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[i])
            .max()
            .map_or(Degree::MinusInfinity, |d| Degree::Finite(d as i64))
    }

    /// `Some(dense coefficients)` if only t_{i+1} occurs.
    pub fn univariate_coeffs(&self, i: usize) -> Option<Vec<RingElement>> {
        let len = self.degree_in(i).finite().map_or(0, |d| d as usize + 1);
        let mut out = vec![self.ring.zero(); len];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, e)| j != i && *e != 0) {
                return None;
            }
            out[m.0[i] as usize] = c.clone();
        }
        Some(out)
    }

    fn check_compatible(&self, other: &Poly) {
        assert!(
            self.nvars == other.nvars && *self.ring == *other.ring,
            "ring mismatch between polynomials"
        );
    }

    pub fn scale(&self, c: &RingElement) -> Poly {
        let mut out = Poly::zero(&self.ring, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring, self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to t_{i+1}.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.ring, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            out.add_term(Monomial(m2), self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        out
    }

    /// Exact value at `x`; coordinates must lie in the polynomial's ring.
    pub fn eval(&self, x: &[RingElement]) -> Result<RingElement> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        for c in x {
            self.ring.ensure(c)?;
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without validating the point.
    pub fn eval_unchecked(&self, x: &[RingElement]) -> RingElement {
        let r = &*self.ring;
        // powers[i][e] = x_i^e, grown on demand
        let mut powers: Vec<Vec<RingElement>> = x.iter().map(|_| vec![r.one()]).collect();
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= *e as usize {
                    let next = r.mul(pw.last().expect("nonempty"), &x[i]);
                    pw.push(next);
                }
                term = r.mul(&term, &pw[*e as usize]);
            }
            acc = r.add(&acc, &term);
        }
        acc
    }

    pub fn is_reduced(&self, shape: &ReducedShape) -> bool {
        shape.contains(self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let mut out = Poly::zero(&self.ring, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.ring.neg(c));
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = Poly::zero(&self.ring, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        out
    }
}

/// Per-variable degree bounds (d_1,…,d_n); a polynomial is d-reduced when
/// deg_{t_i} f < d_i for every i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedShape {
    bounds: Vec<u32>,
}

impl ReducedShape {
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        if bounds.contains(&0) {
            return Err(Error::InvalidGrid("reduced shape entries must be positive".into()));
        }
        Ok(ReducedShape { bounds })
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Rank d_1⋯d_n of the module of d-reduced polynomials.
    pub fn rank(&self) -> u128 {
        self.bounds.iter().map(|d| *d as u128).product()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.nvars() == self.bounds.len()
            && f.terms().all(|(m, _)| m.0.iter().zip(&self.bounds).all(|(e, d)| e < d))
    }

    /// Monomial basis {t^a : 0 ≤ a_i < d_i}, last variable fastest.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for d in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..*d).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// Divides `a` by `b`, a monic polynomial in t_{i+1} alone, returning the
/// unique `(q, r)` with `a = q·b + r` and deg_{t_i} r < deg b.
pub fn monic_divide(a: &Poly, b: &Poly, i: usize) -> Result<(Poly, Poly)> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    if *a.ring != *b.ring {
        return Err(Error::RingMismatch);
    }
    if i >= a.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            found: i + 1,
        });
    }
    let ring = &*a.ring;
    let bc = b.univariate_coeffs(i).ok_or_else(|| {
        Error::NonMonicDivisor(format!("divisor must be univariate in t{}", i + 1))
    })?;
    let d = match bc.last() {
        Some(lead) if ring.is_one(lead) => bc.len() - 1,
        _ => {
            return Err(Error::NonMonicDivisor(format!(
                "leading coefficient in t{} is not 1",
                i + 1
            )))
        }
    };

    // a grouped by the exponent of t_i; inner keys have that exponent zeroed
    let mut levels: BTreeMap<u32, BTreeMap<Monomial, RingElement>> = BTreeMap::new();
    for (m, c) in &a.terms {
        let mut rest = m.clone();
        let k = std::mem::replace(&mut rest.0[i], 0);
        levels.entry(k).or_default().insert(rest, c.clone());
    }

    let mut q = Poly::zero(&a.ring, a.nvars);
    while let Some((&k, _)) = levels.last_key_value() {
        if (k as usize) < d {
            break;
        }
        let layer = levels.remove(&k).expect("present");
        let shift = k - d as u32;
        for (rest, c) in layer {
            let mut qm = rest.clone();
            qm.0[i] = shift;
            q.add_term(qm, c.clone());
            for (j, bj) in bc[..d].iter().enumerate() {
                if ring.is_zero(bj) {
                    continue;
                }
                let target = levels.entry(shift + j as u32).or_default();
                let delta = ring.mul(&c, bj);
                match target.get_mut(&rest) {
                    Some(v) => {
                        *v = ring.sub(v, &delta);
                        if ring.is_zero(v) {
                            target.remove(&rest);
                        }
                    }
                    None => {
                        target.insert(rest.clone(), ring.neg(&delta));
                    }
                }
            }
        }
    }

    let mut r = Poly::zero(&a.ring, a.nvars);
    for (k, layer) in levels {
        for (mut m, c) in layer {
            m.0[i] = k;
            r.add_term(m, c);
        }
    }

    let deg_a = a.total_degree();
    if q.total_degree().plus(d as u64) > deg_a || r.total_degree() > deg_a {
        return Err(Error::Invariant("division degree bounds violated".into()));
    }
    Ok((q, r))
}

/// Output of [`cylindrical_reduce`]: `f = Σ quotients[i]·φ_i + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

impl Reduction {
    /// Σ q_i φ_i + r.
    pub fn expand(&self, phis: &[Poly]) -> Poly {
        self.quotients
            .iter()
            .zip(phis)
            .fold(self.remainder.clone(), |acc, (q, phi)| &acc + &(q * phi))
    }
}

/// Reduces `f` modulo monic univariate φ_1(t_1),…,φ_n(t_n), dividing by φ_1
/// first, then the remainder by φ_2, and so on. The remainder is the unique
/// reduced representative; the quotients depend on this order.
pub fn cylindrical_reduce(f: &Poly, phis: &[Poly]) -> Result<Reduction> {
    if phis.len() != f.nvars {
        return Err(Error::DimensionMismatch {
            expected: f.nvars,
            found: phis.len(),
        });
    }
    let mut remainder = f.clone();
    let mut quotients = Vec::with_capacity(phis.len());
    let deg_f = f.total_degree();
    for (i, phi) in phis.iter().enumerate() {
        let deg_phi = match phi.degree_in(i) {
            Degree::Finite(d) if d >= 1 => d as u64,
            _ => {
                return Err(Error::NonMonicDivisor(format!(
                    "phi_{} must have degree >= 1 in t{}",
                    i + 1,
                    i + 1
                )))
            }
        };
        let (q, r) = monic_divide(&remainder, phi, i)?;
        if q.total_degree() > deg_f.minus(deg_phi) {
            return Err(Error::Invariant(format!(
                "quotient {} exceeds the degree bound",
                i + 1
            )));
        }
        quotients.push(q);
        remainder = r;
    }
    Ok(Reduction {
        quotients,
        remainder,
    })
}

/// True iff no monomial t^e with e ≥ d coordinatewise and Σe > Σd occurs in `f`.
pub fn is_topped(f: &Poly, d: &[u32]) -> bool {
    let bound: u64 = d.iter().map(|x| *x as u64).sum();
    f.terms()
        .all(|(m, _)| !(m.dominates(d) && m.total_degree() > bound))
}

//! Exact commutative rings: ℤ, ℚ, ℤ/n, GF(p), GF(p^k) and finite products.
//!
//! A [`RingSpec`] is a validated description of a ring and performs all the
//! arithmetic; a [`RingElement`] is a plain canonical value with no pointer
//! back to its ring. Canonical forms are unique, so structural equality of
//! elements is ring equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest extension degree accepted; irreducibility is decided by brute force.
pub const MAX_EXTENSION_DEGREE: usize = 4;

/// Cap on the number of candidate factors tried during the irreducibility test.
const IRREDUCIBILITY_SEARCH_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    IntegersMod(u64),
    PrimeField(u64),
    /// GF(p)[u]/(modulus); `modulus` is monic, coefficients low to high.
    ExtensionField { p: u64, modulus: Vec<u64> },
    /// Finite factors only, never nested, at least two of them.
    Product(Vec<RingSpec>),
}

/// A validated commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: RingKind,
}

/// Canonical representative of a ring element.
///
/// `Residue` serves both ℤ/n and GF(p); `Ext` holds exactly `k`
/// coefficients (low to high) of a class in GF(p)[u]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Integer(BigInt),
    Rational(BigRational),
    Residue(u64),
    Ext(Vec<u64>),
    Tuple(Vec<RingElement>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Classification of a finite subset by its pairwise differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SetCondition {
    /// Every difference of distinct elements is a unit.
    #[serde(rename = "F")]
    F,
    /// Every difference is a non-zero-divisor but some difference is not a unit.
    #[serde(rename = "D_only")]
    DOnly,
    #[serde(rename = "neither")]
    Neither,
}

impl SetCondition {
    pub fn satisfies_f(self) -> bool {
        self == SetCondition::F
    }

    pub fn satisfies_d(self) -> bool {
        self != SetCondition::Neither
    }

    /// The weaker of two classifications; used to combine per-axis results.
    pub fn meet(self, other: SetCondition) -> SetCondition {
        self.max(other)
    }
}

impl fmt::Display for SetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SetCondition::F => "F",
            SetCondition::DOnly => "D_only",
            SetCondition::Neither => "neither",
        };
        f.write_str(s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns `(p, k)` with `q = p^k`, `p` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

fn reduce_bigint(v: &BigInt, n: u64) -> u64 {
    v.mod_floor(&BigInt::from(n)).to_u64().expect("residue fits in u64")
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = extended_gcd(a as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Remainder of `a` modulo the monic `m` over GF(p); slices are low to high.
fn gfp_poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let k = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= k {
        r.resize(k, 0);
        return r;
    }
    for j in (k..r.len()).rev() {
        let c = r[j];
        if c == 0 {
            continue;
        }
        for i in 0..=k {
            let idx = j - k + i;
            r[idx] = sub_mod(r[idx], mul_mod(c, m[i], p), p);
        }
    }
    r.truncate(k);
    r
}

/// Brute-force irreducibility test: no monic factor of degree ≤ k/2.
fn is_irreducible(p: u64, modulus: &[u64]) -> Result<bool> {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = p
            .checked_pow(d as u32)
            .filter(|c| *c <= IRREDUCIBILITY_SEARCH_CAP)
            .ok_or_else(|| {
                Error::InvalidRing(format!(
                    "GF({p}^{k}) is too large for the brute-force irreducibility check"
                ))
            })?;
        for index in 0..count {
            let mut factor = digits(index, p, d);
            factor.push(1);
            if gfp_poly_rem(modulus, &factor, p).iter().all(|c| *c == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Base-`p` digits of `index`, least significant first, padded to `len`.
fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec {
            kind: RingKind::Integers,
        }
    }

    pub fn rationals() -> Self {
        RingSpec {
            kind: RingKind::Rationals,
        }
    }

    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n} requires n >= 2")));
        }
        Ok(RingSpec {
            kind: RingKind::IntegersMod(n),
        })
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingSpec {
            kind: RingKind::PrimeField(p),
        })
    }

    /// GF(p)[u]/(modulus) with `modulus` given low to high; must be monic,
    /// irreducible and of degree 2..=4.
    pub fn extension_field(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        let k = modulus.len().saturating_sub(1);
        if k < 2 {
            return Err(Error::InvalidRing(format!(
                "extension modulus must have degree >= 2, got degree {k}"
            )));
        }
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidRing(format!(
                "extension degree {k} exceeds the supported maximum {MAX_EXTENSION_DEGREE}"
            )));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidRing("extension modulus must be monic".into()));
        }
        if p.checked_pow(k as u32).is_none() {
            return Err(Error::InvalidRing(format!("GF({p}^{k}) is too large")));
        }
        if !is_irreducible(p, &modulus)? {
            return Err(Error::InvalidRing(format!(
                "modulus is reducible over GF({p})"
            )));
        }
        Ok(RingSpec {
            kind: RingKind::ExtensionField { p, modulus },
        })
    }

    /// GF(p^k) with the first irreducible monic modulus in enumeration order
    /// (lower coefficients read as a base-p number, least significant first).
    pub fn galois_field(q: u64) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::InvalidRing(format!("{q} is not a prime power")))?;
        if k == 1 {
            return Self::prime_field(p);
        }
        let k = k as usize;
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidRing(format!(
                "extension degree {k} exceeds the supported maximum {MAX_EXTENSION_DEGREE}"
            )));
        }
        for index in 0..p.pow(k as u32) {
            let mut modulus = digits(index, p, k);
            modulus.push(1);
            if is_irreducible(p, &modulus)? {
                return Self::extension_field(p, modulus);
            }
        }
        Err(Error::Invariant(format!("no irreducible polynomial of degree {k} over GF({p})")))
    }

    /// Product of finite rings; nested products are flattened.
    pub fn product(factors: Vec<RingSpec>) -> Result<Self> {
        let mut flat = Vec::new();
        for f in factors {
            match f.kind {
                RingKind::Product(inner) => flat.extend(inner),
                _ => flat.push(f),
            }
        }
        if flat.len() < 2 {
            return Err(Error::InvalidRing("a product needs at least two factors".into()));
        }
        if let Some(bad) = flat.iter().find(|f| !f.is_finite()) {
            return Err(Error::InvalidRing(format!(
                "product factors must be finite, got {:?}",
                bad.kind
            )));
        }
        Ok(RingSpec {
            kind: RingKind::Product(flat),
        })
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, RingKind::Integers | RingKind::Rationals)
    }

    pub fn cardinality(&self) -> Option<u128> {
        match &self.kind {
            RingKind::Integers | RingKind::Rationals => None,
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => Some(*n as u128),
            RingKind::ExtensionField { p, modulus } => {
                Some((*p as u128).pow((modulus.len() - 1) as u32))
            }
            RingKind::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.cardinality()?)),
        }
    }

    /// Order `q` of a finite field, `None` for anything else.
    pub fn field_order(&self) -> Option<u64> {
        match &self.kind {
            RingKind::PrimeField(p) => Some(*p),
            RingKind::IntegersMod(n) if is_prime(*n) => Some(*n),
            RingKind::ExtensionField { p, modulus } => Some(p.pow((modulus.len() - 1) as u32)),
            _ => None,
        }
    }

    /// Characteristic; 0 for ℤ and ℚ.
    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            RingKind::Integers | RingKind::Rationals => 0,
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => *n,
            RingKind::ExtensionField { p, .. } => *p,
            RingKind::Product(fs) => fs.iter().fold(1, |acc, f| acc.lcm(&f.characteristic())),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Rationals) || self.field_order().is_some()
    }

    pub fn is_domain(&self) -> bool {
        matches!(self.kind, RingKind::Integers) || self.is_field()
    }

    /// No nonzero nilpotents.
    pub fn is_reduced(&self) -> bool {
        match &self.kind {
            RingKind::IntegersMod(n) => {
                let mut m = *n;
                let mut d = 2u64;
                while d.saturating_mul(d) <= m {
                    if m % d == 0 {
                        m /= d;
                        if m % d == 0 {
                            return false;
                        }
                    }
                    d += 1;
                }
                true
            }
            RingKind::Product(fs) => fs.iter().all(RingSpec::is_reduced),
            _ => true,
        }
    }

    /// x² = x for every element.
    pub fn is_boolean(&self) -> bool {
        match &self.kind {
            RingKind::IntegersMod(2) | RingKind::PrimeField(2) => true,
            RingKind::Product(fs) => fs.iter().all(RingSpec::is_boolean),
            _ => false,
        }
    }

    /// True iff `e` is a canonical representative of an element of this ring.
    pub fn contains(&self, e: &RingElement) -> bool {
        match (&self.kind, e) {
            (RingKind::Integers, RingElement::Integer(_)) => true,
            (RingKind::Rationals, RingElement::Rational(r)) => {
                r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
            }
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), RingElement::Residue(r)) => {
                r < n
            }
            (RingKind::ExtensionField { p, modulus }, RingElement::Ext(cs)) => {
                cs.len() == modulus.len() - 1 && cs.iter().all(|c| c < p)
            }
            (RingKind::Product(fs), RingElement::Tuple(cs)) => {
                fs.len() == cs.len() && fs.iter().zip(cs).all(|(f, c)| f.contains(c))
            }
            _ => false,
        }
    }

    pub fn ensure(&self, e: &RingElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the canonical map ℤ → R.
    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        match &self.kind {
            RingKind::Integers => RingElement::Integer(v.clone()),
            RingKind::Rationals => RingElement::Rational(BigRational::from_integer(v.clone())),
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => {
                RingElement::Residue(reduce_bigint(v, *n))
            }
            RingKind::ExtensionField { p, modulus } => {
                let mut cs = vec![0; modulus.len() - 1];
                cs[0] = reduce_bigint(v, *p);
                RingElement::Ext(cs)
            }
            RingKind::Product(fs) => {
                RingElement::Tuple(fs.iter().map(|f| f.from_bigint(v)).collect())
            }
        }
    }

    /// `numer / denom`, exact in ℚ; elsewhere requires `denom` to map to a unit.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<RingElement> {
        if denom.is_zero() {
            return Err(Error::NotAUnit);
        }
        if let RingKind::Rationals = self.kind {
            return Ok(RingElement::Rational(BigRational::new(
                numer.clone(),
                denom.clone(),
            )));
        }
        let inv = self.inverse(&self.from_bigint(denom))?;
        Ok(self.mul(&self.from_bigint(numer), &inv))
    }

    /// Embeds a coefficient vector of GF(p)[u] (low to high); extension fields only.
    pub fn ext_from_coeffs(&self, coeffs: &[u64]) -> Result<RingElement> {
        match &self.kind {
            RingKind::ExtensionField { p, modulus } => {
                let cs: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                Ok(RingElement::Ext(gfp_poly_rem(&cs, modulus, *p)))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn is_zero(&self, e: &RingElement) -> bool {
        match e {
            RingElement::Integer(v) => v.is_zero(),
            RingElement::Rational(v) => v.is_zero(),
            RingElement::Residue(v) => *v == 0,
            RingElement::Ext(cs) => cs.iter().all(|c| *c == 0),
            RingElement::Tuple(cs) => match &self.kind {
                RingKind::Product(fs) => fs.iter().zip(cs).all(|(f, c)| f.is_zero(c)),
                _ => false,
            },
        }
    }

    pub fn is_one(&self, e: &RingElement) -> bool {
        *e == self.one()
    }

    /// Checked arithmetic: both operands must belong to this ring.
    /// `b` is ignored for `Neg`.
    pub fn arith(&self, op: ArithOp, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.ensure(a)?;
        if op != ArithOp::Neg {
            self.ensure(b)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    /// Unchecked addition; operands are assumed to be canonical members.
    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (&self.kind, a, b) {
            (_, Integer(x), Integer(y)) => Integer(x + y),
            (_, Rational(x), Rational(y)) => Rational(x + y),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Residue(x), Residue(y)) => {
                Residue(add_mod(*x, *y, *n))
            }
            (RingKind::ExtensionField { p, .. }, Ext(x), Ext(y)) => {
                Ext(x.iter().zip(y).map(|(u, v)| add_mod(*u, *v, *p)).collect())
            }
            (RingKind::Product(fs), Tuple(x), Tuple(y)) => Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (u, v))| f.add(u, v))
                    .collect(),
            ),
            _ => panic!("ring mismatch in add"),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        use RingElement::*;
        match (&self.kind, a) {
            (_, Integer(x)) => Integer(-x),
            (_, Rational(x)) => Rational(-x),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Residue(x)) => {
                Residue(sub_mod(0, *x, *n))
            }
            (RingKind::ExtensionField { p, .. }, Ext(x)) => {
                Ext(x.iter().map(|u| sub_mod(0, *u, *p)).collect())
            }
            (RingKind::Product(fs), Tuple(x)) => {
                Tuple(fs.iter().zip(x).map(|(f, u)| f.neg(u)).collect())
            }
            _ => panic!("ring mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (&self.kind, a, b) {
            (_, Integer(x), Integer(y)) => Integer(x - y),
            (_, Rational(x), Rational(y)) => Rational(x - y),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Residue(x), Residue(y)) => {
                Residue(sub_mod(*x, *y, *n))
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (&self.kind, a, b) {
            (_, Integer(x), Integer(y)) => Integer(x * y),
            (_, Rational(x), Rational(y)) => Rational(x * y),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Residue(x), Residue(y)) => {
                Residue(mul_mod(*x, *y, *n))
            }
            (RingKind::ExtensionField { p, modulus }, Ext(x), Ext(y)) => {
                let mut prod = vec![0u64; x.len() + y.len() - 1];
                for (i, u) in x.iter().enumerate() {
                    if *u == 0 {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        prod[i + j] = add_mod(prod[i + j], mul_mod(*u, *v, *p), *p);
                    }
                }
                Ext(gfp_poly_rem(&prod, modulus, *p))
            }
            (RingKind::Product(fs), Tuple(x), Tuple(y)) => Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (u, v))| f.mul(u, v))
                    .collect(),
            ),
            _ => panic!("ring mismatch in mul"),
        }
    }

    pub fn pow(&self, a: &RingElement, mut exp: u64) -> RingElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        match (&self.kind, a) {
            (RingKind::Integers, RingElement::Integer(v)) => v.abs().is_one(),
            (RingKind::Product(fs), RingElement::Tuple(cs)) => {
                fs.iter().zip(cs).all(|(f, c)| f.is_unit(c))
            }
            (RingKind::IntegersMod(n), RingElement::Residue(v)) => v.gcd(n) == 1,
            _ => !self.is_zero(a),
        }
    }

    pub fn inverse(&self, a: &RingElement) -> Result<RingElement> {
        use RingElement::*;
        match (&self.kind, a) {
            (RingKind::Integers, Integer(v)) if v.abs().is_one() => Ok(a.clone()),
            (RingKind::Rationals, Rational(v)) if !v.is_zero() => Ok(Rational(v.recip())),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Residue(v)) => {
                inverse_mod(*v, *n).map(Residue).ok_or(Error::NotAUnit)
            }
            (RingKind::ExtensionField { .. }, Ext(_)) if !self.is_zero(a) => {
                let q = self.field_order().expect("extension field is finite");
                Ok(self.pow(a, q - 2))
            }
            (RingKind::Product(fs), Tuple(cs)) => fs
                .iter()
                .zip(cs)
                .map(|(f, c)| f.inverse(c))
                .collect::<Result<Vec<_>>>()
                .map(Tuple),
            _ => Err(Error::NotAUnit),
        }
    }

    /// Strict sense: ∃ z ≠ 0 with a·z = 0. In particular 0 is a zero-divisor.
    pub fn is_zero_divisor(&self, a: &RingElement) -> bool {
        match (&self.kind, a) {
            (RingKind::IntegersMod(n), RingElement::Residue(v)) => v.gcd(n) != 1,
            (RingKind::Product(fs), RingElement::Tuple(cs)) => {
                fs.iter().zip(cs).any(|(f, c)| f.is_zero_divisor(c))
            }
            _ => self.is_zero(a),
        }
    }

    /// The first nonzero `z` in enumeration order with `a·z = 0`, if any.
    pub fn annihilator(&self, a: &RingElement) -> Option<RingElement> {
        match (&self.kind, a) {
            (RingKind::Integers | RingKind::Rationals, _) => {
                self.is_zero(a).then(|| self.one())
            }
            (RingKind::IntegersMod(n), RingElement::Residue(v)) => {
                let g = v.gcd(n);
                (g != 1).then(|| RingElement::Residue(n / g))
            }
            _ => {
                if !self.is_zero_divisor(a) {
                    return None;
                }
                let card = self.cardinality()?;
                (1..card as u64)
                    .map(|i| self.element_at(i))
                    .find(|z| self.is_zero(&self.mul(a, z)))
            }
        }
    }

    /// Classifies `set` by the differences of its distinct elements.
    pub fn condition_check(&self, set: &[RingElement]) -> Result<SetCondition> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for e in set {
            self.ensure(e)?;
        }
        let mut class = SetCondition::F;
        for (i, x) in set.iter().enumerate() {
            for y in &set[i + 1..] {
                if x == y {
                    continue;
                }
                let diff = self.sub(x, y);
                if self.is_zero_divisor(&diff) {
                    return Ok(SetCondition::Neither);
                }
                if !self.is_unit(&diff) {
                    class = SetCondition::DOnly;
                }
            }
        }
        Ok(class)
    }

    /// All elements, each once, in canonical order.
    pub fn enumerate(&self) -> Result<Vec<RingElement>> {
        let card = self
            .cardinality()
            .ok_or_else(|| Error::NotEnumerable(format!("{:?}", self.kind)))?;
        let card = u64::try_from(card).map_err(|_| Error::CapExceeded {
            what: "ring elements".into(),
            required: card,
            cap: u64::MAX as u128,
        })?;
        Ok((0..card).map(|i| self.element_at(i)).collect())
    }

    /// The element at position `index` of [`RingSpec::enumerate`]. Finite rings only.
    pub fn element_at(&self, index: u64) -> RingElement {
        match &self.kind {
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => RingElement::Residue(index % n),
            RingKind::ExtensionField { p, modulus } => {
                RingElement::Ext(digits(index, *p, modulus.len() - 1))
            }
            RingKind::Product(fs) => {
                let mut rest = index;
                let mut comps = vec![RingElement::Residue(0); fs.len()];
                for (slot, f) in comps.iter_mut().zip(fs).rev() {
                    let c = f.cardinality().expect("finite factor") as u64;
                    *slot = f.element_at(rest % c);
                    rest /= c;
                }
                RingElement::Tuple(comps)
            }
            RingKind::Integers | RingKind::Rationals => panic!("element_at on an infinite ring"),
        }
    }

    /// Inverse of [`RingSpec::element_at`].
    pub fn index_of(&self, e: &RingElement) -> Option<u64> {
        match (&self.kind, e) {
            (RingKind::IntegersMod(_) | RingKind::PrimeField(_), RingElement::Residue(v)) => {
                Some(*v)
            }
            (RingKind::ExtensionField { p, .. }, RingElement::Ext(cs)) => {
                Some(cs.iter().rev().fold(0, |acc, c| acc * p + c))
            }
            (RingKind::Product(fs), RingElement::Tuple(cs)) => {
                fs.iter().zip(cs).try_fold(0u64, |acc, (f, c)| {
                    Some(acc * f.cardinality()? as u64 + f.index_of(c)?)
                })
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6() -> RingSpec {
        RingSpec::integers_mod(6).unwrap()
    }

    fn gf9() -> RingSpec {
        RingSpec::extension_field(3, vec![1, 0, 1]).unwrap()
    }

    fn gf4() -> RingSpec {
        RingSpec::extension_field(2, vec![1, 1, 1]).unwrap()
    }

    fn small_finite_rings() -> Vec<RingSpec> {
        vec![
            RingSpec::integers_mod(4).unwrap(),
            z6(),
            RingSpec::integers_mod(12).unwrap(),
            RingSpec::prime_field(7).unwrap(),
            gf4(),
            gf9(),
            RingSpec::product(vec![z6(), z6()]).unwrap(),
            RingSpec::product(vec![RingSpec::integers_mod(2).unwrap(), gf4()]).unwrap(),
        ]
    }

    #[test]
    fn examples_ring_arith() {
        let r = z6();
        let prod = r.arith(ArithOp::Mul, &r.from_i64(3), &r.from_i64(2)).unwrap();
        assert!(r.is_zero(&prod));

        let f = gf9();
        let u = f.ext_from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(&u, &u), f.from_i64(2));

        let z = RingSpec::integers();
        assert_eq!(z.add(&z.from_i64(5), &z.zero()), z.from_i64(5));
    }

    #[test]
    fn mixed_operands_are_rejected() {
        let r = z6();
        let q = RingSpec::rationals();
        assert_eq!(
            r.arith(ArithOp::Add, &r.one(), &q.one()),
            Err(Error::RingMismatch)
        );
        assert_eq!(
            r.arith(ArithOp::Add, &r.one(), &RingElement::Residue(6)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn examples_units() {
        let r = z6();
        assert!(r.is_unit(&r.from_i64(5)));
        assert_eq!(r.inverse(&r.from_i64(5)).unwrap(), r.from_i64(5));
        let z = RingSpec::integers();
        assert!(!z.is_unit(&z.from_i64(2)));
        assert_eq!(z.inverse(&z.from_i64(2)), Err(Error::NotAUnit));
        assert!(z.is_unit(&z.from_i64(-1)));
        let f = RingSpec::prime_field(7).unwrap();
        assert_eq!(f.inverse(&f.from_i64(3)).unwrap(), f.from_i64(5));
    }

    #[test]
    fn examples_zero_divisors() {
        let r = z6();
        assert!(r.is_zero_divisor(&r.from_i64(2)));
        let f = RingSpec::prime_field(7).unwrap();
        assert!(!f.is_zero_divisor(&f.from_i64(3)));
        let p = RingSpec::product(vec![z6(), z6()]).unwrap();
        let e = RingElement::Tuple(vec![RingElement::Residue(1), RingElement::Residue(0)]);
        assert!(p.is_zero_divisor(&e));
        assert!(RingSpec::integers().is_zero_divisor(&RingSpec::integers().zero()));
    }

    #[test]
    fn examples_condition_check() {
        let z = RingSpec::integers();
        let set = |r: &RingSpec, v: &[i64]| v.iter().map(|x| r.from_i64(*x)).collect::<Vec<_>>();
        assert_eq!(z.condition_check(&set(&z, &[0, 1])).unwrap(), SetCondition::F);
        assert_eq!(
            z6().condition_check(&set(&z6(), &[0, 1, 2])).unwrap(),
            SetCondition::Neither
        );
        assert_eq!(
            z.condition_check(&set(&z, &[0, 1, 2])).unwrap(),
            SetCondition::DOnly
        );
        assert_eq!(z.condition_check(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn examples_enumeration() {
        let r = RingSpec::integers_mod(3).unwrap();
        assert_eq!(
            r.enumerate().unwrap(),
            vec![r.from_i64(0), r.from_i64(1), r.from_i64(2)]
        );
        let f = gf4();
        let expected = vec![
            RingElement::Ext(vec![0, 0]),
            RingElement::Ext(vec![1, 0]),
            RingElement::Ext(vec![0, 1]),
            RingElement::Ext(vec![1, 1]),
        ];
        assert_eq!(f.enumerate().unwrap(), expected);
        assert!(matches!(
            RingSpec::integers().enumerate(),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn construction_validates() {
        assert!(RingSpec::integers_mod(1).is_err());
        assert!(RingSpec::prime_field(6).is_err());
        // u^2 + 1 = (u + 1)^2 over GF(2)
        assert!(RingSpec::extension_field(2, vec![1, 0, 1]).is_err());
        // u^4 + u^2 + 1 = (u^2 + u + 1)^2 over GF(2): no roots, reducible
        assert!(RingSpec::extension_field(2, vec![1, 0, 1, 0, 1]).is_err());
        assert!(RingSpec::extension_field(2, vec![1, 1, 0, 0, 1]).is_ok());
        assert!(RingSpec::extension_field(2, vec![1, 1, 0, 0, 0, 1]).is_err());
        assert!(RingSpec::product(vec![z6(), RingSpec::integers()]).is_err());
        assert!(RingSpec::product(vec![z6()]).is_err());
        assert_eq!(RingSpec::galois_field(4).unwrap(), gf4());
        assert_eq!(RingSpec::galois_field(9).unwrap(), gf9());
        assert!(RingSpec::galois_field(6).is_err());
    }

    #[test]
    fn products_flatten() {
        let inner = RingSpec::product(vec![z6(), z6()]).unwrap();
        let outer = RingSpec::product(vec![inner, RingSpec::integers_mod(2).unwrap()]).unwrap();
        match outer.kind() {
            RingKind::Product(fs) => assert_eq!(fs.len(), 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn unit_xor_zero_divisor_on_small_rings() {
        for r in small_finite_rings() {
            assert!(r.cardinality().unwrap() <= 512);
            for a in r.enumerate().unwrap() {
                assert!(r.is_unit(&a) ^ r.is_zero_divisor(&a), "{r:?} {a:?}");
            }
        }
    }

    #[test]
    fn inverses_of_all_units() {
        for r in small_finite_rings() {
            for a in r.enumerate().unwrap() {
                if r.is_unit(&a) {
                    let inv = r.inverse(&a).unwrap();
                    assert!(r.is_one(&r.mul(&inv, &a)));
                } else {
                    assert_eq!(r.inverse(&a), Err(Error::NotAUnit));
                }
            }
        }
    }

    #[test]
    fn zero_divisor_matches_enumeration_and_annihilator() {
        for r in small_finite_rings() {
            let elems = r.enumerate().unwrap();
            for a in &elems {
                let brute = elems
                    .iter()
                    .any(|z| !r.is_zero(z) && r.is_zero(&r.mul(a, z)));
                assert_eq!(r.is_zero_divisor(a), brute);
                match r.annihilator(a) {
                    Some(z) => assert!(!r.is_zero(&z) && r.is_zero(&r.mul(a, &z))),
                    None => assert!(!brute),
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for r in small_finite_rings() {
            for (i, a) in r.enumerate().unwrap().iter().enumerate() {
                assert!(r.contains(a));
                assert_eq!(r.index_of(a), Some(i as u64));
            }
        }
    }

    #[test]
    fn ring_predicates() {
        assert!(RingSpec::integers_mod(7).unwrap().is_field());
        assert!(!z6().is_domain());
        assert!(z6().is_reduced());
        assert!(!RingSpec::integers_mod(12).unwrap().is_reduced());
        assert!(RingSpec::product(vec![
            RingSpec::integers_mod(2).unwrap(),
            RingSpec::prime_field(2).unwrap()
        ])
        .unwrap()
        .is_boolean());
        assert_eq!(RingSpec::product(vec![RingSpec::integers_mod(2).unwrap(), RingSpec::integers_mod(3).unwrap()]).unwrap().characteristic(), 6);
    }

    #[test]
    fn from_ratio_uses_inverse() {
        let f = RingSpec::prime_field(7).unwrap();
        assert_eq!(
            f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            f.from_i64(4)
        );
        assert_eq!(
            z6().from_ratio(&BigInt::from(1), &BigInt::from(2)),
            Err(Error::NotAUnit)
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn product_is_componentwise(a in 0u64..36, b in 0u64..36) {
                let p = RingSpec::product(vec![z6(), z6()]).unwrap();
                let (x, y) = (p.element_at(a), p.element_at(b));
                let comp = |e: &RingElement| match e {
                    RingElement::Tuple(cs) => cs.clone(),
                    _ => unreachable!(),
                };
                let (cx, cy) = (comp(&x), comp(&y));
                let sum = comp(&p.add(&x, &y));
                let prod = comp(&p.mul(&x, &y));
                for i in 0..2 {
                    prop_assert_eq!(&sum[i], &z6().add(&cx[i], &cy[i]));
                    prop_assert_eq!(&prod[i], &z6().mul(&cx[i], &cy[i]));
                }
            }

            #[test]
            fn field_subsets_satisfy_f(seed in proptest::collection::btree_set(0u64..13, 1..8),
                                       rats in proptest::collection::btree_set(-50i64..50, 1..8)) {
                let f = RingSpec::prime_field(13).unwrap();
                let set: Vec<_> = seed.iter().map(|v| f.element_at(*v)).collect();
                prop_assert_eq!(f.condition_check(&set).unwrap(), SetCondition::F);
                let q = RingSpec::rationals();
                let set: Vec<_> = rats.iter().map(|v| q.from_ratio(&BigInt::from(*v), &BigInt::from(3)).unwrap()).collect();
                prop_assert_eq!(q.condition_check(&set).unwrap(), SetCondition::F);
            }
        }
    }
}

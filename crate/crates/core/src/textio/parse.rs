use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::poly::{Point, Poly, Ring};
use crate::ring::{prime_power, RingElement, RingKind, RingSpec};

/// Exponent ceiling for `^`, so a stray digit cannot trigger a huge expansion.
const MAX_EXPONENT: u64 = 10_000;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            message: message.into(),
            position: self.pos,
        })
    }

    fn err_at<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            message: message.into(),
            position,
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    /// Unsigned decimal integer; digits may not be split by whitespace.
    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_number(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        let n = self.number()?;
        n.to_u64()
            .map_or_else(|| self.err_at(start, format!("{what} is too large")), Ok)
    }

    fn peek_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    // ---- rings ----

    fn ring(&mut self) -> Result<RingSpec> {
        let mut factors = vec![self.ring_factor()?];
        while self.eat('*') {
            factors.push(self.ring_factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        let start = self.pos;
        RingSpec::product(factors).or_else(|e| self.err_at(start, e.to_string()))
    }

    fn ring_factor(&mut self) -> Result<RingSpec> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.keyword("GF") {
            self.expect('(')?;
            let qpos = self.pos;
            let mut q = self.small_number("field order")?;
            if self.eat('^') {
                let k = self.small_number("exponent")?;
                q = q
                    .checked_pow(k as u32)
                    .map_or_else(|| self.err_at(qpos, "field order is too large"), Ok)?;
            }
            let Some((p, k)) = prime_power(q) else {
                return self.err_at(qpos, format!("{q} is not a prime power"));
            };
            let spec = if self.eat(';') {
                let mpos = self.pos;
                let modulus = self.upoly(p)?;
                if modulus.len() != k as usize + 1 {
                    return self.err_at(
                        mpos,
                        format!("modulus must have degree {k} for GF({q})"),
                    );
                }
                if k == 1 {
                    if modulus != [0, 1] {
                        return self.err_at(mpos, "a prime field takes the modulus u");
                    }
                    RingSpec::prime_field(p)
                } else {
                    RingSpec::extension_field(p, modulus)
                }
                .or_else(|e| self.err_at(mpos, e.to_string()))?
            } else if k == 1 {
                RingSpec::prime_field(p).or_else(|e| self.err_at(qpos, e.to_string()))?
            } else {
                RingSpec::galois_field(q).or_else(|e| self.err_at(qpos, e.to_string()))?
            };
            self.expect(')')?;
            return Ok(spec);
        }
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                if self.eat('/') {
                    let npos = self.pos;
                    let n = self.small_number("modulus")?;
                    RingSpec::integers_mod(n).or_else(|e| self.err_at(npos, e.to_string()))
                } else {
                    Ok(RingSpec::integers())
                }
            }
            Some('Q') => {
                self.pos += 1;
                Ok(RingSpec::rationals())
            }
            _ => self.err_at(start, "expected Z, Q, Z/n or GF(q)"),
        }
    }

    /// A polynomial in `u` over GF(p), dense low-to-high coefficients with any
    /// trailing zeros removed (but at least one entry).
    fn upoly(&mut self, p: u64) -> Result<Vec<u64>> {
        let mut coeffs: Vec<u64> = Vec::new();
        let add = |coeffs: &mut Vec<u64>, e: usize, c: u64, negate: bool| {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            let c = c % p;
            coeffs[e] = if negate {
                (coeffs[e] + p - c) % p
            } else {
                (coeffs[e] + c) % p
            };
        };
        let mut negate = self.eat('-');
        loop {
            let mut c = 1u64;
            let have_number = self.peek_digit();
            if have_number {
                let n = self.number()?;
                c = (n % BigInt::from(p)).to_u64().expect("reduced");
                self.eat('*');
            }
            let e = if self.eat('u') {
                if self.eat('^') {
                    let epos = self.pos;
                    let e = self.small_number("exponent")?;
                    if e > 64 {
                        return self.err_at(epos, "exponent of u is too large");
                    }
                    e as usize
                } else {
                    1
                }
            } else if have_number {
                0
            } else {
                return self.err("expected a coefficient or u");
            };
            add(&mut coeffs, e, c, negate);
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        while coeffs.len() > 1 && *coeffs.last().expect("nonempty") == 0 {
            coeffs.pop();
        }
        Ok(coeffs)
    }

    // ---- elements ----

    /// An element literal: optional sign, integer, fraction, or bracketed form.
    fn element(&mut self, ring: &RingSpec) -> Result<RingElement> {
        let negate = self.eat('-');
        let e = self.unsigned_element(ring)?;
        Ok(if negate { ring.neg(&e) } else { e })
    }

    fn unsigned_element(&mut self, ring: &RingSpec) -> Result<RingElement> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let e = match ring.kind() {
                    RingKind::ExtensionField { p, .. } => {
                        let cs = self.upoly(*p)?;
                        ring.ext_from_coeffs(&cs)?
                    }
                    RingKind::Product(fs) => {
                        let mut parts = Vec::with_capacity(fs.len());
                        for (k, f) in fs.iter().enumerate() {
                            if k > 0 {
                                self.expect(',')?;
                            }
                            parts.push(self.element(f)?);
                        }
                        RingElement::Tuple(parts)
                    }
                    _ => return self.err_at(start, "bracketed literals need an extension field or product ring"),
                };
                self.expect(']')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return self.err_at(start, "zero denominator");
                    }
                    ring.from_ratio(&n, &d)
                        .or_else(|_| self.err_at(start, "denominator is not a unit in this ring"))
                } else {
                    Ok(ring.from_bigint(&n))
                }
            }
            Some(c) => self.err(format!("expected an element, found '{c}'")),
            None => self.err("expected an element, found end of input"),
        }
    }

    // ---- polynomials ----

    fn poly(&mut self, ring: &Ring, n: usize) -> Result<Poly> {
        let mut acc = self.signed_term(ring, n)?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.signed_term(ring, n)?;
            } else if self.eat('-') {
                acc = &acc - &self.signed_term(ring, n)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_term(&mut self, ring: &Ring, n: usize) -> Result<Poly> {
        if self.eat('-') {
            Ok(-&self.signed_term(ring, n)?)
        } else {
            self.product(ring, n)
        }
    }

    fn starts_power(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 't' || c == '(' || c == '[')
    }

    fn product(&mut self, ring: &Ring, n: usize) -> Result<Poly> {
        let mut acc = self.power(ring, n)?;
        loop {
            // Explicit '*' or juxtaposition.
            if self.eat('*') || self.starts_power() {
                acc = &acc * &self.power(ring, n)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, ring: &Ring, n: usize) -> Result<Poly> {
        let base = self.atom(ring, n)?;
        if !self.eat('^') {
            return Ok(base);
        }
        if self.peek() == Some('-') {
            return self.err("negative exponent");
        }
        let epos = self.pos;
        let e = self.small_number("exponent")?;
        if e > MAX_EXPONENT {
            return self.err_at(epos, format!("exponent exceeds {MAX_EXPONENT}"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self, ring: &Ring, n: usize) -> Result<Poly> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return self.err_at(start, "expected a variable index after 't'");
                }
                let k = self.small_number("variable index")?;
                if k == 0 || k as usize > n {
                    return self.err_at(start, format!("unknown variable t{k}"));
                }
                Ok(Poly::var(ring, n, k as usize - 1))
            }
            Some('(') => {
                self.pos += 1;
                let p = self.poly(ring, n)?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() || c == '[' => {
                let e = self.unsigned_element(ring)?;
                Ok(Poly::constant(ring, n, e))
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    // ---- grids and points ----

    fn grid(&mut self, ring: &Ring, nvars: Option<usize>) -> Result<Grid> {
        let mut sets: Vec<Option<Vec<RingElement>>> = Vec::new();
        loop {
            let start = {
                self.skip_ws();
                self.pos
            };
            if !self.eat('X') {
                return self.err("expected X<k>=");
            }
            let k = self.small_number("axis index")? as usize;
            if k == 0 {
                return self.err_at(start, "axes are numbered from 1");
            }
            self.expect('=')?;
            let set = if self.eat('*') {
                ring.enumerate()
                    .or_else(|_| self.err_at(start, "'*' needs a finite ring"))?
            } else {
                self.expect('{')?;
                let mut elems = vec![self.element(ring)?];
                while self.eat(',') {
                    elems.push(self.element(ring)?);
                }
                self.expect('}')?;
                elems
            };
            if sets.len() < k {
                sets.resize(k, None);
            }
            if sets[k - 1].is_some() {
                return self.err_at(start, format!("X{k} given twice"));
            }
            sets[k - 1] = Some(set);
            if !self.eat(';') {
                break;
            }
        }
        let end = self.pos;
        if let Some(n) = nvars {
            if sets.len() != n {
                return self.err_at(end, format!("grid has {} axes, expected {n}", sets.len()));
            }
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.map_or_else(|| self.err_at(end, format!("X{} missing", i + 1)), Ok))
            .collect::<Result<Vec<_>>>()?;
        Grid::new(ring, sets).or_else(|e| self.err_at(end, e.to_string()))
    }

    fn point(&mut self, ring: &RingSpec) -> Result<Point> {
        self.expect('(')?;
        let mut coords = vec![self.element(ring)?];
        while self.eat(',') {
            coords.push(self.element(ring)?);
        }
        self.expect(')')?;
        Ok(coords)
    }

    fn points(&mut self, ring: &RingSpec, nvars: Option<usize>) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        loop {
            let start = {
                self.skip_ws();
                self.pos
            };
            let p = self.point(ring)?;
            let expected = nvars.unwrap_or_else(|| out.first().map_or(p.len(), |q: &Point| q.len()));
            if p.len() != expected {
                return self.err_at(start, format!("point has {} coordinates, expected {expected}", p.len()));
            }
            out.push(p);
            if !self.eat(';') {
                return Ok(out);
            }
        }
    }
}

pub fn parse_ring(s: &str) -> Result<RingSpec> {
    let mut p = Parser::new(s);
    let r = p.ring()?;
    p.expect_end()?;
    Ok(r)
}

pub fn parse_element(s: &str, ring: &RingSpec) -> Result<RingElement> {
    let mut p = Parser::new(s);
    let e = p.element(ring)?;
    p.expect_end()?;
    Ok(e)
}

pub fn parse_poly(s: &str, ring: &Ring, nvars: usize) -> Result<Poly> {
    let mut p = Parser::new(s);
    if p.at_end() {
        return p.err("empty polynomial");
    }
    let f = p.poly(ring, nvars)?;
    p.expect_end()?;
    Ok(f)
}

/// Semicolon-separated generators; an empty string gives the empty list.
pub fn parse_ideal(s: &str, ring: &Ring, nvars: usize) -> Result<Vec<Poly>> {
    let mut p = Parser::new(s);
    let mut gens = Vec::new();
    if p.at_end() {
        return Ok(gens);
    }
    loop {
        gens.push(p.poly(ring, nvars)?);
        if !p.eat(';') {
            break;
        }
    }
    p.expect_end()?;
    Ok(gens)
}

/// `X1={..};X2=*`; with `nvars` given the axis count must match.
pub fn parse_grid(s: &str, ring: &Ring, nvars: Option<usize>) -> Result<Grid> {
    let mut p = Parser::new(s);
    let g = p.grid(ring, nvars)?;
    p.expect_end()?;
    Ok(g)
}

/// `(a,b);(c,d)`; every point must have the same arity.
pub fn parse_points(s: &str, ring: &RingSpec, nvars: Option<usize>) -> Result<Vec<Point>> {
    let mut p = Parser::new(s);
    let pts = p.points(ring, nvars)?;
    p.expect_end()?;
    Ok(pts)
}

/// `1,2,3`.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    loop {
        let start = {
            p.skip_ws();
            p.pos
        };
        let v = p.small_number("entry")?;
        let v = u32::try_from(v).or_else(|_| p.err_at(start, "entry is too large"))?;
        out.push(v);
        if !p.eat(',') {
            break;
        }
    }
    p.expect_end()?;
    Ok(out)
}

//! Random instance generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use cnsatz::grid::Grid;
use cnsatz::poly::{Point, Poly, Ring};
use cnsatz::ring::{RingElement, RingSpec};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(spec: &str) -> Ring {
    Arc::new(cnsatz::textio::parse_ring(spec).expect("valid ring"))
}

/// A small random element; ℤ in [-3, 3], ℚ with denominators up to 3.
pub fn element(rng: &mut ChaCha8Rng, r: &RingSpec) -> RingElement {
    match r.cardinality() {
        Some(c) => r.element_at(rng.gen_range(0..c as u64)),
        None if r.is_field() => {
            let n = BigInt::from(rng.gen_range(-3i64..=3));
            let d = BigInt::from(rng.gen_range(1i64..=3));
            r.from_ratio(&n, &d).unwrap()
        }
        None => r.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn nonzero_element(rng: &mut ChaCha8Rng, r: &RingSpec) -> RingElement {
    loop {
        let e = element(rng, r);
        if !r.is_zero(&e) {
            return e;
        }
    }
}

/// Random sparse polynomial with at most `terms` terms, each of total degree ≤ `deg`.
pub fn poly(rng: &mut ChaCha8Rng, r: &Ring, n: usize, terms: usize, deg: u32) -> Poly {
    let mut f = Poly::zero(r, n);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; n];
        let total = rng.gen_range(0..=deg);
        for _ in 0..total {
            if n > 0 {
                e[rng.gen_range(0..n)] += 1;
            }
        }
        f = &f + &Poly::monomial(r, n, e, element(rng, r));
    }
    f
}

/// Distinct random elements; for infinite rings drawn from [-4, 4].
pub fn subset(rng: &mut ChaCha8Rng, r: &RingSpec, k: usize) -> Vec<RingElement> {
    let mut pool: Vec<RingElement> = match r.enumerate() {
        Ok(all) => all,
        Err(_) => (-4..=4).map(|v| r.from_i64(v)).collect(),
    };
    pool.shuffle(rng);
    pool.truncate(k);
    pool
}

pub fn grid(rng: &mut ChaCha8Rng, r: &Ring, sizes: &[usize]) -> Grid {
    let sets = sizes.iter().map(|&k| subset(rng, r, k)).collect();
    Grid::new(r, sets).expect("valid grid")
}

/// Σ c·∏ x_i^{e_i}, computed term by term with ring operations only.
pub fn eval(f: &Poly, x: &[RingElement]) -> RingElement {
    let r = f.ring();
    let mut acc = r.zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (xi, &e) in x.iter().zip(m.exponents()) {
            for _ in 0..e {
                t = r.mul(&t, xi);
            }
        }
        acc = r.add(&acc, &t);
    }
    acc
}

/// Cartesian product of the axis sets, first axis slowest.
pub fn product(sets: &[Vec<RingElement>]) -> Vec<Point> {
    let mut out: Vec<Point> = vec![Vec::new()];
    for s in sets {
        out = out
            .into_iter()
            .flat_map(|p| {
                s.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    out
}

pub fn degree(f: &Poly) -> i64 {
    f.total_degree().finite().unwrap_or(-1)
}

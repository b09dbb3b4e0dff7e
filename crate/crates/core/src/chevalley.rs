//! Restricted-variable Chevalley–Warning over finite fields.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::grid::{coefficient_formula, CoefficientValue, Grid};
use crate::poly::{Degree, Poly, Ring};
use crate::ring::RingElement;

/// A polynomial system P_1, …, P_r over F_q with a grid X ⊆ F_q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwInstance {
    grid: Grid,
    polys: Vec<Poly>,
    degrees: Vec<u64>,
    q: u64,
    p: u64,
}

impl CwInstance {
    pub fn new(grid: Grid, polys: Vec<Poly>) -> Result<Self> {
        let ring = grid.ring().clone();
        let q = match ring.field_order() {
            Some(q) if ring.is_field() => q,
            _ => return Err(Error::FieldRequired(crate::textio::format_ring(&ring))),
        };
        for f in &polys {
            if **f.ring() != *ring {
                return Err(Error::RingMismatch);
            }
            if f.nvars() != grid.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: grid.nvars(),
                    found: f.nvars(),
                });
            }
        }
        // The zero polynomial imposes no condition and counts as degree 0.
        let degrees = polys
            .iter()
            .map(|f| f.total_degree().finite().unwrap_or(0) as u64)
            .collect();
        Ok(CwInstance {
            q,
            p: ring.characteristic(),
            grid,
            polys,
            degrees,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.grid.ring()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree_sum(&self) -> u128 {
        self.degrees.iter().map(|d| *d as u128).sum()
    }

    /// (d_1 + … + d_r)(q − 1).
    pub fn hypothesis_lhs(&self) -> u128 {
        self.degree_sum() * (self.q as u128 - 1)
    }

    /// Σ (#X_i − 1).
    pub fn hypothesis_rhs(&self) -> u128 {
        self.grid.sizes().iter().map(|s| *s as u128 - 1).sum()
    }

    pub fn hypothesis(&self) -> bool {
        self.hypothesis_lhs() < self.hypothesis_rhs()
    }

    fn solves(&self, x: &[RingElement]) -> bool {
        self.polys
            .iter()
            .all(|f| self.ring().is_zero(&f.eval_unchecked(x)))
    }
}

/// χ = ∏_j (1 − P_j^{q−1}), the indicator of the common zero set on F_q^n.
pub fn chi_poly(inst: &CwInstance) -> Result<Poly> {
    let ring = inst.ring();
    let n = inst.grid.nvars();
    let one = Poly::one(ring, n);
    let chi = inst
        .polys
        .iter()
        .fold(one.clone(), |acc, f| &acc * &(&one - &f.pow(inst.q - 1)));
    let bound = inst.hypothesis_lhs() as i64;
    if chi.total_degree() > Degree::Finite(bound) {
        return Err(Error::Invariant("chi exceeds its degree bound".into()));
    }
    Ok(chi)
}

/// Which of the special grids X is, axis by axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GridShape {
    /// X = F_q^n.
    pub full_field: bool,
    /// X = {0, 1}^n.
    pub zero_one: bool,
    /// X = (F_q^×)^n.
    pub multiplicative: bool,
}

fn same_set(a: &[RingElement], b: &[RingElement]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

fn detect_shape(grid: &Grid) -> Result<GridShape> {
    let ring = grid.ring();
    let all = ring.enumerate()?;
    let units: Vec<RingElement> = all.iter().filter(|x| !ring.is_zero(x)).cloned().collect();
    let zero_one = [ring.zero(), ring.one()];
    let every = |target: &[RingElement]| grid.sets().iter().all(|s| same_set(s, target));
    Ok(GridShape {
        full_field: every(&all),
        zero_one: every(&zero_one),
        multiplicative: every(&units),
    })
}

/// φ′ for the special shapes: −1 on F_q, 2x − 1 on {0, 1}, −x^{−1} on F_q^×.
/// Compared against the derivative of the expanded φ_i.
fn check_closed_forms(grid: &Grid, shape: &GridShape) -> Result<()> {
    let ring = grid.ring();
    for (i, set) in grid.sets().iter().enumerate() {
        for x in set {
            let actual = grid.phi_derivative_at(i, x);
            let mut expected = Vec::new();
            if shape.full_field {
                expected.push(ring.neg(&ring.one()));
            }
            if shape.zero_one {
                expected.push(ring.sub(&ring.add(x, x), &ring.one()));
            }
            if shape.multiplicative {
                expected.push(ring.neg(&ring.inverse(x)?));
            }
            if expected.iter().any(|e| *e != actual) {
                return Err(Error::Invariant("closed form for phi' does not match".into()));
            }
        }
    }
    Ok(())
}

/// Status of one part (a to d) on an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartStatus {
    /// The grid has the shape this part is about.
    pub applicable: bool,
    pub hypothesis: bool,
    /// The conclusion holds on this instance (checked even without the hypothesis).
    pub holds: bool,
}

impl PartStatus {
    /// Applicable with the hypothesis met implies the conclusion.
    pub fn passes(&self) -> bool {
        !(self.applicable && self.hypothesis) || self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwReport {
    pub q: u64,
    pub p: u64,
    pub degrees: Vec<u64>,
    pub hypothesis_lhs: u128,
    pub hypothesis_rhs: u128,
    pub hypothesis: bool,
    pub shape: GridShape,
    /// #V_X.
    pub v_count: u128,
    /// Σ_{x ∈ V_X} 1/∏ φ_i′(x_i).
    pub sum_value: RingElement,
    pub chi: Poly,
    /// Coefficient of t^{(#X_i − 1)} in χ.
    pub top_coefficient: RingElement,
    /// Sum = 0 and #V_X ≠ 1.
    pub part_a: PartStatus,
    /// p | #V on X = F_q^n.
    pub part_b: PartStatus,
    /// Even- and odd-weight solution counts agree mod p on X = {0, 1}^n.
    pub part_c: PartStatus,
    /// Σ_{x ∈ V} x_1⋯x_n = 0 over all solutions in F_q^n, with X = (F_q^×)^n.
    pub part_d: PartStatus,
    pub even_weight: u128,
    pub odd_weight: u128,
    /// Σ x_1⋯x_n over solutions; present only when part d was evaluated.
    pub product_sum: Option<RingElement>,
}

impl CwReport {
    pub fn passes(&self) -> bool {
        [self.part_a, self.part_b, self.part_c, self.part_d]
            .iter()
            .all(PartStatus::passes)
    }
}

pub fn rvcw_report(inst: &CwInstance, caps: &Caps) -> Result<CwReport> {
    let ring = inst.ring().clone();
    let grid = &inst.grid;
    let n = grid.nvars();
    let qn = (inst.q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if qn > caps.enumeration {
        return Err(Error::CapExceeded {
            what: "enumeration".into(),
            required: qn,
            cap: caps.enumeration,
        });
    }
    let shape = detect_shape(grid)?;
    check_closed_forms(grid, &shape)?;
    let chi = chi_poly(inst)?;
    let d = grid.top_exponent();
    let top_coefficient = chi.coefficient(&d);

    let inv_derivs: Vec<Vec<(RingElement, RingElement)>> = (0..n)
        .map(|i| {
            grid.sets()[i]
                .iter()
                .map(|x| Ok((x.clone(), ring.inverse(&grid.phi_derivative_at(i, x))?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let lookup = |i: usize, x: &RingElement| {
        inv_derivs[i]
            .iter()
            .find(|(y, _)| y == x)
            .map(|(_, v)| v.clone())
            .expect("point lies in grid")
    };

    let mut v_count = 0u128;
    let mut sum_value = ring.zero();
    let mut even_weight = 0u128;
    let mut odd_weight = 0u128;
    for x in grid.points() {
        let chi_x = chi.eval_unchecked(&x);
        let solves = inst.solves(&x);
        let expected = if solves { ring.one() } else { ring.zero() };
        if chi_x != expected {
            return Err(Error::Invariant("chi is not the solution indicator".into()));
        }
        if !solves {
            continue;
        }
        v_count += 1;
        let w = x.iter().filter(|c| !ring.is_zero(c)).count();
        if w % 2 == 0 {
            even_weight += 1;
        } else {
            odd_weight += 1;
        }
        let term = x
            .iter()
            .enumerate()
            .fold(ring.one(), |acc, (i, xi)| ring.mul(&acc, &lookup(i, xi)));
        sum_value = ring.add(&sum_value, &term);
    }

    let hypothesis = inst.hypothesis();
    if hypothesis {
        if !ring.is_zero(&top_coefficient) {
            return Err(Error::Invariant("top coefficient of chi is nonzero".into()));
        }
        let rep = coefficient_formula(grid, &chi)?;
        if rep.value != CoefficientValue::Exact(sum_value.clone()) {
            return Err(Error::Invariant(
                "coefficient formula on chi disagrees with the solution sum".into(),
            ));
        }
    }
    let part_a = PartStatus {
        applicable: true,
        hypothesis,
        holds: ring.is_zero(&sum_value) && v_count != 1,
    };

    let p = inst.p as u128;
    let degree_sum = inst.degree_sum();
    let part_b = PartStatus {
        applicable: shape.full_field,
        hypothesis: degree_sum < n as u128,
        holds: shape.full_field && v_count.is_multiple_of(p),
    };
    let part_c = PartStatus {
        applicable: shape.zero_one,
        hypothesis: inst.hypothesis_lhs() < n as u128,
        holds: shape.zero_one && even_weight % p == odd_weight % p,
    };

    let (part_d, product_sum) = if shape.multiplicative {
        let full = Grid::full(&ring, n)?;
        let mut all_sum = ring.zero();
        for x in full.points() {
            if inst.solves(&x) {
                let prod = x.iter().fold(ring.one(), |acc, c| ring.mul(&acc, c));
                all_sum = ring.add(&all_sum, &prod);
            }
        }
        // On (F_q^×)^n each term of the part-a sum is ∏(−x_i).
        let sign_adjusted = if n.is_multiple_of(2) {
            sum_value.clone()
        } else {
            ring.neg(&sum_value)
        };
        if sign_adjusted != all_sum {
            return Err(Error::Invariant(
                "product sum disagrees with the part-a sum on the multiplicative grid".into(),
            ));
        }
        (
            PartStatus {
                applicable: true,
                hypothesis: inst.hypothesis_lhs() < (inst.q as u128 - 2) * n as u128,
                holds: ring.is_zero(&all_sum),
            },
            Some(all_sum),
        )
    } else {
        (
            PartStatus {
                applicable: false,
                hypothesis: false,
                holds: false,
            },
            None,
        )
    };

    Ok(CwReport {
        q: inst.q,
        p: inst.p,
        degrees: inst.degrees.clone(),
        hypothesis_lhs: inst.hypothesis_lhs(),
        hypothesis_rhs: inst.hypothesis_rhs(),
        hypothesis,
        shape,
        v_count,
        sum_value,
        chi,
        top_coefficient,
        part_a,
        part_b,
        part_c,
        part_d,
        even_weight,
        odd_weight,
        product_sum,
    })
}

//! Integer equations behind the freeness conditions: linear Diophantine
//! equations, `x ≡ −rx`, equal cosines of rational angles, and the
//! congruence system for simple subgroups.

use num_integer::Integer;
use serde::Serialize;

use crate::error::GroupError;

/// Affine lattice `base + Σ tᵢ·stepᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionLattice {
    pub base: (i64, i64),
    pub steps: Vec<(i64, i64)>,
}

impl SolutionLattice {
    /// Membership for a one-step lattice (the only kind produced here).
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let (dx, dy) = (x - self.base.0, y - self.base.1);
        match self.steps.as_slice() {
            [] => dx == 0 && dy == 0,
            [(sx, sy)] => {
                if *sx != 0 {
                    dx % sx == 0 && dy * sx == dx * sy
                } else {
                    dx == 0 && *sy != 0 && dy % sy == 0
                }
            }
            _ => unimplemented!("multi-step lattices are not produced"),
        }
    }
}

/// All integer solutions of `ax + by = c`, or `None` when `gcd(a, b) ∤ c`.
pub fn solve_linear(a: i64, b: i64, c: i64) -> Result<Option<SolutionLattice>, GroupError> {
    if a == 0 || b == 0 {
        return Err(GroupError::Parameter("solve_linear needs a, b ≠ 0".into()));
    }
    let e = a.extended_gcd(&b);
    let g = e.gcd;
    if c % g != 0 {
        return Ok(None);
    }
    let k = c / g;
    let (x0, y0) = (e.x * k, e.y * k);
    let step = (b / g, -a / g);
    // Reduce the particular solution so that 0 ≤ x < |b/g|.
    let t = (x0.rem_euclid(step.0.abs()) - x0) / step.0;
    Ok(Some(SolutionLattice { base: (x0 + t * step.0, y0 + t * step.1), steps: vec![step] }))
}

/// Modulus `n1` with `{x : x ≡ −rx mod n} = n1·Z`.
pub fn neg_congruence(n: i64, r: i64) -> Result<i64, GroupError> {
    if n < 2 {
        return Err(GroupError::Parameter("n ≥ 2 required".into()));
    }
    if r.gcd(&n) != 1 {
        return Err(GroupError::Parameter(format!("{r} is not a unit mod {n}")));
    }
    Ok(n / (1 + r).gcd(&n))
}

/// Solutions of `cos(2πx/n) = cos(2πy/m)`: the pairs
/// `(nq + εℓn1, ℓm1)` with `k = gcd(n, m)`, `n1 = n/k`, `m1 = m/k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosLattice {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub n1: i64,
    pub m1: i64,
}

impl CosLattice {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        if y.rem_euclid(self.m1) != 0 {
            return false;
        }
        let l = y / self.m1;
        [1, -1].iter().any(|e| (x - e * l * self.n1).rem_euclid(self.n) == 0)
    }
}

pub fn cos_equality_lattice(n: i64, m: i64) -> Result<CosLattice, GroupError> {
    if n < 2 || m < 2 {
        return Err(GroupError::Parameter("n, m ≥ 2 required".into()));
    }
    let k = n.gcd(&m);
    Ok(CosLattice { n, m, k, n1: n / k, m1: m / k })
}

/// Target value in the residue lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HalfTarget {
    PlusHalf,
    MinusHalf,
}

/// Whether `cos(2πx/3n) = c` has a solution `x ≡ residue (mod 3)`.
pub fn res_solvable(n: i64, residue: i64, target: HalfTarget) -> Result<bool, GroupError> {
    if n < 2 {
        return Err(GroupError::Parameter("n ≥ 2 required".into()));
    }
    let d = |q: i64, v: i64| v.rem_euclid(q) == 0;
    Ok(match (residue.rem_euclid(3), target) {
        (1, HalfTarget::PlusHalf) => d(6, n - 2) || d(6, n + 2),
        (1, HalfTarget::MinusHalf) => d(3, n - 1) || d(3, n + 1),
        (2, HalfTarget::PlusHalf) => d(6, n - 4) || d(6, n + 4),
        (2, HalfTarget::MinusHalf) => d(3, n - 2) || d(3, n + 2),
        _ => return Err(GroupError::Parameter("residue must be 1 or 2 mod 3".into())),
    })
}

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// True iff `(1 ± r)x ≡ 0`, `rx ≡ ±sx (mod p)` has only `x ≡ 0` for every
/// choice of signs.
pub fn simple_system_trivial_only(p: i64, r: i64, s: i64) -> Result<bool, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::Parameter(format!("{p} is not prime")));
    }
    if r.rem_euclid(p) == 0 || s.rem_euclid(p) == 0 {
        return Err(GroupError::Parameter("r, s must be units".into()));
    }
    let divides = |v: i64| v.rem_euclid(p) == 0;
    let nontrivial = [1, -1]
        .iter()
        .any(|e1| [1, -1].iter().any(|e2| divides(1 + e1 * r) && divides(r + e2 * s)));
    Ok(!nontrivial)
}

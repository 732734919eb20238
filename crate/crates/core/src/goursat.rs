//! Subgroups of a product of two finite groups as fiber products of
//! quintuples `(A, A0, B, B0, θ)`, and the inverse decomposition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::ade::{
    apply_automorphism, find_isomorphism, quotient_by_indices, AutomorphismSpec, FiniteSubgroup, Quotient,
};
use crate::error::{GroupError, ParseError};
use crate::quaternion::UnitQuaternion;

/// A subgroup of `left × right`, stored as sorted index pairs.
#[derive(Clone)]
pub struct PairSubgroup {
    left: Arc<FiniteSubgroup>,
    right: Arc<FiniteSubgroup>,
    pairs: Vec<(u32, u32)>,
}

impl fmt::Debug for PairSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairSubgroup({} x {}, order {})", self.left.label(), self.right.label(), self.order())
    }
}

impl PairSubgroup {
    /// Wraps a pair list without checking closure.
    pub fn from_index_pairs(left: Arc<FiniteSubgroup>, right: Arc<FiniteSubgroup>, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Self { left, right, pairs }
    }

    /// Builds a pair subgroup from explicit quaternion pairs; the ambient
    /// groups are the groups spanned by each coordinate.
    pub fn from_quaternion_pairs(pairs: &[(UnitQuaternion, UnitQuaternion)]) -> Result<Self, GroupError> {
        let lefts: Vec<UnitQuaternion> = pairs.iter().map(|p| p.0).collect();
        let rights: Vec<UnitQuaternion> = pairs.iter().map(|p| p.1).collect();
        let left = Arc::new(FiniteSubgroup::from_elements("L", lefts)?);
        let right = Arc::new(FiniteSubgroup::from_elements("R", rights)?);
        let idx = pairs
            .iter()
            .map(|(x, y)| (left.index_of(x).unwrap() as u32, right.index_of(y).unwrap() as u32))
            .collect();
        let c = Self::from_index_pairs(left, right, idx);
        if !c.is_closed() {
            return Err(GroupError::NotClosed("pair list is not closed".into()));
        }
        Ok(c)
    }

    pub fn left(&self) -> &Arc<FiniteSubgroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteSubgroup> {
        &self.right
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x as u32, y as u32)).is_ok()
    }

    /// The pairs as quaternions.
    pub fn element_pairs(&self) -> impl Iterator<Item = (UnitQuaternion, UnitQuaternion)> + '_ {
        self.pairs
            .iter()
            .map(|&(x, y)| (self.left.element(x as usize), self.right.element(y as usize)))
    }

    /// Exchanges the two coordinates.
    pub fn swapped(&self) -> PairSubgroup {
        let pairs = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        Self::from_index_pairs(self.right.clone(), self.left.clone(), pairs)
    }

    /// Full closure check, quadratic in the order.
    pub fn is_closed(&self) -> bool {
        if !self.contains(self.left.identity(), self.right.identity()) {
            return false;
        }
        self.pairs.iter().all(|&(a, b)| {
            self.pairs.iter().all(|&(c, d)| {
                self.contains(
                    self.left.mul(a as usize, c as usize),
                    self.right.mul(b as usize, d as usize),
                )
            })
        })
    }

    /// Elements of the first and second projections, as ambient indices.
    pub fn projections(&self) -> (Vec<usize>, Vec<usize>) {
        let mut a: Vec<usize> = self.pairs.iter().map(|p| p.0 as usize).collect();
        let mut b: Vec<usize> = self.pairs.iter().map(|p| p.1 as usize).collect();
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        (a, b)
    }
}

/// How θ is specified relative to the canonical isomorphism `A/A0 → B/B0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSpec {
    /// Identity when both quotients coincide, otherwise the first
    /// isomorphism in the deterministic search order.
    Canonical,
    /// The canonical isomorphism followed by an automorphism of `B/B0`.
    Automorphism(AutomorphismSpec),
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Canonical => write!(f, "id"),
            ThetaSpec::Automorphism(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for ThetaSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim() {
            "id" | "canonical" => Ok(ThetaSpec::Canonical),
            _ => Ok(ThetaSpec::Automorphism(s.parse()?)),
        }
    }
}

/// Goursat data with θ stored as a map between coset indices.
#[derive(Clone)]
pub struct GoursatQuintuple {
    pub a: Arc<FiniteSubgroup>,
    pub a0: Vec<usize>,
    pub b: Arc<FiniteSubgroup>,
    pub b0: Vec<usize>,
    pub qa: Quotient,
    pub qb: Quotient,
    pub theta: Vec<usize>,
}

impl fmt::Debug for GoursatQuintuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Goursat({}, |A0|={}, {}, |B0|={})",
            self.a.label(),
            self.a0.len(),
            self.b.label(),
            self.b0.len()
        )
    }
}

fn check_iso(qa: &FiniteSubgroup, qb: &FiniteSubgroup, theta: &[usize]) -> Result<(), GroupError> {
    let n = qa.order();
    if qb.order() != n || theta.len() != n {
        return Err(GroupError::NotBijective);
    }
    let mut hit = vec![false; n];
    for &t in theta {
        if t >= n || std::mem::replace(&mut hit[t], true) {
            return Err(GroupError::NotBijective);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if theta[qa.mul(i, j)] != qb.mul(theta[i], theta[j]) {
                return Err(GroupError::NotHomomorphism("θ is not multiplicative".into()));
            }
        }
    }
    Ok(())
}

impl GoursatQuintuple {
    /// Verifies normality of `a0`, `b0` and that θ is an isomorphism.
    pub fn new(
        a: Arc<FiniteSubgroup>,
        a0: Vec<usize>,
        b: Arc<FiniteSubgroup>,
        b0: Vec<usize>,
        theta: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let qa = quotient_by_indices(&a, &a0)?;
        let qb = quotient_by_indices(&b, &b0)?;
        check_iso(&qa.group, &qb.group, &theta)?;
        let mut a0 = a0;
        let mut b0 = b0;
        a0.sort_unstable();
        b0.sort_unstable();
        Ok(Self { a, a0, b, b0, qa, qb, theta })
    }

    /// Resolves θ from a specification.
    pub fn with_spec(
        a: Arc<FiniteSubgroup>,
        a0: Vec<usize>,
        b: Arc<FiniteSubgroup>,
        b0: Vec<usize>,
        spec: &ThetaSpec,
    ) -> Result<Self, GroupError> {
        let qa = quotient_by_indices(&a, &a0)?;
        let qb = quotient_by_indices(&b, &b0)?;
        let mut a0s = a0.clone();
        let mut b0s = b0.clone();
        a0s.sort_unstable();
        b0s.sort_unstable();
        let canonical = if a.elements() == b.elements() && a0s == b0s {
            (0..qa.group.order()).collect()
        } else {
            find_isomorphism(&qa.group, &qb.group).ok_or(GroupError::NoIsomorphism)?
        };
        let theta = match spec {
            ThetaSpec::Canonical => canonical,
            ThetaSpec::Automorphism(f) => {
                let m = apply_automorphism(f, &qb.group)?;
                canonical.iter().map(|&i| m[i]).collect()
            }
        };
        Self::new(a, a0, b, b0, theta)
    }

    /// Quintuple of the fiber product of two surjections `α: A → F`, `β: B → F`.
    pub fn from_maps(
        a: Arc<FiniteSubgroup>,
        b: Arc<FiniteSubgroup>,
        f: &FiniteSubgroup,
        alpha: &[usize],
        beta: &[usize],
    ) -> Result<Self, GroupError> {
        for (g, map) in [(&a, alpha), (&b, beta)] {
            for i in 0..g.order() {
                for j in 0..g.order() {
                    if map[g.mul(i, j)] != f.mul(map[i], map[j]) {
                        return Err(GroupError::NotHomomorphism("fiber map".into()));
                    }
                }
            }
            let mut hit = vec![false; f.order()];
            map.iter().for_each(|&x| hit[x] = true);
            if hit.iter().any(|h| !h) {
                return Err(GroupError::NotBijective);
            }
        }
        let a0: Vec<usize> = (0..a.order()).filter(|&i| alpha[i] == f.identity()).collect();
        let b0: Vec<usize> = (0..b.order()).filter(|&i| beta[i] == f.identity()).collect();
        let qa = quotient_by_indices(&a, &a0)?;
        let qb = quotient_by_indices(&b, &b0)?;
        let mut by_value = vec![usize::MAX; f.order()];
        for y in 0..b.order() {
            by_value[beta[y]] = qb.projection[y];
        }
        let mut theta = vec![0; qa.group.order()];
        for x in 0..a.order() {
            theta[qa.projection[x]] = by_value[alpha[x]];
        }
        Self::new(a, a0, b, b0, theta)
    }

    pub fn order(&self) -> usize {
        self.a.order() * self.b0.len()
    }
}

/// The fiber product `{(a, b) : θ(aA0) = bB0}`.
pub fn build_goursat(q: &GoursatQuintuple) -> PairSubgroup {
    let mut by_coset: Vec<Vec<u32>> = vec![Vec::new(); q.qb.group.order()];
    for y in 0..q.b.order() {
        by_coset[q.qb.projection[y]].push(y as u32);
    }
    let mut pairs = Vec::with_capacity(q.order());
    for x in 0..q.a.order() {
        for &y in &by_coset[q.theta[q.qa.projection[x]]] {
            pairs.push((x as u32, y));
        }
    }
    PairSubgroup::from_index_pairs(q.a.clone(), q.b.clone(), pairs)
}

/// Fiber product of maps `α: A → F`, `β: B → F` given as index maps into a
/// group of order `f_order`. The maps are assumed to be homomorphisms.
pub fn fiber_product(
    a: Arc<FiniteSubgroup>,
    b: Arc<FiniteSubgroup>,
    alpha: &[usize],
    beta: &[usize],
    f_order: usize,
) -> PairSubgroup {
    let mut by_value: Vec<Vec<u32>> = vec![Vec::new(); f_order];
    for (y, &v) in beta.iter().enumerate() {
        by_value[v].push(y as u32);
    }
    let mut pairs = Vec::new();
    for (x, &v) in alpha.iter().enumerate() {
        for &y in &by_value[v] {
            pairs.push((x as u32, y));
        }
    }
    PairSubgroup::from_index_pairs(a, b, pairs)
}

/// Recovers the quintuple of a pair subgroup.
///
/// Membership is validated through the quotient map: `A0` and `B0` must be
/// normal, the pairs must induce a well defined isomorphism of quotients,
/// and `|C| = |A|·|B0|` then forces `C` to be the full fiber product.
pub fn decompose(c: &PairSubgroup) -> Result<GoursatQuintuple, GroupError> {
    let (pa, pb) = c.projections();
    let a = Arc::new(c.left().subgroup(format!("π1({})", c.left().label()), &pa)?);
    let b = Arc::new(c.right().subgroup(format!("π2({})", c.right().label()), &pb)?);
    let to_a: HashMap<usize, usize> = pa.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let to_b: HashMap<usize, usize> = pb.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    for g in [&a, &b] {
        for i in 0..g.order() {
            for j in 0..g.order() {
                g.index_of(&g.element(i).mul(&g.element(j))?)
                    .ok_or_else(|| GroupError::NotClosed("projection is not a subgroup".into()))?;
            }
        }
    }
    let lid = c.left().identity();
    let rid = c.right().identity();
    let a0: Vec<usize> = c.pairs().iter().filter(|p| p.1 as usize == rid).map(|p| to_a[&(p.0 as usize)]).collect();
    let b0: Vec<usize> = c.pairs().iter().filter(|p| p.0 as usize == lid).map(|p| to_b[&(p.1 as usize)]).collect();
    let qa = quotient_by_indices(&a, &a0)?;
    let qb = quotient_by_indices(&b, &b0)?;
    let mut theta = vec![usize::MAX; qa.group.order()];
    for &(x, y) in c.pairs() {
        let cx = qa.projection[to_a[&(x as usize)]];
        let cy = qb.projection[to_b[&(y as usize)]];
        if theta[cx] == usize::MAX {
            theta[cx] = cy;
        } else if theta[cx] != cy {
            return Err(GroupError::NotClosed("pairs do not define a map of quotients".into()));
        }
    }
    if c.order() != a.order() * b0.len() {
        return Err(GroupError::NotClosed("order law |C| = |A|·|B0| fails".into()));
    }
    GoursatQuintuple::new(a, a0, b, b0, theta)
}

/// The graph `{(x, f(x))}` of an automorphism.
pub fn graph_of(spec: &AutomorphismSpec, g: &Arc<FiniteSubgroup>) -> Result<PairSubgroup, GroupError> {
    let m = apply_automorphism(spec, g)?;
    let pairs = m.iter().enumerate().map(|(x, &y)| (x as u32, y as u32)).collect();
    Ok(PairSubgroup::from_index_pairs(g.clone(), g.clone(), pairs))
}

/// Sufficient test that two quintuples describe the same subgroup after
/// applying `f1` to the `A` side and `f2` to the `B` side of `q1`.
///
/// Requires `q1`, `q2` to share the ambient groups `A` and `B`; returns
/// true iff `f1(A0₁) = A0₂`, `f2(B0₁) = B0₂` and `θ₂ ∘ f1 = f2 ∘ θ₁` on cosets.
pub fn quintuple_data_equal(
    q1: &GoursatQuintuple,
    q2: &GoursatQuintuple,
    f1: Option<&AutomorphismSpec>,
    f2: Option<&AutomorphismSpec>,
) -> bool {
    if q1.a.elements() != q2.a.elements() || q1.b.elements() != q2.b.elements() {
        return false;
    }
    let map = |f: Option<&AutomorphismSpec>, g: &FiniteSubgroup| -> Option<Vec<usize>> {
        match f {
            None => Some((0..g.order()).collect()),
            Some(spec) => apply_automorphism(spec, g).ok(),
        }
    };
    let (Some(m1), Some(m2)) = (map(f1, &q1.a), map(f2, &q1.b)) else {
        return false;
    };
    let image = |m: &[usize], s: &[usize]| {
        let mut v: Vec<usize> = s.iter().map(|&i| m[i]).collect();
        v.sort_unstable();
        v
    };
    if image(&m1, &q1.a0) != q2.a0 || image(&m2, &q1.b0) != q2.b0 {
        return false;
    }
    let rep_b: Vec<usize> = {
        let mut r = vec![usize::MAX; q1.qb.group.order()];
        for y in 0..q1.b.order() {
            let c = q1.qb.projection[y];
            if r[c] == usize::MAX {
                r[c] = y;
            }
        }
        r
    };
    (0..q1.a.order()).all(|x| {
        let lhs = q2.theta[q2.qa.projection[m1[x]]];
        let y = rep_b[q1.theta[q1.qa.projection[x]]];
        let rhs = q2.qb.projection[m2[y]];
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::{ade_group, AdeKind};

    #[test]
    fn full_product_and_diagonal() {
        let z4 = ade_group(AdeKind::Cyclic(4)).unwrap();
        let z3 = ade_group(AdeKind::Cyclic(3)).unwrap();
        let all_a: Vec<usize> = (0..4).collect();
        let all_b: Vec<usize> = (0..3).collect();
        let q = GoursatQuintuple::with_spec(z4.clone(), all_a, z3, all_b, &ThetaSpec::Canonical).unwrap();
        assert_eq!(build_goursat(&q).order(), 12);
        let d = GoursatQuintuple::with_spec(z4.clone(), vec![0], z4.clone(), vec![0], &ThetaSpec::Canonical).unwrap();
        let c = build_goursat(&d);
        assert!(c.pairs().iter().all(|p| p.0 == p.1));
        assert_eq!(c.order(), 4);
    }
}

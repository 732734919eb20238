//! Free-action oracle on S³ × S³: a subgroup of SU(2)³ acts freely iff no
//! non-trivial element has three equal real parts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::ade::{real_part_set, FiniteSubgroup};
use crate::congruence::is_prime;
use crate::exact::{rat, RealPart};
use crate::goursat::PairSubgroup;
use crate::quaternion::UnitQuaternion;

/// Default cap on the number of element triples.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreenessError {
    #[error("enumeration budget exceeded: {order} triples > {budget}")]
    Budget { order: u64, budget: u64 },
    #[error("invalid product group: {0}")]
    Invalid(String),
}

/// A subgroup of SU(2)³ in one of the shapes the classification uses.
#[derive(Clone)]
pub enum ProductGroup3 {
    Splittable([Arc<FiniteSubgroup>; 3]),
    /// `position` is the coordinate (0, 1 or 2) holding `single`; the pair
    /// fills the other two coordinates in increasing order.
    SemiSplittable { position: usize, pair: Arc<PairSubgroup>, single: Arc<FiniteSubgroup> },
    /// `{(x, rx, sx) : x ∈ Z_p}` in additive notation.
    Simple { p: i64, r: i64, s: i64 },
    Explicit(Vec<[UnitQuaternion; 3]>),
}

impl fmt::Debug for ProductGroup3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductGroup3::Splittable(g) => write!(f, "{} x {} x {}", g[0].label(), g[1].label(), g[2].label()),
            ProductGroup3::SemiSplittable { position, pair, single } => {
                write!(f, "SemiSplittable(pos {position}, {pair:?}, {})", single.label())
            }
            ProductGroup3::Simple { p, r, s } => write!(f, "Simple({p},{r},{s})"),
            ProductGroup3::Explicit(v) => write!(f, "Explicit({} triples)", v.len()),
        }
    }
}

/// Outcome of the oracle; non-free verdicts carry a witness triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub free: bool,
    pub witness: Option<[UnitQuaternion; 3]>,
}

impl Verdict {
    fn free() -> Self {
        Verdict { free: true, witness: None }
    }

    fn blocked(w: [UnitQuaternion; 3]) -> Self {
        Verdict { free: false, witness: Some(w) }
    }
}

fn first_index_by_key(g: &FiniteSubgroup) -> HashMap<RealPart, usize> {
    let mut m = HashMap::new();
    for (i, k) in g.real_parts().iter().enumerate() {
        m.entry(*k).or_insert(i);
    }
    m
}

fn simple_element(p: i64, x: i64) -> UnitQuaternion {
    UnitQuaternion::e(rat(x.rem_euclid(p), p))
}

impl ProductGroup3 {
    /// Explicit triple list; closure is verified.
    pub fn explicit(triples: Vec<[UnitQuaternion; 3]>) -> Result<Self, FreenessError> {
        let set: BTreeSet<[UnitQuaternion; 3]> = triples.iter().copied().collect();
        for a in &set {
            for b in &set {
                let mut c = [a[0]; 3];
                for i in 0..3 {
                    c[i] = a[i].mul(&b[i]).map_err(|e| FreenessError::Invalid(e.to_string()))?;
                }
                if !set.contains(&c) {
                    return Err(FreenessError::Invalid("triple list is not closed".into()));
                }
            }
        }
        Ok(ProductGroup3::Explicit(set.into_iter().collect()))
    }

    pub fn simple(p: i64, r: i64, s: i64) -> Result<Self, FreenessError> {
        if !is_prime(p) {
            return Err(FreenessError::Invalid(format!("{p} is not prime")));
        }
        if r.gcd(&p) != 1 || s.gcd(&p) != 1 {
            return Err(FreenessError::Invalid("r, s must be units".into()));
        }
        Ok(ProductGroup3::Simple { p, r: r.rem_euclid(p), s: s.rem_euclid(p) })
    }

    pub fn order(&self) -> u64 {
        match self {
            ProductGroup3::Splittable(g) => g.iter().map(|x| x.order() as u64).product(),
            ProductGroup3::SemiSplittable { pair, single, .. } => pair.order() as u64 * single.order() as u64,
            ProductGroup3::Simple { p, .. } => *p as u64,
            ProductGroup3::Explicit(v) => v.len() as u64,
        }
    }

    /// The same group with coordinates rearranged: new coordinate `i` is old
    /// coordinate `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> ProductGroup3 {
        match self {
            ProductGroup3::Splittable(g) => ProductGroup3::Splittable(perm.map(|i| g[i].clone())),
            ProductGroup3::SemiSplittable { position, pair, single } => {
                let new_pos = perm.iter().position(|&i| i == *position).unwrap();
                let old_pair: Vec<usize> = (0..3).filter(|i| i != position).collect();
                let new_pair_src: Vec<usize> = (0..3).filter(|&i| i != new_pos).map(|i| perm[i]).collect();
                let pair = if new_pair_src == old_pair { pair.clone() } else { Arc::new(pair.swapped()) };
                ProductGroup3::SemiSplittable { position: new_pos, pair, single: single.clone() }
            }
            ProductGroup3::Simple { p, r, s } => {
                let mult = [1, *r, *s];
                let lead = mult[perm[0]];
                let inv = lead.extended_gcd(p).x.rem_euclid(*p);
                let norm = |v: i64| (v * inv).rem_euclid(*p);
                ProductGroup3::Simple { p: *p, r: norm(mult[perm[1]]), s: norm(mult[perm[2]]) }
            }
            ProductGroup3::Explicit(v) => {
                let mut out: Vec<[UnitQuaternion; 3]> = v.iter().map(|t| perm.map(|i| t[i])).collect();
                out.sort();
                ProductGroup3::Explicit(out)
            }
        }
    }

    /// All element triples (for small groups and tests).
    pub fn triples(&self) -> Vec<[UnitQuaternion; 3]> {
        match self {
            ProductGroup3::Splittable(g) => {
                let mut out = Vec::with_capacity(self.order() as usize);
                for a in g[0].elements() {
                    for b in g[1].elements() {
                        for c in g[2].elements() {
                            out.push([*a, *b, *c]);
                        }
                    }
                }
                out
            }
            ProductGroup3::SemiSplittable { position, pair, single } => {
                let mut out = Vec::new();
                for (x, y) in pair.element_pairs() {
                    for d in single.elements() {
                        out.push(place(*position, x, y, *d));
                    }
                }
                out
            }
            ProductGroup3::Simple { p, r, s } => (0..*p)
                .map(|x| [simple_element(*p, x), simple_element(*p, r * x), simple_element(*p, s * x)])
                .collect(),
            ProductGroup3::Explicit(v) => v.clone(),
        }
    }
}

fn place(position: usize, x: UnitQuaternion, y: UnitQuaternion, d: UnitQuaternion) -> [UnitQuaternion; 3] {
    match position {
        0 => [d, x, y],
        1 => [x, d, y],
        _ => [x, y, d],
    }
}

fn is_trivial(t: &[UnitQuaternion; 3]) -> bool {
    t.iter().all(|q| q.is_identity())
}

/// Decides freeness with pruned enumeration; errors when the group has more
/// than `budget` element triples.
pub fn is_free(g: &ProductGroup3, budget: u64) -> Result<Verdict, FreenessError> {
    let order = g.order();
    if order > budget {
        return Err(FreenessError::Budget { order, budget });
    }
    Ok(match g {
        ProductGroup3::Splittable(f) => splittable_verdict(f),
        ProductGroup3::SemiSplittable { position, pair, single } => {
            SemiSplitOracle::new(pair).verdict(*position, single)
        }
        ProductGroup3::Simple { p, r, s } => {
            let mut v = Verdict::free();
            for x in 1..*p {
                let t = [simple_element(*p, x), simple_element(*p, r * x), simple_element(*p, s * x)];
                let k = t[0].re().key();
                if t[1].re().key() == k && t[2].re().key() == k {
                    v = Verdict::blocked(t);
                    break;
                }
            }
            v
        }
        ProductGroup3::Explicit(v) => exhaustive(v.iter().copied()),
    })
}

fn splittable_verdict(f: &[Arc<FiniteSubgroup>; 3]) -> Verdict {
    let smallest = (0..3).min_by_key(|&i| (f[i].order(), i)).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != smallest).collect();
    let maps: Vec<HashMap<RealPart, usize>> = others.iter().map(|&i| first_index_by_key(&f[i])).collect();
    let g = &f[smallest];
    for (x, k) in g.real_parts().iter().enumerate() {
        if k.is_one() {
            continue;
        }
        if let (Some(&y), Some(&z)) = (maps[0].get(k), maps[1].get(k)) {
            let mut t = [g.element(x); 3];
            t[others[0]] = f[others[0]].element(y);
            t[others[1]] = f[others[1]].element(z);
            return Verdict::blocked(t);
        }
    }
    Verdict::free()
}

/// Plain scan over every triple, for cross-validation.
pub fn is_free_exhaustive(g: &ProductGroup3) -> Verdict {
    exhaustive(g.triples().into_iter())
}

fn exhaustive(it: impl Iterator<Item = [UnitQuaternion; 3]>) -> Verdict {
    for t in it {
        if is_trivial(&t) {
            continue;
        }
        let k = t[0].re();
        if crate::exact::realpart_equal(&k, &t[1].re()) && crate::exact::realpart_equal(&k, &t[2].re()) {
            return Verdict::blocked(t);
        }
    }
    Verdict::free()
}

/// Coincidence data of a pair subgroup, reusable across third factors.
pub struct SemiSplitOracle {
    witnesses: BTreeMap<RealPart, (UnitQuaternion, UnitQuaternion)>,
}

impl SemiSplitOracle {
    pub fn new(pair: &PairSubgroup) -> Self {
        let lk = pair.left().real_parts();
        let rk = pair.right().real_parts();
        let mut witnesses = BTreeMap::new();
        for &(x, y) in pair.pairs() {
            let k = lk[x as usize];
            if k == rk[y as usize] {
                witnesses
                    .entry(k)
                    .or_insert_with(|| (pair.left().element(x as usize), pair.right().element(y as usize)));
            }
        }
        Self { witnesses }
    }

    /// The coincidence set W.
    pub fn coincidence_set(&self) -> BTreeSet<RealPart> {
        self.witnesses.keys().copied().collect()
    }

    pub fn verdict(&self, position: usize, single: &FiniteSubgroup) -> Verdict {
        for (i, k) in single.real_parts().iter().enumerate() {
            if k.is_one() {
                continue;
            }
            if let Some((x, y)) = self.witnesses.get(k) {
                return Verdict::blocked(place(position, *x, *y, single.element(i)));
            }
        }
        Verdict::free()
    }
}

/// `W(C) = {Re x : Re x = Re y, (x, y) ∈ C}`.
pub fn coincidence_set(c: &PairSubgroup) -> BTreeSet<RealPart> {
    SemiSplitOracle::new(c).coincidence_set()
}

/// Freeness of `g1 × g2 × g3` from the triple intersection of real-part sets.
pub fn splittable_free_test(g1: &FiniteSubgroup, g2: &FiniteSubgroup, g3: &FiniteSubgroup) -> bool {
    let s1: BTreeSet<RealPart> = real_part_set(g1).into_iter().collect();
    let s2: BTreeSet<RealPart> = real_part_set(g2).into_iter().collect();
    let s3: BTreeSet<RealPart> = real_part_set(g3).into_iter().collect();
    s1.iter().filter(|k| s2.contains(k) && s3.contains(k)).all(|k| k.is_one())
}

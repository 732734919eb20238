//! The ADE catalog of finite subgroups of SU(2), their normal subgroups,
//! coset quotients, automorphisms and conjugacy classes.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, ParseError};
use crate::exact::{rat, RealPart, Rational, SurdValue};
use crate::quaternion::{unit_basis, Representation, UnitQuaternion};

/// Largest order for which `mul` builds the multiplication table on demand.
const TABLE_LIMIT: usize = 2048;

/// The five families of finite subgroups of SU(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum AdeKind {
    /// Cyclic group of order n.
    Cyclic(u32),
    /// Binary dihedral group of order 4n, n ≥ 2.
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl AdeKind {
    pub fn order(&self) -> usize {
        match *self {
            AdeKind::Cyclic(n) => n as usize,
            AdeKind::BinaryDihedral(n) => 4 * n as usize,
            AdeKind::BinaryTetrahedral => 24,
            AdeKind::BinaryOctahedral => 48,
            AdeKind::BinaryIcosahedral => 120,
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        match *self {
            AdeKind::Cyclic(0) => Err(GroupError::Parameter("Z(n) needs n ≥ 1".into())),
            AdeKind::BinaryDihedral(n) if n < 2 => Err(GroupError::Parameter("BD(n) needs n ≥ 2".into())),
            _ => Ok(()),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            AdeKind::Cyclic(_) | AdeKind::BinaryDihedral(_) => Representation::Angle,
            _ => Representation::Surd,
        }
    }
}

impl fmt::Display for AdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeKind::Cyclic(n) => write!(f, "Z({n})"),
            AdeKind::BinaryDihedral(n) => write!(f, "BD({n})"),
            AdeKind::BinaryTetrahedral => write!(f, "2T"),
            AdeKind::BinaryOctahedral => write!(f, "2O"),
            AdeKind::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

impl FromStr for AdeKind {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let param = |body: &str, off: usize| -> Result<u32, ParseError> {
            body.trim()
                .parse::<u32>()
                .map_err(|_| ParseError::new(format!("invalid group parameter '{body}'"), lead + off))
        };
        let kind = match t {
            "2T" => AdeKind::BinaryTetrahedral,
            "2O" => AdeKind::BinaryOctahedral,
            "2I" => AdeKind::BinaryIcosahedral,
            _ => {
                if let Some(b) = t.strip_prefix("Z(").and_then(|r| r.strip_suffix(')')) {
                    AdeKind::Cyclic(param(b, 2)?)
                } else if let Some(b) = t.strip_prefix("BD(").and_then(|r| r.strip_suffix(')')) {
                    AdeKind::BinaryDihedral(param(b, 3)?)
                } else {
                    return Err(ParseError::new(format!("unknown group '{t}'"), lead));
                }
            }
        };
        kind.validate().map_err(|e| ParseError::new(e.to_string(), lead))?;
        Ok(kind)
    }
}

/// A finite group of unit quaternions, or a coset quotient of one.
///
/// Elements are stored in ascending order. Quotient groups store the
/// smallest element of each coset and carry an explicit multiplication table.
pub struct FiniteSubgroup {
    label: String,
    kind: Option<AdeKind>,
    elements: Vec<UnitQuaternion>,
    index: HashMap<UnitQuaternion, usize>,
    identity: usize,
    table: OnceLock<Vec<u32>>,
    quotient_of: Option<(Arc<FiniteSubgroup>, Vec<usize>)>,
    real_parts: OnceLock<Vec<RealPart>>,
}

impl fmt::Debug for FiniteSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order())
    }
}

impl FiniteSubgroup {
    fn assemble(label: String, kind: Option<AdeKind>, mut elements: Vec<UnitQuaternion>) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        let rep = elements
            .first()
            .map(|e| e.representation())
            .ok_or_else(|| GroupError::Parameter("empty element list".into()))?;
        if elements.iter().any(|e| e.representation() != rep) {
            return Err(GroupError::Representation);
        }
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let identity = *index
            .get(&UnitQuaternion::identity(rep))
            .ok_or_else(|| GroupError::NotClosed("identity missing".into()))?;
        Ok(Self {
            label,
            kind,
            elements,
            index,
            identity,
            table: OnceLock::new(),
            quotient_of: None,
            real_parts: OnceLock::new(),
        })
    }

    /// Builds a group from an element list, verifying closure.
    pub fn from_elements(label: impl Into<String>, elements: Vec<UnitQuaternion>) -> Result<Self, GroupError> {
        let g = Self::assemble(label.into(), None, elements)?;
        g.verify_closure()?;
        Ok(g)
    }

    /// Closure of a generating set.
    pub fn generate(label: impl Into<String>, gens: &[UnitQuaternion]) -> Result<Self, GroupError> {
        let rep = gens.first().map(|g| g.representation()).unwrap_or(Representation::Angle);
        let id = UnitQuaternion::identity(rep);
        let mut seen: BTreeSet<UnitQuaternion> = BTreeSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g)?;
                if seen.insert(y) {
                    if seen.len() > 1_000_000 {
                        return Err(GroupError::NotClosed("generated group too large".into()));
                    }
                    queue.push_back(y);
                }
            }
        }
        Self::assemble(label.into(), None, seen.into_iter().collect())
    }

    fn verify_closure(&self) -> Result<(), GroupError> {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                let p = a.mul(b)?;
                let k = self.index.get(&p).ok_or_else(|| GroupError::NotClosed(format!("{a} * {b} = {p}")))?;
                table[i * n + j] = *k as u32;
            }
        }
        let _ = self.table.set(table);
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> Option<AdeKind> {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitQuaternion] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> UnitQuaternion {
        self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn representation(&self) -> Representation {
        self.elements[0].representation()
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient_of.is_some()
    }

    /// Index of an element given by its stored label.
    pub fn index_of(&self, q: &UnitQuaternion) -> Option<usize> {
        self.index.get(q).copied()
    }

    /// Index of the element represented by `q`: for a quotient, `q` may be
    /// any element of the parent group.
    pub fn locate(&self, q: &UnitQuaternion) -> Option<usize> {
        match &self.quotient_of {
            Some((parent, proj)) => parent.locate(q).map(|i| proj[i]),
            None => self.index_of(q),
        }
    }

    pub fn contains(&self, q: &UnitQuaternion) -> bool {
        self.index.contains_key(q)
    }

    /// Full multiplication table, `table[i * n + j] = i·j`.
    pub fn cayley(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut t = vec![0u32; n * n];
            for (i, a) in self.elements.iter().enumerate() {
                for (j, b) in self.elements.iter().enumerate() {
                    let p = a.mul(b).expect("uniform representation");
                    t[i * n + j] = self.index[&p] as u32;
                }
            }
            t
        })
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t[i * self.order() + j] as usize;
        }
        if self.order() <= TABLE_LIMIT {
            return self.cayley()[i * self.order() + j] as usize;
        }
        let p = self.elements[i].mul(&self.elements[j]).expect("uniform representation");
        self.index[&p]
    }

    pub fn inv(&self, i: usize) -> usize {
        if self.quotient_of.is_none() {
            return self.index[&self.elements[i].inv()];
        }
        (0..self.order()).find(|&j| self.mul(i, j) == self.identity).expect("group has inverses")
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(i) } else { i };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Canonical real parts (see [`RealPart::key`]), one per element.
    pub fn real_parts(&self) -> &[RealPart] {
        self.real_parts.get_or_init(|| self.elements.iter().map(|e| e.re().key()).collect())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Subgroup spanned by the given element indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Materializes a subgroup given by indices as a standalone group.
    pub fn subgroup(&self, label: impl Into<String>, indices: &[usize]) -> Result<FiniteSubgroup, GroupError> {
        if self.is_quotient() {
            return Err(GroupError::Parameter("subgroups of quotients are index sets only".into()));
        }
        let els = indices.iter().map(|&i| self.elements[i]).collect();
        Self::assemble(label.into(), None, els)
    }

    /// Indices of the elements of `sub` inside `self`.
    pub fn indices_of(&self, sub: &FiniteSubgroup) -> Result<Vec<usize>, GroupError> {
        sub.elements
            .iter()
            .map(|e| self.index_of(e).ok_or_else(|| GroupError::NotMember(e.to_string())))
            .collect()
    }

    fn relabel(mut self, label: String, kind: Option<AdeKind>) -> Self {
        self.label = label;
        self.kind = kind;
        self
    }
}

/// Builds the element list of an ADE group and checks closure.
pub fn build_group(kind: AdeKind) -> Result<FiniteSubgroup, GroupError> {
    let g = build_unchecked(kind)?;
    g.verify_closure()?;
    Ok(g)
}

fn build_unchecked(kind: AdeKind) -> Result<FiniteSubgroup, GroupError> {
    kind.validate()?;
    let els = match kind {
        AdeKind::Cyclic(n) => (0..n as i64).map(|x| UnitQuaternion::e(rat(x, n as i64))).collect(),
        AdeKind::BinaryDihedral(n) => {
            let m = 2 * n as i64;
            (0..m)
                .flat_map(|x| [UnitQuaternion::e(rat(x, m)), UnitQuaternion::je(rat(x, m))])
                .collect()
        }
        AdeKind::BinaryTetrahedral => binary_tetrahedral(),
        AdeKind::BinaryOctahedral => {
            let t = binary_tetrahedral();
            let w = eighth_turn();
            let mut out = t.clone();
            out.extend(t.iter().map(|x| w.mul(x).unwrap()));
            out
        }
        AdeKind::BinaryIcosahedral => {
            let t = binary_tetrahedral();
            let q = icosahedral_q();
            let mut out = t.clone();
            let mut qk = q;
            for _ in 1..5 {
                out.extend(t.iter().map(|x| qk.mul(x).unwrap()));
                qk = qk.mul(&q).unwrap();
            }
            out
        }
    };
    FiniteSubgroup::assemble(kind.to_string(), Some(kind), els)
}

/// Shared, memoized instance of an ADE group.
pub fn ade_group(kind: AdeKind) -> Result<Arc<FiniteSubgroup>, GroupError> {
    static CACHE: OnceLock<Mutex<HashMap<AdeKind, Arc<FiniteSubgroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&kind) {
        return Ok(g.clone());
    }
    let g = Arc::new(build_unchecked(kind)?);
    Ok(cache.lock().unwrap().entry(kind).or_insert(g).clone())
}

fn binary_tetrahedral() -> Vec<UnitQuaternion> {
    let basis = unit_basis();
    let mut out: Vec<UnitQuaternion> = basis.iter().flat_map(|u| [*u, u.neg()]).collect();
    for signs in 0..16u32 {
        let c = |b: u32| if signs >> b & 1 == 1 { rat(-1, 2) } else { rat(1, 2) };
        out.push(UnitQuaternion::rational(c(0), c(1), c(2), c(3)).unwrap());
    }
    out
}

/// `(1 + i)/√2`.
pub fn eighth_turn() -> UnitQuaternion {
    let h = SurdValue::sqrt2().scale(rat(1, 2));
    UnitQuaternion::surd(h, h, SurdValue::zero(), SurdValue::zero()).unwrap()
}

/// Golden ratio `φ = (1 + √5)/2`.
pub fn golden() -> SurdValue {
    SurdValue::new(rat(1, 2), Rational::zero(), rat(1, 2), Rational::zero())
}

/// `φ⁻¹ = (−1 + √5)/2`.
pub fn golden_inv() -> SurdValue {
    SurdValue::new(rat(-1, 2), Rational::zero(), rat(1, 2), Rational::zero())
}

/// `(φ + φ⁻¹ i + j)/2`.
pub fn icosahedral_q() -> UnitQuaternion {
    let h = rat(1, 2);
    UnitQuaternion::surd(golden().scale(h), golden_inv().scale(h), SurdValue::from_rational(h), SurdValue::zero())
        .unwrap()
}

/// `½(1 + i + j + k)`.
pub fn tetra_s() -> UnitQuaternion {
    let h = rat(1, 2);
    UnitQuaternion::rational(h, h, h, h).unwrap()
}

/// `½(1 + i + j − k)`.
pub fn tetra_t() -> UnitQuaternion {
    let h = rat(1, 2);
    UnitQuaternion::rational(h, h, h, -h).unwrap()
}

/// The two generators listed for each ADE kind.
pub fn standard_generators(kind: AdeKind) -> Vec<UnitQuaternion> {
    match kind {
        AdeKind::Cyclic(n) => vec![UnitQuaternion::e(rat(1, n as i64))],
        AdeKind::BinaryDihedral(n) => vec![UnitQuaternion::je(Rational::zero()), UnitQuaternion::e(rat(1, 2 * n as i64))],
        AdeKind::BinaryTetrahedral => vec![tetra_s(), tetra_t()],
        AdeKind::BinaryOctahedral => vec![tetra_s(), eighth_turn()],
        AdeKind::BinaryIcosahedral => vec![tetra_s(), icosahedral_q()],
    }
}

/// Distinct real parts of the elements, in canonical order.
pub fn real_part_set(g: &FiniteSubgroup) -> Vec<RealPart> {
    let set: BTreeSet<RealPart> = g.real_parts().iter().copied().collect();
    set.into_iter().collect()
}

/// Abstract isomorphism type of a small group arising as a quotient.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GroupType {
    /// `Z_l`.
    Cyclic(usize),
    /// Dihedral group of order `2l`.
    Dihedral(usize),
    /// Binary dihedral group of order `4n`.
    BinaryDihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    Unidentified(usize),
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Cyclic(l) => write!(f, "Z_{l}"),
            GroupType::Dihedral(l) => write!(f, "D_{}", 2 * l),
            GroupType::BinaryDihedral(n) => write!(f, "2D_{}", 2 * n),
            GroupType::Tetrahedral => write!(f, "T"),
            GroupType::Octahedral => write!(f, "O"),
            GroupType::Icosahedral => write!(f, "I"),
            GroupType::BinaryTetrahedral => write!(f, "2T"),
            GroupType::BinaryOctahedral => write!(f, "2O"),
            GroupType::BinaryIcosahedral => write!(f, "2I"),
            GroupType::Unidentified(n) => write!(f, "order-{n}"),
        }
    }
}

/// Identifies a group among the types that occur as ADE quotients.
pub fn identify_group(g: &FiniteSubgroup) -> GroupType {
    let n = g.order();
    let orders: Vec<usize> = (0..n).map(|i| g.element_order(i)).collect();
    if orders.iter().any(|&o| o == n) {
        return GroupType::Cyclic(n);
    }
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &o in &orders {
        *hist.entry(o).or_default() += 1;
    }
    let hist: Vec<(usize, usize)> = hist.into_iter().collect();
    let named: [(&[(usize, usize)], GroupType); 6] = [
        (&[(1, 1), (2, 3), (3, 8)], GroupType::Tetrahedral),
        (&[(1, 1), (2, 9), (3, 8), (4, 6)], GroupType::Octahedral),
        (&[(1, 1), (2, 15), (3, 20), (5, 24)], GroupType::Icosahedral),
        (&[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)], GroupType::BinaryTetrahedral),
        (&[(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)], GroupType::BinaryOctahedral),
        (&[(1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24)], GroupType::BinaryIcosahedral),
    ];
    for (h, t) in named {
        if hist == h {
            return t;
        }
    }
    let id = g.identity();
    if n % 2 == 0 {
        let l = n / 2;
        for y in (0..n).filter(|&y| orders[y] == l) {
            let cyc = g.subgroup_generated(&[y]);
            let yi = g.inv(y);
            let found = (0..n).any(|x| {
                cyc.binary_search(&x).is_err()
                    && g.mul(x, x) == id
                    && g.mul(g.mul(x, y), g.inv(x)) == yi
            });
            if found {
                return GroupType::Dihedral(l);
            }
        }
    }
    if n % 4 == 0 && n >= 8 {
        let m = n / 2;
        for t in (0..n).filter(|&t| orders[t] == m) {
            let cyc = g.subgroup_generated(&[t]);
            let tn = g.pow(t, (m / 2) as i64);
            let ti = g.inv(t);
            let found = (0..n).any(|s| {
                cyc.binary_search(&s).is_err() && g.mul(s, s) == tn && g.mul(g.mul(s, t), g.inv(s)) == ti
            });
            if found {
                return GroupType::BinaryDihedral(n / 4);
            }
        }
    }
    GroupType::Unidentified(n)
}

/// A coset quotient together with the projection from the parent.
#[derive(Clone)]
pub struct Quotient {
    pub group: Arc<FiniteSubgroup>,
    pub projection: Vec<usize>,
}

/// `true` when `n` (given by parent indices) is closed under conjugation.
pub fn is_normal(g: &FiniteSubgroup, n: &[usize]) -> bool {
    let mut member = vec![false; g.order()];
    for &i in n {
        member[i] = true;
    }
    (0..g.order()).all(|x| {
        let xi = g.inv(x);
        n.iter().all(|&a| member[g.mul(g.mul(x, a), xi)])
    })
}

/// The coset group `g / n`, with the smallest element of each coset as its label.
pub fn quotient(g: &Arc<FiniteSubgroup>, n: &FiniteSubgroup) -> Result<Quotient, GroupError> {
    let n_idx = g.indices_of(n)?;
    quotient_by_indices(g, &n_idx)
}

pub fn quotient_by_indices(g: &Arc<FiniteSubgroup>, n_idx: &[usize]) -> Result<Quotient, GroupError> {
    if !is_normal(g, n_idx) {
        return Err(GroupError::NotNormal);
    }
    let mut proj = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if proj[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &a in n_idx {
            proj[g.mul(x, a)] = c;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = proj[g.mul(a, b)] as u32;
        }
    }
    let elements: Vec<UnitQuaternion> = reps.iter().map(|&r| g.element(r)).collect();
    let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let identity = proj[g.identity()];
    let label = format!("{}/[{}]", g.label(), n_idx.len());
    let q = FiniteSubgroup {
        label,
        kind: None,
        elements,
        index,
        identity,
        table: OnceLock::from(table),
        quotient_of: Some((g.clone(), proj.clone())),
        real_parts: OnceLock::new(),
    };
    Ok(Quotient { group: Arc::new(q), projection: proj })
}

/// A conjugacy class with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: UnitQuaternion,
    pub members: Vec<usize>,
    pub size: usize,
    pub real_part: RealPart,
}

/// Conjugacy classes by orbit enumeration, ordered by smallest member.
pub fn conjugacy_classes(g: &FiniteSubgroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|i| g.inv(i)).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, x), inv[h])).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        let rep = g.element(members[0]);
        out.push(ConjugacyClass { representative: rep, size: members.len(), real_part: rep.re(), members });
    }
    out
}

/// A normal subgroup found by exhaustive search, with its quotient type.
#[derive(Debug, Clone)]
pub struct NormalSubgroup {
    pub indices: Vec<usize>,
    pub subgroup_type: GroupType,
    pub quotient_type: GroupType,
}

/// All normal subgroups, obtained as joins of normal closures of classes.
pub fn normal_subgroups(g: &Arc<FiniteSubgroup>) -> Result<Vec<NormalSubgroup>, GroupError> {
    if g.order() > 10_000 {
        return Err(GroupError::Parameter("normal subgroup search limited to order 10^4".into()));
    }
    let classes = conjugacy_classes(g);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &classes {
        found.insert(g.subgroup_generated(&c.members));
    }
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let mut gens = current[i].clone();
                gens.extend(&current[j]);
                let joined = g.subgroup_generated(&gens);
                if found.insert(joined) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut list: Vec<Vec<usize>> = found.into_iter().collect();
    list.sort_by_key(|s| (s.len(), s.clone()));
    list.into_iter()
        .map(|indices| {
            let sub = g.subgroup("N", &indices)?;
            let q = quotient_by_indices(g, &indices)?;
            Ok(NormalSubgroup {
                subgroup_type: identify_group(&sub),
                quotient_type: identify_group(&q.group),
                indices,
            })
        })
        .collect()
}

/// Automorphism descriptors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AutomorphismSpec {
    /// `x ↦ x^r`.
    Power(i64),
    /// On BD(n): `t^p ↦ t^(ap)`, `s t^p ↦ s t^(ap+b)` with `t = e(1/2n)`, `s = j t`.
    Affine(i64, i64),
    /// Conjugation `x ↦ g x g⁻¹`.
    InnerBy(UnitQuaternion),
    /// Conjugation by `(1 + j)/√2`.
    Outer2T,
    /// Fixes `½(1+i+j+k)` and negates `(1+i)/√2`.
    Outer2O,
    /// Fixes `½(1+i+j+k)` and sends `(φ + φ⁻¹i + j)/2` to `(−φ⁻¹ − φi + k)/2`.
    Outer2I,
    /// Extension of a generator assignment.
    GeneratorImages(Vec<(UnitQuaternion, UnitQuaternion)>),
    /// Applied first to last.
    Compose(Vec<AutomorphismSpec>),
}

impl fmt::Display for AutomorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomorphismSpec::Power(r) => write!(f, "pow({r})"),
            AutomorphismSpec::Affine(a, b) => write!(f, "aff({a},{b})"),
            AutomorphismSpec::InnerBy(g) => write!(f, "inner({g})"),
            AutomorphismSpec::Outer2T => write!(f, "out2T"),
            AutomorphismSpec::Outer2O => write!(f, "out2O"),
            AutomorphismSpec::Outer2I => write!(f, "out2I"),
            AutomorphismSpec::GeneratorImages(m) => {
                write!(f, "gens(")?;
                for (i, (a, b)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{a}->{b}")?;
                }
                write!(f, ")")
            }
            AutomorphismSpec::Compose(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("∘"))
            }
        }
    }
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < s.len() {
        let rest = &s[i..];
        let c = rest.chars().next().unwrap();
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && rest.starts_with(sep) {
            out.push((start, &s[start..i]));
            i += sep.len();
            start = i;
            continue;
        }
        i += c.len_utf8();
    }
    out.push((start, &s[start..]));
    out
}

impl FromStr for AutomorphismSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let parts = split_top_level(s, "∘");
        if parts.len() > 1 {
            let specs = parts
                .into_iter()
                .map(|(off, p)| p.parse::<AutomorphismSpec>().map_err(|e| e.at(off)))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(AutomorphismSpec::Compose(specs));
        }
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let int = |x: &str, off: usize| {
            x.trim().parse::<i64>().map_err(|_| ParseError::new(format!("invalid integer '{x}'"), lead + off))
        };
        match t {
            "out2T" => return Ok(AutomorphismSpec::Outer2T),
            "out2O" => return Ok(AutomorphismSpec::Outer2O),
            "out2I" => return Ok(AutomorphismSpec::Outer2I),
            _ => {}
        }
        if let Some(b) = t.strip_prefix("pow(").and_then(|r| r.strip_suffix(')')) {
            return Ok(AutomorphismSpec::Power(int(b, 4)?));
        }
        if let Some(b) = t.strip_prefix("aff(").and_then(|r| r.strip_suffix(')')) {
            let (x, y) = b
                .split_once(',')
                .ok_or_else(|| ParseError::new("aff(a,b) needs two integers", lead + 4))?;
            return Ok(AutomorphismSpec::Affine(int(x, 4)?, int(y, 5 + x.len())?));
        }
        if let Some(b) = t.strip_prefix("inner(").and_then(|r| r.strip_suffix(')')) {
            return Ok(AutomorphismSpec::InnerBy(b.parse().map_err(|e: ParseError| e.at(lead + 6))?));
        }
        if let Some(b) = t.strip_prefix("gens(").and_then(|r| r.strip_suffix(')')) {
            let mut pairs = Vec::new();
            for (off, item) in split_top_level(b, ";") {
                let (x, y) = item
                    .split_once("->")
                    .ok_or_else(|| ParseError::new("expected 'x->y'", lead + 5 + off))?;
                let px = x.parse().map_err(|e: ParseError| e.at(lead + 5 + off))?;
                let py = y.parse().map_err(|e: ParseError| e.at(lead + 5 + off + x.len() + 2))?;
                pairs.push((px, py));
            }
            return Ok(AutomorphismSpec::GeneratorImages(pairs));
        }
        Err(ParseError::new(format!("unknown automorphism '{t}'"), lead))
    }
}

/// Extends generator images to a homomorphism `g → h`, checking that the
/// extension is well defined on every edge of the Cayley graph.
pub fn extend_generators(
    g: &FiniteSubgroup,
    h: &FiniteSubgroup,
    gens: &[(usize, usize)],
) -> Result<Vec<usize>, GroupError> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &(a, b) in gens {
            let y = g.mul(x, a);
            let fy = h.mul(map[x], b);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return Err(GroupError::NotHomomorphism("generator images violate a relation".into()));
            }
        }
    }
    if map.iter().any(|&m| m == usize::MAX) {
        return Err(GroupError::NotHomomorphism("generators do not generate the group".into()));
    }
    Ok(map)
}

fn check_bijective_hom(g: &FiniteSubgroup, map: &[usize]) -> Result<(), GroupError> {
    let n = g.order();
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return Err(GroupError::NotBijective);
        }
        hit[m] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if map[g.mul(i, j)] != g.mul(map[i], map[j]) {
                return Err(GroupError::NotHomomorphism(format!(
                    "fails on {} * {}",
                    g.element(i),
                    g.element(j)
                )));
            }
        }
    }
    Ok(())
}

fn locate_or(g: &FiniteSubgroup, q: &UnitQuaternion) -> Result<usize, GroupError> {
    g.locate(q).ok_or_else(|| GroupError::NotMember(q.to_string()))
}

fn images_of(g: &FiniteSubgroup, pairs: &[(UnitQuaternion, UnitQuaternion)]) -> Result<Vec<usize>, GroupError> {
    let gens = pairs
        .iter()
        .map(|(a, b)| Ok((locate_or(g, a)?, locate_or(g, b)?)))
        .collect::<Result<Vec<_>, GroupError>>()?;
    let map = extend_generators(g, g, &gens)?;
    check_bijective_hom(g, &map)?;
    Ok(map)
}

/// Applies an automorphism, returning the induced element permutation.
pub fn apply_automorphism(spec: &AutomorphismSpec, g: &FiniteSubgroup) -> Result<Vec<usize>, GroupError> {
    let n = g.order();
    let map: Vec<usize> = match spec {
        AutomorphismSpec::Power(r) => {
            if let Some(AdeKind::Cyclic(m)) = g.kind() {
                if r.gcd(&(m as i64)) != 1 {
                    return Err(GroupError::InvalidAutomorphism(format!("gcd({r}, {m}) ≠ 1")));
                }
            }
            (0..n).map(|i| g.pow(i, *r)).collect()
        }
        AutomorphismSpec::Affine(a, b) => {
            let Some(AdeKind::BinaryDihedral(m)) = g.kind() else {
                return Err(GroupError::InvalidAutomorphism("aff(a,b) applies to BD(n)".into()));
            };
            let two_n = 2 * m as i64;
            if a.gcd(&two_n) != 1 {
                return Err(GroupError::InvalidAutomorphism(format!("{a} is not a unit mod {two_n}")));
            }
            g.elements()
                .iter()
                .map(|e| {
                    let UnitQuaternion::Angle { j, theta } = *e else { unreachable!() };
                    let x = (theta * Rational::from_integer(two_n)).to_integer();
                    let img = if j {
                        UnitQuaternion::je(rat(a * (x - 1) + b + 1, two_n))
                    } else {
                        UnitQuaternion::e(rat(a * x, two_n))
                    };
                    locate_or(g, &img)
                })
                .collect::<Result<_, _>>()?
        }
        AutomorphismSpec::InnerBy(c) => {
            if let Some(ci) = g.locate(c) {
                let cinv = g.inv(ci);
                (0..n).map(|i| g.mul(g.mul(ci, i), cinv)).collect()
            } else {
                if g.is_quotient() {
                    return Err(GroupError::NotMember(c.to_string()));
                }
                let cinv = c.inv();
                g.elements()
                    .iter()
                    .map(|e| locate_or(g, &c.mul(e)?.mul(&cinv)?))
                    .collect::<Result<_, _>>()?
            }
        }
        AutomorphismSpec::Outer2T => {
            let h = SurdValue::sqrt2().scale(rat(1, 2));
            let c = UnitQuaternion::surd(h, SurdValue::zero(), h, SurdValue::zero()).unwrap();
            apply_automorphism(&AutomorphismSpec::InnerBy(c), g)?
        }
        AutomorphismSpec::Outer2O => {
            let t = eighth_turn();
            images_of(g, &[(tetra_s(), tetra_s()), (t, t.neg())])?
        }
        AutomorphismSpec::Outer2I => {
            let h = rat(1, 2);
            let img = UnitQuaternion::surd(
                golden_inv().neg().scale(h),
                golden().neg().scale(h),
                SurdValue::zero(),
                SurdValue::from_rational(h),
            )
            .unwrap();
            images_of(g, &[(tetra_s(), tetra_s()), (icosahedral_q(), img)])?
        }
        AutomorphismSpec::GeneratorImages(pairs) => images_of(g, pairs)?,
        AutomorphismSpec::Compose(parts) => {
            let mut acc: Vec<usize> = (0..n).collect();
            for p in parts {
                let m = apply_automorphism(p, g)?;
                acc = acc.iter().map(|&i| m[i]).collect();
            }
            acc
        }
    };
    check_bijective_hom(g, &map)?;
    Ok(map)
}

/// A small generating set, chosen greedily by descending element order.
pub fn generating_set(g: &FiniteSubgroup) -> Vec<usize> {
    let n = g.order();
    let mut cands: Vec<usize> = (0..n).collect();
    let orders: Vec<usize> = (0..n).map(|i| g.element_order(i)).collect();
    cands.sort_by_key(|&i| (std::cmp::Reverse(orders[i]), i));
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for c in cands {
        if span.len() == n {
            break;
        }
        if span.binary_search(&c).is_ok() {
            continue;
        }
        gens.push(c);
        span = g.subgroup_generated(&gens);
    }
    gens
}

/// All isomorphisms `g → h` (as index maps), in deterministic order.
pub fn isomorphisms(g: &FiniteSubgroup, h: &FiniteSubgroup, limit: usize) -> Vec<Vec<usize>> {
    if g.order() != h.order() {
        return Vec::new();
    }
    let gens = generating_set(g);
    let g_ord: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let h_ord: Vec<usize> = (0..h.order()).map(|i| h.element_order(i)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    fn rec(
        k: usize,
        g: &FiniteSubgroup,
        h: &FiniteSubgroup,
        gens: &[usize],
        g_ord: &[usize],
        h_ord: &[usize],
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == gens.len() {
            let pairs: Vec<(usize, usize)> = gens.iter().copied().zip(choice.iter().copied()).collect();
            if let Ok(map) = extend_generators(g, h, &pairs) {
                let mut hit = vec![false; h.order()];
                if map.iter().all(|&m| !std::mem::replace(&mut hit[m], true)) {
                    out.push(map);
                }
            }
            return;
        }
        for y in 0..h.order() {
            if h_ord[y] == g_ord[k] {
                choice[k] = y;
                rec(k + 1, g, h, gens, g_ord, h_ord, choice, out, limit);
            }
        }
    }
    rec(0, g, h, &gens, &g_ord, &h_ord, &mut choice, &mut out, limit);
    out
}

/// First isomorphism in the deterministic search order.
pub fn find_isomorphism(g: &FiniteSubgroup, h: &FiniteSubgroup) -> Option<Vec<usize>> {
    isomorphisms(g, h, 1).into_iter().next()
}

/// Surd-form copy of an angle-form group, when every element embeds.
pub fn to_surd_form(g: &FiniteSubgroup) -> Option<FiniteSubgroup> {
    let els: Option<Vec<UnitQuaternion>> = g.elements().iter().map(|e| e.to_surd()).collect();
    let s = FiniteSubgroup::assemble(g.label().to_string(), None, els?).ok()?;
    Some(s.relabel(g.label().to_string(), g.kind()))
}

/// Resolves a group descriptor as a subgroup of `parent`, converting
/// angle-form descriptors to surd form when the parent uses surds.
pub fn embed_in(kind: AdeKind, parent: &FiniteSubgroup) -> Result<FiniteSubgroup, GroupError> {
    let g = build_unchecked(kind)?;
    let g = if g.representation() != parent.representation() {
        match parent.representation() {
            Representation::Surd => to_surd_form(&g).ok_or(GroupError::Representation)?,
            Representation::Angle => {
                let els: Option<Vec<UnitQuaternion>> = g.elements().iter().map(|e| e.to_angle()).collect();
                let a = FiniteSubgroup::assemble(kind.to_string(), None, els.ok_or(GroupError::Representation)?)?;
                a.relabel(kind.to_string(), Some(kind))
            }
        }
    } else {
        g
    };
    for e in g.elements() {
        if !parent.contains(e) {
            return Err(GroupError::NotMember(format!("{e} of {kind} in {}", parent.label())));
        }
    }
    Ok(g)
}

/// Is `r` a unit modulo `n`?
pub fn is_unit(r: i64, n: i64) -> bool {
    r.gcd(&n) == 1
}

impl FiniteSubgroup {
    /// Element `−1` if present.
    pub fn minus_one(&self) -> Option<usize> {
        self.index_of(&UnitQuaternion::minus_one(self.representation()))
    }

    /// The canonical identity real part, handy for set tests.
    pub fn has_real_part(&self, r: &RealPart) -> bool {
        let k = r.key();
        self.real_parts().iter().any(|x| *x == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for kind in [
            AdeKind::Cyclic(1),
            AdeKind::Cyclic(7),
            AdeKind::BinaryDihedral(3),
            AdeKind::BinaryTetrahedral,
            AdeKind::BinaryOctahedral,
            AdeKind::BinaryIcosahedral,
        ] {
            assert_eq!(build_group(kind).unwrap().order(), kind.order());
        }
    }

    #[test]
    fn descriptors_roundtrip() {
        for s in ["Z(7)", "BD(3)", "2T", "2O", "2I"] {
            assert_eq!(s.parse::<AdeKind>().unwrap().to_string(), s);
        }
        assert!("BD(1)".parse::<AdeKind>().is_err());
        assert!("Q(3)".parse::<AdeKind>().is_err());
    }

    #[test]
    fn automorphism_strings() {
        for s in ["pow(3)", "aff(5,2)", "inner(j*e(1/4))", "out2I", "pow(2)∘out2O", "gens(e(1/5)->e(2/5))"] {
            assert_eq!(s.parse::<AutomorphismSpec>().unwrap().to_string(), s);
        }
    }
}

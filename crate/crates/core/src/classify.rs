//! Closed-form freeness predicates for every family of the classification,
//! the subgroups of SU(2)³ they describe, and a harness comparing the two.
//!
//! Predicates are literal transcriptions of the condition tables. Where a
//! family is "gated", its row only applies to groups that are not already
//! contained in a freely acting splittable group, so the predicate is the
//! row condition or the splittable condition of the enclosing product.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::ade::{
    ade_group, embed_in, extend_generators, isomorphisms, quotient_by_indices, tetra_s, AdeKind, AutomorphismSpec,
    FiniteSubgroup,
};
use crate::congruence::{is_prime, simple_system_trivial_only};
use crate::error::{GroupError, ParseError};
use crate::exact::rat;
use crate::freeness::{is_free, FreenessError, ProductGroup3, SemiSplitOracle, Verdict};
use crate::goursat::{fiber_product, graph_of, PairSubgroup};
use crate::quaternion::UnitQuaternion;

use AdeKind::{BinaryDihedral as BD, BinaryIcosahedral as I2, BinaryOctahedral as O2, BinaryTetrahedral as T2, Cyclic as Z};

/// Theorems whose families can be cross-checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    #[serde(rename = "simple")]
    Simple,
    #[serde(rename = "main")]
    Main,
    #[serde(rename = "typeB")]
    TypeB,
    #[serde(rename = "type3")]
    Type3,
    #[serde(rename = "qfinal")]
    QFinal,
    #[serde(rename = "qfinal2")]
    QFinal2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] =
        [TheoremId::Simple, TheoremId::Main, TheoremId::TypeB, TheoremId::Type3, TheoremId::QFinal, TheoremId::QFinal2];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Simple => "simple",
            TheoremId::Main => "main",
            TheoremId::TypeB => "typeB",
            TheoremId::Type3 => "type3",
            TheoremId::QFinal => "qfinal",
            TheoremId::QFinal2 => "qfinal2",
        })
    }
}

impl FromStr for TheoremId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string() == s.trim())
            .ok_or_else(|| ParseError::new(format!("unknown theorem id '{}'", s.trim()), 0))
    }
}

/// Enumeration bounds: `param` caps the family parameters, `third` caps the
/// parameter of a cyclic or binary dihedral third factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub param: i64,
    pub third: i64,
}

impl Bounds {
    pub fn default_for(t: TheoremId) -> Bounds {
        let (param, third) = match t {
            TheoremId::Simple => (31, 0),
            TheoremId::Main => (12, 12),
            TheoremId::TypeB => (30, 30),
            TheoremId::Type3 => (10, 10),
            TheoremId::QFinal | TheoremId::QFinal2 => (6, 30),
        };
        Bounds { param, third }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

fn coprime_to(primes: &[i64], x: i64) -> bool {
    primes.iter().all(|p| x % p != 0)
}

fn param_of(k: AdeKind) -> i64 {
    match k {
        Z(n) | BD(n) => n as i64,
        _ => 0,
    }
}

/// Rows of the splittable table, named by their factor shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SplitRow {
    ZII,
    ZOI,
    ZOO,
    ZTO,
    ZTI,
    ZTT,
    ZZZ,
    ZZD,
    ZDD,
    ZZT,
    ZZO,
    ZDT,
    ZDO,
    ZDI,
    ZZI,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Z,
    D,
    T,
    O,
    I,
}

fn shape(k: AdeKind) -> Shape {
    match k {
        Z(_) => Shape::Z,
        BD(_) => Shape::D,
        T2 => Shape::T,
        O2 => Shape::O,
        I2 => Shape::I,
    }
}

impl SplitRow {
    pub const ALL: [SplitRow; 15] = [
        SplitRow::ZII,
        SplitRow::ZOI,
        SplitRow::ZOO,
        SplitRow::ZTO,
        SplitRow::ZTI,
        SplitRow::ZTT,
        SplitRow::ZZZ,
        SplitRow::ZZD,
        SplitRow::ZDD,
        SplitRow::ZZT,
        SplitRow::ZZO,
        SplitRow::ZDT,
        SplitRow::ZDO,
        SplitRow::ZDI,
        SplitRow::ZZI,
    ];

    fn pattern(self) -> [Shape; 3] {
        use Shape::*;
        match self {
            SplitRow::ZII => [Z, I, I],
            SplitRow::ZOI => [Z, O, I],
            SplitRow::ZOO => [Z, O, O],
            SplitRow::ZTO => [Z, T, O],
            SplitRow::ZTI => [Z, T, I],
            SplitRow::ZTT => [Z, T, T],
            SplitRow::ZZZ => [Z, Z, Z],
            SplitRow::ZZD => [Z, Z, D],
            SplitRow::ZDD => [Z, D, D],
            SplitRow::ZZT => [Z, Z, T],
            SplitRow::ZZO => [Z, Z, O],
            SplitRow::ZDT => [Z, D, T],
            SplitRow::ZDO => [Z, D, O],
            SplitRow::ZDI => [Z, D, I],
            SplitRow::ZZI => [Z, Z, I],
        }
    }

    /// Factor kinds for parameters `(n, m, l)`; unused parameters are ignored.
    pub fn kinds(self, n: i64, m: i64, l: i64) -> [AdeKind; 3] {
        let p = [n, m, l];
        let mut out = [Z(1); 3];
        for (i, s) in self.pattern().into_iter().enumerate() {
            let v = p[i] as u32;
            out[i] = match s {
                Shape::Z => Z(v),
                Shape::D => BD(v),
                Shape::T => T2,
                Shape::O => O2,
                Shape::I => I2,
            };
        }
        out
    }

    /// Which of `(n, m, l)` the row depends on.
    pub fn arity(self) -> usize {
        self.pattern().iter().filter(|s| matches!(s, Shape::Z | Shape::D)).count()
    }

    pub fn label(self) -> String {
        self.pattern()
            .iter()
            .map(|s| match s {
                Shape::Z => "Z",
                Shape::D => "BD",
                Shape::T => "2T",
                Shape::O => "2O",
                Shape::I => "2I",
            })
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// The row condition of the splittable table.
pub fn predicate_splittable(row: SplitRow, n: i64, m: i64, l: i64) -> bool {
    match row {
        SplitRow::ZII => coprime_to(&[2, 3, 5], n),
        SplitRow::ZOI | SplitRow::ZOO | SplitRow::ZTO | SplitRow::ZTI | SplitRow::ZTT => coprime_to(&[2, 3], n),
        SplitRow::ZZZ => gcd3(n, m, l) == 1,
        SplitRow::ZZD => gcd3(n, m, 2 * l) == 1,
        SplitRow::ZDD => gcd3(n, 2 * m, 2 * l) == 1,
        SplitRow::ZZT | SplitRow::ZZO => coprime_to(&[2, 3], gcd(n, m)),
        SplitRow::ZDT | SplitRow::ZDO | SplitRow::ZDI => coprime_to(&[2, 3], gcd(n, 2 * m)),
        SplitRow::ZZI => coprime_to(&[2, 3, 5], gcd(n, m)),
    }
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The table row matching the factors in some order, with its parameters.
pub fn match_split_row(kinds: [AdeKind; 3]) -> Option<(SplitRow, [i64; 3])> {
    for row in SplitRow::ALL {
        let pat = row.pattern();
        for p in PERMS {
            let k = p.map(|i| kinds[i]);
            if (0..3).all(|i| shape(k[i]) == pat[i]) {
                return Some((row, k.map(param_of)));
            }
        }
    }
    None
}

/// Table verdict for a splittable product in any factor order; products of
/// shapes absent from the table are not free.
pub fn predicate_splittable_any(kinds: [AdeKind; 3]) -> bool {
    match match_split_row(kinds) {
        Some((row, [n, m, l])) => predicate_splittable(row, n, m, l),
        None => false,
    }
}

pub fn predicate_simple(p: i64, r: i64, s: i64) -> Result<bool, GroupError> {
    simple_system_trivial_only(p, r, s)
}

fn is_pm_one(r: i64, n: i64) -> bool {
    (r - 1).rem_euclid(n) == 0 || (r + 1).rem_euclid(n) == 0
}

/// Conditions keyed by `k1 = gcd(1+r, n)`, `k2 = gcd(1−r, n)`.
fn k_table(k1: i64, k2: i64, d: AdeKind) -> bool {
    let cond = |k: i64| match d {
        Z(m) => gcd(k, m as i64) == 1,
        BD(m) => gcd(k, 2 * m as i64) == 1,
        T2 | O2 => coprime_to(&[2, 3], k),
        I2 => coprime_to(&[2, 3, 5], k),
    };
    match (k1 > 1, k2 > 1) {
        (true, true) => cond(k1) && cond(k2),
        (true, false) => cond(k1),
        (false, true) => match d {
            I2 => coprime_to(&[2, 3, 5], k1),
            _ => cond(k2),
        },
        (false, false) => true,
    }
}

/// Conditions keyed by `k̃1`, `k̃2` for dihedral automorphisms; only cyclic
/// third factors occur.
fn kt_table(kt1: i64, kt2: i64, d: AdeKind) -> bool {
    let Z(m) = d else { return false };
    let m = m as i64;
    m % 4 != 0 && (kt1 <= 1 || gcd(kt1, m) == 1) && (kt2 <= 1 || gcd(kt2, m) == 1)
}

/// Conditions keyed by `m_ε·s` for both signs.
fn ms_table(ms: [i64; 2], d: AdeKind) -> bool {
    ms.iter().all(|&k| match d {
        Z(n) => gcd(n as i64, k) == 1,
        BD(n) => gcd(2 * n as i64, k) == 1,
        T2 | O2 => coprime_to(&[2, 3], k),
        I2 => coprime_to(&[2, 3, 5], k),
    })
}

/// Graph families `Γ(f, A) = {(x, f(x))}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TypeIBase {
    Outer2I,
    Outer2O,
    /// `τ_{a,b}` on BD(n).
    Dihedral { n: i64, a: i64, b: i64 },
    /// `x ↦ x^r` on Z(n).
    Cyclic { n: i64, r: i64 },
}

/// Fiber products with `B0 = {1}`, i.e. graphs of surjections `A → B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TypeIIRow {
    /// `2T → Z(3)` with kernel BD(2), `½(1+i+j+k) ↦ e(2r/3)`.
    TetraZ3 { r: i64 },
    /// `BD(2k) → Z(2)` with kernel BD(k).
    DicyclicHalf { k: i64 },
    /// `2O → Z(2)` with kernel 2T.
    OctaTetra,
    /// `BD(k) → Z(2)` with kernel Z(2k).
    DicyclicCyclic { k: i64 },
    /// `Z(kl) → Z(k)`, `e(1/kl) ↦ e(r/k)`.
    CyclicQuotient { k: i64, l: i64, r: i64 },
    /// `BD(l(2k+1)) → BD(l)`, reduction followed by `τ_{a,b}` and conjugation
    /// by `1` or `j`.
    DihedralQuotient { k: i64, l: i64, a: i64, b: i64, conj_j: bool },
}

/// Fiber products with both kernels non-trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TypeIIIPart {
    /// `Z(kl)/Z(k)` with `Z(pl)/Z(p)`, quotient map `x ↦ rx`.
    A { k: i64, l: i64, p: i64, r: i64 },
    /// `Z(3n)/Z(n)` with `2T/BD(2)`.
    B { n: i64, r: i64 },
    /// `BD(l(2k+1))/Z(2k+1)` with `BD(l(2p+1))/Z(2p+1)`.
    C { k: i64, l: i64, p: i64, a: i64, b: i64, conj_j: bool },
    /// `BD(2k+1)/Z(2k+1)` with `Z(4p)/Z(p)`, `j ↦ e(r/4)`.
    D { k: i64, p: i64, r: i64 },
    /// `BD(2k+1)/Z(2k+1)` with `BD(2p+1)/Z(2p+1)`.
    E { k: i64, p: i64, r: i64 },
    /// `Z(2(2k+1))/Z(2k+1)` with `2O/2T`.
    F { k: i64 },
    /// `Z(2(2k+1))/Z(2k+1)` with `BD(2p)/BD(p)`.
    G { k: i64, p: i64 },
    /// `2I/Z(2)` with itself through the outer automorphism.
    Icosa,
    /// `BD(3k)/Z(2k)` with `2O/BD(2)`; `iso` indexes the quotient isomorphisms.
    OctaDihedral { k: i64, iso: usize },
    /// `BD(kl)/Z(2k)` with `BD(pl)/Z(2p)`; `iso` indexes the quotient isomorphisms.
    DihedralPair { k: i64, l: i64, p: i64, iso: usize },
}

/// The pair-subgroup part of a semisplittable family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SemiFamily {
    TypeI(TypeIBase),
    TypeII(TypeIIRow),
    TypeIII(TypeIIIPart),
}

/// A member of one of the classified families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilySpec {
    Simple { p: i64, r: i64, s: i64 },
    Splittable { row: SplitRow, n: i64, m: i64, l: i64 },
    Semi { family: SemiFamily, third: AdeKind },
}

fn e(p: i64, q: i64) -> UnitQuaternion {
    UnitQuaternion::e(rat(p, q))
}

fn je(p: i64, q: i64) -> UnitQuaternion {
    UnitQuaternion::je(rat(p, q))
}

fn quat(w: i64, x: i64, y: i64, z: i64) -> UnitQuaternion {
    let r = |v: i64| rat(v, 1);
    UnitQuaternion::rational(r(w), r(x), r(y), r(z)).unwrap()
}

fn group(kind: AdeKind) -> Result<Arc<FiniteSubgroup>, GroupError> {
    kind.validate()?;
    ade_group(kind)
}

/// Extends generator images to a homomorphism `a → f`.
fn hom(a: &FiniteSubgroup, f: &FiniteSubgroup, images: &[(UnitQuaternion, UnitQuaternion)]) -> Result<Vec<usize>, GroupError> {
    let pairs = images
        .iter()
        .map(|(x, y)| {
            let i = a.locate(x).ok_or_else(|| GroupError::NotMember(format!("{x} in {}", a.label())))?;
            let j = f.locate(y).ok_or_else(|| GroupError::NotMember(format!("{y} in {}", f.label())))?;
            Ok((i, j))
        })
        .collect::<Result<Vec<_>, GroupError>>()?;
    extend_generators(a, f, &pairs)
}

fn fiber(
    a: AdeKind,
    b: AdeKind,
    f: AdeKind,
    alpha: &[(UnitQuaternion, UnitQuaternion)],
    beta: &[(UnitQuaternion, UnitQuaternion)],
) -> Result<PairSubgroup, GroupError> {
    let (ga, gb, gf) = (group(a)?, group(b)?, group(f)?);
    let al = hom(&ga, &gf, alpha)?;
    let be = hom(&gb, &gf, beta)?;
    Ok(fiber_product(ga, gb, &al, &be, gf.order()))
}

/// `c_g ∘ τ_{a,b}` on the generators `j`, `e(1/2l)` of BD(l), with `g ∈ {1, j}`.
fn dihedral_images(l: i64, a: i64, b: i64, conj_j: bool) -> (UnitQuaternion, UnitQuaternion) {
    let t = e(a, 2 * l);
    let s = je(b + 1 - a, 2 * l);
    if conj_j {
        let g = je(0, 1);
        let gi = g.inv();
        let c = |x: UnitQuaternion| g.mul(&x).unwrap().mul(&gi).unwrap();
        (c(s), c(t))
    } else {
        (s, t)
    }
}

/// Surjection 2T → Z(3) with kernel BD(2) sending `½(1+i+j+k)` to `e(2r/3)`.
fn tetra_to_z3(r: i64) -> Vec<(UnitQuaternion, UnitQuaternion)> {
    vec![(tetra_s(), e(2 * r, 3)), (quat(0, 1, 0, 0), e(0, 1)), (quat(0, 0, 1, 0), e(0, 1))]
}

fn k_of(n: i64) -> u32 {
    n as u32
}

/// Third factors `Z(2..=m)`, `BD(2..=m)`, 2T, 2O, 2I.
pub fn third_factors(max: i64) -> Vec<AdeKind> {
    let mut v: Vec<AdeKind> = (2..=max).map(|n| Z(k_of(n))).collect();
    v.extend((2..=max).map(|n| BD(k_of(n))));
    v.extend([T2, O2, I2]);
    v
}

fn quotient_isos(
    a: &Arc<FiniteSubgroup>,
    a0: AdeKind,
    b: &Arc<FiniteSubgroup>,
    b0: AdeKind,
) -> Result<(Vec<usize>, Vec<usize>, Vec<Vec<usize>>, usize), GroupError> {
    let ia = a.indices_of(&embed_in(a0, a)?)?;
    let ib = b.indices_of(&embed_in(b0, b)?)?;
    let qa = quotient_by_indices(a, &ia)?;
    let qb = quotient_by_indices(b, &ib)?;
    let isos = isomorphisms(&qa.group, &qb.group, usize::MAX);
    Ok((qa.projection, qb.projection, isos, qb.group.order()))
}

impl SemiFamily {
    pub fn theorem(&self) -> TheoremId {
        match self {
            SemiFamily::TypeI(_) => TheoremId::TypeB,
            SemiFamily::TypeII(_) => TheoremId::Type3,
            SemiFamily::TypeIII(
                TypeIIIPart::Icosa | TypeIIIPart::OctaDihedral { .. } | TypeIIIPart::DihedralPair { .. },
            ) => TheoremId::QFinal2,
            SemiFamily::TypeIII(_) => TheoremId::QFinal,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SemiFamily::TypeI(b) => match b {
                TypeIBase::Outer2I => "typeI/outer2I",
                TypeIBase::Outer2O => "typeI/outer2O",
                TypeIBase::Dihedral { .. } => "typeI/dihedral",
                TypeIBase::Cyclic { .. } => "typeI/cyclic",
            },
            SemiFamily::TypeII(r) => match r {
                TypeIIRow::TetraZ3 { .. } => "typeII/tetra",
                TypeIIRow::DicyclicHalf { .. } => "typeII/dicyclic-half",
                TypeIIRow::OctaTetra => "typeII/octa",
                TypeIIRow::DicyclicCyclic { .. } => "typeII/dicyclic-cyclic",
                TypeIIRow::CyclicQuotient { .. } => "typeII/cyclic",
                TypeIIRow::DihedralQuotient { .. } => "typeII/dihedral",
            },
            SemiFamily::TypeIII(p) => match p {
                TypeIIIPart::A { .. } => "typeIII/a",
                TypeIIIPart::B { .. } => "typeIII/b",
                TypeIIIPart::C { .. } => "typeIII/c",
                TypeIIIPart::D { .. } => "typeIII/d",
                TypeIIIPart::E { .. } => "typeIII/e",
                TypeIIIPart::F { .. } => "typeIII/f",
                TypeIIIPart::G { .. } => "typeIII/g",
                TypeIIIPart::Icosa => "typeIII/icosa",
                TypeIIIPart::OctaDihedral { .. } => "typeIII/octa-dihedral",
                TypeIIIPart::DihedralPair { .. } => "typeIII/dihedral-pair",
            },
        }
    }

    pub fn params(&self) -> String {
        let g = |j: bool| if j { "j" } else { "1" };
        match *self {
            SemiFamily::TypeI(b) => match b {
                TypeIBase::Outer2I | TypeIBase::Outer2O => String::new(),
                TypeIBase::Dihedral { n, a, b } => format!("n={n} a={a} b={b}"),
                TypeIBase::Cyclic { n, r } => format!("n={n} r={r}"),
            },
            SemiFamily::TypeII(r) => match r {
                TypeIIRow::TetraZ3 { r } => format!("r={r}"),
                TypeIIRow::DicyclicHalf { k } | TypeIIRow::DicyclicCyclic { k } => format!("k={k}"),
                TypeIIRow::OctaTetra => String::new(),
                TypeIIRow::CyclicQuotient { k, l, r } => format!("k={k} l={l} r={r}"),
                TypeIIRow::DihedralQuotient { k, l, a, b, conj_j } => {
                    format!("k={k} l={l} a={a} b={b} g={}", g(conj_j))
                }
            },
            SemiFamily::TypeIII(p) => match p {
                TypeIIIPart::A { k, l, p, r } => format!("k={k} l={l} p={p} r={r}"),
                TypeIIIPart::B { n, r } => format!("n={n} r={r}"),
                TypeIIIPart::C { k, l, p, a, b, conj_j } => format!("k={k} l={l} p={p} a={a} b={b} g={}", g(conj_j)),
                TypeIIIPart::D { k, p, r } | TypeIIIPart::E { k, p, r } => format!("k={k} p={p} r={r}"),
                TypeIIIPart::F { k } => format!("k={k}"),
                TypeIIIPart::G { k, p } => format!("k={k} p={p}"),
                TypeIIIPart::Icosa => String::new(),
                TypeIIIPart::OctaDihedral { k, iso } => format!("k={k} iso={iso}"),
                TypeIIIPart::DihedralPair { k, l, p, iso } => format!("k={k} l={l} p={p} iso={iso}"),
            },
        }
    }

    /// The factors `A`, `B` of the splittable product containing the pair.
    pub fn ambient(&self) -> (AdeKind, AdeKind) {
        let u = |n: i64| n as u32;
        match *self {
            SemiFamily::TypeI(b) => match b {
                TypeIBase::Outer2I => (I2, I2),
                TypeIBase::Outer2O => (O2, O2),
                TypeIBase::Dihedral { n, .. } => (BD(u(n)), BD(u(n))),
                TypeIBase::Cyclic { n, .. } => (Z(u(n)), Z(u(n))),
            },
            SemiFamily::TypeII(r) => match r {
                TypeIIRow::TetraZ3 { .. } => (T2, Z(3)),
                TypeIIRow::DicyclicHalf { k } => (BD(u(2 * k)), Z(2)),
                TypeIIRow::OctaTetra => (O2, Z(2)),
                TypeIIRow::DicyclicCyclic { k } => (BD(u(k)), Z(2)),
                TypeIIRow::CyclicQuotient { k, l, .. } => (Z(u(k * l)), Z(u(k))),
                TypeIIRow::DihedralQuotient { k, l, .. } => (BD(u(l * (2 * k + 1))), BD(u(l))),
            },
            SemiFamily::TypeIII(p) => match p {
                TypeIIIPart::A { k, l, p, .. } => (Z(u(k * l)), Z(u(p * l))),
                TypeIIIPart::B { n, .. } => (Z(u(3 * n)), T2),
                TypeIIIPart::C { k, l, p, .. } => (BD(u(l * (2 * k + 1))), BD(u(l * (2 * p + 1)))),
                TypeIIIPart::D { k, p, .. } => (BD(u(2 * k + 1)), Z(u(4 * p))),
                TypeIIIPart::E { k, p, .. } => (BD(u(2 * k + 1)), BD(u(2 * p + 1))),
                TypeIIIPart::F { k } => (Z(u(2 * (2 * k + 1))), O2),
                TypeIIIPart::G { k, p } => (Z(u(2 * (2 * k + 1))), BD(u(2 * p))),
                TypeIIIPart::Icosa => (I2, I2),
                TypeIIIPart::OctaDihedral { k, .. } => (BD(u(3 * k)), O2),
                TypeIIIPart::DihedralPair { k, l, p, .. } => (BD(u(k * l)), BD(u(p * l))),
            },
        }
    }

    /// Builds the subgroup of `A × B`.
    pub fn pair(&self) -> Result<PairSubgroup, GroupError> {
        let u = |n: i64| n as u32;
        let (ka, kb) = self.ambient();
        match *self {
            SemiFamily::TypeI(b) => {
                let spec = match b {
                    TypeIBase::Outer2I => AutomorphismSpec::Outer2I,
                    TypeIBase::Outer2O => AutomorphismSpec::Outer2O,
                    TypeIBase::Dihedral { a, b, .. } => AutomorphismSpec::Affine(a, b),
                    TypeIBase::Cyclic { r, .. } => AutomorphismSpec::Power(r),
                };
                graph_of(&spec, &group(ka)?)
            }
            SemiFamily::TypeII(row) => {
                let alpha = match row {
                    TypeIIRow::TetraZ3 { r } => tetra_to_z3(r),
                    TypeIIRow::DicyclicHalf { k } => vec![(je(0, 1), e(0, 1)), (e(1, 4 * k), e(1, 2))],
                    TypeIIRow::OctaTetra => vec![(tetra_s(), e(0, 1)), (crate::ade::eighth_turn(), e(1, 2))],
                    TypeIIRow::DicyclicCyclic { k } => vec![(je(0, 1), e(1, 2)), (e(1, 2 * k), e(0, 1))],
                    TypeIIRow::CyclicQuotient { k, l, r } => vec![(e(1, k * l), e(r, k))],
                    TypeIIRow::DihedralQuotient { k, l, a, b, conj_j } => {
                        let (s, t) = dihedral_images(l, a, b, conj_j);
                        vec![(je(0, 1), s), (e(1, 2 * l * (2 * k + 1)), t)]
                    }
                };
                let identity: Vec<(UnitQuaternion, UnitQuaternion)> = crate::ade::standard_generators(kb)
                    .into_iter()
                    .map(|g| (g, g))
                    .collect();
                fiber(ka, kb, kb, &alpha, &identity)
            }
            SemiFamily::TypeIII(part) => match part {
                TypeIIIPart::A { k, l, p, r } => {
                    fiber(ka, kb, Z(u(l)), &[(e(1, k * l), e(r, l))], &[(e(1, p * l), e(1, l))])
                }
                TypeIIIPart::B { n, r } => fiber(ka, kb, Z(3), &[(e(1, 3 * n), e(r, 3))], &tetra_to_z3(1)),
                TypeIIIPart::C { k, l, p, a, b, conj_j } => {
                    let (s, t) = dihedral_images(l, a, b, conj_j);
                    fiber(
                        ka,
                        kb,
                        BD(u(l)),
                        &[(je(0, 1), s), (e(1, 2 * l * (2 * k + 1)), t)],
                        &[(je(0, 1), je(0, 1)), (e(1, 2 * l * (2 * p + 1)), e(1, 2 * l))],
                    )
                }
                TypeIIIPart::D { k, p, r } => fiber(
                    ka,
                    kb,
                    Z(4),
                    &[(je(0, 1), e(r, 4)), (e(1, 2 * (2 * k + 1)), e(1, 2))],
                    &[(e(1, 4 * p), e(1, 4))],
                ),
                TypeIIIPart::E { k, p, r } => fiber(
                    ka,
                    kb,
                    Z(4),
                    &[(je(0, 1), e(r, 4)), (e(1, 2 * (2 * k + 1)), e(1, 2))],
                    &[(je(0, 1), e(1, 4)), (e(1, 2 * (2 * p + 1)), e(1, 2))],
                ),
                TypeIIIPart::F { k } => fiber(
                    ka,
                    kb,
                    Z(2),
                    &[(e(1, 2 * (2 * k + 1)), e(1, 2))],
                    &[(tetra_s(), e(0, 1)), (crate::ade::eighth_turn(), e(1, 2))],
                ),
                TypeIIIPart::G { k, p } => fiber(
                    ka,
                    kb,
                    Z(2),
                    &[(e(1, 2 * (2 * k + 1)), e(1, 2))],
                    &[(je(0, 1), e(0, 1)), (e(1, 4 * p), e(1, 2))],
                ),
                TypeIIIPart::Icosa => {
                    let g = group(I2)?;
                    let psi = crate::ade::apply_automorphism(&AutomorphismSpec::Outer2I, &g)?;
                    let center = [g.identity(), g.minus_one().ok_or(GroupError::NoIsomorphism)?];
                    let q = quotient_by_indices(&g, &center)?;
                    let alpha: Vec<usize> = psi.iter().map(|&y| q.projection[y]).collect();
                    Ok(fiber_product(g.clone(), g, &alpha, &q.projection, q.group.order()))
                }
                TypeIIIPart::OctaDihedral { k, iso } => {
                    let (ga, gb) = (group(ka)?, group(kb)?);
                    let (pa, pb, isos, n) = quotient_isos(&ga, Z(u(2 * k)), &gb, BD(2))?;
                    let f = isos.get(iso).ok_or(GroupError::NoIsomorphism)?;
                    let alpha: Vec<usize> = pa.iter().map(|&c| f[c]).collect();
                    Ok(fiber_product(ga, gb, &alpha, &pb, n))
                }
                TypeIIIPart::DihedralPair { k, p, iso, .. } => {
                    let (ga, gb) = (group(ka)?, group(kb)?);
                    let (pa, pb, isos, n) = quotient_isos(&ga, Z(u(2 * k)), &gb, Z(u(2 * p)))?;
                    let f = isos.get(iso).ok_or(GroupError::NoIsomorphism)?;
                    let alpha: Vec<usize> = pa.iter().map(|&c| f[c]).collect();
                    Ok(fiber_product(ga, gb, &alpha, &pb, n))
                }
            },
        }
    }

    fn gate(&self, d: AdeKind) -> bool {
        let (a, b) = self.ambient();
        predicate_splittable_any([a, b, d])
    }

    /// The family's freeness condition for `C × d`.
    pub fn predicate(&self, d: AdeKind) -> Result<bool, GroupError> {
        Ok(match *self {
            SemiFamily::TypeI(b) => predicate_type_i(b, d),
            SemiFamily::TypeII(r) => predicate_type_ii(r, d),
            SemiFamily::TypeIII(p) => predicate_type_iii(p, d)?,
        })
    }
}

pub fn predicate_type_i(base: TypeIBase, d: AdeKind) -> bool {
    let fam = SemiFamily::TypeI(base);
    let row = match base {
        TypeIBase::Outer2I => matches!(d, Z(n) if n % 3 != 0),
        TypeIBase::Outer2O => false,
        TypeIBase::Dihedral { n, a, .. } => {
            if n <= 2 || is_pm_one(a, 2 * n) {
                false
            } else {
                kt_table(gcd(1 + a, 2 * n), gcd(1 - a, 2 * n), d)
            }
        }
        TypeIBase::Cyclic { n, r } => {
            if is_pm_one(r, n) {
                false
            } else {
                k_table(gcd(1 + r, n), gcd(1 - r, n), d)
            }
        }
    };
    row || fam.gate(d)
}

pub fn predicate_type_ii(row: TypeIIRow, d: AdeKind) -> bool {
    let fam = SemiFamily::TypeII(row);
    let hit = match row {
        TypeIIRow::TetraZ3 { .. } => match d {
            Z(n) => n % 3 != 0,
            BD(l) => (2 * l) % 3 != 0,
            _ => false,
        },
        TypeIIRow::DicyclicHalf { .. } | TypeIIRow::OctaTetra | TypeIIRow::DicyclicCyclic { .. } => true,
        TypeIIRow::CyclicQuotient { k, l, r } => {
            let n = k * l;
            if is_pm_one(l * r, n) {
                false
            } else {
                k_table(gcd(1 + l * r, n), gcd(1 - l * r, n), d)
            }
        }
        TypeIIRow::DihedralQuotient { k, l, a, .. } => {
            let q = 2 * k + 1;
            let n = 2 * l * q;
            if l <= 2 || is_pm_one(a * q, n) {
                false
            } else {
                kt_table(gcd(1 - a * q, n), gcd(1 + a * q, n), d)
            }
        }
    };
    hit || fam.gate(d)
}

/// `m_ε·s` for `m_ε = gcd(x_ε, kl, lpk)`, `s = kl/gcd(kl, lpk)`.
fn m_eps_s(x: [i64; 2], kl: i64, lpk: i64) -> [i64; 2] {
    let s = kl / gcd(kl, lpk);
    x.map(|v| gcd3(v, kl, lpk) * s)
}

pub fn predicate_type_iii(part: TypeIIIPart, d: AdeKind) -> Result<bool, GroupError> {
    let fam = SemiFamily::TypeIII(part);
    let gate = fam.gate(d);
    let zm = |d: AdeKind| match d {
        Z(m) => Some(m as i64),
        _ => None,
    };
    Ok(match part {
        TypeIIIPart::A { k, l, p, r } => ms_table(m_eps_s([p - k * r, p + k * r], k * l, l * p * k), d),
        TypeIIIPart::B { n, .. } => {
            let row = if n % 2 == 0 {
                matches!(zm(d), Some(m) if m % 2 == 1) && n % 3 == 0
            } else if n % 3 != 0 {
                match d {
                    Z(m) | BD(m) => m % 3 != 0,
                    _ => false,
                }
            } else {
                true
            };
            row || gate
        }
        TypeIIIPart::C { k, l, p, a, .. } => {
            let (q, r) = (2 * k + 1, 2 * p + 1);
            let ms = m_eps_s([r - q * a, r + q * a], 2 * l * q, 2 * l * r * q);
            let row = l > 2 && matches!(zm(d), Some(m) if m % 4 != 0 && ms.iter().all(|&x| gcd(m, x) == 1));
            row || gate
        }
        TypeIIIPart::D { k, p, .. } => {
            let g = gcd(2 * k + 1, p);
            let row = p % 2 == 0
                && match d {
                    Z(m) | BD(m) => gcd(g, m as i64) == 1,
                    T2 | O2 => coprime_to(&[2, 3], g),
                    I2 => coprime_to(&[2, 3, 5], g),
                };
            row || gate
        }
        TypeIIIPart::E { .. } | TypeIIIPart::G { .. } => gate,
        TypeIIIPart::F { k } => (2 * k + 1) % 3 != 0 || matches!(d, Z(m) | BD(m) if m % 3 != 0),
        TypeIIIPart::Icosa => matches!(zm(d), Some(m) if m % 2 == 1 && m % 3 != 0) || gate,
        TypeIIIPart::OctaDihedral { k, .. } => matches!(zm(d), Some(m) if m % 2 == 1) && k % 3 == 0 || gate,
        TypeIIIPart::DihedralPair { k, l, p, iso } => {
            let row = match (rotation_multiplier(k, l, p, iso)?, zm(d)) {
                (Some(a), Some(m)) if m % 2 == 1 => {
                    m_eps_s([p - k * a, p + k * a], k * l, l * p * k).iter().all(|&x| gcd(x, m) == 1)
                }
                _ => false,
            };
            row || gate
        }
    })
}

/// The `a` with `θ[e(1/2kl)] = [e(a/2pl)]`, if θ maps rotations to rotations.
pub fn rotation_multiplier(k: i64, l: i64, p: i64, iso: usize) -> Result<Option<i64>, GroupError> {
    let u = |n: i64| n as u32;
    let (ga, gb) = (group(BD(u(k * l)))?, group(BD(u(p * l)))?);
    let (pa, pb, isos, _) = quotient_isos(&ga, Z(u(2 * k)), &gb, Z(u(2 * p)))?;
    let f = isos.get(iso).ok_or(GroupError::NoIsomorphism)?;
    let x = ga.locate(&e(1, 2 * k * l)).ok_or(GroupError::NoIsomorphism)?;
    let target = f[pa[x]];
    Ok((0..2 * l).find(|&a| gb.locate(&e(a, 2 * p * l)).map(|y| pb[y]) == Some(target)))
}

fn count_quotient_isos(a: AdeKind, a0: AdeKind, b: AdeKind, b0: AdeKind) -> usize {
    let (Ok(ga), Ok(gb)) = (group(a), group(b)) else { return 0 };
    quotient_isos(&ga, a0, &gb, b0).map(|r| r.2.len()).unwrap_or(0)
}

fn units(n: i64) -> impl Iterator<Item = i64> {
    (1..n.max(2)).filter(move |&r| gcd(r, n) == 1)
}

/// The pair-subgroup families of a theorem within the bounds, in
/// lexicographic parameter order.
pub fn semi_families(t: TheoremId, b: Bounds) -> Vec<SemiFamily> {
    let n_max = b.param;
    let mut out = Vec::new();
    match t {
        TheoremId::Simple | TheoremId::Main => {}
        TheoremId::TypeB => {
            out.push(SemiFamily::TypeI(TypeIBase::Outer2I));
            out.push(SemiFamily::TypeI(TypeIBase::Outer2O));
            for n in 3..=n_max {
                for a in units(2 * n) {
                    for bb in 0..2 * n {
                        out.push(SemiFamily::TypeI(TypeIBase::Dihedral { n, a, b: bb }));
                    }
                }
            }
            for n in 2..=n_max {
                for r in units(n) {
                    out.push(SemiFamily::TypeI(TypeIBase::Cyclic { n, r }));
                }
            }
        }
        TheoremId::Type3 => {
            for r in [1, 2] {
                out.push(SemiFamily::TypeII(TypeIIRow::TetraZ3 { r }));
            }
            for k in 2..=n_max {
                out.push(SemiFamily::TypeII(TypeIIRow::DicyclicHalf { k }));
            }
            out.push(SemiFamily::TypeII(TypeIIRow::OctaTetra));
            for k in 2..=n_max {
                out.push(SemiFamily::TypeII(TypeIIRow::DicyclicCyclic { k }));
            }
            for k in 2..=n_max {
                for l in 2..=n_max {
                    for r in units(k) {
                        out.push(SemiFamily::TypeII(TypeIIRow::CyclicQuotient { k, l, r }));
                    }
                }
            }
            for k in 1..=n_max {
                for l in 3..=n_max {
                    for a in units(2 * l) {
                        for bb in 0..2 * l {
                            for conj_j in [false, true] {
                                out.push(SemiFamily::TypeII(TypeIIRow::DihedralQuotient { k, l, a, b: bb, conj_j }));
                            }
                        }
                    }
                }
            }
        }
        TheoremId::QFinal => {
            let p3 = |x| SemiFamily::TypeIII(x);
            for k in 2..=n_max {
                for l in 2..=n_max {
                    for p in 2..=n_max {
                        for r in units(l) {
                            out.push(p3(TypeIIIPart::A { k, l, p, r }));
                        }
                    }
                }
            }
            for n in 2..=n_max {
                for r in [1, 2] {
                    out.push(p3(TypeIIIPart::B { n, r }));
                }
            }
            for k in 1..=n_max {
                for l in 2..=n_max {
                    for p in 1..=n_max {
                        for a in units(2 * l) {
                            for bb in 0..2 * l {
                                for conj_j in [false, true] {
                                    out.push(p3(TypeIIIPart::C { k, l, p, a, b: bb, conj_j }));
                                }
                            }
                        }
                    }
                }
            }
            for k in 1..=n_max {
                for p in 2..=n_max {
                    for r in [1, 3] {
                        out.push(p3(TypeIIIPart::D { k, p, r }));
                    }
                }
            }
            for k in 1..=n_max {
                for p in 1..=n_max {
                    for r in [1, 3] {
                        out.push(p3(TypeIIIPart::E { k, p, r }));
                    }
                }
            }
            for k in 1..=n_max {
                out.push(p3(TypeIIIPart::F { k }));
            }
            for k in 1..=n_max {
                for p in 2..=n_max {
                    out.push(p3(TypeIIIPart::G { k, p }));
                }
            }
        }
        TheoremId::QFinal2 => {
            let u = |n: i64| n as u32;
            out.push(SemiFamily::TypeIII(TypeIIIPart::Icosa));
            for k in 1..=n_max {
                for iso in 0..count_quotient_isos(BD(u(3 * k)), Z(u(2 * k)), O2, BD(2)) {
                    out.push(SemiFamily::TypeIII(TypeIIIPart::OctaDihedral { k, iso }));
                }
            }
            for k in 1..=n_max {
                for l in 2..=n_max {
                    for p in 1..=n_max {
                        let c = count_quotient_isos(BD(u(k * l)), Z(u(2 * k)), BD(u(p * l)), Z(u(2 * p)));
                        for iso in 0..c {
                            out.push(SemiFamily::TypeIII(TypeIIIPart::DihedralPair { k, l, p, iso }));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every family member of a theorem within the bounds.
pub fn families(t: TheoremId, b: Bounds) -> Vec<FamilySpec> {
    match t {
        TheoremId::Simple => {
            let mut v = Vec::new();
            for p in (2..=b.param).filter(|&p| is_prime(p)) {
                for r in 1..p {
                    for s in 1..p {
                        v.push(FamilySpec::Simple { p, r, s });
                    }
                }
            }
            v
        }
        TheoremId::Main => {
            let mut v = Vec::new();
            let range = || 2..=b.param;
            for row in SplitRow::ALL {
                match row.arity() {
                    1 => range().for_each(|n| v.push(FamilySpec::Splittable { row, n, m: 0, l: 0 })),
                    2 => range().for_each(|n| {
                        range().for_each(|m| v.push(FamilySpec::Splittable { row, n, m, l: 0 }))
                    }),
                    _ => range().for_each(|n| {
                        range().for_each(|m| range().for_each(|l| v.push(FamilySpec::Splittable { row, n, m, l })))
                    }),
                }
            }
            v
        }
        _ => {
            let thirds = third_factors(b.third);
            semi_families(t, b)
                .into_iter()
                .flat_map(|family| thirds.iter().map(move |&third| FamilySpec::Semi { family, third }))
                .collect()
        }
    }
}

impl FamilySpec {
    pub fn theorem(&self) -> TheoremId {
        match self {
            FamilySpec::Simple { .. } => TheoremId::Simple,
            FamilySpec::Splittable { .. } => TheoremId::Main,
            FamilySpec::Semi { family, .. } => family.theorem(),
        }
    }

    pub fn family_label(&self) -> String {
        match self {
            FamilySpec::Simple { .. } => "simple".into(),
            FamilySpec::Splittable { row, .. } => format!("main/{}", row.label()),
            FamilySpec::Semi { family, .. } => family.label().into(),
        }
    }

    pub fn params(&self) -> String {
        match *self {
            FamilySpec::Simple { p, r, s } => format!("p={p} r={r} s={s}"),
            FamilySpec::Splittable { row, n, m, l } => {
                let names = [("n", n), ("m", m), ("l", l)];
                names[..row.arity()].iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
            }
            FamilySpec::Semi { family, third } => {
                let p = family.params();
                if p.is_empty() {
                    format!("D={third}")
                } else {
                    format!("{p} D={third}")
                }
            }
        }
    }

    /// Identifier used in the expected-discrepancy list.
    pub fn key(&self) -> String {
        format!("{}|{}", self.family_label(), self.params())
    }

    pub fn predicate(&self) -> Result<bool, GroupError> {
        match *self {
            FamilySpec::Simple { p, r, s } => predicate_simple(p, r, s),
            FamilySpec::Splittable { row, n, m, l } => Ok(predicate_splittable(row, n, m, l)),
            FamilySpec::Semi { family, third } => family.predicate(third),
        }
    }

    /// The subgroup of SU(2)³; the pair occupies the first two coordinates.
    pub fn materialize(&self) -> Result<ProductGroup3, GroupError> {
        match *self {
            FamilySpec::Simple { p, r, s } => {
                ProductGroup3::simple(p, r, s).map_err(|e| GroupError::Parameter(e.to_string()))
            }
            FamilySpec::Splittable { row, n, m, l } => {
                let k = row.kinds(n, m, l);
                Ok(ProductGroup3::Splittable([group(k[0])?, group(k[1])?, group(k[2])?]))
            }
            FamilySpec::Semi { family, third } => Ok(ProductGroup3::SemiSplittable {
                position: 2,
                pair: Arc::new(family.pair()?),
                single: group(third)?,
            }),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family_label(), self.params())
    }
}

/// One cross-check record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub family: String,
    pub params: String,
    pub predicate: bool,
    pub oracle: bool,
    pub witness: Option<[String; 3]>,
}

impl VerificationReport {
    fn new(spec: &FamilySpec, predicate: bool, v: &Verdict) -> Self {
        VerificationReport {
            theorem: spec.theorem(),
            family: spec.family_label(),
            params: spec.params(),
            predicate,
            oracle: v.free,
            witness: v.witness.map(|w| w.map(|q| q.to_string())),
        }
    }

    pub fn is_mismatch(&self) -> bool {
        self.predicate != self.oracle
    }

    pub fn key(&self) -> String {
        format!("{}|{}", self.family, self.params)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CrosscheckError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Freeness(#[from] FreenessError),
}

/// Result of evaluating one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ItemOutcome {
    Report(VerificationReport),
    OverBudget { family: String, params: String, order: u64 },
}

/// Evaluates predicate and oracle for every member of the theorem's families
/// accepted by `keep`, in enumeration order. Members whose group exceeds the
/// budget are reported as such.
pub fn evaluate<F>(t: TheoremId, b: Bounds, budget: u64, keep: F) -> Result<Vec<ItemOutcome>, GroupError>
where
    F: Fn(&FamilySpec) -> bool + Sync,
{
    let report = |spec: &FamilySpec, order: u64, v: &dyn Fn() -> Verdict| -> Result<ItemOutcome, GroupError> {
        if order > budget {
            return Ok(ItemOutcome::OverBudget { family: spec.family_label(), params: spec.params(), order });
        }
        Ok(ItemOutcome::Report(VerificationReport::new(spec, spec.predicate()?, &v())))
    };
    let chunks: Vec<Result<Vec<ItemOutcome>, GroupError>> = match t {
        TheoremId::Simple | TheoremId::Main => families(t, b)
            .into_iter()
            .filter(|s| keep(s))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|spec| {
                let g = spec.materialize()?;
                let order = g.order();
                let v = || is_free(&g, u64::MAX).expect("unbounded budget");
                Ok(vec![report(spec, order, &v)?])
            })
            .collect(),
        _ => {
            let thirds: Vec<Arc<FiniteSubgroup>> =
                third_factors(b.third).into_iter().map(group).collect::<Result<_, _>>()?;
            semi_families(t, b)
                .par_iter()
                .map(|family| {
                    let specs: Vec<(FamilySpec, &Arc<FiniteSubgroup>)> = thirds
                        .iter()
                        .map(|d| (FamilySpec::Semi { family: *family, third: d.kind().expect("ADE group") }, d))
                        .filter(|(s, _)| keep(s))
                        .collect();
                    if specs.is_empty() {
                        return Ok(Vec::new());
                    }
                    let pair = family.pair()?;
                    let oracle = SemiSplitOracle::new(&pair);
                    specs
                        .iter()
                        .map(|(spec, d)| {
                            let order = pair.order() as u64 * d.order() as u64;
                            report(spec, order, &|| oracle.verdict(2, d))
                        })
                        .collect()
                })
                .collect()
        }
    };
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Evaluates predicate and oracle for every member of the theorem's families.
pub fn crosscheck(t: TheoremId, b: Bounds, budget: u64) -> Result<Vec<VerificationReport>, CrosscheckError> {
    evaluate(t, b, budget, |_| true)?
        .into_iter()
        .map(|o| match o {
            ItemOutcome::Report(r) => Ok(r),
            ItemOutcome::OverBudget { order, .. } => Err(FreenessError::Budget { order, budget }.into()),
        })
        .collect()
}

const EXPECTED: &str = include_str!("../data/expected_discrepancies.txt");

/// Entries of one section of the shipped expected-discrepancy list.
pub fn expected_entries(section: &str) -> BTreeSet<String> {
    let prefix = format!("{section} ");
    EXPECTED
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.strip_prefix(&prefix))
        .map(str::to_string)
        .collect()
}

/// Keys of the expected predicate/oracle mismatches for a theorem.
pub fn expected_discrepancies(t: TheoremId) -> BTreeSet<String> {
    expected_entries(&t.to_string())
}

/// Differences between observed mismatches and the expected list, restricted
/// to the enumerated keys: `(unexpected, missing)`.
pub fn compare_with_expected(t: TheoremId, reports: &[VerificationReport]) -> (Vec<String>, Vec<String>) {
    let seen: BTreeSet<String> = reports.iter().map(|r| r.key()).collect();
    let observed: BTreeSet<String> = reports.iter().filter(|r| r.is_mismatch()).map(|r| r.key()).collect();
    let expected: BTreeSet<String> = expected_discrepancies(t).into_iter().filter(|k| seen.contains(k)).collect();
    (observed.difference(&expected).cloned().collect(), expected.difference(&observed).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_rows_match_by_permutation() {
        assert_eq!(match_split_row([I2, Z(7), I2]), Some((SplitRow::ZII, [7, 0, 0])));
        assert_eq!(match_split_row([BD(3), Z(5), O2]), Some((SplitRow::ZDO, [5, 3, 0])));
        assert!(predicate_splittable(SplitRow::ZDD, 3, 2, 2));
        assert!(!predicate_splittable_any([BD(2), BD(3), T2]));
    }

    #[test]
    fn pairs_have_expected_orders() {
        let cases = [
            (SemiFamily::TypeII(TypeIIRow::TetraZ3 { r: 1 }), 24),
            (SemiFamily::TypeII(TypeIIRow::CyclicQuotient { k: 3, l: 5, r: 1 }), 15),
            (SemiFamily::TypeIII(TypeIIIPart::A { k: 2, l: 3, p: 2, r: 1 }), 12),
            (SemiFamily::TypeIII(TypeIIIPart::Icosa), 240),
            (SemiFamily::TypeIII(TypeIIIPart::F { k: 1 }), 6 * 24),
        ];
        for (f, n) in cases {
            assert_eq!(f.pair().unwrap().order(), n, "{f:?}");
        }
    }
}
